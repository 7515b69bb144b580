import pytest
from hypothesis import given, strategies as st

from derivk.chains import ChainComplex, ChainMap, homology_dims
from derivk.linalg import F32003
from derivk.posets import cube_chunk
from derivk.quivers import (
    AnOrientation, QuiverError, admissible_sink_sequence, all_admissible_sink_sequences, all_orientations,
    arrow_as_a2, barcode, barcode_rep, coxeter_linear_a3_oracle, coxeter_plus, coxeter_span_oracle, reflect_minus,
    reflect_plus, reflect_quiver, same_quiver_tables, serre, serre_linear_a3_oracle, serre_span_oracle,
    sink_source_equivalence, source_sink_equivalence,
)
from derivk.kan import is_bicartesian, lkan
from derivk.posets import span_inclusion
from derivk.reps import Representation, constant_rep, random_morphism, random_rep, restrict, same_tables, zero_rep
from derivk.stable import compact_cof_power, compact_fib_power, mapping_cone
from strategies import seeds

F = F32003
K = ChainComplex.sphere(F, 0)
Z = ChainComplex.zero(F)
ID = ChainMap.identity(K)
SPAN = AnOrientation.parse("<>")
LIN3 = AnOrientation.linear(3)
A2 = AnOrientation.linear(2)


def test_reflect_quiver_examples():
    assert reflect_quiver(SPAN, 2) == AnOrientation.parse("><")
    assert reflect_quiver(SPAN, 1) == LIN3
    for q in all_orientations(4):
        for v in q.sinks():
            assert reflect_quiver(reflect_quiver(q, v), v) == q


def test_reflect_minus_examples():
    x = constant_rep(SPAN.poset(), K)
    y = reflect_minus(SPAN, 2, x)
    assert homology_dims(y.objects[2]) == {0: 1}
    x = Representation(A2.poset(), {1: K, 2: Z}, {})
    y = reflect_minus(A2, 1, x)
    assert y.shape == AnOrientation.parse("<").poset()
    assert homology_dims(y.objects[1]) == {1: 1}
    zero = reflect_minus(SPAN, 2, zero_rep(SPAN.poset(), F))
    assert all(c.is_acyclic() for c in zero.objects.values())


def test_reflect_plus_examples():
    q = AnOrientation.parse("<")
    x = Representation(q.poset(), {1: K, 2: K}, {(2, 1): ID})
    assert reflect_plus(q, 1, x).objects[1].is_acyclic()
    q = AnOrientation.parse("><")
    x = Representation(q.poset(), {1: K, 2: K, 3: Z}, {(1, 2): ID})
    for model in ("kan", "cone"):
        assert reflect_plus(q, 2, x, model).objects[2].is_acyclic()


def test_sink_sequences():
    assert admissible_sink_sequence(LIN3) == (3, 2, 1)
    assert admissible_sink_sequence(SPAN) == (1, 3, 2)
    assert set(all_admissible_sink_sequences(SPAN)) == {(1, 3, 2), (3, 1, 2)}
    assert admissible_sink_sequence(AnOrientation.linear(1)) == (1,)


def test_coxeter_examples():
    for s in range(5):
        f = random_morphism(F, s)
        x = arrow_as_a2(f)
        assert same_quiver_tables(A2, coxeter_plus(A2, x), arrow_as_a2(compact_fib_power(f, 2)))
        assert same_quiver_tables(A2, serre(A2, x), arrow_as_a2(compact_cof_power(f, 1)))
        x3 = random_rep(LIN3.poset(), seed=s)
        assert same_quiver_tables(LIN3, coxeter_plus(LIN3, x3), coxeter_linear_a3_oracle(x3))
        assert same_quiver_tables(LIN3, serre(LIN3, x3), serre_linear_a3_oracle(x3))
        xs = random_rep(SPAN.poset(), seed=s)
        assert same_quiver_tables(SPAN, coxeter_plus(SPAN, xs), coxeter_span_oracle(xs))
        assert same_quiver_tables(SPAN, serre(SPAN, xs), serre_span_oracle(xs))


def test_wrong_vertex_kinds_are_rejected():
    with pytest.raises(QuiverError):
        reflect_plus(SPAN, 2, random_rep(SPAN.poset(), seed=1))
    with pytest.raises(QuiverError):
        reflect_minus(LIN3, 2, random_rep(LIN3.poset(), seed=1))
    with pytest.raises(QuiverError):
        coxeter_plus(LIN3, random_rep(LIN3.poset(), seed=1), sequence=(1, 2, 3))


def test_source_sink_equivalence_examples():
    src, _ = cube_chunk(2, 0, 1)
    x = random_rep(src, seed=3)
    sq = lkan(span_inclusion(), relabel_star(x))
    assert is_bicartesian(sq)
    snk = source_sink_equivalence(2, x)
    assert homology_dims(snk.objects[(1, 2)]) == homology_dims(sq.objects[(1, 1)])
    src3, _ = cube_chunk(3, 0, 1)
    const = source_sink_equivalence(3, constant_rep(src3, K))
    assert homology_dims(const.objects[(1, 2, 3)]) == {0: 1}
    y = random_rep(src3, 2, 2, seed=5)
    assert same_tables(sink_source_equivalence(3, source_sink_equivalence(3, y)), y)
    with pytest.raises(QuiverError):
        source_sink_equivalence(3, random_rep(src, seed=1))


def relabel_star(x):
    from derivk.reps import relabel

    span = span_inclusion().source
    return relabel(x, span, {(): (0, 0), (1,): (1, 0), (2,): (0, 1)})


def test_barcode_is_complete_on_small_cases():
    f = random_morphism(F, 4)
    x = arrow_as_a2(f)
    bars = barcode(A2, x)
    total = sum(homology_dims(f.source).values()) + sum(homology_dims(f.target).values())
    assert sum(c * (j - i + 1) for (_, i, j), c in bars.items()) == total


orientations = st.sampled_from([q for n in range(1, 5) for q in all_orientations(n)])


def test_barcode_rep_example():
    bars = {(0, 1, 2): 1, (1, 2, 3): 2}
    x = barcode_rep(LIN3, bars, F)
    assert [x.objects[v].dims for v in (1, 2, 3)] == [{0: 1}, {0: 1, 1: 2}, {1: 2}]
    assert x.maps[(1, 2)][0].tolist() == [[1]]
    assert x.structure_map(1, 3).is_zero()


@given(orientations, seeds)
def test_barcode_rep_realises_the_barcode(q, seed):
    x = random_rep(q.poset(), 3, 2, seed=seed)
    bars = barcode(q, x)
    y = barcode_rep(q, bars, F)
    assert barcode(q, y) == bars
    assert all(homology_dims(y.objects[v]) == homology_dims(x.objects[v]) for v in q.vertices)


@given(orientations, seeds)
def test_reflection_roundtrips(q, seed):
    x = random_rep(q.poset(), 2, 2, seed=seed)
    for v in q.sources():
        q2 = reflect_quiver(q, v) if q.n > 1 else q
        assert same_quiver_tables(q, reflect_plus(q2, v, reflect_minus(q, v, x)), x)
    for v in q.sinks():
        q2 = reflect_quiver(q, v) if q.n > 1 else q
        assert same_quiver_tables(q, reflect_minus(q2, v, reflect_plus(q, v, x)), x)


@given(orientations, seeds)
def test_distinct_sinks_commute(q, seed):
    x = random_rep(q.poset(), 2, 2, seed=seed)
    sinks = q.sinks()
    for a in sinks:
        for b in sinks:
            if a < b and q.n > 1:
                qa, qb = reflect_quiver(q, a), reflect_quiver(q, b)
                ab = reflect_plus(qa, b, reflect_plus(q, a, x))
                ba = reflect_plus(qb, a, reflect_plus(q, b, x))
                target = reflect_quiver(qa, b)
                assert same_quiver_tables(target, ab, ba)


@given(orientations, seeds)
def test_coxeter_independent_of_sequence(q, seed):
    x = random_rep(q.poset(), 2, 2, seed=seed)
    bars = {tuple(sorted(barcode(q, coxeter_plus(q, x, s)).items())) for s in all_admissible_sink_sequences(q)}
    assert len(bars) == 1


@given(seeds)
def test_pushout_models_agree(seed):
    x = random_rep(SPAN.poset(), 2, 2, seed=seed)
    kan = reflect_minus(SPAN, 2, x, "kan")
    cone = reflect_minus(SPAN, 2, x, "cone")
    assert same_quiver_tables(AnOrientation.parse("><"), kan, cone)
    f, g = x.maps[(2, 1)], x.maps[(2, 3)]
    from derivk.chains import direct_sum, pair

    mv = mapping_cone(pair([f, -g], direct_sum(F, [f.target, g.target]))).complex
    assert homology_dims(kan.objects[2]) == homology_dims(mv)


def test_restriction_to_vertices():
    x = random_rep(LIN3.poset(), seed=2)
    from derivk.posets import full_subposet

    sub, u = full_subposet(LIN3.poset(), [1, 2])
    assert same_quiver_tables(A2, restrict(x, u), arrow_as_a2(x.maps[(1, 2)]))
