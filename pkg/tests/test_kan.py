from hypothesis import given, strategies as st

from derivk.chains import ChainComplex, ChainMap, direct_sum, homology_dims, homology_map, is_quasi_iso
from derivk.kan import (
    cocone_comparison, holim, hocolim, is_bicartesian, is_cartesian, is_cocartesian, is_strongly_bicartesian,
    is_strongly_cocartesian_by_counit, kan_unit, lkan, lkan_full, rkan, rkan_counit,
)
from derivk.linalg import F32003
from derivk.posets import (
    MonotoneMap, antichain, chain_poset, cospan_inclusion, cube, disjoint_union, empty_poset, full_subposet,
    point, random_poset, slice_under, span_inclusion, square,
)
from derivk.reps import Representation, constant_rep, random_rep, restrict, zero_rep
from derivk.samples import grid_diagram, lkan_square, perturbed_cube, rkan_square, star_cube
from derivk.stable import suspension_comparison, suspension_square
from strategies import seeds

F = F32003
K = ChainComplex.sphere(F, 0)
Z = ChainComplex.zero(F)


def on_span(a, b, c):
    """a <- ... : values at (0,0), (0,1), (1,0) with zero maps."""
    shape = span_inclusion().source
    return Representation(shape, {(0, 0): a, (0, 1): b, (1, 0): c}, {})


def on_cospan(a, b, c):
    shape = cospan_inclusion().source
    return Representation(shape, {(0, 1): a, (1, 0): b, (1, 1): c}, {})


def test_hocolim_examples():
    c = random_rep(point(), seed=2).objects[0]
    assert hocolim(constant_rep(point(), c)).complex.dims == c.dims
    assert homology_dims(hocolim(on_span(K, Z, Z)).complex) == {1: 1}
    bar = hocolim(constant_rep(chain_poset(1), K)).complex
    assert bar.dims == {0: 2, 1: 1}
    assert homology_dims(bar) == {0: 1}


def test_holim_examples():
    c = random_rep(point(), seed=3).objects[0]
    assert holim(constant_rep(point(), c)).complex.dims == c.dims
    assert homology_dims(holim(on_cospan(Z, Z, K)).complex) == {-1: 1}
    assert homology_dims(holim(constant_rep(chain_poset(1), K)).complex) == {0: 1}


def test_cocone_comparison_examples():
    ident = {0: ChainMap.identity(K), 1: ChainMap.identity(K)}
    assert is_quasi_iso(cocone_comparison(constant_rep(chain_poset(1), K), ident, K))
    assert not is_quasi_iso(cocone_comparison(constant_rep(antichain(2), K), ident, K))
    empty = Representation(empty_poset(), {}, {}, field=F)
    assert cocone_comparison(empty, {}, K).source.dims == {}


def test_zero_cocone_versus_suspension_witness():
    span = on_span(K, Z, Z)
    k1 = ChainComplex.sphere(F, 1)
    zero = {e: ChainMap.zero(span.objects[e], k1) for e in span.shape.elements}
    h1 = homology_map(cocone_comparison(span, zero, k1))
    assert all(m.is_zero() for m in h1.values())
    witness = suspension_comparison(suspension_square(K))
    assert not homology_map(witness)[1].is_zero()


def test_lkan_examples():
    x = random_rep(span_inclusion().source, seed=5)
    assert is_cocartesian(lkan(span_inclusion(), x))
    y = random_rep(chain_poset(2), seed=5)
    assert kan_unit(chain_poset(2).identity(), y).is_pointwise_quasi_iso()
    one = MonotoneMap(point(), chain_poset(1), {0: 1})
    ext = lkan(one, constant_rep(point(), K))
    assert ext.objects[0].dims == {} and homology_dims(ext.objects[1]) == {0: 1}


def test_rkan_examples():
    zero = MonotoneMap(point(), chain_poset(1), {0: 0})
    ext = rkan(zero, constant_rep(point(), K))
    assert homology_dims(ext.objects[0]) == {0: 1} and ext.objects[1].dims == {}
    x = random_rep(cospan_inclusion().source, seed=6)
    assert is_cartesian(rkan(cospan_inclusion(), x))
    y = random_rep(chain_poset(2), seed=6)
    assert rkan_counit(chain_poset(2).identity(), y).is_pointwise_quasi_iso()


def test_kan_unit_examples():
    u = MonotoneMap(chain_poset(1), span_inclusion().source, {0: (0, 0), 1: (0, 1)})
    assert kan_unit(u, random_rep(chain_poset(1), seed=1)).is_pointwise_quasi_iso()
    sub, v = full_subposet(chain_poset(2), [0, 2])
    for seed in range(5):
        assert kan_unit(v, random_rep(sub, seed=seed)).is_pointwise_quasi_iso()


def test_square_examples():
    assert is_bicartesian(suspension_square(K))
    assert is_bicartesian(constant_rep(square(), K))
    bad = Representation(square(), {(0, 0): K, (0, 1): Z, (1, 0): Z, (1, 1): Z}, {})
    assert not is_cocartesian(bad) and not is_cartesian(bad)


def test_cube_examples():
    assert is_strongly_bicartesian(star_cube(1))
    assert is_strongly_bicartesian(constant_rep(cube(3), K))
    found = [s for s in range(12) if not is_strongly_bicartesian(perturbed_cube(s))]
    assert found
    assert all(not is_strongly_cocartesian_by_counit(perturbed_cube(s)) for s in found)


@given(seeds, seeds)
def test_hocolim_of_disjoint_union_is_sum(s1, s2):
    p, q = random_poset(3, seed=s1), random_poset(2, seed=s2)
    x, y = random_rep(p, 2, 2, seed=s1), random_rep(q, 2, 2, seed=s2)
    u = disjoint_union(p, q)
    objs = {**{(0, a): x.objects[a] for a in p.elements}, **{(1, b): y.objects[b] for b in q.elements}}
    maps = {**{((0, a), (0, b)): f for (a, b), f in x.maps.items()},
            **{((1, a), (1, b)): f for (a, b), f in y.maps.items()}}
    z = Representation(u, objs, maps)
    total = direct_sum(F, [hocolim(x).complex, hocolim(y).complex])
    assert homology_dims(hocolim(z).complex) == homology_dims(total)


@given(st.integers(1, 5), seeds, seeds)
def test_finality_at_maximum(n, pseed, xseed):
    p = random_poset(n, seed=pseed)
    top = ("top",)
    shape = type(p)(list(p.elements) + [top], [(e, top) for e in p.elements])
    x = random_rep(shape, 2, 2, seed=xseed)
    cocone = {e: x.structure_map(e, top) for e in shape.elements}
    assert is_quasi_iso(cocone_comparison(x, cocone, x.objects[top]))


@given(st.integers(2, 5), seeds, seeds)
def test_lkan_values_are_literal_hocolims(n, pseed, xseed):
    p = random_poset(n, seed=pseed)
    sub, u = full_subposet(p, p.elements[: n // 2 + 1])
    x = random_rep(sub, 2, 2, seed=xseed)
    ext = lkan(u, x)
    for b in p.elements:
        s, inc = slice_under(u, b)
        assert ext.objects[b] == hocolim(restrict(x, inc)).complex


@given(st.integers(2, 5), seeds, seeds)
def test_units_of_full_embeddings(n, pseed, xseed):
    p = random_poset(n, seed=pseed)
    sub, u = full_subposet(p, p.elements[1::2] or p.elements[:1])
    x = random_rep(sub, 2, 2, seed=xseed)
    assert kan_unit(u, x).is_pointwise_quasi_iso()
    assert rkan_counit(u, x).is_pointwise_quasi_iso()


@given(seeds)
def test_stability(seed):
    for sq in (lkan_square(seed, max_dim=2), rkan_square(seed, max_dim=2)):
        assert is_cocartesian(sq) == is_cartesian(sq)


@given(seeds, st.sampled_from(["full", "right", "perturbed", "random"]))
def test_pasting_two_out_of_three(seed, mode):
    from derivk.kan import subsquare

    x = grid_diagram(seed, mode, max_dim=2, amplitude=2)
    left = is_bicartesian(subsquare(x, ((0, 0), (0, 1), (1, 0), (1, 1))))
    right = is_bicartesian(subsquare(x, ((0, 1), (0, 2), (1, 1), (1, 2))))
    outer = is_bicartesian(subsquare(x, ((0, 0), (0, 2), (1, 0), (1, 2))))
    assert sum((left, right, outer)) != 2


def test_zero_rep_extends_to_zero():
    u = span_inclusion()
    ext = lkan_full(u, zero_rep(u.source, F))
    assert all(c.dims == {} for c in ext.rep.objects.values())
