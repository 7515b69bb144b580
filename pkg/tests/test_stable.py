import pytest
from hypothesis import given

from derivk.chains import (
    ChainComplex, ChainMap, homology_dims, homology_map, is_quasi_iso, mapping_cone, shift,
)
from derivk.kan import is_bicartesian, subsquare
from derivk.linalg import F32003, Matrix, rank
from derivk.posets import chain_poset, square
from derivk.reps import RepMorphism, arrow_rep, constant_rep, random_morphism, random_rep, same_tables
from derivk.stable import (
    StableError, barratt_puppe, cofiber, cofiber_sequence, compact_cofiber_sequence, compact_fib_power,
    compact_fiber, fiber, fib_power, cof_power, flip_symmetry_holds, mayer_vietoris, mesh_rep, octahedron,
    octahedron_mayer_vietoris, octahedron_triangles, rotation_sign_check, suspension_square, triangle_is_exact,
    triangle_of, window_report, embedding_restriction, linear_window,
)
from strategies import chain_maps

F = F32003
K = ChainComplex.sphere(F, 0)
Z = ChainComplex.zero(F)
ID = ChainMap.identity(K)
TO_ZERO = ChainMap.zero(K, Z)
FROM_ZERO = ChainMap.zero(Z, K)


def hd(c):
    return homology_dims(c)


def test_cofiber_examples():
    assert cofiber(ID).corner.is_acyclic()
    assert hd(cofiber(TO_ZERO).corner) == {1: 1}
    for s in range(5):
        f = random_morphism(F, s)
        res = cofiber(f)
        assert hd(res.corner) == hd(mapping_cone(f).complex)
        assert is_quasi_iso(res.comparison)


def test_fiber_examples():
    assert fiber(ID).corner.is_acyclic()
    assert hd(fiber(FROM_ZERO).corner) == {-1: 1}
    for s in range(5):
        f = random_morphism(F, s)
        res = fiber(f)
        assert hd(res.corner) == hd(shift(mapping_cone(f).complex, -1))
        assert is_quasi_iso(res.comparison)


def test_cofiber_sequence_examples():
    seq = cofiber_sequence(ID)
    assert seq.objects[(1, 1)].is_acyclic()
    seq = cofiber_sequence(TO_ZERO)
    assert hd(seq.objects[(1, 2)]) == {1: 1} and seq.objects[(0, 2)].is_acyclic()
    for s in range(5):
        seq = cofiber_sequence(random_morphism(F, s))
        for corners in (((0, 0), (0, 1), (1, 0), (1, 1)), ((0, 1), (0, 2), (1, 1), (1, 2)),
                        ((0, 0), (0, 2), (1, 0), (1, 2))):
            assert is_bicartesian(subsquare(seq, corners))


def test_compact_and_kan_sequences_agree():
    for s in range(5):
        f = random_morphism(F, s)
        assert same_tables(cofiber_sequence(f), compact_cofiber_sequence(f))


def test_triangle_examples():
    t = triangle_of(ID)
    assert hd(t.x) == hd(t.y) == {0: 1} and t.z.is_acyclic()
    assert all(m.is_zero() for m in homology_map(t.h).values())
    t = triangle_of(ChainMap.zero(K, K))
    assert hd(t.z) == {0: 1, 1: 1} and triangle_is_exact(t)


def test_triangle_rotation_matches_window():
    f = random_morphism(F, 3)
    t = triangle_of(f)
    r = t.rotate()
    assert triangle_is_exact(r)
    w = barratt_puppe(f, 2)
    assert hd(w.objects[(1, 2)]) == hd(shift(f.source, 1))
    assert hd(w.objects[(1, 1)]) == hd(t.z)


def test_barratt_puppe_examples():
    w = barratt_puppe(ID, 2)
    assert w.objects[(1, 1)].is_acyclic()
    w = barratt_puppe(TO_ZERO, 2)
    # the stripe j = i + 1 carries the iterated (de)suspensions of k
    assert [hd(w.objects[(i, i + 1)]) for i in (-2, -1, 0, 1, 2)] == [{-1: 1}, {0: 1}, {}, {1: 1}, {2: 1}]
    w = barratt_puppe(random_morphism(F, 8), 2)
    assert window_report(w)["bad_squares"] == [] and flip_symmetry_holds(w)


def test_octahedron_examples():
    x = constant_rep(chain_poset(2), K)
    w = octahedron(x, 2)
    for e in ((1, 1), (1, 2), (2, 2)):
        assert w.objects[e].is_acyclic()
    from derivk.reps import chain_rep

    arrow_chain = chain_rep([TO_ZERO, ChainMap.identity(Z)])
    w = octahedron(arrow_chain, 2)
    assert hd(w.objects[(1, 1)]) == {1: 1}
    assert hd(w.objects[(1, 2)]) == {1: 1}
    assert w.objects[(2, 2)].is_acyclic()
    w = octahedron(random_rep(chain_poset(2), seed=4), 2)
    assert all(triangle_is_exact(t) for t in octahedron_triangles(w).values())
    assert all(triangle_is_exact(t) for t in octahedron_mayer_vietoris(w).values())


def test_mayer_vietoris_examples():
    t = mayer_vietoris(suspension_square(K))
    assert hd(t.x) == {0: 1} and t.y.is_acyclic() and hd(t.z) == {1: 1}
    assert is_quasi_iso(t.h)
    t = mayer_vietoris(constant_rep(square(), K))
    assert rank(homology_map(t.g)[0]) == 1 and triangle_is_exact(t)
    with pytest.raises(StableError):
        mayer_vietoris(constant_rep(square(), K).__class__(square(), {e: K for e in square().elements}, {}))


def test_rotation_sign_examples():
    f = ChainMap.zero(ChainComplex.sphere(F, 0, 2), K)
    sc = rotation_sign_check(f)
    assert sc.is_minus_identity and sc.ratio[1] == Matrix.identity(F, 1).scale(-1)
    sc = rotation_sign_check(ChainMap.zero(K, Z))
    assert sc.is_minus_identity


def test_mesh_rep_examples():
    f = random_morphism(F, 2)
    a2 = mesh_rep(arrow_rep_a2(f), [True], [(0, 0), (0, 1)], 2)
    assert same_tables(a2, barratt_puppe(f, 2))
    x = random_rep(chain_poset(2), seed=3)
    lin = mesh_rep(relabel_chain(x), [True, True], [(0, 0), (0, 1), (0, 2)], 2)
    assert same_tables(lin, octahedron(x, 2))
    from derivk.quivers import AnOrientation

    src = random_rep(AnOrientation.parse("<>").poset(), seed=4)
    w = mesh_rep(src, [False, True], [(1, 1), (0, 1), (0, 2)], 2)
    assert window_report(w)["bad_squares"] == [] and not window_report(w)["bad_boundary"]
    back = embedding_restriction(w, [False, True], [(1, 1), (0, 1), (0, 2)])
    for v in (1, 2, 3):
        assert hd(back.objects[v]) == hd(src.objects[v])


def arrow_rep_a2(f):
    from derivk.quivers import arrow_as_a2

    return arrow_as_a2(f)


def relabel_chain(x):
    from derivk.quivers import AnOrientation
    from derivk.reps import relabel

    return relabel(x, AnOrientation.linear(3).poset(), {0: 1, 1: 2, 2: 3})


@given(chain_maps(field=F, max_dim=2))
def test_fiber_of_cofiber_recovers_f(f):
    c = cofiber(f)
    back = fiber(c.arrow())
    assert hd(back.corner) == hd(f.source)
    assert hd(c.arrow().source) == hd(f.target)


@given(chain_maps(field=F, max_dim=2))
def test_kan_and_compact_powers_are_quasi_isomorphic(f):
    kan, cmp = fib_power(f, 2)
    assert cmp.is_pointwise_quasi_iso()
    kan, cmp = cof_power(f, 2)
    assert cmp.is_pointwise_quasi_iso()
    assert compact_fib_power(f, 1) == compact_fiber(f)


@given(chain_maps(field=F, max_dim=2))
def test_windows_and_triangles(f):
    w = barratt_puppe(f, 2)
    rep = window_report(w)
    assert not rep["bad_boundary"] and not rep["bad_squares"]
    assert triangle_is_exact(triangle_of(f)) and triangle_is_exact(triangle_of(f, "compact"))


@given(chain_maps(max_dim=2))
def test_rotation_sign_is_minus_identity(f):
    assert rotation_sign_check(f).is_minus_identity


def test_window_width_must_be_positive():
    with pytest.raises(StableError):
        linear_window([ID], 0)


def test_comparison_maps_are_natural():
    f = random_morphism(F, 11)
    kan, cmp = cof_power(f, 1)
    assert isinstance(cmp, RepMorphism) and cmp.source.shape == arrow_rep(f).shape
