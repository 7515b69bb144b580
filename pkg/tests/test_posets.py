from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from derivk.posets import (
    MonotoneMap, Poset, PosetError, antichain, chain_poset, cube, cube_chunk, empty_poset, full_subposet,
    is_order_isomorphic, is_sieve, is_cosieve, mesh_squares, mesh_window, opposite, point, product,
    random_poset, slice_over, slice_under, span_inclusion, cospan_inclusion, square, strict_chains,
    twisted_diag_downset,
)

posets = st.builds(random_poset, st.integers(0, 5), st.integers(0, 10**6), st.floats(0.0, 0.9))


def test_partial_order_is_validated():
    with pytest.raises(PosetError):
        Poset([1, 2], [(1, 2), (2, 1)])
    with pytest.raises(PosetError):
        Poset([1, 1])


def test_monotone_maps_are_checked():
    with pytest.raises(PosetError):
        MonotoneMap(chain_poset(1), chain_poset(1), {0: 1, 1: 0})
    with pytest.raises(PosetError):
        MonotoneMap(chain_poset(1), chain_poset(1), {0: 0})


def test_chain_posets():
    assert len(chain_poset(0)) == 1
    one = chain_poset(1)
    assert one.relations == ((0, 1),)
    two = chain_poset(2)
    assert two.covers == ((0, 1), (1, 2)) and two.leq(0, 2)


def test_products():
    sq = product(chain_poset(1), chain_poset(1))
    assert len(sq) == 4 and sq == square()
    assert is_order_isomorphic(product(point(), random_poset(4, seed=3)), random_poset(4, seed=3))
    grid = product(chain_poset(1), chain_poset(2))
    assert len(grid) == 6 and grid.maximum() == (1, 2)


def test_opposites():
    assert opposite(chain_poset(1)).leq(1, 0)
    p = random_poset(5, seed=11)
    assert opposite(opposite(p)) == p


def test_square_is_self_dual_by_enumeration():
    sq, op = square(), opposite(square())
    isos = [perm for perm in permutations(op.elements)
            if all(sq.leq(a, b) == op.leq(f_a, f_b)
                   for (a, f_a) in zip(sq.elements, perm) for (b, f_b) in zip(sq.elements, perm))]
    assert isos
    assert is_order_isomorphic(sq, op)


def test_span_and_cospan_subposets():
    span = span_inclusion().source
    assert len(span) == 3 and span.minimum() == (0, 0) and span.maximum() is None
    cospan = cospan_inclusion().source
    assert cospan.maximum() == (1, 1) and cospan.minimum() is None
    p = random_poset(4, seed=1)
    sub, inc = full_subposet(p, p.elements)
    assert sub == p and inc == p.identity()


def test_slices():
    u = span_inclusion()
    assert len(slice_under(u, (1, 1))[0]) == 3
    incl = MonotoneMap(point(), chain_poset(1), {0: 0})
    assert len(slice_under(incl, 0)[0]) == 1
    assert len(slice_over(cospan_inclusion(), (0, 0))[0]) == 3
    top = MonotoneMap(point(), chain_poset(1), {0: 0})
    assert len(slice_over(top, 1)[0]) == 0


@given(posets)
def test_identity_slices_are_down_and_up_sets(p):
    for b in p.elements:
        assert list(slice_under(p.identity(), b)[0].elements) == [a for a in p.elements if p.leq(a, b)]
        assert list(slice_over(p.identity(), b)[0].elements) == [a for a in p.elements if p.leq(b, a)]


def test_cubes_and_chunks():
    assert is_order_isomorphic(cube(2), square())
    src, _ = cube_chunk(3, 0, 1)
    assert len(src) == 4 and src.minimum() == ()
    snk, _ = cube_chunk(3, 2, 3)
    assert len(snk) == 4 and snk.maximum() == (1, 2, 3)
    assert cube_chunk(3, 0, 3)[0] == cube(3)


def test_chunk_inclusions_compose():
    inner, i = cube_chunk(3, 1, 2)
    mid, j = full_subposet(cube(3), [s for s in cube(3).elements if len(s) >= 1])
    via, k = full_subposet(mid, inner.elements)
    assert j.compose(k).assignment == i.assignment


def test_mesh_windows():
    w = mesh_window(1, -1, 1)
    assert all(j in (i - 1, i, i + 1) for i, j in w.elements) and len(w) == 9
    w2 = mesh_window(2, 0, 0)
    assert (0, 0) in w2 and (0, 1) in w2 and w2.leq((0, 0), (0, 1))
    w3 = mesh_window(3, -1, 2)
    assert len(mesh_squares(w3)) > 0


def test_twisted_diagonal_down_set():
    tw, _ = twisted_diag_downset(chain_poset(1))
    assert set(tw.elements) == {(0, 0), (1, 1), (1, 0)}
    assert set(twisted_diag_downset(antichain(2))[0].elements) == {(0, 0), (1, 1)}
    assert len(twisted_diag_downset(point())[0]) == 1


@given(posets)
def test_twisted_diagonal_elements_are_relations(p):
    tw, _ = twisted_diag_downset(p)
    assert len(tw) == len(p) + len(p.relations)


@given(posets)
def test_twisted_diagonal_of_opposite(p):
    a, _ = twisted_diag_downset(opposite(p))
    b, _ = twisted_diag_downset(p)
    swapped = Poset([(y, x) for x, y in b.elements], leq=lambda s, t: b.leq((s[1], s[0]), (t[1], t[0])))
    assert is_order_isomorphic(a, swapped)


def test_strict_chains():
    assert strict_chains(chain_poset(1), 1) == [(0, 1)]
    assert strict_chains(chain_poset(2), 2) == [(0, 1, 2)]
    assert sorted(strict_chains(square(), 2)) == [((0, 0), (0, 1), (1, 1)), ((0, 0), (1, 0), (1, 1))]


def test_sieves():
    zero = MonotoneMap(point(), chain_poset(1), {0: 0})
    one = MonotoneMap(point(), chain_poset(1), {0: 1})
    assert is_sieve(zero) and not is_cosieve(zero)
    assert is_cosieve(one)
    assert is_sieve(span_inclusion())


def test_empty_poset():
    e = empty_poset()
    assert len(e) == 0 and e.chains(0) == []
