import random

import pytest
import sympy
from hypothesis import given

from derivk.chains import (
    ChainComplex, ChainError, ChainMap, cylinder, homology_dims, homology_map, is_quasi_iso, mapping_cone,
    null_homotopy, quasi_inverse, random_chain_map, shift, tensor,
)
from derivk.linalg import QQ, Matrix, rank
from strategies import chain_maps, complexes


def k(field, n=0, dim=1):
    return ChainComplex.sphere(field, n, dim)


def two_term(field, entry):
    """k --entry--> k in degrees 1 -> 0."""
    return ChainComplex(field, {0: 1, 1: 1}, {1: Matrix.from_rows(field, [[entry]])})


def sympy_homology(c):
    """dim H_n = dim C_n - rank d_n - rank d_{n+1}, ranks computed by sympy."""
    def r(n):
        d = c.d(n)
        if not d.rows or not d.cols:
            return 0
        return sympy.Matrix(d.tolist()).rank()
    return {n: c.dim(n) - r(n) - r(n + 1) for n in c.dims if c.dim(n) - r(n) - r(n + 1)}


def test_differential_squares_to_zero_is_enforced(field):
    one = Matrix.from_rows(field, [[1]])
    with pytest.raises(ChainError):
        ChainComplex(field, {0: 1, 1: 1, 2: 1}, {1: one, 2: one})


def test_chain_map_condition_is_enforced(field):
    with pytest.raises(ChainError):
        ChainMap(two_term(field, 1), two_term(field, 0), {0: Matrix.from_rows(field, [[1]])})


def test_homology_examples(field):
    assert homology_dims(k(field)) == {0: 1}
    ident = ChainMap.identity(k(field))
    assert homology_dims(mapping_cone(ident).complex) == {}
    assert homology_dims(two_term(field, 0)) == {0: 1, 1: 1}


def test_homology_map_examples(field):
    c = two_term(field, 1)
    hm = homology_map(ChainMap.identity(k(field)))
    assert hm[0] == Matrix.identity(field, 1)
    assert all(m.is_zero() for m in homology_map(ChainMap.zero(k(field), k(field))).values())
    one = Matrix.from_rows(field, [[1]])
    with pytest.raises(ChainError):
        ChainMap(two_term(field, 0), c, {0: one, 1: one})
    f = ChainMap(two_term(field, 0), c, {0: one})
    assert all(m.rows == 0 or m.is_zero() for m in homology_map(f).values())
    assert homology_dims(c) == {}


def test_shift_examples(field, rng):
    assert shift(k(field), 1).dims == {1: 1}
    c = two_term(field, 0)
    assert shift(shift(c, 1), -1).dims == c.dims


@given(complexes(field=QQ))
def test_homology_matches_sympy(c):
    assert homology_dims(c) == sympy_homology(c)


@given(complexes())
def test_shift_moves_homology(c):
    for s in (-2, 1, 3):
        assert homology_dims(shift(c, s)) == {n + s: d for n, d in homology_dims(c).items()}


def test_tensor_examples(field, rng):
    from derivk.chains import random_complex

    d = random_complex(field, rng)
    assert tensor(k(field), d).dims == d.dims
    assert tensor(k(field, 1), k(field, 1)).dims == {2: 1}
    contractible = mapping_cone(ChainMap.identity(k(field))).complex
    assert homology_dims(tensor(contractible, d)) == {}


@given(complexes(max_dim=2), complexes(max_dim=2))
def test_kunneth(c, d):
    if c.field != d.field:
        return
    expected = {}
    for p, a in homology_dims(c).items():
        for q, b in homology_dims(d).items():
            expected[p + q] = expected.get(p + q, 0) + a * b
    assert homology_dims(tensor(c, d)) == expected


@given(complexes(max_dim=2), complexes(max_dim=2), complexes(max_dim=2))
def test_tensor_associative_and_unital(a, b, c):
    if not a.field == b.field == c.field:
        return
    left, right = tensor(tensor(a, b), c), tensor(a, tensor(b, c))
    assert left.dims == right.dims
    assert homology_dims(left) == homology_dims(right)
    assert tensor(k(a.field), a).dims == a.dims == tensor(a, k(a.field)).dims


def test_cone_examples(field):
    kk = k(field)
    assert homology_dims(mapping_cone(ChainMap.identity(kk)).complex) == {}
    assert homology_dims(mapping_cone(ChainMap.zero(kk, ChainComplex.zero(field))).complex) == {1: 1}
    assert homology_dims(mapping_cone(ChainMap.zero(kk, kk)).complex) == {0: 1, 1: 1}


@given(chain_maps())
def test_long_exact_sequence(f):
    cone = homology_dims(mapping_cone(f).complex)
    hf = homology_map(f)
    hx, hy = homology_dims(f.source), homology_dims(f.target)

    def rk(n):
        m = hf.get(n)
        return rank(m) if m is not None and m.rows and m.cols else 0

    for n in set(cone) | set(hy) | {m + 1 for m in hx}:
        coker = hy.get(n, 0) - rk(n)
        ker = hx.get(n - 1, 0) - rk(n - 1)
        assert cone.get(n, 0) == coker + ker


def test_quasi_iso_examples(field, rng):
    assert is_quasi_iso(ChainMap.identity(k(field)))
    assert not is_quasi_iso(ChainMap.zero(ChainComplex.zero(field), k(field)))
    f = random_chain_map(field, rng, two_term(field, 0), k(field))
    assert is_quasi_iso(cylinder(f).projection)


@given(chain_maps())
def test_quasi_iso_iff_invertible_homology(f):
    hf = homology_map(f)
    hx, hy = homology_dims(f.source), homology_dims(f.target)
    invertible = hx == hy and all(rank(m) == m.rows == m.cols for m in hf.values() if m.rows or m.cols)
    assert is_quasi_iso(f) == invertible


@given(chain_maps())
def test_cylinder_and_quasi_inverse(f):
    cyl = cylinder(f)
    assert is_quasi_iso(cyl.projection)
    assert cyl.projection @ cyl.source_inclusion == f
    p = cyl.projection
    g = quasi_inverse(p)
    assert is_quasi_iso(g)
    assert null_homotopy(p @ g - ChainMap.identity(f.target)) is not None or not f.target.dims


def test_random_chain_maps_are_chain_maps(field):
    rng = random.Random(7)
    from derivk.chains import random_complex

    for _ in range(10):
        f = random_chain_map(field, rng, random_complex(field, rng), random_complex(field, rng))
        assert f.defect() is None
