from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from derivk.linalg import F32003, QQ, Field, Matrix, inverse, kernel_basis, rank, solve

small = st.integers(min_value=-3, max_value=3)


@st.composite
def int_matrices(draw, max_side=5):
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    return [[draw(small) for _ in range(c)] for _ in range(r)], r, c


def test_field_axioms_exact():
    assert QQ(1) / QQ(3) + QQ(2) / QQ(3) == 1
    a = F32003(12345)
    assert a * F32003.inv(a) % 32003 == 1
    with pytest.raises(ZeroDivisionError):
        QQ.inv(0)
    with pytest.raises(ZeroDivisionError):
        F32003.inv(0)


def test_modulus_must_be_prime():
    with pytest.raises(ValueError):
        Field(32004)
    assert Field.parse("Fp:32003") == F32003
    assert Field.parse("Q") == QQ


def test_entries_table_size_checked():
    with pytest.raises(ValueError):
        Matrix(QQ, 2, 2, [[1, 2, 3]])


def test_rank_examples(field):
    assert rank(Matrix.identity(field, 2)) == 2
    assert rank(Matrix.zero(field, 3, 3)) == 0
    assert rank(Matrix.from_rows(field, [[1, 2], [2, 4]])) == 1


def test_kernel_examples(field):
    assert kernel_basis(Matrix.identity(field, 3)) == []
    assert len(kernel_basis(Matrix.zero(field, 2, 3))) == 3
    (v,) = kernel_basis(Matrix.from_rows(field, [[1, 1]]))
    assert field(v[0] + v[1]) == 0 and v[0] != 0


def test_solve_examples(field):
    b = [field(3), field(-1)]
    assert solve(Matrix.identity(field, 2), b) == b
    assert solve(Matrix.zero(field, 2, 2), [field(1), field(0)]) is None
    m = Matrix.from_rows(field, [[1, 2], [2, 4]])
    x = solve(m, [field(1), field(2)])
    assert x is not None
    assert (m @ Matrix.from_columns(field, [x], 2)).column(0) == [field(1), field(2)]
    assert solve(m, [field(1), field(3)]) is None


@given(int_matrices())
def test_rank_matches_sympy_oracle(data):
    rows, r, c = data
    expected = sympy.Matrix(r, c, [x for row in rows for x in row]).rank() if r and c else 0
    assert rank(Matrix(QQ, r, c, rows)) == expected


@given(int_matrices())
def test_rank_nullity(data):
    rows, r, c = data
    for f in (QQ, F32003):
        m = Matrix(f, r, c, rows)
        assert rank(m) + len(kernel_basis(m)) == c
        assert rank(m) <= min(r, c)


@given(int_matrices())
def test_fields_agree_on_small_integer_matrices(data):
    rows, r, c = data
    assert rank(Matrix(QQ, r, c, rows)) == rank(Matrix(F32003, r, c, rows))


@given(int_matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_is_exact_when_consistent(data, bvals):
    rows, r, c = data
    for f in (QQ, F32003):
        m = Matrix(f, r, c, rows)
        b = [f(v) for v in bvals[:r]]
        aug = m.hstack(Matrix.from_columns(f, [b], r)) if r else m
        x = solve(m, b)
        if rank(aug) == rank(m):
            assert x is not None
            if r and c:
                assert (m @ Matrix.from_columns(f, [x], c)).column(0) == b
        else:
            assert x is None


def test_inverse_roundtrip():
    m = Matrix.from_rows(QQ, [[2, 1], [1, 1]])
    assert m @ inverse(m) == Matrix.identity(QQ, 2)
    assert inverse(m)[0, 0] == Fraction(1)


def test_matrices_are_immutable():
    m = Matrix.identity(QQ, 2)
    with pytest.raises(AttributeError):
        m.field = F32003
