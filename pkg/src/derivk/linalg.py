"""Exact field arithmetic and dense linear algebra.

Two fields are supported: the rationals (entries are ``Fraction``) and a prime
field F_p (entries are ints in ``[0, p)``). Matrices are immutable; every
operation returns a fresh matrix. Over F_p the row reduction is vectorised
with numpy int64, which is exact because ``p < 2**31``.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals when ``p`` is None, otherwise the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not _is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")
            if self.p >= 2**31:
                raise ValueError("prime modulus must be below 2**31")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``Q`` or ``Fp:<p>``."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(None)
        if t.startswith("Fp:"):
            return cls(int(t[3:]))
        raise ValueError(f"unknown field {text!r}; expected Q or Fp:<p>")

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    def __str__(self):
        return "Q" if self.p is None else f"Fp:{self.p}"

    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction or ``"p/q"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("division by zero in field")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def random(self, rng, lo: int = -2, hi: int = 2):
        return self(rng.randint(lo, hi))


QQ = Field(None)
F32003 = Field(32003)


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "_a")

    def __init__(self, field: Field, rows: int, cols: int, entries=None):
        dtype = object if field.p is None else np.int64
        if entries is None:
            a = np.zeros((rows, cols), dtype=dtype)
            if field.p is None:
                a[...] = Fraction(0)
        elif isinstance(entries, np.ndarray):
            a = entries
            if a.shape != (rows, cols):
                raise ValueError(f"entries shape {a.shape} != {(rows, cols)}")
        else:
            flat = [field(x) for row in entries for x in row]
            if len(flat) != rows * cols:
                raise ValueError("entries table has the wrong size")
            a = np.empty((rows, cols), dtype=dtype)
            if rows * cols:
                a[...] = np.array(flat, dtype=dtype).reshape(rows, cols)
        a.flags.writeable = False
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_a", a)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # construction helpers

    @classmethod
    def _wrap(cls, field: Field, a: np.ndarray) -> "Matrix":
        if field.p is not None:
            a = np.mod(a, field.p).astype(np.int64, copy=False)
        return cls(field, a.shape[0], a.shape[1], a)

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        m = np.zeros((n, n), dtype=object if field.p is None else np.int64)
        if field.p is None:
            m[...] = Fraction(0)
            for i in range(n):
                m[i, i] = Fraction(1)
        else:
            m[np.arange(n), np.arange(n)] = 1
        return cls(field, n, n, m)

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [list(c) for c in columns]
        return cls(field, rows, len(cols), [[c[i] for c in cols] for i in range(rows)])

    @classmethod
    def block(cls, field: Field, blocks: Sequence[Sequence["Matrix | None"]],
              row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "Matrix":
        """Assemble a block matrix; ``None`` blocks are zero."""
        out = cls.zero(field, sum(row_sizes), sum(col_sizes)).array()
        r0 = 0
        for bi, rs in enumerate(row_sizes):
            c0 = 0
            for bj, cs in enumerate(col_sizes):
                b = blocks[bi][bj]
                if b is not None:
                    if b.shape != (rs, cs):
                        raise ValueError(f"block ({bi},{bj}) has shape {b.shape}, expected {(rs, cs)}")
                    out[r0:r0 + rs, c0:c0 + cs] = b._a
                c0 += cs
            r0 += rs
        return cls._wrap(field, out)

    # accessors

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def array(self) -> np.ndarray:
        """A writable copy of the underlying array."""
        return self._a.copy()

    def __getitem__(self, ij):
        i, j = ij
        return self._a[i, j]

    def tolist(self) -> list[list]:
        return [[self._a[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def column(self, j: int) -> list:
        return [self._a[i, j] for i in range(self.rows)]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not np.any(self._a != 0)

    # arithmetic

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zero(self.field, self.rows, other.cols)
        if self.field.p is None:
            return Matrix._wrap(self.field, _q_dot(self._a, other._a))
        p = self.field.p
        if self.cols <= 8:
            return Matrix._wrap(self.field, self._a @ other._a)
        # split to keep the int64 accumulator exact for long inner dimensions
        acc = np.zeros((self.rows, other.cols), dtype=np.int64)
        step = 8
        for k in range(0, self.cols, step):
            acc = (acc + self._a[:, k:k + step] @ other._a[k:k + step, :]) % p
        return Matrix._wrap(self.field, acc)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap(self.field, self._a + other._a)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap(self.field, self._a - other._a)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(self.field, -self._a)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        if self.field.p is None:
            return Matrix._wrap(self.field, self._a * c)
        return Matrix._wrap(self.field, self._a * int(c))

    def transpose(self) -> "Matrix":
        return Matrix._wrap(self.field, self._a.T.copy())

    T = property(transpose)

    def submatrix(self, rows: Iterable[int] | slice, cols: Iterable[int] | slice) -> "Matrix":
        r = rows if isinstance(rows, slice) else list(rows)
        c = cols if isinstance(cols, slice) else list(cols)
        a = self._a[r, :][:, c]
        return Matrix._wrap(self.field, a.copy())

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._wrap(self.field, np.hstack([self._a, other._a]))

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._wrap(self.field, np.vstack([self._a, other._a]))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.all(self._a == other._a)))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self._a.ravel().tolist())))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.tolist())
        return f"Matrix[{self.field}]({self.rows}x{self.cols}: {body})"


# row reduction


def _clear_denominators(a: np.ndarray) -> tuple[np.ndarray, int]:
    den = math.lcm(*(x.denominator for x in a.flat)) if a.size else 1
    if den == 1:
        return np.frompyfunc(lambda x: x.numerator, 1, 1)(a), 1
    return np.frompyfunc(lambda x: x.numerator * (den // x.denominator), 1, 1)(a), den


def _q_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # integer products are far cheaper than Fraction products
    ia, da = _clear_denominators(a)
    ib, db = _clear_denominators(b)
    prod = ia.dot(ib)
    den = da * db
    return np.frompyfunc(lambda x: Fraction(x, den), 1, 1)(prod).astype(object)


def _rref_fp_small(a: np.ndarray, p: int, ncols: int | None = None):
    m, n = a.shape
    rows = [[int(x) % p for x in row] for row in a.tolist()]
    ncols = n if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        i = next((k for k in range(r, m) if rows[k][c]), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [x * inv % p for x in rows[r]]
        rows[r] = pr
        nzc = [j for j in range(c, n) if pr[j]]
        for k in range(m):
            f = rows[k][c]
            if k != r and f:
                rk = rows[k]
                for j in nzc:
                    rk[j] = (rk[j] - f * pr[j]) % p
        pivots.append(c)
        r += 1
    return np.array(rows, dtype=np.int64).reshape(m, n), pivots


def _rref_fp(a: np.ndarray, p: int, ncols: int | None = None):
    m, n = a.shape
    if m * n <= 144:
        # numpy call overhead dominates on small matrices
        return _rref_fp_small(a, p, ncols)
    a = np.mod(a, p).astype(np.int64)
    ncols = n if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    return [x // g for x in row] if g > 1 else row


def _rref_q(a: np.ndarray, ncols: int | None = None):
    # fraction-free elimination on integer rows, normalised at the end
    m, n = a.shape
    rows = []
    for i in range(m):
        fr = [Fraction(x) for x in a[i]]
        den = math.lcm(*(x.denominator for x in fr))
        rows.append(_primitive([x.numerator * (den // x.denominator) for x in fr]))
    ncols = n if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        i = next((k for k in range(r, m) if rows[k][c]), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        pr = rows[r]
        pv = pr[c]
        nzc = [j for j in range(n) if pr[j]]
        for k in range(m):
            f = rows[k][c]
            if k != r and f:
                g = math.gcd(pv, f)
                s1, s2 = pv // g, f // g
                rk = [x * s1 for x in rows[k]]
                for j in nzc:
                    rk[j] -= s2 * pr[j]
                rows[k] = _primitive(rk)
        pivots.append(c)
        r += 1
    out = np.empty((m, n), dtype=object)
    for i in range(m):
        lead = rows[i][pivots[i]] if i < len(pivots) else 1
        for j in range(n):
            out[i, j] = Fraction(rows[i][j], lead)
    return out, pivots


def rref(m: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form, pivoting on the first nonzero entry.

    Only the first ``ncols`` columns are used as pivot candidates, which lets
    callers reduce an augmented matrix ``[A | B]`` in one pass.
    """
    if m.rows == 0 or m.cols == 0:
        return m, []
    if m.field.p is None:
        a, piv = _rref_q(m._a, ncols)
    else:
        a, piv = _rref_fp(m._a, m.field.p, ncols)
    return Matrix._wrap(m.field, a), piv


def rank(m: Matrix) -> int:
    """Dimension of the column space."""
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of the null space, one vector per free column."""
    field = m.field
    if m.cols == 0:
        return []
    r, piv = rref(m)
    pivset = set(piv)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [field(0)] * m.cols
        v[free] = field(1)
        for i, pc in enumerate(piv):
            v[pc] = field(-r[i, free])
        basis.append(v)
    return basis


def kernel_matrix(m: Matrix) -> Matrix:
    """Kernel basis as the columns of a matrix."""
    return Matrix.from_columns(m.field, kernel_basis(m), m.cols)


def solve_matrix(m: Matrix, b: Matrix) -> Matrix | None:
    """Some X with m @ X == b, or None when a column of b is outside the image."""
    if b.rows != m.rows:
        raise ValueError(f"right-hand side has {b.rows} rows, matrix has {m.rows}")
    field = m.field
    x = Matrix.zero(field, m.cols, b.cols).array()
    if b.cols == 0:
        return Matrix._wrap(field, x)
    if m.rows == 0:
        return Matrix._wrap(field, x)
    r, piv = rref(m.hstack(b), ncols=m.cols)
    nrank = len(piv)
    if nrank < r.rows and not r.submatrix(range(nrank, r.rows), range(m.cols, m.cols + b.cols)).is_zero():
        return None
    ra = r._a
    for i, pc in enumerate(piv):
        x[pc, :] = ra[i, m.cols:]
    return Matrix._wrap(field, x)


def solve(m: Matrix, b: Sequence) -> list | None:
    """Some x with m·x = b, or None when b is not in the image."""
    if len(b) != m.rows:
        raise ValueError(f"vector of length {len(b)} does not match {m.rows} rows")
    bm = Matrix.from_columns(m.field, [list(b)], m.rows)
    x = solve_matrix(m, bm)
    return None if x is None else x.column(0)


def image_basis(m: Matrix) -> Matrix:
    """Columns of m at pivot positions: a basis of the column space."""
    _, piv = rref(m)
    return m.submatrix(range(m.rows), piv)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    x = solve_matrix(m, Matrix.identity(m.field, m.rows))
    if x is None or rank(m) != m.rows:
        raise ZeroDivisionError("matrix is singular")
    return x


def complement_basis(field: Field, sub: Matrix, n: int) -> Matrix:
    """Standard basis vectors extending the columns of ``sub`` to a basis of k^n.

    ``sub`` must have independent columns.
    """
    cols = sub.cols
    aug = sub.hstack(Matrix.identity(field, n))
    _, piv = rref(aug)
    extra = [c - cols for c in piv if c >= cols]
    return Matrix.identity(field, n).submatrix(range(n), extra)


def extend_independent(field: Field, base: Matrix, candidates: Matrix) -> list[int]:
    """Indices of candidate columns that extend ``base`` independently (greedy)."""
    aug = base.hstack(candidates)
    _, piv = rref(aug)
    return [c - base.cols for c in piv if c >= base.cols]


def random_matrix(field: Field, rows: int, cols: int, rng, lo: int = -2, hi: int = 2) -> Matrix:
    return Matrix.from_rows(field, [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols)
