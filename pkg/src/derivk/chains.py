"""Bounded chain complexes of finite-dimensional vector spaces and chain maps.

Grading is homological: ``d_n`` maps degree n to degree n - 1 and is stored as
a ``dims[n-1] x dims[n]`` matrix acting on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .linalg import (Field, Matrix, complement_basis, extend_independent, image_basis, inverse,
                     kernel_matrix, rank, solve_matrix)


class ChainError(ValueError):
    pass


class ChainComplex:
    """A bounded chain complex; d∘d = 0 is checked on construction."""

    def __init__(self, field: Field, dims: Mapping[int, int], diffs: Mapping[int, Matrix] | None = None,
                 check: bool = True):
        self.field = field
        self.dims = {int(n): int(k) for n, k in dims.items() if k > 0}
        self.diffs: dict[int, Matrix] = {}
        for n, m in (diffs or {}).items():
            n = int(n)
            if m.field != field:
                raise ChainError("differential over the wrong field")
            if m.shape != (self.dim(n - 1), self.dim(n)):
                raise ChainError(f"d_{n} has shape {m.shape}, expected {(self.dim(n - 1), self.dim(n))}")
            if m.rows and m.cols and not m.is_zero():
                self.diffs[n] = m
        self._hcache: dict | None = None
        if check:
            for n in self.diffs:
                if n - 1 in self.diffs and not (self.diffs[n - 1] @ self.diffs[n]).is_zero():
                    raise ChainError(f"d_{n - 1} d_{n} != 0")

    # construction

    @classmethod
    def zero(cls, field: Field) -> "ChainComplex":
        return cls(field, {})

    @classmethod
    def sphere(cls, field: Field, degree: int = 0, dim: int = 1) -> "ChainComplex":
        """k^dim concentrated in one degree; ``sphere(F, n)`` is k[n]."""
        return cls(field, {degree: dim})

    # accessors

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> Matrix:
        m = self.diffs.get(n)
        if m is None:
            return Matrix.zero(self.field, self.dim(n - 1), self.dim(n))
        return m

    @property
    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return not self.dims

    def span(self) -> range:
        if not self.dims:
            return range(0)
        return range(min(self.dims), max(self.dims) + 1)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if self.field != other.field or self.dims != other.dims:
            return False
        return all(self.d(n) == other.d(n) for n in self.dims)

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{n}:{k}" for n, k in sorted(self.dims.items()))
        return f"ChainComplex[{self.field}]({{{body}}})"

    # homology

    def _homology(self) -> dict:
        if self._hcache is None:
            self._hcache = {}
        return self._hcache

    def homology_data(self, n: int) -> tuple[Matrix, Matrix]:
        """Cycle representatives R (columns) and a projection P with P R = I.

        The representatives extend a basis of the boundaries greedily through a
        kernel basis, so the choice is deterministic. P kills boundaries and a
        fixed complement of the cycles, hence is a chain map onto homology.
        """
        cache = self._homology()
        if n in cache:
            return cache[n]
        F = self.field
        k = self.dim(n)
        if k == 0:
            res = (Matrix.zero(F, 0, 0), Matrix.zero(F, 0, 0))
            cache[n] = res
            return res
        bnd = image_basis(self.d(n + 1)) if self.dim(n + 1) else Matrix.zero(F, k, 0)
        cyc = kernel_matrix(self.d(n)) if self.dim(n - 1) else Matrix.identity(F, k)
        pick = extend_independent(F, bnd, cyc)
        reps = cyc.submatrix(range(k), pick)
        zb = bnd.hstack(reps)
        rest = complement_basis(F, zb, k)
        full = zb.hstack(rest)
        inv = inverse(full)
        proj = inv.submatrix(range(bnd.cols, bnd.cols + reps.cols), range(k))
        cache[n] = (reps, proj)
        return reps, proj

    def homology_dims(self) -> dict[int, int]:
        out = {}
        for n in self.degrees:
            h = self.homology_dim(n)
            if h:
                out[n] = h
        return out

    def homology_dim(self, n: int) -> int:
        k = self.dim(n)
        if k == 0:
            return 0
        return k - rank(self.d(n)) - rank(self.d(n + 1))

    def is_acyclic(self) -> bool:
        return all(self.homology_dim(n) == 0 for n in self.degrees)


def _block_diag(field: Field, mats: list[Matrix]) -> Matrix:
    rs = [m.rows for m in mats]
    cs = [m.cols for m in mats]
    blocks = [[mats[i] if i == j else None for j in range(len(mats))] for i in range(len(mats))]
    return Matrix.block(field, blocks, rs, cs)


def direct_sum(field: Field, cs: Iterable[ChainComplex]) -> ChainComplex:
    cs = list(cs)
    degs = sorted({n for c in cs for n in c.dims})
    dims = {n: sum(c.dim(n) for c in cs) for n in degs}
    diffs = {}
    for n in degs:
        if dims.get(n - 1):
            diffs[n] = _block_diag(field, [c.d(n) for c in cs])
    return ChainComplex(field, dims, diffs, check=False)


class ChainMap:
    """Degree-zero map of complexes; commutation with d is checked."""

    def __init__(self, source: ChainComplex, target: ChainComplex, comps: Mapping[int, Matrix] | None = None,
                 check: bool = True):
        if source.field != target.field:
            raise ChainError("field mismatch")
        self.source = source
        self.target = target
        self.field = source.field
        self.comps: dict[int, Matrix] = {}
        for n, m in (comps or {}).items():
            if m.shape != (target.dim(n), source.dim(n)):
                raise ChainError(f"component {n} has shape {m.shape}, expected {(target.dim(n), source.dim(n))}")
            if m.rows and m.cols and not m.is_zero():
                self.comps[n] = m
        if check:
            bad = self.defect()
            if bad is not None:
                raise ChainError(f"not a chain map in degree {bad}")

    def __getitem__(self, n: int) -> Matrix:
        m = self.comps.get(n)
        if m is None:
            return Matrix.zero(self.field, self.target.dim(n), self.source.dim(n))
        return m

    def defect(self) -> int | None:
        """First degree where d f != f d, or None."""
        for n in sorted(set(self.source.dims) | set(self.target.dims)):
            lhs = self.target.d(n) @ self[n]
            rhs = self[n - 1] @ self.source.d(n)
            if lhs != rhs:
                return n
        return None

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, {n: Matrix.identity(c.field, k) for n, k in c.dims.items()}, check=False)

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return cls(source, target, {}, check=False)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition self ∘ other."""
        if other.target != self.source:
            raise ChainError("maps are not composable")
        degs = set(self.comps) & set(other.comps)
        return ChainMap(other.source, self.target, {n: self[n] @ other[n] for n in degs}, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        self._same(other)
        degs = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, {n: self[n] + other[n] for n in degs}, check=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: -m for n, m in self.comps.items()}, check=False)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self.comps.items()}, check=False)

    def _same(self, other):
        if self.source != other.source or self.target != other.target:
            raise ChainError("maps have different source or target")

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return all(self[n] == other[n] for n in set(self.comps) | set(other.comps))

    __hash__ = None

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def homology_dims(c: ChainComplex) -> dict[int, int]:
    return c.homology_dims()


def homology_map(f: ChainMap) -> dict[int, Matrix]:
    """H_n(f) in the canonical homology bases, for every degree where it is nonempty."""
    out = {}
    for n in sorted(set(f.source.dims) | set(f.target.dims)):
        rs, _ = f.source.homology_data(n)
        _, pt = f.target.homology_data(n)
        if rs.cols or pt.rows:
            out[n] = pt @ f[n] @ rs if rs.cols and pt.rows else Matrix.zero(f.field, pt.rows, rs.cols)
    return out


def homology_complex(c: ChainComplex) -> ChainComplex:
    """The homology of c as a complex with zero differential."""
    return ChainComplex(c.field, c.homology_dims())


def homology_inclusion(c: ChainComplex) -> ChainMap:
    """Chain map H(c) -> c choosing the canonical cycle representatives."""
    h = homology_complex(c)
    return ChainMap(h, c, {n: c.homology_data(n)[0] for n in h.dims}, check=False)


def homology_projection(c: ChainComplex) -> ChainMap:
    """Chain map c -> H(c) left inverse to :func:`homology_inclusion`."""
    h = homology_complex(c)
    return ChainMap(c, h, {n: c.homology_data(n)[1] for n in h.dims}, check=False)


def shift(c: ChainComplex, k: int) -> ChainComplex:
    """dims[n] of the result is dims[n-k]; the differential is scaled by (-1)^k."""
    sign = -1 if k % 2 else 1
    dims = {n + k: m for n, m in c.dims.items()}
    diffs = {n + k: (m if sign == 1 else -m) for n, m in c.diffs.items()}
    return ChainComplex(c.field, dims, diffs, check=False)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(shift(f.source, k), shift(f.target, k), {n + k: m for n, m in f.comps.items()}, check=False)


def _kron(a: Matrix, b: Matrix) -> Matrix:
    if a.rows * b.rows == 0 or a.cols * b.cols == 0:
        return Matrix.zero(a.field, a.rows * b.rows, a.cols * b.cols)
    return Matrix._wrap(a.field, np.kron(a.array(), b.array()))


def _tensor_layout(c: ChainComplex, d: ChainComplex):
    """For each total degree, the list of (i, j, offset) blocks."""
    layout: dict[int, list[tuple[int, int, int]]] = {}
    for i in c.degrees:
        for j in d.degrees:
            layout.setdefault(i + j, [])
    for n in layout:
        off = 0
        for i in c.degrees:
            j = n - i
            if d.dim(j):
                layout[n].append((i, j, off))
                off += c.dim(i) * d.dim(j)
    return layout


def tensor(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """Tensor product with d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy; basis x-major."""
    F = c.field
    layout = _tensor_layout(c, d)
    dims = {n: sum(c.dim(i) * d.dim(j) for i, j, _ in blocks) for n, blocks in layout.items()}
    diffs = {}
    for n, blocks in layout.items():
        if not dims.get(n - 1):
            continue
        out = Matrix.zero(F, dims[n - 1], dims[n]).array()
        tgt = {(i, j): off for i, j, off in layout.get(n - 1, [])}
        for i, j, off in blocks:
            w = c.dim(i) * d.dim(j)
            if (i - 1, j) in tgt:
                m = _kron(c.d(i), Matrix.identity(F, d.dim(j)))
                o = tgt[(i - 1, j)]
                out[o:o + m.rows, off:off + w] += m.array()
            if (i, j - 1) in tgt:
                m = _kron(Matrix.identity(F, c.dim(i)), d.d(j))
                if i % 2:
                    m = -m
                o = tgt[(i, j - 1)]
                out[o:o + m.rows, off:off + w] += m.array()
        diffs[n] = Matrix._wrap(F, out)
    return ChainComplex(F, dims, diffs)


def tensor_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """f ⊗ g for degree-zero chain maps (no Koszul sign arises)."""
    F = f.field
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    ls = _tensor_layout(f.source, g.source)
    lt = _tensor_layout(f.target, g.target)
    comps = {}
    for n in src.dims:
        if not tgt.dim(n):
            continue
        out = Matrix.zero(F, tgt.dim(n), src.dim(n)).array()
        toff = {(i, j): o for i, j, o in lt.get(n, [])}
        for i, j, off in ls[n]:
            if (i, j) in toff:
                m = _kron(f[i], g[j])
                o = toff[(i, j)]
                out[o:o + m.rows, off:off + m.cols] += m.array()
        comps[n] = Matrix._wrap(F, out)
    return ChainMap(src, tgt, comps, check=False)


@dataclass(frozen=True)
class Cone:
    complex: ChainComplex
    inclusion: ChainMap
    projection: ChainMap

    def __iter__(self):
        return iter((self.complex, self.inclusion, self.projection))


def mapping_cone(f: ChainMap) -> Cone:
    """C(f)_n = y_n ⊕ x_{n-1} with differential [[d_y, f], [0, -d_x]]."""
    F = f.field
    x, y = f.source, f.target
    degs = sorted(set(y.dims) | {n + 1 for n in x.dims})
    dims = {n: y.dim(n) + x.dim(n - 1) for n in degs}
    diffs = {}
    for n in degs:
        if not dims.get(n - 1):
            continue
        diffs[n] = Matrix.block(F, [[y.d(n), f[n - 1]], [None, -x.d(n - 1)]],
                                [y.dim(n - 1), x.dim(n - 2)], [y.dim(n), x.dim(n - 1)])
    cone = ChainComplex(F, dims, diffs, check=False)
    inc = ChainMap(y, cone, {n: Matrix.block(F, [[Matrix.identity(F, y.dim(n))], [None]],
                                             [y.dim(n), x.dim(n - 1)], [y.dim(n)]) for n in y.dims}, check=False)
    sx = shift(x, 1)
    proj = ChainMap(cone, sx, {n: Matrix.block(F, [[None, Matrix.identity(F, x.dim(n - 1))]],
                                               [x.dim(n - 1)], [y.dim(n), x.dim(n - 1)]) for n in sx.dims},
                    check=False)
    return Cone(cone, inc, proj)


@dataclass(frozen=True)
class Cylinder:
    complex: ChainComplex
    source_inclusion: ChainMap
    target_inclusion: ChainMap
    projection: ChainMap


def cylinder(f: ChainMap) -> Cylinder:
    """Mapping cylinder (x, s, y) with d(x,s,y) = (dx - s, -ds, dy + f s).

    x -> Cyl is injective and Cyl -> y, (x, s, y) -> f x + y, is a quasi-iso.
    """
    F = f.field
    x, y = f.source, f.target
    degs = sorted(set(x.dims) | {n + 1 for n in x.dims} | set(y.dims))
    sizes = {n: [x.dim(n), x.dim(n - 1), y.dim(n)] for n in degs}
    dims = {n: sum(s) for n, s in sizes.items()}
    diffs = {}
    for n in degs:
        if not dims.get(n - 1):
            continue
        I = Matrix.identity(F, x.dim(n - 1))
        diffs[n] = Matrix.block(F, [[x.d(n), -I, None],
                                    [None, -x.d(n - 1), None],
                                    [None, f[n - 1], y.d(n)]], sizes[n - 1], sizes[n])
    cyl = ChainComplex(F, dims, diffs)
    ix = ChainMap(x, cyl, {n: Matrix.block(F, [[Matrix.identity(F, x.dim(n))], [None], [None]],
                                           sizes[n], [x.dim(n)]) for n in x.dims})
    iy = ChainMap(y, cyl, {n: Matrix.block(F, [[None], [None], [Matrix.identity(F, y.dim(n))]],
                                           sizes[n], [y.dim(n)]) for n in y.dims})
    pr = ChainMap(cyl, y, {n: Matrix.block(F, [[f[n], None, Matrix.identity(F, y.dim(n))]],
                                           [y.dim(n)], sizes[n]) for n in y.dims})
    return Cylinder(cyl, ix, iy, pr)


def is_quasi_iso(f: ChainMap) -> bool:
    return mapping_cone(f).complex.is_acyclic()


def homology_iso(f: ChainMap) -> bool:
    """H_n(f) is invertible in every degree (equivalent to :func:`is_quasi_iso`)."""
    for m in homology_map(f).values():
        if m.rows != m.cols or rank(m) != m.rows:
            return False
    return True


def null_homotopy(f: ChainMap) -> dict[int, Matrix] | None:
    """Maps h_n: X_n -> Y_{n+1} with d h + h d = f, or None if f is not null-homotopic.

    Solved degree by degree from the bottom, which succeeds whenever the
    target is acyclic.
    """
    F = f.field
    x, y = f.source, f.target
    degs = sorted(set(x.dims) | set(y.dims))
    h: dict[int, Matrix] = {}
    for n in degs:
        if not x.dim(n):
            continue
        prev = h.get(n - 1, Matrix.zero(F, y.dim(n), x.dim(n - 1)))
        rhs = f[n] - prev @ x.d(n)
        if rhs.is_zero():
            h[n] = Matrix.zero(F, y.dim(n + 1), x.dim(n))
            continue
        if not y.dim(n + 1):
            return None
        sol = solve_matrix(y.d(n + 1), rhs)
        if sol is None:
            return None
        h[n] = sol
    return h


def quasi_inverse(f: ChainMap) -> ChainMap:
    """A chain map g: y -> x with H(g) = H(f)^{-1}; f must be a quasi-iso."""
    x, y = f.source, f.target
    hf = homology_map(f)
    for n, m in hf.items():
        if m.rows != m.cols:
            raise ChainError(f"not a quasi-isomorphism in degree {n}")
    comps = {}
    for n in x.dims:
        if n not in hf or hf[n].rows == 0:
            continue
        inv = inverse(hf[n])
        rx, _ = x.homology_data(n)
        _, py = y.homology_data(n)
        comps[n] = rx @ inv @ py
    return ChainMap(y, x, comps)


def random_complex(field: Field, rng, max_dim: int = 3, amplitude: int = 3, lo: int = 0) -> ChainComplex:
    """A random complex in degrees lo .. lo+amplitude-1 with d∘d = 0.

    Each differential is built as a random map that kills the image of the
    previous one: d_n = A_n Q_n, with Q_n a projection away from im d_{n+1}.
    """
    degs = list(range(lo, lo + amplitude))
    dims = {n: rng.randint(0, max_dim) for n in degs}
    diffs: dict[int, Matrix] = {}
    # build from the top down so that d_n kills im d_{n+1}
    for n in reversed(degs[1:]):
        m, k = dims[n - 1], dims[n]
        if m == 0 or k == 0:
            continue
        upper = diffs.get(n + 1)
        a = Matrix.from_rows(field, [[rng.randint(-2, 2) for _ in range(k)] for _ in range(m)], k)
        if upper is not None and not upper.is_zero():
            # precompose with a map vanishing on im d_{n+1}
            img = image_basis(upper)
            comp = complement_basis(field, img, k)
            basis = img.hstack(comp)
            kill = Matrix.block(field, [[Matrix.zero(field, comp.cols, img.cols), Matrix.identity(field, comp.cols)]],
                                [comp.cols], [img.cols, comp.cols])
            proj = comp @ kill @ inverse(basis)
            a = a @ proj
        if rng.random() < 0.25:
            a = Matrix.zero(field, m, k)
        diffs[n] = a
    return ChainComplex(field, dims, diffs)


def random_chain_map(field: Field, rng, source: ChainComplex, target: ChainComplex) -> ChainMap:
    """A random chain map, built as f = g∘p + d h + h d style combinations.

    We draw a random map on homology-level representatives plus a random
    null-homotopic part, which together give a chain map.
    """
    comps: dict[int, Matrix] = {}
    hs = {n: random_raw(field, rng, target.dim(n + 1), source.dim(n)) for n in source.dims}
    ix = homology_projection(source)
    it = homology_inclusion(target)
    for n in set(source.dims) | set(target.dims):
        m = Matrix.zero(field, target.dim(n), source.dim(n))
        hn = hs.get(n, Matrix.zero(field, target.dim(n + 1), source.dim(n)))
        hp = hs.get(n - 1, Matrix.zero(field, target.dim(n), source.dim(n - 1)))
        m = m + target.d(n + 1) @ hn + hp @ source.d(n)
        a, b = ix.target.dim(n), it.source.dim(n)
        if a and b:
            g = random_raw(field, rng, b, a)
            m = m + it[n] @ g @ ix[n]
        comps[n] = m
    return ChainMap(source, target, comps)


def random_raw(field: Field, rng, rows: int, cols: int) -> Matrix:
    return Matrix.from_rows(field, [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)], cols)


def quotient(c: ChainComplex, sub: Mapping[int, Matrix]) -> tuple[ChainComplex, ChainMap]:
    """Quotient of c by the subcomplex spanned by the columns of ``sub[n]``.

    The spanned subspaces must be closed under d. Returns the quotient and
    the projection, using standard basis vectors as the complement.
    """
    F = c.field
    pis: dict[int, Matrix] = {}
    secs: dict[int, Matrix] = {}
    dims = {}
    for n, k in c.dims.items():
        w = sub.get(n)
        w = image_basis(w) if w is not None and w.cols else Matrix.zero(F, k, 0)
        comp = complement_basis(F, w, k)
        full = w.hstack(comp)
        inv = inverse(full)
        pis[n] = inv.submatrix(range(w.cols, k), range(k))
        secs[n] = comp
        dims[n] = comp.cols
    diffs = {}
    for n in c.dims:
        if dims.get(n) and dims.get(n - 1):
            diffs[n] = pis[n - 1] @ c.d(n) @ secs[n]
    q = ChainComplex(F, dims, diffs)
    return q, ChainMap(c, q, {n: pis[n] for n in c.dims if dims.get(n)})


def kernel_complex(f: ChainMap) -> tuple[ChainComplex, ChainMap]:
    """The strict kernel of f as a subcomplex of its source, with the inclusion."""
    F = f.field
    x = f.source
    bases = {n: kernel_matrix(f[n]) if f.target.dim(n) else Matrix.identity(F, k) for n, k in x.dims.items()}
    dims = {n: b.cols for n, b in bases.items()}
    diffs = {}
    for n, b in bases.items():
        if b.cols and dims.get(n - 1):
            sol = solve_matrix(bases[n - 1], x.d(n) @ b)
            if sol is None:
                raise ChainError("kernel is not closed under d")
            diffs[n] = sol
    k = ChainComplex(F, dims, diffs, check=False)
    return k, ChainMap(k, x, {n: b for n, b in bases.items() if b.cols}, check=False)


def injection(cs: list[ChainComplex], i: int, total: ChainComplex | None = None) -> ChainMap:
    """Inclusion of the i-th summand into ``direct_sum(cs)``."""
    F = cs[0].field if cs else None
    total = total or direct_sum(F, cs)
    comps = {}
    for n in cs[i].dims:
        off = sum(c.dim(n) for c in cs[:i])
        a = Matrix.zero(F, total.dim(n), cs[i].dim(n)).array()
        for j in range(cs[i].dim(n)):
            a[off + j, j] = 1
        comps[n] = Matrix._wrap(F, a)
    return ChainMap(cs[i], total, comps, check=False)


def projection(cs: list[ChainComplex], i: int, total: ChainComplex | None = None) -> ChainMap:
    """Projection of ``direct_sum(cs)`` onto the i-th summand."""
    inc = injection(cs, i, total)
    return ChainMap(inc.target, inc.source, {n: m.transpose() for n, m in inc.comps.items()}, check=False)


def copair(maps: list[ChainMap], total: ChainComplex | None = None) -> ChainMap:
    """[f_1 ... f_k]: x_1 ⊕ ... ⊕ x_k -> y."""
    cs = [f.source for f in maps]
    total = total or direct_sum(maps[0].field, cs)
    out = None
    for i, f in enumerate(maps):
        g = f @ projection(cs, i, total)
        out = g if out is None else out + g
    return out


def pair(maps: list[ChainMap], total: ChainComplex | None = None) -> ChainMap:
    """(f_1, ..., f_k): x -> y_1 ⊕ ... ⊕ y_k."""
    cs = [f.target for f in maps]
    total = total or direct_sum(maps[0].field, cs)
    out = None
    for i, f in enumerate(maps):
        g = injection(cs, i, total) @ f
        out = g if out is None else out + g
    return out


def sum_maps(maps: list[ChainMap]) -> ChainMap:
    """f_1 ⊕ ... ⊕ f_k between the direct sums of sources and targets."""
    F = maps[0].field
    src = direct_sum(F, [f.source for f in maps])
    tgt = direct_sum(F, [f.target for f in maps])
    out = ChainMap.zero(src, tgt)
    ss, ts = [f.source for f in maps], [f.target for f in maps]
    for i, f in enumerate(maps):
        out = out + injection(ts, i, tgt) @ f @ projection(ss, i, src)
    return out
