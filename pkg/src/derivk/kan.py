"""Homotopy (co)limits over finite posets and pointwise derived Kan extensions.

The homotopy colimit is the normalized bar construction: the summand X(p_0)
sits in bar degree n for each strict chain p_0 < ... < p_n, face 0 applies
X(p_0 <= p_1), face i > 0 deletes p_i, and the total differential is
d_bar + (-1)^n d_internal. The homotopy limit is the dual cobar
construction on X(p_n), placed in total degree (internal degree - n), with
the last coface applying X(p_{n-1} <= p_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .chains import ChainComplex, ChainMap, is_quasi_iso
from .linalg import Field, Matrix
from .posets import (COSPAN, SPAN, MonotoneMap, Poset, cube, cube_chunk, full_subposet, slice_over, slice_under,
                     square)
from .reps import RepMorphism, Representation, restrict


class KanError(ValueError):
    pass


@dataclass
class BarComplex:
    """A totalized (co)bar complex with its summand index.

    ``blocks`` maps (chain, internal degree) to (total degree, offset, size).
    """

    complex: ChainComplex
    blocks: dict
    kind: str
    rep: Representation

    @property
    def shape(self) -> Poset:
        return self.rep.shape

    def bar_degree(self, key) -> int:
        return len(key[0]) - 1

    def block_matrix(self, key, total: int) -> Matrix:
        """Inclusion of one summand into the total degree ``total`` (columns)."""
        t, off, size = self.blocks[key]
        F = self.complex.field
        a = Matrix.zero(F, self.complex.dim(t), size).array()
        for j in range(size):
            a[off + j, j] = 1
        return Matrix._wrap(F, a)


def _assemble(field: Field, blocks: list, entries: list, check: bool = True) -> tuple[ChainComplex, dict]:
    """Build a total complex from summands and block contributions.

    ``blocks`` lists (key, total degree, size); ``entries`` lists
    (source key, target key, matrix, sign) with the matrix mapping the source
    summand to the target summand.
    """
    index = {}
    dims: dict[int, int] = {}
    for key, t, size in blocks:
        if size <= 0:
            continue
        index[key] = (t, dims.get(t, 0), size)
        dims[t] = dims.get(t, 0) + size
    arrays: dict[int, np.ndarray] = {}
    zero = Matrix.zero(field, 0, 0).array()
    for src, tgt, m, sign in entries:
        if src not in index or tgt not in index or m.is_zero():
            continue
        ts, os, ss = index[src]
        tt, ot, st = index[tgt]
        if tt != ts - 1:
            raise KanError(f"block {src} -> {tgt} does not lower degree")
        if ts not in arrays:
            arr = Matrix.zero(field, dims[tt], dims[ts]).array()
            arrays[ts] = arr
        a = m.array()
        if sign < 0:
            a = -a
        arrays[ts][ot:ot + st, os:os + ss] += a
    del zero
    diffs = {t: Matrix._wrap(field, a) for t, a in arrays.items()}
    return ChainComplex(field, dims, diffs, check=check), index


def hocolim(x: Representation, check: bool = True) -> BarComplex:
    """Normalized bar construction; the empty shape gives the zero complex."""
    P = x.shape
    F = x.field
    blocks, entries = [], []
    for sigma in P.all_chains():
        k = len(sigma) - 1
        x0 = x.objects[sigma[0]]
        for m, size in x0.dims.items():
            blocks.append(((sigma, m), k + m, size))
            if x0.dim(m - 1):
                entries.append(((sigma, m), (sigma, m - 1), x0.d(m), -1 if k % 2 else 1))
            if k >= 1:
                f = x.structure_map(sigma[0], sigma[1])
                entries.append(((sigma, m), (sigma[1:], m), f[m], 1))
                for i in range(1, k + 1):
                    tau = sigma[:i] + sigma[i + 1:]
                    entries.append(((sigma, m), (tau, m), Matrix.identity(F, size), -1 if i % 2 else 1))
    c, index = _assemble(F, blocks, entries, check)
    return BarComplex(c, index, "bar", x)


def holim(x: Representation, check: bool = True) -> BarComplex:
    """Cobar construction, the summand X(p_n) in total degree m - n."""
    P = x.shape
    F = x.field
    blocks, entries = [], []
    for sigma in P.all_chains():
        k = len(sigma) - 1
        xl = x.objects[sigma[-1]]
        for m, size in xl.dims.items():
            blocks.append(((sigma, m), m - k, size))
            if xl.dim(m - 1):
                entries.append(((sigma, m), (sigma, m - 1), xl.d(m), -1 if k % 2 else 1))
    for sigma in P.all_chains():
        k1 = len(sigma) - 1  # bar degree of the target summand
        if k1 < 1:
            continue
        xl = x.objects[sigma[-1]]
        for m, size in xl.dims.items():
            for i in range(k1 + 1):
                tau = sigma[:i] + sigma[i + 1:]
                sign = -1 if i % 2 else 1
                if i < k1:
                    entries.append(((tau, m), (sigma, m), Matrix.identity(F, size), sign))
                else:
                    f = x.structure_map(sigma[-2], sigma[-1])
                    entries.append(((tau, m), (sigma, m), f[m], sign))
    c, index = _assemble(F, blocks, entries, check)
    return BarComplex(c, index, "cobar", x)


def _block_map(src: BarComplex, tgt: BarComplex, keys) -> ChainMap:
    """Identity on the listed summands from src to tgt, zero elsewhere."""
    F = src.complex.field
    arrays: dict[int, np.ndarray] = {}
    for key in keys:
        if key not in src.blocks or key not in tgt.blocks:
            continue
        ts, os, size = src.blocks[key]
        tt, ot, _ = tgt.blocks[key]
        if ts not in arrays:
            arrays[ts] = Matrix.zero(F, tgt.complex.dim(ts), src.complex.dim(ts)).array()
        for j in range(size):
            arrays[ts][ot + j, os + j] = 1
    comps = {t: Matrix._wrap(F, a) for t, a in arrays.items()}
    return ChainMap(src.complex, tgt.complex, comps, check=False)


def hocolim_map(phi: RepMorphism, src: BarComplex, tgt: BarComplex) -> ChainMap:
    """hocolim of a natural transformation, applied summand by summand."""
    F = src.complex.field
    arrays: dict[int, np.ndarray] = {}
    for (sigma, m), (ts, os, size) in src.blocks.items():
        key = (sigma, m)
        if key not in tgt.blocks:
            continue
        tt, ot, tsize = tgt.blocks[key]
        block = phi[sigma[0]][m]
        if block.is_zero():
            continue
        if ts not in arrays:
            arrays[ts] = Matrix.zero(F, tgt.complex.dim(ts), src.complex.dim(ts)).array()
        arrays[ts][ot:ot + tsize, os:os + size] += block.array()
    comps = {t: Matrix._wrap(F, a) for t, a in arrays.items()}
    return ChainMap(src.complex, tgt.complex, comps)


def bar_inclusion(small: BarComplex, big: BarComplex) -> ChainMap:
    """Map induced by a subposet inclusion on bar complexes."""
    return _block_map(small, big, small.blocks.keys())


def cobar_restriction(big: BarComplex, small: BarComplex) -> ChainMap:
    """Map induced by a subposet inclusion on cobar complexes (forget summands)."""
    return _block_map(big, small, small.blocks.keys())


def cocone_comparison(x: Representation, cocone: dict, target: ChainComplex,
                      bar: BarComplex | None = None) -> ChainMap:
    """The map hocolim(x) -> T that is the cocone on bar degree 0 and zero above."""
    for a, b in x.shape.covers:
        if cocone[b] @ x.maps[(a, b)] != cocone[a]:
            raise KanError(f"cocone incoherent on {a!r} -> {b!r}")
    bar = bar or hocolim(x)
    F = x.field
    arrays: dict[int, np.ndarray] = {}
    for a in x.shape.elements:
        for m in x.objects[a].dims:
            key = ((a,), m)
            if key not in bar.blocks:
                continue
            t, off, size = bar.blocks[key]
            if not target.dim(m):
                continue
            if t not in arrays:
                arrays[t] = Matrix.zero(F, target.dim(t), bar.complex.dim(t)).array()
            arrays[t][:, off:off + size] += cocone[a][m].array()
    comps = {t: Matrix._wrap(F, arr) for t, arr in arrays.items()}
    return ChainMap(bar.complex, target, comps)


def cone_comparison(x: Representation, cone: dict, source: ChainComplex,
                    cobar: BarComplex | None = None) -> ChainMap:
    """Dual of :func:`cocone_comparison`: T -> holim(x) landing in bar degree 0."""
    for a, b in x.shape.covers:
        if x.maps[(a, b)] @ cone[a] != cone[b]:
            raise KanError(f"cone incoherent on {a!r} -> {b!r}")
    cobar = cobar or holim(x)
    F = x.field
    arrays: dict[int, np.ndarray] = {}
    for a in x.shape.elements:
        for m in x.objects[a].dims:
            key = ((a,), m)
            if key not in cobar.blocks or not source.dim(m):
                continue
            t, off, size = cobar.blocks[key]
            if t not in arrays:
                arrays[t] = Matrix.zero(F, cobar.complex.dim(t), source.dim(t)).array()
            arrays[t][off:off + size, :] += cone[a][m].array()
    comps = {t: Matrix._wrap(F, arr) for t, arr in arrays.items()}
    return ChainMap(source, cobar.complex, comps)


@dataclass
class KanExtension:
    """A Kan extension with the (co)bar witness at every target element."""

    rep: Representation
    witnesses: dict
    u: MonotoneMap


def lkan_full(u: MonotoneMap, x: Representation) -> KanExtension:
    if x.shape != u.source:
        raise KanError("representation shape differs from the source of u")
    wit = {}
    for b in u.target.elements:
        s, inc = slice_under(u, b)
        wit[b] = hocolim(restrict(x, inc))
    maps = {(b, c): bar_inclusion(wit[b], wit[c]) for b, c in u.target.covers}
    rep = Representation(u.target, {b: w.complex for b, w in wit.items()}, maps, field=x.field, check=False)
    return KanExtension(rep, wit, u)


def rkan_full(u: MonotoneMap, x: Representation) -> KanExtension:
    if x.shape != u.source:
        raise KanError("representation shape differs from the source of u")
    wit = {}
    for b in u.target.elements:
        s, inc = slice_over(u, b)
        wit[b] = holim(restrict(x, inc))
    maps = {(b, c): cobar_restriction(wit[b], wit[c]) for b, c in u.target.covers}
    rep = Representation(u.target, {b: w.complex for b, w in wit.items()}, maps, field=x.field, check=False)
    return KanExtension(rep, wit, u)


def lkan(u: MonotoneMap, x: Representation) -> Representation:
    """Left Kan extension; the value at b is literally hocolim over {a : u(a) <= b}."""
    return lkan_full(u, x).rep


def rkan(u: MonotoneMap, x: Representation) -> Representation:
    """Right Kan extension; the value at b is literally holim over {a : b <= u(a)}."""
    return rkan_full(u, x).rep


def kan_unit(u: MonotoneMap, x: Representation, ext: KanExtension | None = None) -> RepMorphism:
    """x -> u* u_! x: at a, the summand of the one-point chain (a) in bar degree 0.

    These maps are natural only up to homotopy (the chains (a) and (a')
    differ by the boundary of (a < a')), so the morphism is not checked for
    strict naturality.
    """
    if not u.is_embedding():
        raise KanError("unit requires a full order embedding")
    ext = ext or lkan_full(u, x)
    back = restrict(ext.rep, u)
    comps = {}
    for a in u.source.elements:
        w = ext.witnesses[u(a)]
        xa = x.objects[a]
        arrays = {}
        for m in xa.dims:
            t, off, size = w.blocks[((a,), m)]
            arr = Matrix.zero(x.field, w.complex.dim(t), size).array()
            for j in range(size):
                arr[off + j, j] = 1
            arrays[m] = Matrix._wrap(x.field, arr)
        comps[a] = ChainMap(xa, w.complex, arrays)
    return RepMorphism(x, back, comps, natural=False)


def rkan_counit(u: MonotoneMap, x: Representation, ext: KanExtension | None = None) -> RepMorphism:
    """u* u_* x -> x: projection to the one-point chain summand (natural up to homotopy)."""
    if not u.is_embedding():
        raise KanError("counit requires a full order embedding")
    ext = ext or rkan_full(u, x)
    back = restrict(ext.rep, u)
    comps = {}
    for a in u.source.elements:
        w = ext.witnesses[u(a)]
        xa = x.objects[a]
        arrays = {}
        for m in xa.dims:
            t, off, size = w.blocks[((a,), m)]
            arr = Matrix.zero(x.field, size, w.complex.dim(t)).array()
            for j in range(size):
                arr[j, off + j] = 1
            arrays[m] = Matrix._wrap(x.field, arr)
        comps[a] = ChainMap(w.complex, xa, arrays)
    return RepMorphism(back, x, comps, natural=False)


def lkan_counit(u: MonotoneMap, y: Representation) -> RepMorphism:
    """u_! u* y -> y, strictly natural: the cocone comparison at every b."""
    ext = lkan_full(u, restrict(y, u))
    comps = {}
    for b in u.target.elements:
        w = ext.witnesses[b]
        sub = w.rep
        cocone = {a: y.structure_map(u(a), b) for a in sub.shape.elements}
        comps[b] = cocone_comparison(sub, cocone, y.objects[b], w)
    return RepMorphism(ext.rep, y, comps)


def rkan_unit(u: MonotoneMap, y: Representation) -> RepMorphism:
    """y -> u_* u* y, strictly natural: the cone comparison at every b."""
    ext = rkan_full(u, restrict(y, u))
    comps = {}
    for b in u.target.elements:
        w = ext.witnesses[b]
        sub = w.rep
        cone = {a: y.structure_map(b, u(a)) for a in sub.shape.elements}
        comps[b] = cone_comparison(sub, cone, y.objects[b], w)
    return RepMorphism(y, ext.rep, comps)


# squares


def _require_square(x: Representation):
    if x.shape != square():
        raise KanError("expected a representation on the square [1] x [1]")


def cocartesian_comparison(x: Representation) -> ChainMap:
    _require_square(x)
    sp, inc = full_subposet(x.shape, SPAN)
    span = restrict(x, inc)
    cocone = {a: x.structure_map(a, (1, 1)) for a in SPAN}
    return cocone_comparison(span, cocone, x.objects[(1, 1)])


def cartesian_comparison(x: Representation) -> ChainMap:
    _require_square(x)
    cp, inc = full_subposet(x.shape, COSPAN)
    cospan = restrict(x, inc)
    cone = {a: x.structure_map((0, 0), a) for a in COSPAN}
    return cone_comparison(cospan, cone, x.objects[(0, 0)])


def is_cocartesian(x: Representation) -> bool:
    return is_quasi_iso(cocartesian_comparison(x))


def is_cartesian(x: Representation) -> bool:
    return is_quasi_iso(cartesian_comparison(x))


class StabilityError(AssertionError):
    pass


def is_bicartesian(x: Representation) -> bool:
    """Both cocartesian and cartesian; raises if the two disagree."""
    a, b = is_cocartesian(x), is_cartesian(x)
    if a != b:
        raise StabilityError("square is cocartesian xor cartesian")
    return a


def square_map(p: Poset, corners) -> MonotoneMap:
    """The map from [1] x [1] picking corners (00, 01, 10, 11) in p."""
    sq = square()
    c00, c01, c10, c11 = corners
    return MonotoneMap(sq, p, {(0, 0): c00, (0, 1): c01, (1, 0): c10, (1, 1): c11})


def subsquare(x: Representation, corners) -> Representation:
    return restrict(x, square_map(x.shape, corners))


def cube_subsquares(n: int) -> list[tuple]:
    """All 2-dimensional faces of cube(n) as corner tuples."""
    out = []
    for i, j in combinations(range(1, n + 1), 2):
        rest = [k for k in range(1, n + 1) if k not in (i, j)]
        for r in range(len(rest) + 1):
            for base in combinations(rest, r):
                s = set(base)
                out.append((tuple(sorted(s)), tuple(sorted(s | {j})), tuple(sorted(s | {i})),
                            tuple(sorted(s | {i, j}))))
    return out


def _cube_dim(x: Representation) -> int:
    n = max((len(e) for e in x.shape.elements), default=0)
    if x.shape != cube(n) or n < 2:
        raise KanError("expected a representation on cube(n) with n >= 2")
    return n


def is_strongly_bicartesian(x: Representation) -> bool:
    """Every 2-dimensional face is bicartesian."""
    n = _cube_dim(x)
    return all(is_bicartesian(subsquare(x, c)) for c in cube_subsquares(n))


def is_strongly_cocartesian_by_counit(x: Representation) -> bool:
    """Essential-image test: the counit of the left Kan extension from the
    subsets of size at most one is a pointwise quasi-isomorphism."""
    n = _cube_dim(x)
    _, inc = cube_chunk(n, 0, 1)
    return lkan_counit(inc, x).is_pointwise_quasi_iso()


def is_strongly_cartesian_by_unit(x: Representation) -> bool:
    """Dual test with the right Kan extension from subsets of size at least n - 1."""
    n = _cube_dim(x)
    _, inc = cube_chunk(n, n - 1, n)
    return rkan_unit(inc, x).is_pointwise_quasi_iso()
