"""Reflection, Coxeter and Serre functors for A_n quivers of any orientation.

A representation of an orientation is a representation of its poset: the
vertices 1..n ordered by the arrows, so the covering relations are exactly
the arrows.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product as iproduct

from .chains import ChainComplex, ChainMap, direct_sum, homology_map, injection, mapping_cone, pair, shift, shift_map
from .kan import hocolim, holim, lkan, rkan
from .linalg import Matrix, kernel_matrix, rank
from .posets import Poset, cube_chunk, full_subposet
from .reps import Representation, restrict
from .stable import (compact_fiber, compact_fiber_complex, fiber_inclusion, induced_cone_map,
                     induced_fiber_map)


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class AnOrientation:
    """``directions[i]`` is True when the edge between i+1 and i+2 points right."""

    directions: tuple

    def __post_init__(self):
        object.__setattr__(self, "directions", tuple(bool(d) for d in self.directions))

    @classmethod
    def linear(cls, n: int) -> "AnOrientation":
        return cls((True,) * (n - 1))

    @classmethod
    def parse(cls, text: str) -> "AnOrientation":
        """From a string of '>' and '<', e.g. '<>' is 1 <- 2 -> 3."""
        if any(ch not in "<>" for ch in text):
            raise QuiverError(f"orientation must use '<' and '>': {text!r}")
        return cls(tuple(ch == ">" for ch in text))

    @property
    def n(self) -> int:
        return len(self.directions) + 1

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def arrows(self) -> list[tuple[int, int]]:
        return [(i + 1, i + 2) if d else (i + 2, i + 1) for i, d in enumerate(self.directions)]

    def poset(self) -> Poset:
        return Poset(list(self.vertices), self.arrows(), name=str(self))

    def out_neighbours(self, v: int) -> list[int]:
        return [b for a, b in self.arrows() if a == v]

    def in_neighbours(self, v: int) -> list[int]:
        return [a for a, b in self.arrows() if b == v]

    def is_sink(self, v: int) -> bool:
        return not self.out_neighbours(v)

    def is_source(self, v: int) -> bool:
        return not self.in_neighbours(v)

    def sinks(self) -> list[int]:
        return [v for v in self.vertices if self.is_sink(v)]

    def sources(self) -> list[int]:
        return [v for v in self.vertices if self.is_source(v)]

    def __str__(self):
        return "".join(">" if d else "<" for d in self.directions) or "."

    def standard_embedding(self, row: int = 0) -> list[tuple]:
        """An admissible embedding into the mesh with vertex 1 on (row, row)."""
        pos = [(row, row)]
        for d in self.directions:
            i, j = pos[-1]
            pos.append((i, j + 1) if d else (i - 1, j))
        return pos


def all_orientations(n: int) -> list[AnOrientation]:
    return [AnOrientation(d) for d in iproduct((True, False), repeat=n - 1)]


def reflect_quiver(q: AnOrientation, v: int) -> AnOrientation:
    if not (q.is_sink(v) or q.is_source(v)):
        raise QuiverError(f"vertex {v} is neither a source nor a sink of {q}")
    d = list(q.directions)
    for i in (v - 2, v - 1):
        if 0 <= i < len(d):
            d[i] = not d[i]
    return AnOrientation(tuple(d))


def _check_rep(q: AnOrientation, x: Representation):
    if x.shape != q.poset():
        raise QuiverError(f"representation is not on the orientation {q}")


def _rebuild(q: AnOrientation, values: dict, arrows: dict, field) -> Representation:
    return Representation(q.poset(), values, arrows, field=field)


def reflect_minus(q: AnOrientation, v: int, x: Representation, model: str = "kan") -> Representation:
    """Replace the source v by the homotopy pushout of its neighbours.

    Endpoint: the cofiber C(x_v -> x_b) with the inclusion of x_b. Interior:
    the bar model of hocolim(x_b <- x_v -> x_c) (``model="kan"``) or the
    Mayer-Vietoris cone C((φ, -ψ): x_v -> x_b ⊕ x_c) (``model="cone"``).
    An isolated vertex becomes its suspension.
    """
    _check_rep(q, x)
    if not q.is_source(v):
        raise QuiverError(f"vertex {v} is not a source of {q}")
    nbrs = sorted(q.out_neighbours(v))
    if len(nbrs) > 2:
        raise QuiverError("valence >= 3 reflections are out of scope")
    q2 = reflect_quiver(q, v) if nbrs else q
    values = dict(x.objects)
    arrows = {ab: x.maps[ab] for ab in x.maps if v not in ab}
    xv = x.objects[v]
    if not nbrs:
        values[v] = shift(xv, 1)
    elif len(nbrs) == 1 or model == "cone":
        maps = [x.maps[(v, b)] for b in nbrs]
        if len(maps) == 2:
            maps[1] = -maps[1]
        targets = [x.objects[b] for b in nbrs]
        tot = direct_sum(x.field, targets)
        cone = mapping_cone(pair(maps, tot))
        values[v] = cone.complex
        for i, b in enumerate(nbrs):
            arrows[(b, v)] = cone.inclusion @ injection(targets, i, tot)
    elif model == "kan":
        span, inc = full_subposet(x.shape, [v] + nbrs)
        bar = hocolim(restrict(x, inc))
        values[v] = bar.complex
        for b in nbrs:
            arrows[(b, v)] = _one_point(bar, b, x.objects[b])
    else:
        raise QuiverError(f"unknown model {model!r}")
    return _rebuild(q2, values, arrows, x.field)


def reflect_plus(q: AnOrientation, v: int, x: Representation, model: str = "kan") -> Representation:
    """Replace the sink v by the homotopy pullback of its neighbours (dual of reflect_minus)."""
    _check_rep(q, x)
    if not q.is_sink(v):
        raise QuiverError(f"vertex {v} is not a sink of {q}")
    nbrs = sorted(q.in_neighbours(v))
    if len(nbrs) > 2:
        raise QuiverError("valence >= 3 reflections are out of scope")
    q2 = reflect_quiver(q, v) if nbrs else q
    values = dict(x.objects)
    arrows = {ab: x.maps[ab] for ab in x.maps if v not in ab}
    xv = x.objects[v]
    F = x.field
    if not nbrs:
        values[v] = shift(xv, -1)
    elif len(nbrs) == 1 or model == "cone":
        maps = [x.maps[(b, v)] for b in nbrs]
        if len(maps) == 2:
            maps[1] = -maps[1]
        sources = [x.objects[b] for b in nbrs]
        tot = direct_sum(F, sources)
        from .chains import copair, projection

        phi = copair(maps, tot)
        fib = compact_fiber(phi)
        values[v] = fib.source
        for i, b in enumerate(nbrs):
            arrows[(v, b)] = projection(sources, i, tot) @ fib
    elif model == "kan":
        cosp, inc = full_subposet(x.shape, nbrs + [v])
        cobar = holim(restrict(x, inc))
        values[v] = cobar.complex
        for b in nbrs:
            arrows[(v, b)] = _one_point_proj(cobar, b, x.objects[b])
    else:
        raise QuiverError(f"unknown model {model!r}")
    return _rebuild(q2, values, arrows, F)


def _one_point(bar, a, xa: ChainComplex) -> ChainMap:
    comps = {}
    for m in xa.dims:
        comps[m] = bar.block_matrix(((a,), m), m)
    return ChainMap(xa, bar.complex, comps)


def _one_point_proj(cobar, a, xa: ChainComplex) -> ChainMap:
    comps = {}
    for m in xa.dims:
        comps[m] = cobar.block_matrix(((a,), m), m).transpose()
    return ChainMap(cobar.complex, xa, comps)


# admissible sequences and Coxeter functors


def is_admissible_sink_sequence(q: AnOrientation, seq) -> bool:
    if sorted(seq) != list(q.vertices):
        return False
    for v in seq:
        if not q.is_sink(v):
            return False
        if q.n > 1:
            q = reflect_quiver(q, v)
    return True


def admissible_sink_sequence(q: AnOrientation) -> tuple[int, ...]:
    """Repeatedly reflect at the lowest-index sink among the remaining vertices."""
    seq = []
    cur = q
    left = set(q.vertices)
    while left:
        v = min(s for s in cur.sinks() if s in left)
        seq.append(v)
        left.discard(v)
        if q.n > 1:
            cur = reflect_quiver(cur, v)
    return tuple(seq)


def admissible_source_sequence(q: AnOrientation) -> tuple[int, ...]:
    seq = []
    cur = q
    left = set(q.vertices)
    while left:
        v = min(s for s in cur.sources() if s in left)
        seq.append(v)
        left.discard(v)
        if q.n > 1:
            cur = reflect_quiver(cur, v)
    return tuple(seq)


def all_admissible_sink_sequences(q: AnOrientation) -> list[tuple[int, ...]]:
    out = []

    def walk(cur, done):
        if len(done) == q.n:
            out.append(tuple(done))
            return
        for v in cur.sinks():
            if v not in done:
                walk(reflect_quiver(cur, v) if q.n > 1 else cur, done + [v])

    walk(q, [])
    return out


def coxeter_plus(q: AnOrientation, x: Representation, sequence=None, model: str = "kan") -> Representation:
    """Φ⁺: reflect_plus along an admissible sequence of sinks."""
    seq = tuple(sequence) if sequence is not None else admissible_sink_sequence(q)
    if not is_admissible_sink_sequence(q, seq):
        raise QuiverError(f"{seq} is not an admissible sequence of sinks for {q}")
    cur = q
    for v in seq:
        x = reflect_plus(cur, v, x, model)
        cur = reflect_quiver(cur, v) if q.n > 1 else cur
    return x


def coxeter_minus(q: AnOrientation, x: Representation, sequence=None, model: str = "kan") -> Representation:
    """Φ⁻: reflect_minus along an admissible sequence of sources."""
    seq = tuple(sequence) if sequence is not None else admissible_source_sequence(q)
    cur = q
    for v in seq:
        if not cur.is_source(v):
            raise QuiverError(f"{seq} is not an admissible sequence of sources for {q}")
        x = reflect_minus(cur, v, x, model)
        cur = reflect_quiver(cur, v) if q.n > 1 else cur
    return x


def shift_rep(x: Representation, k: int) -> Representation:
    """Pointwise shift."""
    return Representation(x.shape, {e: shift(c, k) for e, c in x.objects.items()},
                          {ab: shift_map(f, k) for ab, f in x.maps.items()}, field=x.field, check=False)


def serre(q: AnOrientation, x: Representation, model: str = "kan") -> Representation:
    """S = ΣΦ⁺, the pointwise suspension of the Coxeter functor."""
    return shift_rep(coxeter_plus(q, x, model=model), 1)


# closed-form oracles


def coxeter_linear_a3_oracle(x: Representation) -> Representation:
    """(Ωz -> F(gf) -> F(g)) for x -> y -> z."""
    f, g = x.maps[(1, 2)], x.maps[(2, 3)]
    gf = g @ f
    a = fiber_inclusion(gf)
    b = induced_fiber_map(f, ChainMap.identity(g.target), gf, g)
    return Representation(AnOrientation.linear(3).poset(), {1: a.source, 2: a.target, 3: b.target},
                          {(1, 2): a, (2, 3): b}, field=x.field)


def _span_pushout(x: Representation):
    """For z <-f- x -g-> y on 1 <- 2 -> 3: the cone P of (g, -f): x -> y ⊕ z."""
    f, g = x.maps[(2, 1)], x.maps[(2, 3)]
    y, z = g.target, f.target
    yz = direct_sum(x.field, [y, z])
    phi = pair([g, -f], yz)
    return f, g, y, z, mapping_cone(phi)


def coxeter_span_oracle(x: Representation) -> Representation:
    """(Ff <- ΩP -> Fg) with ΩP -> Ff: (y', z', s) -> (-z', s) and ΩP -> Fg: (y', z', s) -> (y', s)."""
    F = x.field
    f, g, y, z, cone = _span_pushout(x)
    xs = f.source
    op = shift(cone.complex, -1)
    ff, fg = compact_fiber_complex(f), compact_fiber_complex(g)
    to_ff, to_fg = {}, {}
    for n in op.dims:
        sizes = [y.dim(n + 1), z.dim(n + 1), xs.dim(n)]
        if ff.dim(n):
            to_ff[n] = Matrix.block(F, [[None, -Matrix.identity(F, z.dim(n + 1)), None],
                                        [None, None, Matrix.identity(F, xs.dim(n))]],
                                    [z.dim(n + 1), xs.dim(n)], sizes)
        if fg.dim(n):
            to_fg[n] = Matrix.block(F, [[Matrix.identity(F, y.dim(n + 1)), None, None],
                                        [None, None, Matrix.identity(F, xs.dim(n))]],
                                    [y.dim(n + 1), xs.dim(n)], sizes)
    q = AnOrientation((False, True))
    return Representation(q.poset(), {1: ff, 2: op, 3: fg},
                          {(2, 1): ChainMap(op, ff, to_ff), (2, 3): ChainMap(op, fg, to_fg)}, field=F)


def serre_linear_a3_oracle(x: Representation) -> Representation:
    """(z -> C(gf) -> C(g))."""
    f, g = x.maps[(1, 2)], x.maps[(2, 3)]
    gf = g @ f
    a = mapping_cone(gf).inclusion
    b = induced_cone_map(f, ChainMap.identity(g.target), gf, g)
    return Representation(AnOrientation.linear(3).poset(), {1: a.source, 2: a.target, 3: b.target},
                          {(1, 2): a, (2, 3): b}, field=x.field)


def serre_span_oracle(x: Representation) -> Representation:
    """(Cf <- P -> Cg) with P -> Cf: (y, z, s) -> (z, -s) and P -> Cg: (y, z, s) -> (y, s)."""
    F = x.field
    f, g, y, z, cone = _span_pushout(x)
    xs = f.source
    p = cone.complex
    cf, cg = mapping_cone(f).complex, mapping_cone(g).complex
    to_cf, to_cg = {}, {}
    for n in p.dims:
        sizes = [y.dim(n), z.dim(n), xs.dim(n - 1)]
        if cf.dim(n):
            to_cf[n] = Matrix.block(F, [[None, Matrix.identity(F, z.dim(n)), None],
                                        [None, None, -Matrix.identity(F, xs.dim(n - 1))]],
                                    [z.dim(n), xs.dim(n - 1)], sizes)
        if cg.dim(n):
            to_cg[n] = Matrix.block(F, [[Matrix.identity(F, y.dim(n)), None, None],
                                        [None, None, Matrix.identity(F, xs.dim(n - 1))]],
                                    [y.dim(n), xs.dim(n - 1)], sizes)
    q = AnOrientation((False, True))
    return Representation(q.poset(), {1: cf, 2: p, 3: cg},
                          {(2, 1): ChainMap(p, cf, to_cf), (2, 3): ChainMap(p, cg, to_cg)}, field=F)


def arrow_as_a2(f: ChainMap) -> Representation:
    return Representation(AnOrientation.linear(2).poset(), {1: f.source, 2: f.target}, {(1, 2): f}, field=f.field)


# barcodes: a complete invariant of A_n tables


def _segment_rank(spaces: dict, maps: dict, lo: int, hi: int, F) -> int:
    """Rank of lim -> colim for the homology representation restricted to [lo, hi]."""
    verts = list(range(lo, hi + 1))
    dims = [spaces[v] for v in verts]
    total = sum(dims)
    if total == 0:
        return 0
    offs = {}
    acc = 0
    for v, d in zip(verts, dims):
        offs[v] = acc
        acc += d
    arrows = [(a, b) for (a, b) in maps if lo <= a <= hi and lo <= b <= hi]
    rows = []
    rel_cols = []
    for a, b in arrows:
        m = maps[(a, b)]
        for r in range(spaces[b]):
            row = [F(0)] * total
            for c in range(spaces[a]):
                row[offs[a] + c] = m[r, c]
            row[offs[b] + r] = F(row[offs[b] + r] - 1)
            rows.append(row)
        for c in range(spaces[a]):
            col = [F(0)] * total
            col[offs[a] + c] = F(1)
            for r in range(spaces[b]):
                col[offs[b] + r] = F(col[offs[b] + r] - m[r, c])
            rel_cols.append(col)
    if rows:
        lim = kernel_matrix(Matrix.from_rows(F, rows, total))
    else:
        lim = Matrix.identity(F, total)
    if lim.cols == 0:
        return 0
    d0 = spaces[lo]
    if d0 == 0:
        return 0
    # class of the component at lo
    comp = Matrix.zero(F, total, lim.cols).array()
    comp[offs[lo]:offs[lo] + d0, :] = lim.array()[offs[lo]:offs[lo] + d0, :]
    comp = Matrix._wrap(F, comp)
    rel = Matrix.from_columns(F, rel_cols, total) if rel_cols else Matrix.zero(F, total, 0)
    return rank(rel.hstack(comp)) - rank(rel)


def barcode(q: AnOrientation, x: Representation) -> Counter:
    """Interval multiplicities {(degree, i, j): count} of the homology of x."""
    _check_rep(q, x)
    F = x.field
    hmaps = {ab: homology_map(f) for ab, f in x.maps.items()}
    degrees = sorted({d for c in x.objects.values() for d in c.homology_dims()})
    out = Counter()
    n = q.n
    for deg in degrees:
        spaces = {v: x.objects[v].homology_dim(deg) for v in q.vertices}
        maps = {}
        for ab in q.arrows():
            m = hmaps[ab].get(deg)
            maps[ab] = m if m is not None else Matrix.zero(F, spaces[ab[1]], spaces[ab[0]])
        rk = {}

        def r(i, j):
            if i < 1 or j > n:
                return 0
            if (i, j) not in rk:
                rk[(i, j)] = _segment_rank(spaces, maps, i, j, F)
            return rk[(i, j)]

        for i in range(1, n + 1):
            for j in range(i, n + 1):
                mult = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
                if mult:
                    out[(deg, i, j)] = mult
    return out


def same_quiver_tables(q: AnOrientation, x: Representation, y: Representation) -> bool:
    """Equal interval decompositions of homology (equivalently, isomorphic objects)."""
    return barcode(q, x) == barcode(q, y)


def barcode_rep(q: AnOrientation, bars, field) -> Representation:
    """The direct sum of shifted interval modules with the given barcode.

    Differentials vanish, so this is the formal model of any representation
    with that barcode; over A_n it is isomorphic to each of them.
    """
    items = sorted((k for k, m in bars.items() for _ in range(m)))
    basis = {v: {} for v in q.vertices}
    for idx, (deg, i, j) in enumerate(items):
        for v in range(i, j + 1):
            basis[v].setdefault(deg, []).append(idx)
    values = {v: ChainComplex(field, {d: len(b) for d, b in basis[v].items()}) for v in q.vertices}
    arrows = {}
    for a, b in q.arrows():
        comps = {}
        for deg, src in basis[a].items():
            tgt = basis[b].get(deg, [])
            m = [[1 if t == s_ else 0 for s_ in src] for t in tgt]
            comps[deg] = Matrix.from_rows(field, m, len(src)) if tgt else Matrix.zero(field, 0, len(src))
        arrows[(a, b)] = ChainMap(values[a], values[b], comps)
    return _rebuild(q, values, arrows, field)


# the valence-n source and sink


def star_chunks(n: int):
    src, src_inc = cube_chunk(n, 0, 1)
    snk, snk_inc = cube_chunk(n, n - 1, n)
    return src, src_inc, snk, snk_inc


def source_sink_equivalence(n: int, x: Representation) -> Representation:
    """Left Kan extend a source-star representation to the n-cube and restrict to the sink star."""
    src, src_inc, snk, snk_inc = star_chunks(n)
    if x.shape != src:
        raise QuiverError(f"expected a representation on the valence-{n} source star")
    return restrict(lkan(src_inc, x), snk_inc)


def sink_source_equivalence(n: int, x: Representation) -> Representation:
    """Dual: right Kan extend from the sink star and restrict to the source star."""
    src, src_inc, snk, snk_inc = star_chunks(n)
    if x.shape != snk:
        raise QuiverError(f"expected a representation on the valence-{n} sink star")
    return restrict(rkan(snk_inc, x), src_inc)


def cone_of_first_arrow(x: Representation) -> Representation:
    """(x -f-> y -> z) on linear A3 |-> (C <- y -> z) on 1 <- 2 -> 3, C the Kan-route cofiber of f."""
    from .stable import cofiber

    a3 = AnOrientation.linear(3)
    if x.shape != a3.poset():
        raise QuiverError("expected a representation of linear A3")
    res = cofiber(x.maps[(1, 2)])
    q = AnOrientation.parse("<>")
    maps = {(2, 1): res.arrow() @ res.target_comparison, (2, 3): x.maps[(2, 3)]}
    return Representation(q.poset(), {1: res.corner, 2: x.objects[2], 3: x.objects[3]}, maps, field=x.field)
