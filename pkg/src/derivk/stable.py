"""Cones, fibers, suspensions and the triangulated shadows of a stable theory.

Two routes are kept side by side. The Kan route builds cofiber and fiber
squares by literally composing the bar/cobar Kan extensions of ``kan``; the
compact route uses mapping cones and strict pushouts/pullbacks along split
injections/surjections. Explicit chain maps connect the two.

Mesh windows use coordinates (i, j) with i - 1 <= j <= i + n (see
``posets.mesh_window``); row 0 carries the standard embedding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chains import (ChainComplex, ChainMap, direct_sum, homology_map, injection,
                     kernel_complex, mapping_cone, null_homotopy, pair, projection, quasi_inverse, quotient, shift,
                     shift_map)
from .kan import (BarComplex, KanError, cone_comparison, is_bicartesian, lkan_full, rkan_full, subsquare)
from .linalg import Matrix, inverse, rank
from .posets import (MonotoneMap, Poset, chain_poset, cospan_inclusion, full_subposet, mesh_squares, mesh_window,
                     product, span_inclusion, square)
from .reps import RepMorphism, Representation, arrow_rep, homology_table, restrict


class StableError(ValueError):
    pass


# compact (mapping cone) functors


def compact_cofiber(f: ChainMap) -> ChainMap:
    """The cofiber arrow y -> C(f), the inclusion into the mapping cone."""
    return mapping_cone(f).inclusion


def compact_fiber_complex(f: ChainMap) -> ChainComplex:
    """F(f)_n = y_{n+1} ⊕ x_n with d = [[-d_y, -f], [0, d_x]]."""
    return shift(mapping_cone(f).complex, -1)


def compact_fiber(f: ChainMap) -> ChainMap:
    """The fiber arrow F(f) -> x, the projection onto x."""
    fc = compact_fiber_complex(f)
    x, y = f.source, f.target
    F = f.field
    comps = {n: Matrix.block(F, [[None, Matrix.identity(F, x.dim(n))]], [x.dim(n)], [y.dim(n + 1), x.dim(n)])
             for n in x.dims}
    return ChainMap(fc, x, comps)


def fiber_inclusion(f: ChainMap) -> ChainMap:
    """Ωy -> F(f), y' -> (y', 0)."""
    fc = compact_fiber_complex(f)
    x, y = f.source, f.target
    F = f.field
    oy = shift(y, -1)
    comps = {n: Matrix.block(F, [[Matrix.identity(F, y.dim(n + 1))], [None]], [y.dim(n + 1), x.dim(n)],
                             [y.dim(n + 1)]) for n in oy.dims}
    return ChainMap(oy, fc, comps)


def induced_fiber_map(alpha: ChainMap, beta: ChainMap, f: ChainMap, g: ChainMap) -> ChainMap:
    """F(f) -> F(g) induced by a strict square g∘alpha = beta∘f."""
    if g @ alpha != beta @ f:
        raise StableError("square does not commute")
    src, tgt = compact_fiber_complex(f), compact_fiber_complex(g)
    F = f.field
    comps = {}
    for n in src.dims:
        if tgt.dim(n):
            comps[n] = Matrix.block(F, [[beta[n + 1], None], [None, alpha[n]]],
                                    [g.target.dim(n + 1), g.source.dim(n)], [f.target.dim(n + 1), f.source.dim(n)])
    return ChainMap(src, tgt, comps)


def induced_cone_map(alpha: ChainMap, beta: ChainMap, f: ChainMap, g: ChainMap) -> ChainMap:
    """C(f) -> C(g) induced by a strict square g∘alpha = beta∘f."""
    if g @ alpha != beta @ f:
        raise StableError("square does not commute")
    src, tgt = mapping_cone(f).complex, mapping_cone(g).complex
    F = f.field
    comps = {}
    for n in src.dims:
        if tgt.dim(n):
            comps[n] = Matrix.block(F, [[beta[n], None], [None, alpha[n - 1]]],
                                    [g.target.dim(n), g.source.dim(n - 1)], [f.target.dim(n), f.source.dim(n - 1)])
    return ChainMap(src, tgt, comps)


def compact_cof_power(f: ChainMap, k: int) -> ChainMap:
    for _ in range(k):
        f = compact_cofiber(f)
    return f


def compact_fib_power(f: ChainMap, k: int) -> ChainMap:
    for _ in range(k):
        f = compact_fiber(f)
    return f


# placing components into (co)bar complexes


def _into_total(bar: BarComplex, src: ChainComplex, pieces, check: bool = True) -> ChainMap:
    """Assemble a map src -> bar.complex from summand components.

    ``pieces`` lists (chain, sign, comp) where comp(t) is the matrix from
    src_t into the summand of ``chain`` that lives in total degree t.
    """
    F = src.field
    arrays: dict[int, np.ndarray] = {}
    for chain, sign, comp in pieces:
        k = len(chain) - 1
        for t in src.dims:
            m = t - k if bar.kind == "bar" else t + k
            key = (chain, m)
            if key not in bar.blocks:
                continue
            tt, off, size = bar.blocks[key]
            if tt != t:
                raise KanError("summand placed in the wrong total degree")
            mat = comp(t)
            if mat is None:
                continue
            if t not in arrays:
                arrays[t] = Matrix.zero(F, bar.complex.dim(t), src.dim(t)).array()
            a = mat.array()
            arrays[t][off:off + size, :] += a if sign > 0 else -a
    return ChainMap(src, bar.complex, {t: Matrix._wrap(F, a) for t, a in arrays.items()}, check=check)


def _cols(F, rows: int, left: int, right: int, which: int) -> Matrix:
    """Projection of a two-block column space onto block ``which``."""
    blocks = [[Matrix.identity(F, rows) if which == 0 else None, Matrix.identity(F, rows) if which == 1 else None]]
    return Matrix.block(F, blocks, [rows], [left, right])


# Kan-route cofiber and fiber


@dataclass
class CofiberResult:
    """The cofiber square, its corner and the comparison C(f) -> corner.

    ``source_comparison`` is x -> square(0, 0) and ``target_comparison`` is
    y -> square(0, 1); together with ``comparison`` they form a strict map
    from the compact cofiber sequence data to the Kan-route square.
    """

    square: Representation
    corner: ChainComplex
    comparison: ChainMap
    source_comparison: ChainMap
    target_comparison: ChainMap

    def arrow(self) -> ChainMap:
        return self.square.structure_map((0, 1), (1, 1))


@dataclass
class FiberResult:
    """The fiber square, its corner and the comparison F(f) -> corner.

    ``source_comparison`` is x -> square(0, 1), natural against
    ``comparison`` for the compact projection F(f) -> x.
    """

    square: Representation
    corner: ChainComplex
    comparison: ChainMap
    source_comparison: ChainMap

    def arrow(self) -> ChainMap:
        return self.square.structure_map((0, 0), (0, 1))


def cofiber(f: ChainMap) -> CofiberResult:
    """Cofiber square by a right Kan extension from [1] to the span (extension
    by zero) followed by a left Kan extension to the square.

    The comparison is C(f) -> hocolim, (y, s) -> y@(01) + g(s)@(00<01) - g(s)@(00<10),
    where g: x -> R(00) is the canonical map into the homotopy limit.
    """
    arrow = arrow_rep(f)
    span_shape = span_inclusion().source
    i = MonotoneMap(chain_poset(1), span_shape, {0: (0, 0), 1: (0, 1)})
    r = rkan_full(i, arrow)
    s = lkan_full(span_inclusion(), r.rep)
    corner_bar = s.witnesses[(1, 1)]
    F = f.field
    x, y = f.source, f.target
    w0 = r.witnesses[(0, 0)]
    g = cone_comparison(w0.rep, {0: ChainMap.identity(x), 1: f}, x, w0)
    cone = mapping_cone(f).complex

    def y_part(t):
        return _cols(F, y.dim(t), y.dim(t), x.dim(t - 1), 0) if y.dim(t) else None

    def s_part(t):
        if not x.dim(t - 1):
            return None
        return g[t - 1] @ _cols(F, x.dim(t - 1), y.dim(t), x.dim(t - 1), 1)

    a, b, c = (0, 0), (1, 0), (0, 1)
    phi = _into_total(corner_bar, cone, [((c,), 1, y_part), ((a, c), 1, s_part), ((a, b), -1, s_part)])
    src_bar = s.witnesses[(0, 0)]
    src_cmp = _into_total(src_bar, x, [((a,), 1, lambda t: g[t])])
    tgt_bar = s.witnesses[(0, 1)]
    tgt_cmp = _into_total(tgt_bar, y, [((c,), 1, lambda t: Matrix.identity(F, y.dim(t)))])
    return CofiberResult(s.rep, corner_bar.complex, phi, src_cmp, tgt_cmp)


def fiber(f: ChainMap) -> FiberResult:
    """Fiber square by a left Kan extension from [1] to the cospan (extension
    by zero) followed by a right Kan extension to the square.

    With L the cospan x -> L(11) <- 0 and j: y -> L(11) the one-point summand,
    the comparison is F(f) -> holim,
    (y', x') -> x'@(01) + j f x'@(11) + x'@(0<1)@(01<11) - j y'@(10<11).
    """
    arrow = arrow_rep(f)
    cospan_shape = cospan_inclusion().source
    i = MonotoneMap(chain_poset(1), cospan_shape, {0: (0, 1), 1: (1, 1)})
    lft = lkan_full(i, arrow)
    rt = rkan_full(cospan_inclusion(), lft.rep)
    corner_bar = rt.witnesses[(0, 0)]
    F = f.field
    x, y = f.source, f.target
    le = lft.witnesses[(1, 1)]
    fc = compact_fiber_complex(f)

    def blk(key, t):
        return le.block_matrix(key, t) if key in le.blocks else None

    def j(t):
        return blk(((1,), t), t)

    c, b, e = (0, 1), (1, 0), (1, 1)

    def xpart(t):
        return _cols(F, x.dim(t), y.dim(t + 1), x.dim(t), 1) if x.dim(t) else None

    def u_c(t):
        return xpart(t)

    def u_e(t):
        jt, p = j(t), xpart(t)
        return None if jt is None or p is None else jt @ f[t] @ p

    def v_ce(t):
        # summand of (c < e) in total degree t sits in L(e)_{t+1}
        m, p = blk(((0, 1), t), t + 1), xpart(t)
        return None if m is None or p is None else m @ p

    def v_be(t):
        jt = j(t + 1)
        if jt is None or not y.dim(t + 1):
            return None
        return jt @ _cols(F, y.dim(t + 1), y.dim(t + 1), x.dim(t), 0)

    psi = _into_total(corner_bar, fc, [((c,), 1, u_c), ((e,), 1, u_e), ((c, e), 1, v_ce), ((b, e), -1, v_be)])
    h_bar = rt.witnesses[(0, 1)]

    def k_e(t):
        jt = j(t)
        return None if jt is None or not x.dim(t) else jt @ f[t]

    def k_ce(t):
        return blk(((0, 1), t), t + 1)

    kappa = _into_total(h_bar, x, [((c,), 1, lambda t: Matrix.identity(F, x.dim(t))), ((e,), 1, k_e),
                                   ((c, e), 1, k_ce)])
    return FiberResult(rt.rep, corner_bar.complex, psi, kappa)


def cofiber_arrow_comparison(res: CofiberResult, f: ChainMap) -> RepMorphism:
    """Strict map from the compact cofiber arrow y -> C(f) to the Kan-route one."""
    src = arrow_rep(compact_cofiber(f))
    tgt = arrow_rep(res.arrow())
    return RepMorphism(src, tgt, {0: res.target_comparison, 1: res.comparison})


def fiber_arrow_comparison(res: FiberResult, f: ChainMap) -> RepMorphism:
    """Strict map from the compact fiber arrow F(f) -> x to the Kan-route one."""
    src = arrow_rep(compact_fiber(f))
    tgt = arrow_rep(res.arrow())
    return RepMorphism(src, tgt, {0: res.comparison, 1: res.source_comparison})


def suspension(c: ChainComplex) -> ChainComplex:
    """Σc as the cofiber corner of c -> 0."""
    return cofiber(ChainMap.zero(c, ChainComplex.zero(c.field))).corner


def loop(c: ChainComplex) -> ChainComplex:
    """Ωc as the fiber corner of 0 -> c."""
    return fiber(ChainMap.zero(ChainComplex.zero(c.field), c)).corner


def suspension_square(c: ChainComplex) -> Representation:
    return cofiber(ChainMap.zero(c, ChainComplex.zero(c.field))).square


def fib_power(f: ChainMap, k: int) -> tuple[ChainMap, RepMorphism]:
    """Kan-route fib^k together with a strict quasi-isomorphism from compact fib^k.

    Each step pushes the comparison through the compact fiber (functorial in
    strict squares) and then composes with the Kan comparison of the next
    fiber.
    """
    cur = f
    cmp = RepMorphism(arrow_rep(f), arrow_rep(f), {0: ChainMap.identity(f.source), 1: ChainMap.identity(f.target)})
    compact = f
    for _ in range(k):
        res = fiber(cur)
        nxt_compact = compact_fiber(compact)
        # compact fiber of compact -> compact fiber of cur, induced by cmp
        ind = induced_fiber_map(cmp[0], cmp[1], compact, cur)
        comps = {0: res.comparison @ ind, 1: res.source_comparison @ cmp[0]}
        cmp = RepMorphism(arrow_rep(nxt_compact), arrow_rep(res.arrow()), comps)
        cur = res.arrow()
        compact = nxt_compact
    return cur, cmp


def cof_power(f: ChainMap, k: int) -> tuple[ChainMap, RepMorphism]:
    """Kan-route cof^k with a strict quasi-isomorphism from compact cof^k."""
    cur = f
    cmp = RepMorphism(arrow_rep(f), arrow_rep(f), {0: ChainMap.identity(f.source), 1: ChainMap.identity(f.target)})
    compact = f
    for _ in range(k):
        res = cofiber(cur)
        nxt_compact = compact_cofiber(compact)
        ind = induced_cone_map(cmp[0], cmp[1], compact, cur)
        comps = {0: res.target_comparison @ cmp[1], 1: res.comparison @ ind}
        cmp = RepMorphism(arrow_rep(nxt_compact), arrow_rep(res.arrow()), comps)
        cur = res.arrow()
        compact = nxt_compact
    return cur, cmp


# cofiber sequences and triangles


def grid_1x2() -> Poset:
    """[1] x [2] with elements (row, column)."""
    return product(chain_poset(1), chain_poset(2))


def cofiber_sequence(f: ChainMap) -> Representation:
    """Kan-route cofiber sequence on [1] x [2], zero at (1, 0) and (0, 2)."""
    g = grid_1x2()
    a_shape, a_inc = full_subposet(g, [(0, 0), (0, 1), (0, 2), (1, 0)])
    i = MonotoneMap(chain_poset(1), a_shape, {0: (0, 0), 1: (0, 1)})
    from .kan import lkan, rkan

    return lkan(a_inc, rkan(i, arrow_rep(f)))


def compact_cofiber_sequence(f: ChainMap) -> Representation:
    """x -> y -> 0 over C(id_x) -> C(f) -> Σx, built from strict pushouts."""
    F = f.field
    x, y = f.source, f.target
    cid = mapping_cone(ChainMap.identity(x))
    cf = mapping_cone(f)
    sx = shift(x, 1)
    zero = ChainComplex.zero(F)
    mid = induced_cone_map(ChainMap.identity(x), f, ChainMap.identity(x), f)
    objs = {(0, 0): x, (0, 1): y, (0, 2): zero, (1, 0): cid.complex, (1, 1): cf.complex, (1, 2): sx}
    maps = {((0, 0), (0, 1)): f, ((0, 0), (1, 0)): cid.inclusion, ((0, 1), (1, 1)): cf.inclusion,
            ((1, 0), (1, 1)): mid, ((1, 1), (1, 2)): cf.projection}
    return Representation(grid_1x2(), objs, maps, field=F)


@dataclass
class Triangle:
    """x -f-> y -g-> z -h-> Σx."""

    x: ChainComplex
    y: ChainComplex
    z: ChainComplex
    f: ChainMap
    g: ChainMap
    h: ChainMap

    def __post_init__(self):
        if self.h.target != shift(self.x, 1):
            raise StableError("third map must land in shift(x, 1)")

    def rotate(self) -> "Triangle":
        """y -> z -> Σx -> Σy with third map -Σf."""
        return Triangle(self.y, self.z, shift(self.x, 1), self.g, self.h, -shift_map(self.f, 1))


def _exact_at(a: ChainMap, b: ChainMap) -> bool:
    """Homology exactness of A -a-> B -b-> C in every degree."""
    ha, hb = homology_map(a), homology_map(b)
    for n in set(ha) | set(hb):
        dim = b.source.homology_dim(n)
        ma = ha.get(n)
        mb = hb.get(n)
        ra = rank(ma) if ma is not None else 0
        rb = rank(mb) if mb is not None else 0
        if ma is not None and mb is not None and ma.cols and mb.rows and not (mb @ ma).is_zero():
            return False
        if ra + rb != dim:
            return False
    return True


def triangle_is_exact(t: Triangle) -> bool:
    """Exactness of the long sequence at y, z and Σx (hence everywhere by periodicity)."""
    return _exact_at(t.f, t.g) and _exact_at(t.g, t.h) and _exact_at(t.h, shift_map(t.f, 1))


def triangle_composites_vanish(t: Triangle) -> bool:
    for a, b in ((t.f, t.g), (t.g, t.h), (t.h, shift_map(t.f, 1))):
        for n, m in homology_map(b @ a).items():
            if not m.is_zero():
                return False
    return True


def suspension_comparison(sq: Representation) -> ChainMap:
    """The map Σx -> x' of a square x -> a, x -> b, a, b -> x' with a, b acyclic.

    With null-homotopies h_a, h_b of x -> a and x -> b (d h + h d = map), the
    map is S_b h_b - S_a h_a where a = (0, 1), b = (1, 0). It is the composite
    of the fixed identification Σx -> hocolim(b <- x -> a),
    s -> s@(x<a) - h_a s@(a) - s@(x<b) + h_b s@(b), with the cocone comparison.
    Exchanging a and b negates it.
    """
    if sq.shape != square():
        raise StableError("expected a square")
    x, xp = sq.objects[(0, 0)], sq.objects[(1, 1)]
    out = {}
    terms = []
    for corner, sign in (((1, 0), 1), ((0, 1), -1)):
        h = null_homotopy(sq.maps[((0, 0), corner)])
        if h is None or not sq.objects[corner].is_acyclic():
            raise StableError(f"corner {corner} is not acyclic: not a suspension square")
        terms.append((sq.maps[(corner, (1, 1))], h, sign))
    sx = shift(x, 1)
    F = sq.field
    for n in x.dims:
        acc = Matrix.zero(F, xp.dim(n + 1), x.dim(n))
        for s, h, sign in terms:
            if n in h:
                m = s[n + 1] @ h[n]
                acc = acc + m if sign > 0 else acc - m
        out[n + 1] = acc
    return ChainMap(sx, xp, out)


def _grid_restrict(rep: Representation, positions) -> Representation:
    """Restrict along [1] x [2] -> shape given by six positions in (row, column) order."""
    g = grid_1x2()
    u = MonotoneMap(g, rep.shape, dict(zip(g.elements, positions)))
    return restrict(rep, u)


def triangle_from_cofiber_sequence(seq: Representation) -> Triangle:
    """Triangle of a cofiber sequence on [1] x [2]; the third map is routed through
    the inverse of the suspension comparison of the composite square."""
    x, y, z = seq.objects[(0, 0)], seq.objects[(0, 1)], seq.objects[(1, 1)]
    f = seq.structure_map((0, 0), (0, 1))
    g = seq.structure_map((0, 1), (1, 1))
    outer = restrict(seq, MonotoneMap(square(), seq.shape, {(0, 0): (0, 0), (0, 1): (0, 2), (1, 0): (1, 0),
                                                            (1, 1): (1, 2)}))
    phi = suspension_comparison(outer)
    h = quasi_inverse(phi) @ seq.structure_map((1, 1), (1, 2))
    return Triangle(x, y, z, f, g, h)


def triangle_of(f: ChainMap, route: str = "kan") -> Triangle:
    seq = cofiber_sequence(f) if route == "kan" else compact_cofiber_sequence(f)
    return triangle_from_cofiber_sequence(seq)


def mayer_vietoris(sq: Representation) -> Triangle:
    """x -(f,-g)-> y ⊕ z -(k,l)-> w -> Σx for a bicartesian square.

    The last map is the projection C(f,-g) -> Σx composed with a quasi-inverse
    of C(f,-g) -> w, (y, z, s) -> k y + l z.
    """
    if sq.shape != square():
        raise StableError("expected a square")
    if not is_bicartesian(sq):
        raise StableError("square is not bicartesian")
    x, y, z, w = (sq.objects[e] for e in ((0, 0), (0, 1), (1, 0), (1, 1)))
    f, g = sq.maps[((0, 0), (0, 1))], sq.maps[((0, 0), (1, 0))]
    k, l = sq.maps[((0, 1), (1, 1))], sq.maps[((1, 0), (1, 1))]
    yz = direct_sum(sq.field, [y, z])
    phi = pair([f, -g], yz)
    kl = (k @ projection([y, z], 0, yz)) + (l @ projection([y, z], 1, yz))
    cone = mapping_cone(phi)
    c = kl @ _cone_to_target(cone, yz)
    h = cone.projection @ quasi_inverse(c)
    return Triangle(x, yz, w, phi, kl, h)


def _cone_to_target(cone, target: ChainComplex) -> ChainMap:
    """Projection C(phi) -> target(phi) (not a chain map on its own, combined with k,l it is)."""
    F = target.field
    comps = {}
    for n in target.dims:
        comps[n] = _cols(F, target.dim(n), target.dim(n), cone.complex.dim(n) - target.dim(n), 0)
    return ChainMap(cone.complex, target, comps, check=False)


# mesh windows by strict row sweeps


@dataclass
class _Rows:
    """Row data: values V[i][c] at (i, i + c) for c = -1..n, horizontal maps
    H[i][c]: V[i][c] -> V[i][c+1] and vertical maps D[i][c]: V[i][c] -> V[i+1][c-1]."""

    n: int
    V: dict
    H: dict
    D: dict


def _sweep_down(rows: _Rows, i: int):
    n = rows.n
    V, H = rows.V[i], rows.H[i]
    F = V[0].field
    W: dict = {}
    WH: dict = {}
    D: dict = {}
    c0 = mapping_cone(ChainMap.identity(V[0]))
    W[-1] = c0.complex
    D[0] = c0.inclusion
    for c in range(n):
        left, top = D[c], H[c]
        tot = direct_sum(F, [left.target, top.target])
        rel = pair([left, -top], tot)
        q, pi = quotient(tot, rel.comps)
        WH[c - 1] = pi @ injection([left.target, top.target], 0, tot)
        D[c + 1] = pi @ injection([left.target, top.target], 1, tot)
        W[c] = q
    W[n] = ChainComplex.zero(F)
    WH[n - 1] = ChainMap.zero(W[n - 1], W[n])
    rows.V[i + 1], rows.H[i + 1], rows.D[i] = W, WH, D


def _sweep_up(rows: _Rows, i: int):
    n = rows.n
    V, H = rows.V[i], rows.H[i]
    F = V[0].field
    U: dict = {}
    UH: dict = {}
    D: dict = {}
    U[n] = compact_fiber_complex(ChainMap.identity(V[n - 1]))
    D[n] = compact_fiber(ChainMap.identity(V[n - 1]))
    for c in range(n - 1, -1, -1):
        right, bottom = D[c + 1], H[c - 1]
        tot = direct_sum(F, [right.source, bottom.source])
        diff = (right @ projection([right.source, bottom.source], 0, tot)) - \
               (bottom @ projection([right.source, bottom.source], 1, tot))
        k, inc = kernel_complex(diff)
        UH[c] = projection([right.source, bottom.source], 0, tot) @ inc
        D[c] = projection([right.source, bottom.source], 1, tot) @ inc
        U[c] = k
    U[-1] = ChainComplex.zero(F)
    UH[-1] = ChainMap.zero(U[-1], U[0])
    rows.V[i - 1], rows.H[i - 1], rows.D[i - 1] = U, UH, D


def _row_from_linear(maps: list[ChainMap]) -> tuple[dict, dict]:
    F = maps[0].field
    vals = [maps[0].source] + [m.target for m in maps]
    n = len(vals)
    V = {-1: ChainComplex.zero(F), n: ChainComplex.zero(F)}
    H = {}
    for c, v in enumerate(vals):
        V[c] = v
    H[-1] = ChainMap.zero(V[-1], V[0])
    for c, m in enumerate(maps):
        H[c] = m
    H[n - 1] = ChainMap.zero(V[n - 1], V[n])
    return V, H


def _assemble_window(rows: _Rows, lo: int, hi: int) -> Representation:
    n = rows.n
    shape = mesh_window(n, lo, hi)
    objs, maps = {}, {}
    for i in range(lo, hi + 1):
        for c in range(-1, n + 1):
            objs[(i, i + c)] = rows.V[i][c]
        for c in range(-1, n):
            maps[((i, i + c), (i, i + c + 1))] = rows.H[i][c]
        if i < hi:
            for c in range(0, n + 1):
                maps[((i, i + c), (i + 1, i + c))] = rows.D[i][c]
    F = rows.V[lo][0].field
    return Representation(shape, objs, maps, field=F, check=False)


def _sweep_window(V0: dict, H0: dict, n: int, lo: int, hi: int, base: int = 0) -> Representation:
    rows = _Rows(n, {base: V0}, {base: H0}, {})
    for i in range(base, hi):
        _sweep_down(rows, i)
    for i in range(base, lo, -1):
        _sweep_up(rows, i)
    return _assemble_window(rows, lo, hi)


def linear_window(maps: list[ChainMap], width: int) -> Representation:
    """Mesh window of M_n for the linear data x_1 -> ... -> x_n placed on row 0."""
    if width < 1:
        raise StableError("width must be at least 1")
    V, H = _row_from_linear(maps) if maps else (None, None)
    return _sweep_window(V, H, len(maps) + 1, -width, width)


def barratt_puppe(f: ChainMap, width: int = 2) -> Representation:
    """Finite Barratt-Puppe window on mesh_window(2, -width, width)."""
    return linear_window([f], width)


def octahedron(x: Representation, width: int = 2) -> Representation:
    """Refined octahedral window on mesh_window(3, -width, width) for x on [2]."""
    if x.shape != chain_poset(2):
        raise StableError("octahedron expects a representation on [2]")
    return linear_window([x.maps[(0, 1)], x.maps[(1, 2)]], width)


def window_n(rep: Representation) -> int:
    return max(b - a for a, b in rep.shape.elements)


def window_report(rep: Representation) -> dict:
    """Boundary acyclicity and bicartesian-ness of every unit square in a mesh window."""
    n = window_n(rep)
    boundary = [e for e in rep.shape.elements if e[1] == e[0] - 1 or e[1] == e[0] + n]
    squares = mesh_squares(rep.shape)
    bad_boundary = [e for e in boundary if not rep.objects[e].is_acyclic()]
    bad_squares = [sq for sq in squares if not is_bicartesian(subsquare(rep, sq))]
    return {"boundary": len(boundary), "bad_boundary": bad_boundary, "squares": len(squares),
            "bad_squares": bad_squares}


def window_is_exact(rep: Representation) -> bool:
    r = window_report(rep)
    return not r["bad_boundary"] and not r["bad_squares"]


def flip(n: int, e) -> tuple:
    """The glide symmetry (i, j) -> (j + 1, i + n) of the mesh poset."""
    i, j = e
    return (j + 1, i + n)


def flip_symmetry_holds(rep: Representation) -> bool:
    """Homology at flip(e) is homology at e shifted up by one, and induced ranks
    on covers agree, wherever both ends lie in the window."""
    n = window_n(rep)
    tab = homology_table(rep)
    for e in rep.shape.elements:
        fe = flip(n, e)
        if fe not in rep.shape:
            continue
        here = tab.at(e)
        there = tab.at(fe)
        if {k + 1: v for k, v in here.items()} != there:
            return False
    for a, b in rep.shape.covers:
        fa, fb = flip(n, a), flip(n, b)
        if fa in rep.shape and fb in rep.shape:
            for deg, m in homology_map(rep.maps[(a, b)]).items():
                m2 = homology_map(rep.structure_map(fa, fb)).get(deg + 1)
                if rank(m) != (rank(m2) if m2 is not None else 0):
                    return False
    return True


# subdiagrams of refined octahedra and triangles


OCTA_TRIANGLES = {
    "f": [(0, 0), (0, 1), (0, 3), (1, 0), (1, 1), (1, 3)],
    "g": [(0, 1), (0, 2), (0, 3), (2, 1), (2, 2), (2, 3)],
    "gf": [(0, 0), (0, 2), (0, 3), (1, 0), (1, 2), (1, 3)],
    "cones": [(1, 1), (1, 2), (1, 4), (2, 1), (2, 2), (2, 4)],
}

OCTA_MV_SQUARES = {
    "2": ((0, 1), (0, 2), (1, 1), (1, 2)),
    "5": ((1, 2), (1, 3), (2, 2), (2, 3)),
}


def octahedron_triangles(window: Representation) -> dict[str, Triangle]:
    return {name: triangle_from_cofiber_sequence(_grid_restrict(window, pos))
            for name, pos in OCTA_TRIANGLES.items()}


def octahedron_mayer_vietoris(window: Representation) -> dict[str, Triangle]:
    return {name: mayer_vietoris(subsquare(window, sq)) for name, sq in OCTA_MV_SQUARES.items()}


# rotation sign


@dataclass
class SignCheck:
    ratio: dict
    is_minus_identity: bool
    naturality: bool
    window: Representation


def rotation_sign_check(f: ChainMap, width: int = 2) -> SignCheck:
    """Compare the two identifications Σy -> y' in a Barratt-Puppe window.

    psi1 comes from the square (y, 0_2, 0_3, y') and psi2 from the pasted
    orientation (y, 0_3, 0_2, y'). The returned ratio is H(psi2)^{-1} H(psi1)
    per degree. ``naturality`` checks H(f') H(phi1) = H(psi1) H(Σf).
    """
    w = barratt_puppe(f, max(width, 2))
    y_, o2, o3, yp = (0, 1), (0, 2), (2, 1), (2, 2)
    x_, o1, xp = (0, 0), (1, 0), (1, 2)
    psi1 = suspension_comparison(subsquare(w, (y_, o2, o3, yp)))
    psi2 = suspension_comparison(subsquare(w, (y_, o3, o2, yp)))
    phi1 = suspension_comparison(subsquare(w, (x_, o2, o1, xp)))
    h1, h2 = homology_map(psi1), homology_map(psi2)
    ratio = {}
    ok = True
    for n in sorted(set(h1) | set(h2)):
        a, b = h1.get(n), h2.get(n)
        if a is None or a.rows == 0:
            ratio[n] = a if a is not None else b
            continue
        r = inverse(b) @ a
        ratio[n] = r
        if r != Matrix.identity(r.field, r.rows).scale(-1):
            ok = False
    fp = w.structure_map(xp, yp)
    lhs = homology_map(fp @ phi1)
    rhs = homology_map(psi1 @ shift_map(f, 1))
    nat = all((lhs.get(n) is None and rhs.get(n) is None) or lhs.get(n) == rhs.get(n)
              for n in set(lhs) | set(rhs))
    return SignCheck(ratio, ok, nat, w)


# mesh representations of arbitrary A_n orientations


def validate_embedding(orientation: list[bool], positions: list[tuple]) -> None:
    """positions[v] is the mesh element of vertex v + 1; orientation[v] is True
    for the arrow v+1 -> v+2. Consecutive vertices must differ by one step:
    (0, 1) for a rightward arrow and (-1, 0) for a leftward one."""
    if len(positions) != len(orientation) + 1:
        raise StableError("need one position per vertex")
    for v, right in enumerate(orientation):
        (i, j), (k, l) = positions[v], positions[v + 1]
        step = (k - i, l - j)
        want = (0, 1) if right else (-1, 0)
        if step != want:
            raise StableError(f"vertices {v + 1} and {v + 2} are not one mesh step apart in the right direction")
    i, j = positions[0]
    if j != i:
        raise StableError("the first vertex must sit on the diagonal j = i")


def push_source_down(values: list, arrows: dict, v: int) -> None:
    """Replace a source v of a zigzag (0-based) by the cone of x_v -> ⊕ neighbours.

    ``arrows`` maps (a, b) for each arrow a -> b between consecutive vertices.
    Neighbour order is increasing; the map into the sum is (φ_low, -φ_high)
    when both exist. The new arrows run from the neighbours into the cone.
    """
    nbrs = [b for b in (v - 1, v + 1) if (v, b) in arrows]
    xs = values[v]
    F = xs.field
    if not nbrs:
        cone = mapping_cone(ChainMap.zero(xs, ChainComplex.zero(F)))
        values[v] = cone.complex
        return
    targets = [values[b] for b in nbrs]
    tot = direct_sum(F, targets)
    comps = [arrows.pop((v, b)) for b in nbrs]
    if len(comps) == 2:
        comps[1] = -comps[1]
    phi = pair(comps, tot)
    cone = mapping_cone(phi)
    values[v] = cone.complex
    for idx, b in enumerate(nbrs):
        arrows[(b, v)] = cone.inclusion @ injection(targets, idx, tot)


def mesh_rep(x: Representation, orientation: list[bool], positions: list[tuple], width: int = 2) -> Representation:
    """Exact mesh window for a representation of an A_n quiver.

    Vertices are 1..n with arrows given by ``orientation``. The section is
    pushed down to a row by replacing sources with cones; the resulting row
    is then swept. Restriction along the embedding is pointwise
    quasi-isomorphic to x, and literally x for linear orientations on row 0.
    """
    validate_embedding(orientation, positions)
    n = len(positions)
    values = [x.objects[v + 1] for v in range(n)]
    arrows = {}
    for v, right in enumerate(orientation):
        a, b = (v, v + 1) if right else (v + 1, v)
        arrows[(a, b)] = x.structure_map(a + 1, b + 1)
    pos = list(positions)
    target_row = max(i for i, _ in pos)
    while True:
        rows = [p[0] for p in pos]
        m = min(rows)
        if m == target_row:
            break
        t = rows.index(m)
        for v in range(t, n):
            push_source_down(values, arrows, v)
            pos[v] = (pos[v][0] + 1, pos[v][1] + 1)
    lo, hi = -width, width
    if not lo <= target_row <= hi or not all(lo <= i <= hi for i, _ in positions):
        raise StableError("embedding does not fit in the window")
    F = x.field
    maps = [arrows[(v, v + 1)] for v in range(n - 1)]
    if maps:
        V, H = _row_from_linear(maps)
    else:
        V = {-1: ChainComplex.zero(F), 0: values[0], 1: ChainComplex.zero(F)}
        H = {-1: ChainMap.zero(V[-1], V[0]), 0: ChainMap.zero(V[0], V[1])}
    rows = _Rows(n, {target_row: V}, {target_row: H}, {})
    for i in range(target_row, hi):
        _sweep_down(rows, i)
    for i in range(target_row, lo, -1):
        _sweep_up(rows, i)
    return _assemble_window(rows, lo, hi)


def embedding_restriction(window: Representation, orientation: list[bool], positions: list[tuple]) -> Representation:
    """Restrict a window along an admissible embedding to a representation of the quiver."""
    from .quivers import AnOrientation

    q = AnOrientation(tuple(orientation))
    u = MonotoneMap(q.poset(), window.shape, {v + 1: p for v, p in enumerate(positions)})
    return restrict(window, u)
