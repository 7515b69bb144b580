"""Strictly commutative diagrams of chain complexes indexed by a finite poset."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Mapping

from .chains import (ChainComplex, ChainMap, homology_map, random_chain_map, random_complex)
from .linalg import Field, Matrix, rank
from .posets import MonotoneMap, Poset, PosetError


class RepresentationError(ValueError):
    pass


class Representation:
    """Complexes at the elements and chain maps on covering relations."""

    def __init__(self, shape: Poset, objects: Mapping, maps: Mapping | None = None, field: Field | None = None,
                 check: bool = True):
        self.shape = shape
        self.objects: dict = dict(objects)
        if field is None:
            if not self.objects:
                raise RepresentationError("field must be given for an empty representation")
            field = next(iter(self.objects.values())).field
        self.field = field
        for e in shape.elements:
            if e not in self.objects:
                raise RepresentationError(f"no complex at {e!r}")
        maps = dict(maps or {})
        self.maps: dict = {}
        for a, b in shape.covers:
            f = maps.get((a, b))
            if f is None:
                f = ChainMap.zero(self.objects[a], self.objects[b])
            self.maps[(a, b)] = f
        self._composite: dict = {}
        if check:
            problems = self.validate()
            if problems:
                raise RepresentationError("; ".join(problems[:5]))

    def __call__(self, e) -> ChainComplex:
        return self.objects[e]

    def evaluate(self, e) -> ChainComplex:
        if e not in self.shape:
            raise PosetError(f"unknown element {e!r}")
        return self.objects[e]

    def structure_map(self, a, b) -> ChainMap:
        """Composite along a saturated chain from a to b."""
        key = (a, b)
        if key in self._composite:
            return self._composite[key]
        if a == b:
            f = ChainMap.identity(self.objects[a])
        else:
            path = self.shape.saturated_chain(a, b)
            f = self.maps[(path[0], path[1])]
            for u, v in zip(path[1:], path[2:]):
                f = self.maps[(u, v)] @ f
        self._composite[key] = f
        return f

    def validate(self) -> list[str]:
        """Every failing chain-map or path-independence condition; empty when valid."""
        out = []
        for (a, b), f in self.maps.items():
            if f.source is not self.objects[a] and f.source != self.objects[a]:
                out.append(f"map on {a!r}->{b!r} has the wrong source")
                continue
            if f.target is not self.objects[b] and f.target != self.objects[b]:
                out.append(f"map on {a!r}->{b!r} has the wrong target")
                continue
            bad = f.defect()
            if bad is not None:
                out.append(f"map on {a!r}->{b!r} is not a chain map in degree {bad}")
        if out:
            return out
        # path independence: M(c,b)∘M(a,c) = M(a,b) for each lower cover c of b above a
        for a, b in self.shape.relations:
            ref = self.structure_map(a, b)
            ref_path = self.shape.saturated_chain(a, b)
            for c in self.shape.lower_covers(b):
                if c != ref_path[-2] and self.shape.leq(a, c):
                    alt = self.maps[(c, b)] @ self.structure_map(a, c)
                    if alt != ref:
                        out.append(f"paths {a!r}->...->{ref_path[-2]!r}->{b!r} and "
                                   f"{a!r}->...->{c!r}->{b!r} disagree")
        return out

    def homology_table(self) -> "HomologyTable":
        return homology_table(self)

    def total_dim(self) -> int:
        return sum(c.total_dim() for c in self.objects.values())

    def __repr__(self):
        return f"Representation({self.shape!r})"


@dataclass
class RepMorphism:
    """Componentwise chain maps; naturality is checked unless ``natural=False``."""

    source: Representation
    target: Representation
    comps: dict
    natural: bool = True

    def __post_init__(self):
        if self.source.shape != self.target.shape:
            raise RepresentationError("morphism between different shapes")
        if self.natural:
            for a, b in self.source.shape.covers:
                lhs = self.target.maps[(a, b)] @ self.comps[a]
                rhs = self.comps[b] @ self.source.maps[(a, b)]
                if lhs != rhs:
                    raise RepresentationError(f"naturality fails on {a!r}->{b!r}")

    def __getitem__(self, e) -> ChainMap:
        return self.comps[e]

    def is_pointwise_quasi_iso(self) -> bool:
        from .chains import is_quasi_iso

        return all(is_quasi_iso(f) for f in self.comps.values())


def restrict(x: Representation, u: MonotoneMap) -> Representation:
    """Pull x back along u."""
    if u.target != x.shape:
        raise RepresentationError("restriction along a map with the wrong target")
    objs = {a: x.objects[u(a)] for a in u.source.elements}
    maps = {(a, b): x.structure_map(u(a), u(b)) for a, b in u.source.covers}
    return Representation(u.source, objs, maps, field=x.field, check=False)


def evaluate(x: Representation, p) -> ChainComplex:
    return x.evaluate(p)


def constant_rep(shape: Poset, c: ChainComplex) -> Representation:
    return Representation(shape, {e: c for e in shape.elements},
                          {ab: ChainMap.identity(c) for ab in shape.covers}, field=c.field, check=False)


def zero_rep(shape: Poset, field: Field) -> Representation:
    z = ChainComplex.zero(field)
    return Representation(shape, {e: z for e in shape.elements}, {}, field=field, check=False)


def rep_from_maps(shape: Poset, objects: Mapping, maps: Mapping, field: Field | None = None) -> Representation:
    return Representation(shape, objects, maps, field=field)


def relabel(x: Representation, shape: Poset, mapping: Mapping) -> Representation:
    """Transport x along a bijection of identifiers onto an isomorphic shape."""
    inv = {v: k for k, v in mapping.items()}
    objs = {e: x.objects[inv[e]] for e in shape.elements}
    maps = {(a, b): x.structure_map(inv[a], inv[b]) for a, b in shape.covers}
    return Representation(shape, objs, maps, field=x.field)


# homology tables


@dataclass
class HomologyTable:
    """Pointwise homology dimensions and induced maps on covers.

    Matrices are in the canonical homology bases of each model, so they are
    only comparable between identical models; :meth:`signature` extracts
    basis-free data (dimensions and ranks of induced maps) for comparison
    across models.
    """

    shape: Poset
    dims: dict = dc_field(default_factory=dict)
    maps: dict = dc_field(default_factory=dict)
    rep: Representation | None = None

    def dim(self, e, n: int) -> int:
        return self.dims.get((e, n), 0)

    def at(self, e) -> dict[int, int]:
        return {n: k for (a, n), k in self.dims.items() if a == e and k}

    def degrees(self) -> list[int]:
        return sorted({n for (_, n) in self.dims})

    def induced(self, a, b, n: int) -> Matrix:
        """H_n of the structure map a <= b."""
        if self.rep is None:
            raise RepresentationError("table has no underlying representation")
        return homology_map(self.rep.structure_map(a, b)).get(
            n, Matrix.zero(self.rep.field, self.dim(b, n), self.dim(a, n)))

    def signature(self) -> tuple:
        """Dimensions, ranks of every induced map, and joint ranks at each element.

        The joint ranks are those of H(a) -> ⊕ H(upper covers) and of
        ⊕ H(lower covers) -> H(a).
        """
        sig_dims = tuple(sorted((self.shape.index(e), n, k) for (e, n), k in self.dims.items() if k))
        ranks = []
        joint = []
        degs = self.degrees()
        for n in degs:
            for a, b in self.shape.relations:
                if self.dim(a, n) and self.dim(b, n):
                    r = rank(self.induced(a, b, n))
                    if r:
                        ranks.append((self.shape.index(a), self.shape.index(b), n, r))
            for e in self.shape.elements:
                ups = [b for b in self.shape.upper_covers(e) if self.dim(b, n)]
                if len(ups) > 1 and self.dim(e, n):
                    m = self.induced(e, ups[0], n)
                    for b in ups[1:]:
                        m = m.vstack(self.induced(e, b, n))
                    joint.append(("out", self.shape.index(e), n, rank(m)))
                downs = [a for a in self.shape.lower_covers(e) if self.dim(a, n)]
                if len(downs) > 1 and self.dim(e, n):
                    m = self.induced(downs[0], e, n)
                    for a in downs[1:]:
                        m = m.hstack(self.induced(a, e, n))
                    joint.append(("in", self.shape.index(e), n, rank(m)))
        return sig_dims, tuple(ranks), tuple(joint)

    def same_as(self, other: "HomologyTable") -> bool:
        return self.shape == other.shape and self.signature() == other.signature()

    def pullback(self, u: MonotoneMap) -> "HomologyTable":
        dims = {(a, n): self.dim(u(a), n) for a in u.source.elements for n in self.degrees() if self.dim(u(a), n)}
        rep = restrict(self.rep, u) if self.rep is not None else None
        maps = {}
        for a, b in u.source.covers:
            for n in self.degrees():
                if dims.get((a, n)) or dims.get((b, n)):
                    maps[(a, b, n)] = self.induced(u(a), u(b), n)
        return HomologyTable(u.source, dims, maps, rep)

    def render(self) -> str:
        lines = []
        for e in self.shape.elements:
            h = self.at(e)
            body = ", ".join(f"H{n}={k}" for n, k in sorted(h.items())) or "0"
            lines.append(f"{e!r}: {body}")
        return "\n".join(lines)


def homology_table(x: Representation) -> HomologyTable:
    dims = {}
    for e in x.shape.elements:
        for n, k in x.objects[e].homology_dims().items():
            dims[(e, n)] = k
    maps = {}
    for (a, b), f in x.maps.items():
        for n, m in homology_map(f).items():
            maps[(a, b, n)] = m
    return HomologyTable(x.shape, dims, maps, x)


def same_tables(x: Representation, y: Representation) -> bool:
    return homology_table(x).same_as(homology_table(y))


# random generation


@dataclass(frozen=True)
class RandomRepConfig:
    max_dim: int = 3
    amplitude: int = 3
    lo: int = 0


def strict_colimit(x: Representation, elements: list) -> tuple[ChainComplex, dict]:
    """Ordinary colimit of x restricted to ``elements`` (a down-closed set).

    Returns the colimit complex and the cocone maps from each x(a).
    """
    from .chains import direct_sum, quotient

    F = x.field
    objs = [x.objects[a] for a in elements]
    total = direct_sum(F, objs)
    offsets = {}
    for a in elements:
        offsets[a] = {}
    acc = {}
    for a in elements:
        for n, k in x.objects[a].dims.items():
            offsets[a][n] = acc.get(n, 0)
            acc[n] = acc.get(n, 0) + k
    elset = set(elements)
    rel_cols: dict[int, list] = {}
    for a, b in x.shape.covers:
        if a in elset and b in elset:
            f = x.maps[(a, b)]
            for n, k in x.objects[a].dims.items():
                m = f[n]
                for j in range(k):
                    v = [F(0)] * total.dim(n)
                    v[offsets[a][n] + j] = F(-1)
                    if n in offsets[b]:
                        for i in range(m.rows):
                            v[offsets[b][n] + i] = F(v[offsets[b][n] + i] + m[i, j])
                    rel_cols.setdefault(n, []).append(v)
    sub = {n: Matrix.from_columns(F, cols, total.dim(n)) for n, cols in rel_cols.items()}
    q, pi = quotient(total, sub)
    legs = {}
    for a in elements:
        comps = {}
        for n, k in x.objects[a].dims.items():
            inc = Matrix.zero(F, total.dim(n), k).array()
            for j in range(k):
                inc[offsets[a][n] + j, j] = F(1)
            comps[n] = pi[n] @ Matrix._wrap(F, inc)
        legs[a] = ChainMap(x.objects[a], q, comps, check=False)
    return q, legs


def random_rep(p: Poset, max_dim: int = 3, amplitude: int = 3, seed: int = 0,
               field: Field | None = None, lo: int = 0) -> Representation:
    """Reproducible random representation built along the canonical linear extension.

    Each value is a fresh random complex receiving a random chain map from the
    ordinary colimit of the values strictly below it, so every path composite
    factors through that colimit and commutativity holds by construction.
    """
    from .linalg import F32003

    field = field or F32003
    rng = random.Random(seed)
    objs: dict = {}
    maps: dict = {}
    partial_shape_elems: list = []
    for b in p.elements:
        below = [a for a in p.elements if a != b and p.leq(a, b)]
        c = random_complex(field, rng, max_dim, amplitude, lo)
        if below:
            sub = Representation(_sub(p, partial_shape_elems), {a: objs[a] for a in partial_shape_elems},
                                 {ab: maps[ab] for ab in _sub(p, partial_shape_elems).covers}, field=field,
                                 check=False)
            colim, legs = strict_colimit(sub, below)
            phi = random_chain_map(field, rng, colim, c)
            for a in p.lower_covers(b):
                maps[(a, b)] = phi @ legs[a]
        objs[b] = c
        partial_shape_elems.append(b)
    return Representation(p, objs, maps, field=field, check=False)


def _sub(p: Poset, elems: list) -> Poset:
    from .posets import full_subposet

    return full_subposet(p, elems)[0]


def random_morphism(field: Field, seed: int, max_dim: int = 3, amplitude: int = 3) -> ChainMap:
    """Random chain map between random complexes (a representation of [1])."""
    rng = random.Random(seed)
    x = random_complex(field, rng, max_dim, amplitude)
    y = random_complex(field, rng, max_dim, amplitude)
    return random_chain_map(field, rng, x, y)


def arrow_rep(f: ChainMap) -> Representation:
    """The representation of [1] given by f."""
    from .posets import chain_poset

    return Representation(chain_poset(1), {0: f.source, 1: f.target}, {(0, 1): f}, field=f.field, check=False)


def chain_rep(maps: list[ChainMap]) -> Representation:
    """Representation of [n] from composable maps x_0 -> x_1 -> ... -> x_n."""
    from .posets import chain_poset

    objs = {0: maps[0].source}
    for i, f in enumerate(maps):
        objs[i + 1] = f.target
    return Representation(chain_poset(len(maps)), objs, {(i, i + 1): f for i, f in enumerate(maps)},
                          field=maps[0].field)
