"""Finite posets, monotone maps and the diagram shapes used throughout.

A poset stores its full order relation as a boolean table. Elements are kept
in a canonical linear extension (Kahn's algorithm, ties broken by a total
order on identifiers), which fixes the basis order of every bar complex.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

Element = Hashable


def sort_key(x):
    """Total order on the identifiers we use: ints, strings and nested tuples."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, len(x), tuple(sort_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, len(x), tuple(sorted(sort_key(y) for y in x)))
    return (4, repr(x))


class PosetError(ValueError):
    pass


class Poset:
    """A finite poset with an explicit order table."""

    def __init__(self, elements: Iterable[Element], relations: Iterable[tuple[Element, Element]] = (),
                 leq: Callable[[Element, Element], bool] | None = None, name: str | None = None):
        elems = list(elements)
        if len(set(elems)) != len(elems):
            raise PosetError("duplicate elements")
        n = len(elems)
        idx = {e: i for i, e in enumerate(elems)}
        table = np.eye(n, dtype=bool)
        if leq is not None:
            for i, a in enumerate(elems):
                for j, b in enumerate(elems):
                    if leq(a, b):
                        table[i, j] = True
            if not np.all(np.diag(table)):
                raise PosetError("relation is not reflexive")
        for a, b in relations:
            if a not in idx or b not in idx:
                raise PosetError(f"relation ({a!r}, {b!r}) mentions an unknown element")
            table[idx[a], idx[b]] = True
        # transitive closure (Warshall)
        for k in range(n):
            table |= np.outer(table[:, k], table[k, :])
        anti = table & table.T
        if np.any(anti & ~np.eye(n, dtype=bool)):
            raise PosetError("relation is not antisymmetric")
        order = _linear_extension(elems, table)
        perm = [idx[e] for e in order]
        self.elements: tuple[Element, ...] = tuple(order)
        self._index = {e: i for i, e in enumerate(order)}
        t = table[np.ix_(perm, perm)]
        t.flags.writeable = False
        self._leq = t
        self.name = name

    # basic queries

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        try:
            return x in self._index
        except TypeError:
            return False

    def index(self, x: Element) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise PosetError(f"unknown element {x!r}") from None

    def leq(self, a: Element, b: Element) -> bool:
        return bool(self._leq[self.index(a), self.index(b)])

    def lt(self, a: Element, b: Element) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    @cached_property
    def relations(self) -> tuple[tuple[Element, Element], ...]:
        """All strict relations a < b, in canonical order."""
        n = len(self)
        return tuple((self.elements[i], self.elements[j])
                     for i in range(n) for j in range(n) if i != j and self._leq[i, j])

    @cached_property
    def covers(self) -> tuple[tuple[Element, Element], ...]:
        """Covering relations a ⋖ b, in canonical order."""
        n = len(self)
        lt = self._leq & ~np.eye(n, dtype=bool)
        out = []
        for i in range(n):
            for j in range(n):
                if lt[i, j] and not np.any(lt[i, :] & lt[:, j]):
                    out.append((self.elements[i], self.elements[j]))
        return tuple(out)

    def lower_covers(self, b) -> list:
        return [a for a, c in self.covers if c == b]

    def upper_covers(self, a) -> list:
        return [c for b, c in self.covers if b == a]

    def down_set(self, b) -> list:
        j = self.index(b)
        return [e for i, e in enumerate(self.elements) if self._leq[i, j]]

    def up_set(self, a) -> list:
        i = self.index(a)
        return [e for j, e in enumerate(self.elements) if self._leq[i, j]]

    def maxima(self) -> list:
        return [e for e in self.elements if len(self.up_set(e)) == 1]

    def minima(self) -> list:
        return [e for e in self.elements if len(self.down_set(e)) == 1]

    def maximum(self):
        m = self.maxima()
        return m[0] if len(m) == 1 and len(self.down_set(m[0])) == len(self) else None

    def minimum(self):
        m = self.minima()
        return m[0] if len(m) == 1 and len(self.up_set(m[0])) == len(self) else None

    def saturated_chain(self, a, b) -> list:
        """Some maximal chain of covers from a to b (a ≤ b)."""
        if not self.leq(a, b):
            raise PosetError(f"{a!r} is not below {b!r}")
        path = [a]
        while path[-1] != b:
            nxt = next(c for c in self.upper_covers(path[-1]) if self.leq(c, b))
            path.append(nxt)
        return path

    @cached_property
    def _chain_cache(self) -> dict[int, list[tuple]]:
        return {}

    def chains(self, n: int) -> list[tuple]:
        """Strictly increasing chains p_0 < ... < p_n in lexicographic canonical order."""
        cache = self._chain_cache
        if n in cache:
            return cache[n]
        if n < 0:
            res = []
        elif n == 0:
            res = [(e,) for e in self.elements]
        else:
            m = len(self)
            res = []
            for c in self.chains(n - 1):
                last = self._index[c[-1]]
                for j in range(last + 1, m):
                    if self._leq[last, j]:
                        res.append(c + (self.elements[j],))
            res.sort(key=lambda c: [self._index[e] for e in c])
        cache[n] = res
        return res

    def all_chains(self) -> list[tuple]:
        out = []
        n = 0
        while True:
            c = self.chains(n)
            if not c:
                return out
            out.extend(c)
            n += 1

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and bool(np.array_equal(self._leq, other._leq))

    def __hash__(self):
        return hash((self.elements, self._leq.tobytes()))

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"Poset({label}{len(self)} elements, {len(self.covers)} covers)"

    def identity(self) -> "MonotoneMap":
        return MonotoneMap(self, self, {e: e for e in self.elements})


def _linear_extension(elems: Sequence, table: np.ndarray) -> list:
    n = len(elems)
    indeg = [int(table[:, j].sum()) - 1 for j in range(n)]
    avail = [j for j in range(n) if indeg[j] == 0]
    out = []
    while avail:
        j = min(avail, key=lambda k: sort_key(elems[k]))
        avail.remove(j)
        out.append(elems[j])
        for k in range(n):
            if k != j and table[j, k]:
                indeg[k] -= 1
                if indeg[k] == 0:
                    avail.append(k)
    return out


class MonotoneMap:
    """An order-preserving map between finite posets."""

    def __init__(self, source: Poset, target: Poset, assignment: dict, check: bool = True):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        if check:
            for a in source.elements:
                if a not in self.assignment:
                    raise PosetError(f"map is not defined on {a!r}")
                if self.assignment[a] not in target:
                    raise PosetError(f"image of {a!r} is not in the target")
            for a, b in source.relations:
                if not target.leq(self.assignment[a], self.assignment[b]):
                    raise PosetError(f"map is not monotone on {a!r} <= {b!r}")

    def __call__(self, a):
        return self.assignment[a]

    def compose(self, first: "MonotoneMap") -> "MonotoneMap":
        """self ∘ first."""
        if first.target != self.source:
            raise PosetError("maps are not composable")
        return MonotoneMap(first.source, self.target, {a: self(first(a)) for a in first.source}, check=False)

    def image(self) -> list:
        seen = []
        for a in self.source.elements:
            b = self(a)
            if b not in seen:
                seen.append(b)
        return seen

    def is_embedding(self) -> bool:
        """Injective and order-reflecting."""
        vals = [self(a) for a in self.source.elements]
        if len(set(vals)) != len(vals):
            return False
        s = self.source
        return all(s.leq(a, b) == self.target.leq(self(a), self(b))
                   for a in s.elements for b in s.elements)

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.assignment == other.assignment

    def __repr__(self):
        return f"MonotoneMap({self.source!r} -> {self.target!r})"


# constructors


def chain_poset(n: int) -> Poset:
    """The linear order 0 < 1 < ... < n."""
    if n < 0:
        raise PosetError("chain length must be nonnegative")
    return Poset(range(n + 1), [(i, i + 1) for i in range(n)], name=f"[{n}]")


def point() -> Poset:
    return chain_poset(0)


def empty_poset() -> Poset:
    return Poset([], name="empty")


def antichain(n: int) -> Poset:
    return Poset(range(n), name=f"antichain{n}")


def random_poset(n: int, seed: int = 0, density: float = 0.4) -> Poset:
    """Transitive closure of random relations i < j on range(n)."""
    import random

    rng = random.Random(seed)
    rels = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < density]
    return Poset(range(n), rels, name=f"random{n}")


def product(p: Poset, q: Poset) -> Poset:
    elems = [(a, b) for a in p.elements for b in q.elements]
    return Poset(elems, leq=lambda x, y: p.leq(x[0], y[0]) and q.leq(x[1], y[1]))


def opposite(p: Poset) -> Poset:
    return Poset(p.elements, [(b, a) for a, b in p.relations], name=f"{p.name}^op" if p.name else None)


def disjoint_union(p: Poset, q: Poset) -> Poset:
    elems = [(0, a) for a in p.elements] + [(1, b) for b in q.elements]
    rels = [((0, a), (0, b)) for a, b in p.relations] + [((1, a), (1, b)) for a, b in q.relations]
    return Poset(elems, rels)


def full_subposet(p: Poset, elems: Iterable) -> tuple[Poset, MonotoneMap]:
    """Induced subposet together with its inclusion."""
    sub = list(elems)
    for e in sub:
        p.index(e)
    s = Poset(sub, leq=lambda a, b: p.leq(a, b))
    return s, MonotoneMap(s, p, {e: e for e in sub}, check=False)


def slice_under(u: MonotoneMap, b) -> tuple[Poset, MonotoneMap]:
    """The subposet {a : u(a) <= b} of the source, with its projection."""
    u.target.index(b)
    return full_subposet(u.source, [a for a in u.source.elements if u.target.leq(u(a), b)])


def slice_over(u: MonotoneMap, b) -> tuple[Poset, MonotoneMap]:
    """The subposet {a : b <= u(a)} of the source, with its projection."""
    u.target.index(b)
    return full_subposet(u.source, [a for a in u.source.elements if u.target.leq(b, u(a))])


def square() -> Poset:
    return product(chain_poset(1), chain_poset(1))


SPAN = ((0, 0), (0, 1), (1, 0))
COSPAN = ((0, 1), (1, 0), (1, 1))


def span_inclusion() -> MonotoneMap:
    """The span ⌜ as the full subposet of the square without (1, 1)."""
    return full_subposet(square(), SPAN)[1]


def cospan_inclusion() -> MonotoneMap:
    """The cospan ⌟ as the full subposet of the square without (0, 0)."""
    return full_subposet(square(), COSPAN)[1]


def cube(n: int) -> Poset:
    """Subsets of {1..n} (as sorted tuples) ordered by inclusion."""
    subsets = [c for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
    return Poset(subsets, leq=lambda a, b: set(a) <= set(b), name=f"cube{n}")


def cube_chunk(n: int, k: int, l: int) -> tuple[Poset, MonotoneMap]:
    """Subsets with cardinality in [k, l], with the inclusion into cube(n)."""
    if not 0 <= k <= l <= n:
        raise PosetError(f"bad chunk bounds 0 <= {k} <= {l} <= {n}")
    c = cube(n)
    return full_subposet(c, [s for s in c.elements if k <= len(s) <= l])


def in_mesh(n: int, i: int, j: int) -> bool:
    return i - 1 <= j <= i + n


def is_mesh_boundary(n: int, e) -> bool:
    i, j = e
    return j == i - 1 or j == i + n


def mesh_window(n: int, k_min: int, k_max: int) -> Poset:
    """Rows k_min..k_max of the mesh poset for A_n inside Z x Z.

    Elements are (i, j) with i - 1 <= j <= i + n and the product order; the
    stripes j = i - 1 and j = i + n form the boundary, and k -> (0, k) embeds
    the linear quiver [n - 1] as row 0.
    """
    if n < 1:
        raise PosetError("mesh index must be at least 1")
    if not k_min <= 0 <= k_max:
        raise PosetError(f"window [{k_min}, {k_max}] must contain row 0")
    elems = [(i, j) for i in range(k_min, k_max + 1) for j in range(i - 1, i + n + 1)]
    return Poset(elems, leq=lambda a, b: a[0] <= b[0] and a[1] <= b[1], name=f"M{n}[{k_min},{k_max}]")


def mesh_squares(p: Poset) -> list[tuple]:
    """Unit squares ((i,j),(i,j+1),(i+1,j),(i+1,j+1)) fully contained in a window."""
    out = []
    for (i, j) in p.elements:
        sq = ((i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1))
        if all(e in p for e in sq):
            out.append(sq)
    return out


def twisted_diag_downset(p: Poset) -> tuple[Poset, MonotoneMap]:
    """Down-set of the diagonal in p^op x p: pairs (q1, q2) with q2 <= q1 in p."""
    amb = product(opposite(p), p)
    return full_subposet(amb, [(q1, q2) for (q1, q2) in amb.elements if p.leq(q2, q1)])


def strict_chains(p: Poset, n: int) -> list[tuple]:
    return p.chains(n)


def _check_embedding(u: MonotoneMap):
    if not u.is_embedding():
        raise PosetError("map is not an order embedding")


def is_sieve(u: MonotoneMap) -> bool:
    """Image is a down-set of the target."""
    _check_embedding(u)
    img = set(u.image())
    return all(a in img for b in img for a in u.target.down_set(b))


def is_cosieve(u: MonotoneMap) -> bool:
    """Image is an up-set of the target."""
    _check_embedding(u)
    img = set(u.image())
    return all(c in img for b in img for c in u.target.up_set(b))


def is_order_isomorphic(p: Poset, q: Poset) -> bool:
    """Brute-force isomorphism test (small posets only)."""
    from itertools import permutations

    if len(p) != len(q) or len(p.relations) != len(q.relations):
        return False
    pe, qe = p.elements, q.elements
    for perm in permutations(qe):
        f = dict(zip(pe, perm))
        if all(q.leq(f[a], f[b]) == p.leq(a, b) for a in pe for b in pe):
            return True
    return False


def inclusion_of(p: Poset, q: Poset, assignment: dict | None = None) -> MonotoneMap:
    """Monotone map p -> q, by default the identity on identifiers."""
    return MonotoneMap(p, q, assignment or {e: e for e in p.elements})
