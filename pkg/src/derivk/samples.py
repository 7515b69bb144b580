"""Reproducible random test objects: squares, pasting diagrams, cubes."""

from __future__ import annotations

import random

from .chains import ChainComplex, direct_sum, injection, projection, random_complex
from .kan import lkan, rkan
from .linalg import F32003, Field
from .posets import chain_poset, cospan_inclusion, cube_chunk, full_subposet, product, span_inclusion
from .reps import Representation, random_rep


def lkan_square(seed: int, field: Field = F32003, max_dim: int = 3, amplitude: int = 3) -> Representation:
    """A cocartesian square: left Kan extension of a random span."""
    u = span_inclusion()
    return lkan(u, random_rep(u.source, max_dim, amplitude, seed=seed, field=field))


def rkan_square(seed: int, field: Field = F32003, max_dim: int = 3, amplitude: int = 3) -> Representation:
    """A cartesian square: right Kan extension of a random cospan."""
    u = cospan_inclusion()
    return rkan(u, random_rep(u.source, max_dim, amplitude, seed=seed, field=field))


def add_summand(x: Representation, e, c: ChainComplex) -> Representation:
    """Replace x(e) by x(e) ⊕ c; the new summand receives and sends zero."""
    F = x.field
    new = direct_sum(F, [x.objects[e], c])
    inc = injection([x.objects[e], c], 0, new)
    pr = projection([x.objects[e], c], 0, new)
    objs = dict(x.objects)
    objs[e] = new
    maps = {}
    for (a, b), f in x.maps.items():
        if b == e:
            f = inc @ f
        if a == e:
            f = f @ pr
        maps[(a, b)] = f
    return Representation(x.shape, objs, maps, field=F)


def grid_diagram(seed: int, mode: str, field: Field = F32003, max_dim: int = 3,
                 amplitude: int = 3) -> Representation:
    """A random representation of [1] x [2].

    ``full``: Kan extended from 00, 01, 02, 10 (both squares cocartesian);
    ``right``: random left square, right square a homotopy pushout;
    ``perturbed``: ``full`` with a random summand added at (1, 2);
    ``random``: an arbitrary commutative diagram.
    """
    grid = product(chain_poset(1), chain_poset(2))
    if mode == "random":
        return random_rep(grid, max_dim, amplitude, seed=seed, field=field)
    if mode in ("full", "perturbed"):
        base = [(0, 0), (0, 1), (0, 2), (1, 0)]
    elif mode == "right":
        base = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    sub, inc = full_subposet(grid, base)
    x = lkan(inc, random_rep(sub, max_dim, amplitude, seed=seed, field=field))
    if mode == "perturbed":
        rng = random.Random(seed + 7919)
        c = random_complex(field, rng, max_dim, amplitude)
        x = add_summand(x, (1, 2), c)
    return x


def star_cube(seed: int, n: int = 3, field: Field = F32003, max_dim: int = 2, amplitude: int = 2) -> Representation:
    """A strongly bicartesian n-cube: left Kan extension from the source star."""
    star, inc = cube_chunk(n, 0, 1)
    return lkan(inc, random_rep(star, max_dim, amplitude, seed=seed, field=field))


def perturbed_cube(seed: int, n: int = 3, field: Field = F32003, max_dim: int = 2,
                   amplitude: int = 2) -> Representation:
    """A star cube with a random summand added at a random vertex."""
    x = star_cube(seed, n, field, max_dim, amplitude)
    rng = random.Random(seed + 104729)
    e = rng.choice([v for v in x.shape.elements if len(v) >= 1])
    c = random_complex(field, rng, max_dim, amplitude)
    return add_summand(x, e, c)


def random_a_rep(q, seed: int, field: Field = F32003, max_dim: int = 3, amplitude: int = 3) -> Representation:
    """Random representation of an A_n orientation."""
    return random_rep(q.poset(), max_dim, amplitude, seed=seed, field=field)

