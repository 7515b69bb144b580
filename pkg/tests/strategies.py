"""Hypothesis strategies shared by the test modules."""

import random

from hypothesis import strategies as st

from derivk.chains import random_chain_map, random_complex
from derivk.linalg import F32003, QQ
from derivk.posets import random_poset
from derivk.reps import random_rep

seeds = st.integers(0, 2**31 - 1)
fields = st.sampled_from([QQ, F32003])


@st.composite
def complexes(draw, field=None, max_dim=3, amplitude=3):
    f = field or draw(fields)
    return random_complex(f, random.Random(draw(seeds)), max_dim, amplitude)


@st.composite
def chain_maps(draw, field=None, max_dim=3, amplitude=3):
    f = field or draw(fields)
    rng = random.Random(draw(seeds))
    x = random_complex(f, rng, max_dim, amplitude)
    y = random_complex(f, rng, max_dim, amplitude)
    return random_chain_map(f, rng, x, y)


@st.composite
def small_posets(draw, max_size=5):
    return random_poset(draw(st.integers(1, max_size)), seed=draw(seeds), density=draw(st.floats(0.0, 0.8)))


@st.composite
def reps_on(draw, shape, field=F32003, max_dim=2, amplitude=2):
    return random_rep(shape, max_dim, amplitude, seed=draw(seeds), field=field)
