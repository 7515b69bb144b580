from hypothesis import given, strategies as st

from derivk.chains import ChainComplex, ChainMap, homology_dims
from derivk.linalg import F32003, Matrix
from derivk.posets import MonotoneMap, chain_poset, full_subposet, random_poset, span_inclusion, square
from derivk.reps import (
    Representation, constant_rep, homology_table, random_rep, restrict, same_tables,
)
from derivk.stable import cofiber, suspension_square
from strategies import seeds, small_posets

K = ChainComplex.sphere(F32003, 0)


def same_rep(x, y):
    return (x.shape == y.shape and all(x.objects[e] == y.objects[e] for e in x.shape.elements)
            and all(x.maps[ab] == y.maps[ab] for ab in x.shape.covers))


def test_restrict_examples():
    x = random_rep(square(), seed=4)
    assert same_rep(restrict(x, square().identity()), x)
    r = restrict(x, span_inclusion())
    assert (1, 1) not in r.shape and len(r.shape) == 3
    c = constant_rep(square(), K)
    rc = restrict(c, span_inclusion())
    assert all(rc.objects[e] == K for e in rc.shape.elements)
    assert all(f == ChainMap.identity(K) for f in rc.maps.values())


def test_table_of_constant_arrow():
    t = homology_table(constant_rep(chain_poset(1), K))
    assert t.at(0) == t.at(1) == {0: 1}
    assert t.induced(0, 1, 0) == Matrix.identity(F32003, 1)


def test_table_of_cofiber_square_of_identity():
    t = homology_table(cofiber(ChainMap.identity(K)).square)
    assert t.at((0, 0)) == t.at((0, 1)) == {0: 1}
    assert t.at((1, 0)) == t.at((1, 1)) == {}


def test_table_of_suspension_square():
    t = homology_table(suspension_square(K))
    assert t.at((0, 0)) == {0: 1}
    assert t.at((1, 1)) == {1: 1}
    assert t.at((0, 1)) == t.at((1, 0)) == {}


def test_noncommuting_square_is_rejected():
    one = ChainMap.identity(K)
    zero = ChainMap.zero(K, K)
    objs = {e: K for e in square().elements}
    maps = {((0, 0), (0, 1)): one, ((0, 1), (1, 1)): one, ((0, 0), (1, 0)): one, ((1, 0), (1, 1)): zero}
    x = Representation(square(), objs, maps, check=False)
    assert x.validate()


@given(small_posets(), seeds)
def test_random_reps_validate(p, seed):
    assert random_rep(p, 2, 2, seed=seed).validate() == []


@given(st.integers(2, 5), seeds, seeds)
def test_restriction_is_functorial(n, pseed, xseed):
    p = random_poset(n, seed=pseed)
    x = random_rep(p, 2, 2, seed=xseed)
    vsub, v = full_subposet(p, p.elements[1:])
    usub, u = full_subposet(vsub, vsub.elements[1:])
    assert same_rep(restrict(restrict(x, v), u), restrict(x, v.compose(u)))


@given(st.integers(1, 5), seeds, seeds)
def test_restricted_table_is_pullback(n, pseed, xseed):
    p = random_poset(n, seed=pseed)
    x = random_rep(p, 2, 2, seed=xseed)
    sub, u = full_subposet(p, p.elements[::2])
    direct = homology_table(restrict(x, u))
    pulled = homology_table(x).pullback(u)
    assert {k: v for k, v in direct.dims.items() if v} == {k: v for k, v in pulled.dims.items() if v}
    for a, b in sub.covers:
        for n_ in direct.degrees():
            assert direct.induced(a, b, n_) == pulled.induced(a, b, n_)


def test_tables_ignore_basis():
    x = random_rep(chain_poset(2), seed=3)
    assert same_tables(x, x)
    shifted = {e: ChainComplex.sphere(F32003, 5) for e in chain_poset(2).elements}
    assert not same_tables(x, Representation(chain_poset(2), shifted, {}))


def test_empty_shape_is_accepted():
    from derivk.posets import empty_poset

    x = Representation(empty_poset(), {}, {}, field=F32003)
    assert x.validate() == [] and homology_table(x).dims == {}
    assert restrict(random_rep(chain_poset(1), seed=1), MonotoneMap(empty_poset(), chain_poset(1), {})).objects == {}


def test_homology_dims_at_points():
    x = random_rep(chain_poset(1), seed=9)
    t = homology_table(x)
    for e in x.shape.elements:
        assert t.at(e) == homology_dims(x.objects[e])
