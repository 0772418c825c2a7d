import itertools

import pytest
from hypothesis import given, settings, strategies as st

from aloop import perms
from aloop.errors import AlgebraError, DegreeMismatch, NotInvariant, NotTransitive
from aloop.perms import PermGroup

C4 = PermGroup([(1, 2, 3, 0)])
C5 = PermGroup([(1, 2, 3, 4, 0)])
KLEIN = PermGroup([(1, 0, 3, 2), (2, 3, 0, 1)])
S3 = PermGroup([(1, 2, 0), (1, 0, 2)])


def test_compose_inverse_conjugate():
    assert perms.compose((1, 2, 0), (1, 0, 2)) == (0, 2, 1)
    assert perms.inverse(perms.identity(5)) == perms.identity(5)
    # q^-1 p q with the left factor applied first
    assert perms.conjugate((1, 0, 2), (1, 2, 0)) == (0, 2, 1)
    p, q = (1, 0, 2), (1, 2, 0)
    assert perms.conjugate(p, q) == perms.compose(perms.compose(perms.inverse(q), p), q)
    with pytest.raises(DegreeMismatch):
        perms.compose((0, 1), (0, 1, 2))


def test_check_perm_rejects_non_bijection():
    with pytest.raises(AlgebraError):
        perms.check_perm((0, 0, 1))


def test_cycles_and_order():
    p = (1, 2, 0, 4, 3)
    assert perms.cycles(p) == [(0, 1, 2), (3, 4)]
    assert perms.perm_order(p) == 6
    assert perms.power(p, 6) == perms.identity(5)
    assert perms.power(p, -1) == perms.inverse(p)


def test_order_and_membership():
    assert S3.order() == 6
    assert PermGroup([perms.identity(4)]).order() == 1
    assert (1, 0, 2) not in PermGroup([(1, 2, 0)])
    with pytest.raises(DegreeMismatch):
        S3.contains((0, 1))


def test_orbits():
    assert PermGroup([(1, 0, 3, 2)]).orbit(0) == {0, 1}
    assert C4.orbit(2) == {0, 1, 2, 3}
    assert PermGroup([perms.identity(6)]).orbit(5) == {5}
    with pytest.raises(AlgebraError):
        C4.orbit(4)


def test_minimal_block():
    assert C4.minimal_block(0, 2).blocks == ((0, 2), (1, 3))
    assert C4.minimal_block(1, 1).blocks == ((0,), (1,), (2,), (3,))
    assert C5.minimal_block(0, 1).blocks == ((0, 1, 2, 3, 4),)
    with pytest.raises(NotTransitive):
        PermGroup([(1, 0, 3, 2)]).minimal_block(0, 1)


def test_primitivity():
    assert not C4.is_primitive()
    assert C5.is_primitive()
    assert not KLEIN.is_primitive()
    with pytest.raises(NotTransitive, match="not transitive"):
        PermGroup([(1, 0, 2)]).is_primitive()


def test_normal_closure():
    assert S3.normal_closure([(1, 0, 2)]).order() == 6
    assert KLEIN.normal_closure([(1, 0, 3, 2)]).order() == 2
    assert C4.normal_closure([perms.power((1, 2, 3, 0), 2)]).order() == 2


def test_random_element():
    e = PermGroup([perms.identity(3)])
    assert all(perms.is_identity(e.random_element(s)) for s in range(5))
    assert {S3.random_element(s) for s in range(100)} == set(itertools.permutations(range(3)))
    assert S3.random_element(7) == S3.random_element(7)


def test_transitivity_degree():
    assert S3.transitivity_degree() == 3
    assert C4.transitivity_degree() == 1
    assert PermGroup([perms.identity(3)]).transitivity_degree() == 0
    assert PermGroup(list(_sym_gens(6))).transitivity_degree(cap=4) == 4
    with pytest.raises(NotInvariant):
        C4.transitivity_degree(domain={0, 1})


def _sym_gens(n):
    yield tuple(list(range(1, n)) + [0])
    yield (1, 0) + tuple(range(2, n))


def test_structure_predicates():
    k = KLEIN.structure_predicates()
    assert (k.is_regular, k.is_semiregular, k.is_elementary_abelian_2, k.fixed_points_of_group) == (
        True, True, True, frozenset())
    c = C4.structure_predicates()
    assert (c.is_regular, c.is_semiregular, c.is_elementary_abelian_2) == (True, True, False)
    t = PermGroup([perms.identity(3)]).structure_predicates()
    assert (t.is_regular, t.is_semiregular, t.is_elementary_abelian_2) == (False, True, True)
    assert t.fixed_points_of_group == {0, 1, 2}


def test_stabilizer():
    S4 = PermGroup(list(_sym_gens(4)))
    assert S4.stabilizer(0).order() == 6
    assert S4.stabilizer(0, 1).order() == 2


# -- properties against the naive closure oracle -------------------------------

perm_st = st.integers(min_value=2, max_value=7).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))).map(tuple), min_size=1, max_size=3))


@settings(max_examples=80, deadline=None)
@given(perm_st)
def test_order_matches_naive_closure(gens):
    G = PermGroup(gens)
    closure = perms.naive_closure(gens, len(gens[0]))
    assert G.order() == len(closure)
    assert set(G.elements()) == closure


@settings(max_examples=60, deadline=None)
@given(perm_st, st.data())
def test_closed_under_products_and_inverses(gens, data):
    G = PermGroup(gens)
    p = G.random_element(data.draw(st.integers(0, 10**6)))
    q = G.random_element(data.draw(st.integers(0, 10**6)))
    assert perms.compose(p, q) in G
    assert perms.inverse(p) in G
    n = len(p)
    outsider = data.draw(st.permutations(list(range(n))).map(tuple))
    assert (outsider in G) == (outsider in perms.naive_closure(gens, n))


@settings(max_examples=60, deadline=None)
@given(perm_st, st.data())
def test_blocks_are_invariant(gens, data):
    G = PermGroup(gens)
    if not G.is_transitive():
        return
    n = G.degree
    b = data.draw(st.integers(0, n - 1))
    system = G.minimal_block(0, b)
    cells = {frozenset(c) for c in system.blocks}
    assert n % system.block_size == 0
    assert all(len(c) == system.block_size for c in cells)
    for g in gens:
        assert {frozenset(g[x] for x in c) for c in cells} == cells


@settings(max_examples=50, deadline=None)
@given(perm_st, st.data())
def test_normal_closure_is_normal(gens, data):
    G = PermGroup(gens)
    s = G.random_element(data.draw(st.integers(0, 1000)))
    N = G.normal_closure([s])
    assert s in N
    for x in N.generators:
        for g in gens:
            assert perms.conjugate(x, g) in N


@settings(max_examples=40, deadline=None)
@given(perm_st)
def test_transitivity_degree_counts_tuples(gens):
    G = PermGroup(gens)
    n = G.degree
    k = G.transitivity_degree(cap=3)
    elements = list(G.elements())
    for m in range(1, k + 1):
        start = tuple(range(m))
        images = {tuple(g[x] for x in start) for g in elements}
        expected = 1
        for i in range(m):
            expected *= n - i
        assert len(images) == expected
