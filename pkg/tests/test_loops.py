import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aloop import constructions as C
from aloop import loops, perms
from aloop.errors import FormatError, NeutralNotZero, NoTwoSidedInverse, NotLatin
from aloop.loops import LoopTable
from aloop.perms import PermGroup

from conftest import FIXTURES


def test_validation():
    assert LoopTable([[0, 1], [1, 0]]).n == 2
    with pytest.raises(NotLatin) as exc:
        loops.validate_loop([[0, 1], [1, 1]])
    assert (exc.value.kind, exc.value.index) == ("column", 1)
    with pytest.raises(NeutralNotZero):
        loops.validate_loop([[1, 0], [0, 1]])
    with pytest.raises(FormatError):
        loops.validate_loop([[0, 1, 2], [1, 0]])


def test_divisions():
    Z4 = C.cyclic(4)
    assert Z4.ldiv(1, 0) == 3
    assert Z4.rdiv(3, 1) == 2
    assert all(Z4.ldiv(0, b) == b for b in range(4))


def test_translations():
    Z4, S3 = C.cyclic(4), C.symmetric(3)
    R0, L0 = Z4.translations(0)
    assert R0 == L0 == perms.identity(4)
    assert Z4.R[1] == (1, 2, 3, 0)
    s = 1  # (0, 2, 1) is a transposition
    assert perms.cycles(S3.rows[0])  # sanity: table is built
    assert S3.L[s] != S3.R[s]


def test_group_orders():
    Z4, S3, V4 = C.cyclic(4), C.symmetric(3), C.elementary_abelian_2(2)
    assert Z4.mlt.order() == 4 and Z4.inn.order() == 1
    assert S3.mlt.order() == 36 and S3.inn.order() == 6
    assert V4.mlt.order() == 4
    assert len(perms.naive_closure(list(S3.R) + list(S3.L), 6)) == 36


def test_automorphic_examples(f16):
    assert loops.is_automorphic(C.cyclic(6))
    assert loops.is_automorphic(C.symmetric(3))
    res = loops.is_automorphic(C.na5())
    assert not res and res.witness is not None
    label, a, b = res.witness
    g = dict(loops.inner_generators(C.na5()))[label]
    Q = C.na5()
    assert g[Q.mul(a, b)] != Q.mul(g[a], g[b])
    assert loops.is_automorphic(f16)


def test_power_structure(f16):
    ps = loops.power_structure(C.cyclic(4))
    assert ps.orders == (1, 4, 2, 4) and ps.exponent == 4
    ps = loops.power_structure(f16)
    assert ps.orders == (1,) + (2,) * 15 and ps.exponent == 2
    na5 = C.na5()
    ps = loops.power_structure(na5)
    assert not ps.power_associative
    assert na5.mul(1, na5.mul(1, 1)) == 3 and na5.mul(na5.mul(1, 1), 1) == 0


def test_aaip(f16):
    assert loops.check_aaip(C.symmetric(3))
    assert loops.check_aaip(f16)
    assert loops.j_map(f16) == perms.identity(16)
    with pytest.raises(NoTwoSidedInverse) as exc:
        loops.check_aaip(C.na5())
    assert (exc.value.element, exc.value.left, exc.value.right) == (1, 2, 4)


def test_p_maps(f16):
    Z4 = C.cyclic(4)
    assert loops.p_map(Z4, 1) == (2, 3, 0, 1)
    assert all(perms.is_identity(loops.p_map(f16, x)) for x in range(16))
    assert loops.check_p_identities(C.symmetric(3))


def test_j_relations():
    Z4 = C.cyclic(4)
    assert loops.j_map(Z4) == (0, 3, 2, 1)
    assert loops.check_j_relations(Z4)
    assert loops.check_j_relations(C.elementary_abelian_2(3))
    assert loops.check_j_relations(C.symmetric(3))


def test_two_power(f16):
    assert loops.check_two_power(C.elementary_abelian_2(2)) == loops.TwoPower(True, True)
    assert loops.check_two_power(f16) == loops.TwoPower(True, True)
    assert loops.check_two_power(C.cyclic(6)) == loops.TwoPower(False, None)


def test_builders():
    assert C.cyclic(2).rows == ((0, 1), (1, 0))
    assert C.elementary_abelian_2(2).rows == ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))
    # CRT relabeling: (a, b) at index 3a + b maps to (3a + 4b) mod 6
    prod = C.direct_product(C.cyclic(2), C.cyclic(3))
    phi = [(3 * (i // 3) + 4 * (i % 3)) % 6 for i in range(6)]
    assert C.relabel(prod, phi) == C.cyclic(6)
    assert C.dihedral(4).n == 8 and not C.dihedral(4).commutative
    assert C.alternating(5).n == 60


def test_ctab_roundtrip(tmp_path):
    text = "# a comment\n3\n0 1 2\n1 2 0\n2 0 1\n"
    Q = loops.parse_ctab(text)
    assert loops.format_ctab(Q) == "3\n0 1 2\n1 2 0\n2 0 1\n"
    loops.to_file(Q, tmp_path / "z3.ctab")
    assert loops.from_file(tmp_path / "z3.ctab") == Q
    with pytest.raises(FormatError):
        loops.parse_ctab("2\n0 1\n")


def test_commutative_inner_generators_suffice():
    for name, Q in FIXTURES.items():
        if not Q.commutative:
            continue
        full = PermGroup([p for _, p in loops.inner_generators(Q, commutative_only=False)], Q.n)
        assert full.order() == Q.inn.order(), name


def test_inner_mapping_group_is_stabilizer():
    for name, Q in FIXTURES.items():
        stab = Q.mlt.stabilizer(0)
        assert stab.order() == Q.inn.order(), name
        assert all(g in stab for _, g in Q.inner_generators)


# -- properties over all fixtures ----------------------------------------------

@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_translation_invariants(name):
    Q = FIXTURES[name]
    for x in range(Q.n):
        perms.check_perm(Q.R[x])
        perms.check_perm(Q.L[x])
    assert perms.is_identity(Q.R[0]) and perms.is_identity(Q.L[0])
    assert Q.mlt.orbit(0) == frozenset(range(Q.n))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_automorphic_consequences(name):
    Q = FIXTURES[name]
    if not loops.is_automorphic(Q):
        return
    assert loops.power_structure(Q).power_associative
    assert loops.check_aaip(Q)
    assert loops.check_p_identities(Q)
    assert loops.check_j_relations(Q)
    assert Q.inn.transitivity_degree(range(1, Q.n), 4) <= 3


def random_loop(n, rng):
    """Uniform-ish random normalized Latin square by randomized backtracking."""
    rows = [[0] * n for _ in range(n)]
    for k in range(n):
        rows[0][k] = rows[k][0] = k
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def fill(pos):
        if pos == len(cells):
            return True
        i, j = cells[pos]
        used = set(rows[i][:j]) | {rows[r][j] for r in range(i)}
        options = [v for v in range(n) if v not in used]
        rng.shuffle(options)
        for v in options:
            rows[i][j] = v
            if fill(pos + 1):
                return True
        return False

    assert fill(0)
    return LoopTable(rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.data())
def test_random_loop_invariants(n, data):
    Q = random_loop(n, data.draw(st.randoms(use_true_random=False)))
    assert Q.inn.order() * n == Q.mlt.order()
    ps = loops.power_structure(Q)
    if ps.power_associative:
        assert ps.exponent % max(ps.orders) == 0
    if loops.is_automorphic(Q):
        assert ps.power_associative
        assert loops.check_aaip(Q)
        assert loops.check_p_identities(Q)
        assert loops.check_j_relations(Q)
    w = loops.associativity_witness(Q)
    if w is not None:
        a, b, c = w
        assert Q.mul(Q.mul(a, b), c) != Q.mul(a, Q.mul(b, c))
    T = Q.arr
    assert (np.sort(T, axis=0) == np.arange(n)[:, None]).all()
