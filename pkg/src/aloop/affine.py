"""Regular normal elementary abelian 2-subgroups of Mlt(Q).

Given such a subgroup U, every right translation factors uniquely as
``R_x = h_x u_x`` with ``h_x`` fixing 0 and ``u_x`` in U, and U gives the
points of Q coordinates in GF(2)^k.  The transported loop on coordinates is
``u o v = u^{h_v} + v``.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import perms
from .gf2 import GF2Mat
from .loops import Check, LoopTable, is_automorphic, is_power_of_two, power_structure
from .perms import PermGroup

DEFAULT_BUDGET = 256
FALLBACK_LIMIT = 10 ** 4


@dataclass(frozen=True)
class AffineStructure:
    loop: LoopTable = field(repr=False)
    U: PermGroup
    u_map: tuple   # point x -> the element of U sending 0 to x
    h_map: tuple   # point x -> R_x u_x^-1
    basis: tuple   # points whose u-values form a basis of U
    coords: tuple  # point -> coordinate vector (int bitmask)
    points: tuple  # coordinate vector -> point
    attempts: int = 0
    inside_mlt: bool = True  # False: U is only normalized by Mlt(Q)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def h_matrix(self, x: int) -> GF2Mat:
        """Action of h_x on coordinates (conjugation u_y -> u_{h_x(y)})."""
        h = self.h_map[x]
        return GF2Mat.from_function(self.dim, lambda v: self.coords[h[self.points[v]]])


def _semiregular_ea2(N: PermGroup) -> bool:
    pred = N.structure_predicates()
    return pred.is_elementary_abelian_2 and pred.is_semiregular


def _greedy(mlt: PermGroup, candidates, n: int) -> Optional[PermGroup]:
    gens: list = []
    N = None
    for t in candidates:
        if N is not None and t in N:
            continue
        trial = mlt.normal_closure(gens + [t])
        if trial.order() > n or not _semiregular_ea2(trial):
            continue
        gens.append(t)
        N = trial
        if N.order() == n:
            return N
    return None


def _sampled_involutions(mlt: PermGroup, rng: random.Random, count: int):
    for _ in range(count):
        g = mlt.random_element(rng.getrandbits(64))
        m = perms.perm_order(g)
        if m % 2:
            continue
        t = perms.power(g, m // 2)
        if all(t[i] != i for i in range(len(t))):
            yield t


def _word_involutions(mlt: PermGroup, limit: int):
    """Fixed-point-free involutions among elements reached by breadth-first
    search over generator words."""
    start = perms.identity(mlt.degree)
    seen = {start}
    queue = deque([start])
    while queue and len(seen) <= limit:
        x = queue.popleft()
        if all(x[i] != i for i in range(len(x))) and perms.is_identity(perms.compose(x, x)):
            yield x
        for g in mlt.generators:
            y = perms.compose(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)


def find_regular_normal_ea2(Q: LoopTable, seed: int = 0,
                            budget: int = DEFAULT_BUDGET) -> Optional[AffineStructure]:
    """Search Mlt(Q) for a regular normal elementary abelian 2-subgroup.

    Random attempts run with seeds derived from ``seed`` in order; the first
    success wins.  After ``budget`` failures a deterministic search over short
    generator words is tried.  ``None`` means nothing was found, not that no
    such subgroup exists.
    """
    n = Q.n
    if not is_power_of_two(n):
        return None
    if n == 1:
        return affine_structure(Q, PermGroup([], 1))
    if no_regular_ea2_in_mlt(Q):
        return None
    mlt = Q.mlt
    k = n.bit_length() - 1
    for attempt in range(budget):
        rng = random.Random(f"{seed}:{attempt}")
        U = _greedy(mlt, _sampled_involutions(mlt, rng, 8 * k + 8), n)
        if U is not None:
            return affine_structure(Q, U, attempts=attempt + 1)
    U = _greedy(mlt, _word_involutions(mlt, FALLBACK_LIMIT), n)
    if U is not None:
        return affine_structure(Q, U, attempts=budget + 1)
    return None


def affine_structure(Q: LoopTable, U: PermGroup, attempts: int = 0,
                     inside_mlt: bool = True) -> AffineStructure:
    """Coordinates and translation factorization for a given subgroup U.

    With ``inside_mlt`` U must be a regular normal elementary abelian
    2-subgroup of Mlt(Q) and every h_x must lie in Inn(Q); otherwise U need
    only be normalized by Mlt(Q), and h_x lies in the stabilizer of 0 in
    Mlt(Q)U.  Raises AssertionError when the requirements fail.
    """
    n = Q.n
    elements = list(U.elements())
    assert len(elements) == n, "U is not of order |Q|"
    u_map = [None] * n
    for u in elements:
        if not perms.is_identity(u):
            assert all(u[i] != i for i in range(n)), "U has a non-identity element with a fixed point"
            assert perms.is_identity(perms.compose(u, u)), "U has an element of order > 2"
        assert u_map[u[0]] is None, "U is not regular"
        u_map[u[0]] = u
    mlt = Q.mlt
    for u in U.generators:
        if inside_mlt:
            assert u in mlt, "U is not inside Mlt(Q)"
        for g in mlt.generators:
            assert perms.conjugate(u, g) in U, "U is not normalized by Mlt(Q)"
    inn = Q.inn
    h_map = []
    for x in range(n):
        h = perms.compose(Q.R[x], perms.inverse(u_map[x]))
        assert h[0] == 0, f"h_{x} moves 0"
        if inside_mlt:
            assert h in inn, f"h_{x} is not an inner mapping"
        else:
            for u in U.generators:
                assert perms.conjugate(u, h) in U, f"h_{x} does not normalize U"
        h_map.append(h)
    # greedy basis in point order; span tracked as point -> coordinate vector
    coords = {0: 0}
    basis = []
    for x in range(1, n):
        if x in coords:
            continue
        bit = 1 << len(basis)
        basis.append(x)
        ux = u_map[x]
        for p, v in list(coords.items()):
            coords[ux[p]] = v | bit
    assert len(coords) == n
    coord_t = tuple(coords[x] for x in range(n))
    points = [0] * n
    for x, v in coords.items():
        points[v] = x
    return AffineStructure(Q, U, tuple(u_map), tuple(h_map), tuple(basis),
                           coord_t, tuple(points), attempts, inside_mlt)


def label_translations(n: int) -> PermGroup:
    """The group {x -> x XOR c} on labels 0..n-1 (n a power of 2)."""
    k = n.bit_length() - 1
    return PermGroup([tuple(x ^ (1 << i) for x in range(n)) for i in range(k)], n)


def no_regular_ea2_in_mlt(Q: LoopTable, limit: int = FALLBACK_LIMIT) -> bool | None:
    """True when Mlt(Q) provably has no regular elementary abelian 2-subgroup:
    its fixed-point-free involutions fail to carry 0 to every point.  None when
    Mlt(Q) is too large to enumerate."""
    if not is_power_of_two(Q.n):
        return True
    if Q.n == 1:
        return False
    mlt = Q.mlt
    if mlt.order() > limit:
        return None
    reached = {0}
    for g in mlt.elements():
        if g[0] != 0 and perms.is_identity(perms.compose(g, g)) and all(g[i] != i for i in range(Q.n)):
            reached.add(g[0])
    return len(reached) < Q.n


def _label_structure(Q: LoopTable, attempts: int) -> Optional[AffineStructure]:
    T = label_translations(Q.n)
    if all(perms.conjugate(t, g) in T for t in T.generators for g in Q.mlt.generators):
        return affine_structure(Q, T, attempts=attempts, inside_mlt=False)
    return None


def find_affine_structure(Q: LoopTable, seed: int = 0, budget: int = DEFAULT_BUDGET,
                          prefer: str = "mlt") -> Optional[AffineStructure]:
    """Coordinates for Q from a regular elementary abelian 2-group U.

    With ``prefer="mlt"`` U is searched inside Mlt(Q) first and the label-XOR
    group (valid whenever Mlt(Q) normalizes it, as for tables built from an
    algebra) is the fallback.  ``prefer="labels"`` tries the label-XOR group
    first, which recovers the algebra a table was built from exactly.
    """
    if prefer not in ("mlt", "labels"):
        raise ValueError(f"unknown coordinate preference {prefer!r}")
    if not is_power_of_two(Q.n):
        return None
    if prefer == "labels":
        A = _label_structure(Q, attempts=0)
        return A if A is not None else find_regular_normal_ea2(Q, seed, budget)
    A = find_regular_normal_ea2(Q, seed, budget)
    return A if A is not None else _label_structure(Q, attempts=budget + 1)


def check_factor_identities(Q: LoopTable, A: AffineStructure) -> Check:
    """R_{x,y} = h_x h_y h_{xy}^-1 and u_{xy} = u_x^{h_y} u_y for all x, y."""
    comp, inv, conj = perms.compose, perms.inverse, perms.conjugate
    h, u = A.h_map, A.u_map
    h_inv = [inv(g) for g in h]
    for x in range(Q.n):
        for y in range(Q.n):
            xy = Q.rows[x][y]
            rxy = comp(comp(Q.R[x], Q.R[y]), Q.rdiv_table[xy])
            if rxy != comp(comp(h[x], h[y]), h_inv[xy]):
                return Check(False, ("R_{x,y}", x, y))
            if u[xy] != comp(conj(u[x], h[y]), u[y]):
                return Check(False, ("u_{xy}", x, y))
    return Check(True)


@dataclass(frozen=True)
class CircleLoop:
    table: LoopTable
    isomorphism: Check
    linear_h: Check
    inner_factorization: Check
    inner_groups_equal: Check | None
    h_commutation: Check | None

    @property
    def ok(self) -> bool:
        checks = [self.isomorphism, self.linear_h, self.inner_factorization, self.inner_groups_equal, self.h_commutation]
        return all(c for c in checks if c is not None)

    def first_failure(self, names=("isomorphism", "linear_h", "inner_factorization", "inner_groups_equal", "h_commutation")):
        for name in names:
            c = getattr(self, name)
            if c is not None and not c:
                return name, c.witness
        return None


def _group_equal(G: PermGroup, H: PermGroup) -> Check:
    if G.order() != H.order():
        return Check(False, ("order", G.order(), H.order()))
    for g in G.generators:
        if g not in H:
            return Check(False, ("membership", g))
    for g in H.generators:
        if g not in G:
            return Check(False, ("membership", g))
    return Check(True)


def circle_loop(Q: LoopTable, A: AffineStructure) -> CircleLoop:
    """Build (U, o) on coordinate labels and check it against Q.

    The group-level checks (inner mapping groups agree, and
    h_u h_v = h_v h_{u^{h_v}}) need Q commutative, automorphic and of exponent
    2; otherwise they are reported as None.
    """
    n = Q.n
    c, pts = A.coords, A.points
    mats = [A.h_matrix(pts[v]) for v in range(n)]   # indexed by coordinate vector
    linear = Check(True)
    for v in range(n):
        h = A.h_map[pts[v]]
        for w in range(n):
            if mats[v].apply(w) != c[h[pts[w]]]:
                linear = Check(False, (v, w))
                break
        if not linear:
            break
    table = LoopTable([[mats[v].apply(u) ^ v for v in range(n)] for u in range(n)])
    C = table.arr
    cq = np.array(c)
    iso = Check(True)
    bad = np.argwhere(C[cq[:, None], cq[None, :]] != cq[Q.arr])
    if len(bad):
        iso = Check(False, tuple(int(i) for i in bad[0]))

    # coordinate permutations of h_v; HC[v][w] = w^{h_v}
    HC = np.array([[mats[v].apply(w) for w in range(n)] for v in range(n)])
    HCinv = np.argsort(HC, axis=1)
    Rinv = np.array(table.rdiv_table)  # [a][b]: y o a = b
    inner_factorization = Check(True)
    w = np.arange(n)
    for u in range(n):
        uv = C[u]  # u o v over v
        lhs = Rinv[uv[:, None], C[C[w, u][None, :], np.arange(n)[:, None]]]
        rhs = HCinv[uv[:, None], HC[np.arange(n)[:, None], HC[u][None, :]]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            v, ww = bad[0]
            inner_factorization = Check(False, (u, int(v), int(ww)))
            break

    applicable = (Q.commutative and bool(is_automorphic(Q))
                  and power_structure(Q).exponent in (1, 2))
    inn_eq = aut = None
    if applicable:
        H = PermGroup(A.h_map, n)
        inn_eq = _group_equal(H, Q.inn)
        if inn_eq:
            circle_inn = PermGroup([p for _, p in table.inner_generators], n)
            inn_eq = _group_equal(circle_inn, PermGroup([tuple(r) for r in HC.tolist()], n))
        aut = Check(True)
        hs = np.array(A.h_map)
        for x in range(n):
            # h_x h_y versus h_y h_{h_y(x)}, over all y
            lhs = hs[:, hs[x]]                   # [y, i] = h_y(h_x(i))
            rhs = hs[hs[:, x][:, None], hs]      # [y, i] = h_{h_y(x)}(h_y(i))
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                aut = Check(False, (x, int(bad[0][0])))
                break
    return CircleLoop(table, iso, linear, inner_factorization, inn_eq, aut)
