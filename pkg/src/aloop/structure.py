"""Subloops, normality, quotients, derived series, simplicity and the
odd/2-part decomposition."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from .constructions import direct_product
from .errors import IllDefined, NotASubloop, NotNormal, NotPowerAssociative
from .loops import LoopTable, _subloop_closure, associativity_witness, is_power_of_two, power_structure


@dataclass(frozen=True)
class Subloop:
    parent: LoopTable = field(repr=False, compare=False)
    elements: tuple  # sorted, starts with 0

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def as_loop(self) -> tuple[LoopTable, tuple]:
        """The subloop as a table on 0..k-1 plus the map back to parent indices."""
        index = {x: i for i, x in enumerate(self.elements)}
        rows = self.parent.rows
        table = [[index[rows[a][b]] for b in self.elements] for a in self.elements]
        return LoopTable(table), self.elements


def _make(Q: LoopTable, elems) -> Subloop:
    return Subloop(Q, tuple(sorted(elems)))


def is_subloop(Q: LoopTable, elements: Iterable[int]) -> bool:
    s = set(elements)
    return 0 in s and _subloop_closure(Q, s) == s


def generated_subloop(Q: LoopTable, S: Iterable[int] = ()) -> Subloop:
    return _make(Q, _subloop_closure(Q, set(S)))


def _inner_perms(Q: LoopTable) -> list[tuple]:
    return [p for _, p in Q.inner_generators]


def _image_closed(gens, elems: frozenset) -> bool:
    return all(g[x] in elems for g in gens for x in elems)


def is_normal(Q: LoopTable, S) -> bool:
    """Invariance of the subloop under every inner mapping generator."""
    elems = frozenset(S.elements if isinstance(S, Subloop) else S)
    if not is_subloop(Q, elems):
        raise NotASubloop(f"{sorted(elems)} is not a subloop")
    return _image_closed(_inner_perms(Q), elems)


def normal_closure_subloop(Q: LoopTable, S: Iterable[int]) -> Subloop:
    gens = _inner_perms(Q)
    elems = _subloop_closure(Q, set(S))
    while True:
        images = {g[x] for g in gens for x in elems}
        if images <= elems:
            return _make(Q, elems)
        elems = _subloop_closure(Q, elems | images)


def cosets(Q: LoopTable, N) -> list[tuple]:
    """Left cosets xN, ordered by least element (so N itself comes first)."""
    elems = N.elements if isinstance(N, Subloop) else tuple(sorted(N))
    seen = set()
    out = []
    for x in range(Q.n):
        if x in seen:
            continue
        c = tuple(sorted({Q.rows[x][m] for m in elems}))
        if seen & set(c):
            raise IllDefined(f"coset of {x} overlaps an earlier coset")
        seen |= set(c)
        out.append(c)
    return out


def quotient_loop(Q: LoopTable, N) -> tuple[LoopTable, tuple]:
    """Factor loop Q/N and the projection Q -> Q/N as an index tuple."""
    if not is_normal(Q, N):
        raise NotNormal("subloop is not normal")
    cs = cosets(Q, N)
    proj = [0] * Q.n
    for i, c in enumerate(cs):
        for x in c:
            proj[x] = i
    proj = tuple(proj)
    k = len(cs)
    P = np.array(proj)
    prod = P[Q.arr]  # image of x*y
    table = [[-1] * k for _ in range(k)]
    for x in range(Q.n):
        for y in range(Q.n):
            v = int(prod[x, y])
            cell = table[proj[x]][proj[y]]
            if cell == -1:
                table[proj[x]][proj[y]] = v
            elif cell != v:
                raise IllDefined(f"coset product depends on representatives ({x}, {y})")
    return LoopTable(table), proj


def _is_abelian_group(Q: LoopTable) -> bool:
    return Q.commutative and associativity_witness(Q) is None


def derived_subloop(Q: LoopTable) -> Subloop:
    """Normal closure of all commutator and associator deviations."""
    T = Q.arr
    LD = np.array(Q.ldiv_table)
    RD = np.array(Q.rdiv_table)
    gens = set(np.unique(RD[T.T, T]).tolist())  # c with c (y x) = x y
    left = T[T[:, :, None], np.arange(Q.n)[None, None, :]]  # (x y) z
    right = T[np.arange(Q.n)[:, None, None], T[None, :, :]]  # x (y z)
    gens |= set(np.unique(LD[right, left]).tolist())
    D = normal_closure_subloop(Q, gens)
    quotient, _ = quotient_loop(Q, D)
    assert _is_abelian_group(quotient), "derived quotient is not an abelian group"
    return D


@dataclass(frozen=True)
class NormalSeriesReport:
    terms: tuple  # Subloops of the original loop, descending
    sizes: tuple
    solvable: bool
    quotient_orders: tuple


def derived_series(Q: LoopTable) -> NormalSeriesReport:
    terms = [_make(Q, range(Q.n))]
    current, back = Q, tuple(range(Q.n))
    while current.n > 1:
        D = derived_subloop(current)
        elems = [back[x] for x in D.elements]
        terms.append(_make(Q, elems))
        if D.size == current.n:
            break
        current, idx = D.as_loop()
        back = tuple(back[x] for x in idx)
    sizes = tuple(t.size for t in terms)
    quotients = tuple(a // b for a, b in zip(sizes, sizes[1:]))
    return NormalSeriesReport(tuple(terms), sizes, sizes[-1] == 1, quotients)


def is_solvable(Q: LoopTable) -> bool:
    return derived_series(Q).solvable


def is_simple_by_closures(Q: LoopTable) -> bool:
    if Q.n == 1:
        return False
    return all(normal_closure_subloop(Q, [x]).size == Q.n for x in range(1, Q.n))


def is_simple_by_primitivity(Q: LoopTable) -> bool:
    if Q.n == 1:
        return False
    return Q.mlt.is_primitive()


def is_simple(Q: LoopTable) -> bool:
    """No nontrivial normal subloops, decided two independent ways."""
    a = is_simple_by_closures(Q)
    b = is_simple_by_primitivity(Q)
    if a != b:
        raise AssertionError(f"closure test says {a}, primitivity test says {b}")
    return a


def minimal_normal_subloops(Q: LoopTable) -> list[Subloop]:
    closures = {normal_closure_subloop(Q, [x]).elements for x in range(1, Q.n)}
    sets = [frozenset(c) for c in closures]
    minimal = [c for c in closures if not any(o < frozenset(c) for o in sets)]
    return [_make(Q, c) for c in sorted(minimal, key=lambda c: (len(c), c))]


@dataclass(frozen=True)
class ParityDecomposition:
    odd: Subloop
    even: Subloop
    is_internal_direct_product: bool
    witness: Any = None


def parity_decomposition(Q: LoopTable) -> ParityDecomposition:
    """Split into elements of odd order and of 2-power order and test whether
    Q is their internal direct product."""
    ps = power_structure(Q)
    if not ps.power_associative:
        raise NotPowerAssociative(f"<{ps.witness[0]}> is not associative")
    odd = [x for x, o in enumerate(ps.orders) if o % 2 == 1]
    even = [x for x, o in enumerate(ps.orders) if is_power_of_two(o)]
    O, E = _make(Q, odd), _make(Q, even)

    def fail(reason):
        return ParityDecomposition(O, E, False, reason)

    for name, part in (("odd", odd), ("even", even)):
        closure = _subloop_closure(Q, part)
        if closure != frozenset(part):
            extra = min(closure - frozenset(part))
            return fail((f"{name} part not closed", extra))
        if not is_normal(Q, part):
            return fail((f"{name} part not normal", None))
    if len(odd) * len(even) != Q.n:
        return fail(("orders do not multiply to |Q|", len(odd), len(even)))
    if set(odd) & set(even) != {0}:
        return fail(("parts intersect nontrivially", None))
    O_loop, _ = O.as_loop()
    E_loop, _ = E.as_loop()
    product = direct_product(O_loop, E_loop)
    ne = len(even)
    phi = [Q.rows[odd[i // ne]][even[i % ne]] for i in range(Q.n)]
    if sorted(phi) != list(range(Q.n)):
        return fail(("product map not bijective", None))
    for x in range(Q.n):
        for y in range(Q.n):
            if phi[product.rows[x][y]] != Q.rows[phi[x]][phi[y]]:
                return fail(("product map not a homomorphism", (phi[x], phi[y])))
    return ParityDecomposition(O, E, True)
