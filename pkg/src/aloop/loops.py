"""Finite loops stored as Cayley tables over {0..n-1} with neutral element 0.

Translations follow ``R_x: i -> i*x`` and ``L_x: i -> x*i``.  All permutation
products use the left-to-right convention of :mod:`aloop.perms`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import perms
from .errors import FormatError, NeutralNotZero, NoTwoSidedInverse, NotLatin
from .perms import PermGroup


@dataclass(frozen=True)
class Check:
    """Outcome of an identity check; falsy on failure, with a witness."""

    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self):
        return self.ok


class LoopTable:
    """Validated Cayley table of a loop.  Immutable once built."""

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise FormatError("table must be a nonempty square matrix")
        for r in rows:
            for v in r:
                if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                    raise FormatError(f"entry {v!r} outside 0..{n - 1}")
        for j in range(n):
            seen = set()
            for i in range(n):
                v = rows[i][j]
                if v in seen:
                    raise NotLatin("column", j, v)
                seen.add(v)
        for i, r in enumerate(rows):
            seen = set()
            for v in r:
                if v in seen:
                    raise NotLatin("row", i, v)
                seen.add(v)
        for i in range(n):
            if rows[0][i] != i or rows[i][0] != i:
                raise NeutralNotZero(i)
        self.n = n
        self.rows = tuple(tuple(int(v) for v in r) for r in rows)
        self.arr = np.array(self.rows, dtype=np.int64)
        self.arr.setflags(write=False)
        # left translations are the rows, right translations the columns
        self.L = self.rows
        self.R = tuple(tuple(int(v) for v in col) for col in self.arr.T)
        self.ldiv_table = tuple(perms.inverse(r) for r in self.L)   # [a][b]: a*x = b
        self.rdiv_table = tuple(perms.inverse(r) for r in self.R)   # [a][b]: y*a = b
        self.commutative = bool((self.arr == self.arr.T).all())
        left_inv = [self.rdiv_table[x][0] for x in range(n)]
        right_inv = [self.ldiv_table[x][0] for x in range(n)]
        self.left_inverse = tuple(left_inv)
        self.right_inverse = tuple(right_inv)
        if left_inv == right_inv:
            self.inverse: tuple | None = tuple(left_inv)
        else:
            self.inverse = None

    def __repr__(self):
        return f"LoopTable(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, LoopTable) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __len__(self):
        return self.n

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def ldiv(self, a: int, b: int) -> int:
        """The x with a*x = b."""
        return self.ldiv_table[a][b]

    def rdiv(self, a: int, b: int) -> int:
        """The y with y*a = b."""
        return self.rdiv_table[a][b]

    def translations(self, x: int) -> tuple[tuple, tuple]:
        return self.R[x], self.L[x]

    def is_associative(self) -> bool:
        return associativity_witness(self) is None

    def inverse_of(self, x: int) -> int:
        if self.inverse is None or self.left_inverse[x] != self.right_inverse[x]:
            raise NoTwoSidedInverse(x, self.left_inverse[x], self.right_inverse[x])
        return self.inverse[x]

    @cached_property
    def inner_generators(self) -> list[tuple[str, tuple]]:
        return inner_generators(self)

    @cached_property
    def mlt(self) -> PermGroup:
        return PermGroup(list(self.R) + list(self.L), self.n)

    @cached_property
    def inn(self) -> PermGroup:
        group = PermGroup([p for _, p in self.inner_generators], self.n)
        assert group.order() * self.n == self.mlt.order(), "|Inn| * n != |Mlt|"
        return group


def validate_loop(raw: Sequence[Sequence[int]]) -> LoopTable:
    return LoopTable(raw)


def associativity_witness(Q: LoopTable, elements=None):
    """First triple (a, b, c) in lexicographic order with (ab)c != a(bc)."""
    T = Q.arr
    s = np.arange(Q.n) if elements is None else np.asarray(sorted(elements))
    for a in s:
        ab = T[a, s]                       # a*b over b
        left = T[ab[:, None], s[None, :]]  # (a*b)*c
        right = T[a, T[s[:, None], s[None, :]]]
        bad = np.argwhere(left != right)
        if len(bad):
            i, j = bad[0]
            return int(a), int(s[i]), int(s[j])
    return None


# -- multiplication and inner mapping groups ---------------------------------

def _dedupe(labelled):
    seen = {}
    for label, p in labelled:
        if p not in seen:
            seen[p] = label
    return [(label, p) for p, label in seen.items()]


def inner_generators(Q: LoopTable, commutative_only: bool | None = None) -> list[tuple[str, tuple]]:
    """Distinct inner mappings ``R_{x,y}``, ``L_{x,y}``, ``T_x`` with labels.

    ``commutative_only`` (default: ``Q.commutative``) keeps only ``R_{x,y}``,
    which already generate Inn(Q) for a commutative loop.
    """
    if commutative_only is None:
        commutative_only = Q.commutative
    n = Q.n
    T = Q.arr
    LD = np.array(Q.ldiv_table)
    RD = np.array(Q.rdiv_table)
    idx = np.arange(n)
    out = []
    # R_{x,y}: i -> ((i x) y) / (x y)
    step = T[T.T[:, None, :], idx[None, :, None]]     # [x, y, i] = (i x) y
    rxy = RD[T[:, :, None], step]
    out.extend((f"R_{{{x},{y}}}", tuple(rxy[x, y].tolist()))
               for x in range(1, n) for y in range(1, n))
    if not commutative_only:
        # L_{x,y}: i -> (y x) \ (y (x i))
        step = T[idx[None, :, None], T[:, None, :]]    # [x, y, i] = y (x i)
        lxy = LD[T.T[:, :, None], step]
        out.extend((f"L_{{{x},{y}}}", tuple(lxy[x, y].tolist()))
                   for x in range(1, n) for y in range(1, n))
        # T_x: i -> x \ (i x)
        tx = LD[idx[:, None], T.T]
        out.extend((f"T_{x}", tuple(tx[x].tolist())) for x in range(1, n))
    gens = _dedupe(out)
    assert all(p[0] == 0 for _, p in gens)
    return gens or [("id", perms.identity(n))]


def mlt_group(Q: LoopTable) -> PermGroup:
    return Q.mlt


def inn_group(Q: LoopTable) -> PermGroup:
    return Q.inn


def automorphism_witness(Q: LoopTable, maps, chunk: int | None = None):
    """Index and pair (k, a, b) of the first map in ``maps`` that is not an
    automorphism, or None."""
    if not len(maps):
        return None
    G = np.asarray(maps, dtype=np.int64)
    T = Q.arr
    n = Q.n
    chunk = chunk or max(1, 2_000_000 // (n * n))
    for start in range(0, len(G), chunk):
        g = G[start:start + chunk]
        lhs = g[:, T]                          # g(a b)
        rhs = T[g[:, :, None], g[:, None, :]]  # g(a) g(b)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            k, a, b = bad[0]
            return int(start + k), int(a), int(b)
    return None


def is_automorphic(Q: LoopTable) -> Check:
    """Every inner mapping is an automorphism; checked on generators."""
    gens = Q.inner_generators
    w = automorphism_witness(Q, [p for _, p in gens])
    if w is None:
        return Check(True)
    k, a, b = w
    return Check(False, (gens[k][0], a, b), f"{gens[k][0]} fails on ({a}, {b})")


def is_automorphism(Q: LoopTable, p) -> bool:
    return automorphism_witness(Q, [p]) is None


# -- powers and inverses -----------------------------------------------------

def _subloop_closure(Q: LoopTable, generators) -> frozenset:
    elems = {0, *generators}
    frontier = list(elems)
    rows, ld, rd = Q.rows, Q.ldiv_table, Q.rdiv_table
    while frontier:
        new = set()
        cur = list(elems)
        for a in frontier:
            for b in cur:
                for v in (rows[a][b], rows[b][a], ld[a][b], ld[b][a], rd[a][b], rd[b][a]):
                    if v not in elems:
                        new.add(v)
        elems |= new
        frontier = list(new)
    return frozenset(elems)


@dataclass(frozen=True)
class PowerStructure:
    power_associative: bool
    orders: tuple | None
    exponent: int | None
    inverse: tuple | None
    witness: Any = None  # (x, (a, b, c)) for a non-associative <x>
    inverse_witness: Any = None  # (x, left, right)

    def histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for o in self.orders or ():
            hist[o] = hist.get(o, 0) + 1
        return dict(sorted(hist.items()))


def power_structure(Q: LoopTable) -> PowerStructure:
    """Element orders when every ``<x>`` is a cyclic group."""
    orders = []
    witness = None
    for x in range(Q.n):
        sub = _subloop_closure(Q, [x])
        bad = associativity_witness(Q, sub)
        if bad is not None:
            witness = (x, bad)
            break
        orders.append(len(sub))
    inv_w = None
    if Q.inverse is None:
        x = next(i for i in range(Q.n) if Q.left_inverse[i] != Q.right_inverse[i])
        inv_w = (x, Q.left_inverse[x], Q.right_inverse[x])
    if witness is not None:
        return PowerStructure(False, None, None, Q.inverse, witness, inv_w)
    return PowerStructure(True, tuple(orders), math.lcm(*orders), Q.inverse, None, inv_w)


def element_power(Q: LoopTable, x: int, k: int) -> int:
    """x^k built as ((x x) x)...; negative k uses the two-sided inverse."""
    if k < 0:
        x, k = Q.inverse_of(x), -k
    y = 0
    for _ in range(k):
        y = Q.rows[y][x]
    return y


def _require_inverse(Q: LoopTable) -> tuple:
    if Q.inverse is None:
        x = next(i for i in range(Q.n) if Q.left_inverse[i] != Q.right_inverse[i])
        raise NoTwoSidedInverse(x, Q.left_inverse[x], Q.right_inverse[x])
    return Q.inverse


def check_aaip(Q: LoopTable) -> Check:
    """(xy)^-1 = y^-1 x^-1 for all x, y."""
    inv = np.array(_require_inverse(Q))
    T = Q.arr
    lhs = inv[T]
    rhs = T[inv[None, :], inv[:, None]]  # [x, y] = y^-1 x^-1
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        x, y = bad[0]
        return Check(False, (int(x), int(y)))
    return Check(True)


def j_map(Q: LoopTable) -> tuple:
    """The inversion map x -> x^-1 as a permutation."""
    return tuple(_require_inverse(Q))


def p_map(Q: LoopTable, x: int) -> tuple:
    """P_x = R_x^-1 L_{x^-1}."""
    inv = _require_inverse(Q)
    return perms.compose(Q.rdiv_table[x], Q.L[inv[x]])


def check_p_identities(Q: LoopTable) -> Check:
    """P_a P_b P_a = P_c with c = (a^-1 \\ b) a, and P_a^k = P_{a^k}."""
    inv = _require_inverse(Q)
    n = Q.n
    P = np.array([p_map(Q, x) for x in range(n)])
    T = Q.arr
    LD = np.array(Q.ldiv_table)
    for a in range(n):
        pa = P[a]
        lhs = pa[P[:, pa]]                # [b, i] = P_a P_b P_a applied to i
        c = T[LD[inv[a]], a]              # c_b = (a^-1 \ b) a
        bad = np.argwhere(lhs != P[c])
        if len(bad):
            b, _ = bad[0]
            return Check(False, ("PaPbPa", a, int(b)))
    ps = power_structure(Q)
    for a in range(n):
        top = ps.orders[a] if ps.power_associative else n
        for k in range(-1, top + 1):
            if perms.power(tuple(P[a].tolist()), k) != tuple(P[element_power(Q, a, k)].tolist()):
                return Check(False, ("power", a, k))
    return Check(True)


@dataclass(frozen=True)
class JRelations:
    normalizes_mlt: Check
    centralizes_inn: Check
    conj_identity: Check

    def __bool__(self):
        return bool(self.normalizes_mlt and self.centralizes_inn and self.conj_identity)


def check_j_relations(Q: LoopTable) -> JRelations:
    J = j_map(Q)
    mlt = Q.mlt
    normal = Check(True)
    for x in range(Q.n):
        for label, g in ((f"R_{x}", Q.R[x]), (f"L_{x}", Q.L[x])):
            if perms.conjugate(g, J) not in mlt:
                normal = Check(False, label)
                break
        if not normal:
            break
    central = Check(True)
    for label, g in Q.inner_generators:
        if not perms.commutes(g, J):
            central = Check(False, label)
            break
    conj = Check(True)
    for x in range(Q.n):
        if perms.conjugate(J, Q.R[x]) != perms.compose(p_map(Q, x), J):
            conj = Check(False, x)
            break
    return JRelations(normal, central, conj)


def is_power_of_two(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


@dataclass(frozen=True)
class TwoPower:
    applicable: bool
    conclusion_holds: bool | None


def check_two_power(Q: LoopTable) -> TwoPower:
    """If all element orders are 2-powers, is |Q| a 2-power?"""
    ps = power_structure(Q)
    if not ps.power_associative:
        return TwoPower(False, None)
    if all(is_power_of_two(o) for o in ps.orders):
        return TwoPower(True, is_power_of_two(Q.n))
    return TwoPower(False, None)


# -- .ctab files -------------------------------------------------------------

def parse_ctab(text: str) -> LoopTable:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty table file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormatError(f"expected {n} rows of {n} entries")
    return LoopTable(rows)


def format_ctab(Q: LoopTable) -> str:
    return f"{Q.n}\n" + "".join(" ".join(map(str, r)) + "\n" for r in Q.rows)


def from_file(path) -> LoopTable:
    return parse_ctab(Path(path).read_text())


def to_file(Q: LoopTable, path) -> None:
    Path(path).write_text(format_ctab(Q))
