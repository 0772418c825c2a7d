"""GF(2) algebras with a commutative bracket given by structure constants, and
the passage between such algebras and commutative loops of exponent 2.

Right-action convention throughout: ``(v) ad(u) = [v, u]``, and a product of
operators ``ad(u) ad(v)`` applies ``ad(u)`` first.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path
from typing import Iterable, Iterator

from . import gf2
from .affine import AffineStructure, circle_loop
from .errors import (BilinearityFailure, DimensionTooLarge, DuplicatePair,
                     FormatError, IdentityFailure, IndexOutOfRange, SingularTranslation)
from .gf2 import GF2Mat, bits
from .loops import Check, LoopTable, associativity_witness

SIMPLICITY_CAP = 20
EXHAUSTIVE_CAP = 12


class GF2Algebra:
    """Algebra on GF(2)^dim with ``[e_i, e_j]`` given for ``i < j``."""

    def __init__(self, dim: int, constants: dict | None = None):
        if dim < 0:
            raise IndexOutOfRange("negative dimension")
        table = [[0] * dim for _ in range(dim)]
        clean = {}
        for (i, j), v in (constants or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexOutOfRange(f"pair ({i}, {j}) outside dimension {dim}")
            if i >= j:
                raise IndexOutOfRange(f"pair ({i}, {j}) must satisfy i < j")
            if v < 0 or v >> dim:
                raise IndexOutOfRange(f"value of [e{i}, e{j}] outside dimension {dim}")
            if v:
                clean[(i, j)] = v
            table[i][j] = table[j][i] = v
        self.dim = dim
        self.constants = dict(sorted(clean.items()))
        self._table = table
        self._ad_basis = [GF2Mat(dim, tuple(table[i][j] for i in range(dim))) for j in range(dim)]
        self._ad_cache: dict[int, GF2Mat] = {}

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable) -> "GF2Algebra":
        """Entries are ``(i, j, [m1, m2, ...])`` meaning [e_i, e_j] = sum e_m."""
        constants = {}
        for i, j, ms in entries:
            if (i, j) in constants:
                raise DuplicatePair(f"pair ({i}, {j}) given twice")
            v = 0
            for m in ms:
                if not 0 <= m < dim:
                    raise IndexOutOfRange(f"basis index {m} outside dimension {dim}")
                v ^= 1 << m
            constants[(i, j)] = v
        return cls(dim, constants)

    def __repr__(self):
        return f"GF2Algebra(dim={self.dim}, constants={self.constants})"

    def __eq__(self, other):
        return isinstance(other, GF2Algebra) and (self.dim, self.constants) == (other.dim, other.constants)

    def __hash__(self):
        return hash((self.dim, tuple(self.constants.items())))

    @property
    def size(self) -> int:
        return 1 << self.dim

    def basis(self) -> list[int]:
        return [1 << i for i in range(self.dim)]

    def ad(self, u: int) -> GF2Mat:
        m = self._ad_cache.get(u)
        if m is None:
            m = GF2Mat.zero(self.dim)
            for j in bits(u):
                m = m + self._ad_basis[j]
            if len(self._ad_cache) < 1 << 14:
                self._ad_cache[u] = m
        return m

    def bracket(self, u: int, v: int) -> int:
        if u >> self.dim or v >> self.dim:
            raise IndexOutOfRange("vector outside the algebra")
        return self.ad(v).apply(u)

    def is_abelian(self) -> bool:
        return not self.constants


def ad_matrix(A: GF2Algebra, u: int) -> GF2Mat:
    return A.ad(u)


def bracket(A: GF2Algebra, u: int, v: int) -> int:
    return A.bracket(u, v)


# -- named algebras ---------------------------------------------------------

def abelian(k: int) -> GF2Algebra:
    return GF2Algebra(k)


def heisenberg() -> GF2Algebra:
    return GF2Algebra(3, {(0, 1): 0b100})


def filiform(k: int) -> GF2Algebra:
    """[e0, e_i] = e_{i+1} for 1 <= i <= k-2."""
    return GF2Algebra(k, {(0, i): 1 << (i + 1) for i in range(1, k - 1)})


def w3() -> GF2Algebra:
    """Cross-product algebra on GF(2)^3."""
    return GF2Algebra(3, {(0, 1): 0b100, (1, 2): 0b001, (0, 2): 0b010})


# -- .gf2lie files ----------------------------------------------------------

def parse_gf2lie(text: str) -> GF2Algebra:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty structure constants file")
    try:
        dim = int(lines[0])
        entries = []
        for ln in lines[1:]:
            lhs, sep, rhs = ln.partition(":")
            if not sep:
                raise FormatError(f"missing ':' in line {ln!r}")
            i, j = (int(t) for t in lhs.split())
            entries.append((i, j, [int(t) for t in rhs.split()]))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return GF2Algebra.from_entries(dim, entries)


def format_gf2lie(A: GF2Algebra) -> str:
    out = [f"{A.dim}\n"]
    for (i, j), v in A.constants.items():
        out.append(f"{i} {j} : {' '.join(map(str, bits(v)))}\n")
    return "".join(out)


def algebra_from_file(path) -> GF2Algebra:
    return parse_gf2lie(Path(path).read_text())


def algebra_to_file(A: GF2Algebra, path) -> None:
    Path(path).write_text(format_gf2lie(A))


# -- identities ---------------------------------------------------------------

def _grid(k: int) -> list[int]:
    """Basis vectors followed by all pairwise sums.  A map that is quadratic
    over GF(2) (its polarization is bilinear) and vanishes here vanishes
    everywhere."""
    basis = [1 << i for i in range(k)]
    return basis + [a ^ b for a, b in combinations(basis, 2)]


def _sample_vectors(A: GF2Algebra, seed: int, count: int = 256) -> list[int]:
    if A.dim <= EXHAUSTIVE_CAP:
        return list(range(A.size))
    rng = random.Random(seed)
    return [rng.getrandbits(A.dim) for _ in range(count)]


@dataclass(frozen=True)
class AxiomReport:
    alternating: Check
    jacobi: Check

    def __bool__(self):
        return bool(self.alternating and self.jacobi)


def check_axioms(A: GF2Algebra, seed: int = 0) -> AxiomReport:
    alt = Check(True)
    for u in _sample_vectors(A, seed):
        if A.bracket(u, u):
            alt = Check(False, u)
            break
    jac = Check(True)
    for i, j in combinations(range(A.dim), 2):
        ai, aj = A.ad(1 << i), A.ad(1 << j)
        if not (ai @ aj + aj @ ai + A.ad(A.bracket(1 << i, 1 << j))).is_zero():
            jac = Check(False, (1 << i, 1 << j))
            break
    return AxiomReport(alt, jac)


def check_ad_product_identity(A: GF2Algebra) -> Check:
    """ad(u)ad(v) + ad(v)ad(u) + ad([u,v]) = ad(v)ad([u,v]) for all u, v."""
    for u in A.basis():
        for v in _grid(A.dim):
            au, av = A.ad(u), A.ad(v)
            auv = A.ad(A.bracket(u, v))
            if au @ av + av @ au + auv != av @ auv:
                return Check(False, (u, v))
    return Check(True)


@dataclass(frozen=True)
class PremedialReport:
    premedial: Check
    swap_identity: Check
    square_zero: Check

    def __bool__(self):
        return bool(self.premedial)

    @property
    def witness(self):
        return self.premedial.witness


def check_premedial(A: GF2Algebra, exhaustive: bool = False) -> PremedialReport:
    """ad(u) ad([u, w]) = 0 for all u, w.

    By default ``u`` runs over the basis and pairwise sums (the map is
    quadratic in ``u``) and ``w`` over the basis (it is linear in ``w``);
    ``exhaustive`` runs ``u`` over every vector instead.  The consequences
    ad(u)ad([v,u]) = ad(v)ad([u,v]) and ad([x,y])^2 = 0 are checked on the same
    grid.
    """
    us = range(1, A.size) if exhaustive else _grid(A.dim)
    prem = Check(True)
    for u in us:
        au = A.ad(u)
        for w in A.basis():
            if not (au @ A.ad(A.bracket(u, w))).is_zero():
                prem = Check(False, (u, w))
                break
        if not prem:
            break
    grid = _grid(A.dim)
    pre = Check(True)
    sand = Check(True)
    for u in grid:
        for v in grid:
            b = A.ad(A.bracket(u, v))
            if pre and A.ad(u) @ b != A.ad(v) @ b:
                pre = Check(False, (u, v))
            if sand and not (b @ b).is_zero():
                sand = Check(False, (u, v))
    if prem and check_axioms(A).jacobi:
        assert pre and sand, "premedial + Jacobi must imply its consequences"
    return PremedialReport(prem, pre, sand)


def check_sandwich(A: GF2Algebra, a: int) -> Check:
    """ad(a)^2 = 0 and ad(a) ad(x) ad(a) = 0 for every basis vector x."""
    aa = A.ad(a)
    if not (aa @ aa).is_zero():
        return Check(False, ("square", a))
    for x in A.basis():
        if not (aa @ A.ad(x) @ aa).is_zero():
            return Check(False, ("sandwich", x))
    return Check(True)


# -- series, ideals, simplicity ------------------------------------------------

def _bracket_span(A: GF2Algebra, left: list[int], right: list[int]) -> list[int]:
    return gf2.span(A.bracket(x, y) for x in left for y in right)


@dataclass(frozen=True)
class SeriesReport:
    lower_central: tuple
    derived: tuple
    is_nilpotent: bool
    is_solvable: bool
    nilpotency_class: int | None


def series(A: GF2Algebra) -> SeriesReport:
    full = A.basis()
    lcs = [A.dim]
    term = full
    while term:
        nxt = _bracket_span(A, term, full)
        if len(nxt) == len(term):
            lcs.append(len(nxt))
            break
        lcs.append(len(nxt))
        term = nxt
    der = [A.dim]
    term = full
    while term:
        nxt = _bracket_span(A, term, term)
        der.append(len(nxt))
        if len(nxt) == len(term):
            break
        term = nxt
    nilpotent = lcs[-1] == 0
    return SeriesReport(tuple(lcs), tuple(der), nilpotent, der[-1] == 0,
                        len(lcs) - 1 if nilpotent else None)


def ideal_closure(A: GF2Algebra, v: int) -> list[int]:
    """Smallest subspace containing v and closed under bracketing with A."""
    basis = gf2.reduce_basis([v])
    queue = [v] if v else []
    while queue:
        x = queue.pop()
        for e in A.basis():
            y = gf2.reduce_vector(basis, A.bracket(x, e))
            if y:
                basis[y.bit_length() - 1] = y
                queue.append(y)
    return gf2.span(basis.values())


def is_simple(A: GF2Algebra) -> bool:
    if A.dim > SIMPLICITY_CAP:
        raise DimensionTooLarge(f"dimension {A.dim} exceeds {SIMPLICITY_CAP}")
    if A.is_abelian():
        return False
    return all(len(ideal_closure(A, v)) == A.dim for v in range(1, A.size))


def is_perfect(A: GF2Algebra) -> bool:
    """[A, A] = A."""
    return len(_bracket_span(A, A.basis(), A.basis())) == A.dim


# -- loops from algebras and back ---------------------------------------------

def loop_from_algebra(A: GF2Algebra) -> LoopTable:
    """Loop on GF(2)^k with u o v = u + v + [u, v]."""
    ident = GF2Mat.identity(A.dim)
    for v in range(1, A.size):
        if not (ident + A.ad(v)).is_invertible():
            raise SingularTranslation(v)
    n = A.size
    return LoopTable([[u ^ v ^ A.bracket(u, v) for v in range(n)] for u in range(n)])


def algebra_from_loop(Q: LoopTable, S: AffineStructure, seed: int = 0) -> GF2Algebra:
    """Bracket [u, v] = u + v + u o v on the coordinates of ``S``.

    Bilinearity, h_u = id + ad(u), and the chain of operator identities
    leading to Jacobi are all verified; a failure raises with a witness.
    """
    circle = circle_loop(Q, S)
    failure = circle.first_failure(("isomorphism", "linear_h", "inner_factorization", "h_commutation"))
    if failure:
        raise IdentityFailure(*failure)
    C = circle.table.rows
    k = S.dim
    n = Q.n

    def raw(u, v):
        return u ^ v ^ C[u][v]

    constants = {(i, j): raw(1 << i, 1 << j) for i, j in combinations(range(k), 2)}
    A = GF2Algebra(k, constants)
    if n <= 256:
        pairs: Iterable = product(range(n), repeat=2)
    else:
        rng = random.Random(seed)
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(1 << 16)]
    for u, v in pairs:
        if raw(u, v) != A.bracket(u, v):
            raise BilinearityFailure(u, v)
    ident = GF2Mat.identity(k)
    for v in range(n):
        if S.h_matrix(S.points[v]) != ident + A.ad(v):
            raise IdentityFailure("h_u = id + ad(u)", v)
    for name, check in (("ad-product identity", check_ad_product_identity(A)),
                        ("premedial", check_premedial(A).premedial),
                        ("Jacobi", check_axioms(A, seed).jacobi)):
        if not check:
            raise IdentityFailure(name, check.witness)
    if associativity_witness(Q) is not None and A.is_abelian():
        raise IdentityFailure("nonassociative loop with zero bracket", None)
    return A


# -- enumeration of structure constants ---------------------------------------

def all_algebras(k: int) -> Iterator[GF2Algebra]:
    """Every structure-constant table in dimension k."""
    pairs = list(combinations(range(k), 2))
    for values in product(range(1 << k), repeat=len(pairs)):
        yield GF2Algebra(k, dict(zip(pairs, values)))


def random_algebra(k: int, rng: random.Random) -> GF2Algebra:
    pairs = combinations(range(k), 2)
    return GF2Algebra(k, {p: rng.getrandbits(k) for p in pairs})


def is_perfect_premedial_lie(A: GF2Algebra) -> bool:
    """Jacobi, premedial and [A, A] = A together."""
    return is_perfect(A) and bool(check_axioms(A).jacobi) and bool(check_premedial(A))
