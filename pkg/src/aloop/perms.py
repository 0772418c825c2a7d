"""Permutations of {0..n-1} and permutation groups given by generators.

A permutation is a tuple ``p`` of images, ``p[i]`` being the image of ``i``.
Products apply the left factor first: ``compose(p, q)[i] == q[p[i]]``, and
conjugation is ``p^q = q^-1 p q``.  Groups keep a stabilizer chain that is
built on first use by the Schreier-Sims algorithm.
"""
from __future__ import annotations

import math
import random
import threading
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import AlgebraError, DegreeMismatch, NotInvariant, NotTransitive

Perm = tuple  # images of 0..n-1

MAX_DEGREE = 1 << 16
NAIVE_LIMIT = 10 ** 4


def check_perm(p: Sequence[int]) -> tuple:
    p = tuple(p)
    if not 0 < len(p) <= MAX_DEGREE:
        raise AlgebraError(f"degree {len(p)} out of range")
    if sorted(p) != list(range(len(p))):
        raise AlgebraError(f"not a permutation: {p}")
    return p


def identity(n: int) -> tuple:
    return tuple(range(n))


def is_identity(p) -> bool:
    return all(i == x for i, x in enumerate(p))


def compose(p, q) -> tuple:
    """Apply ``p`` then ``q``."""
    if len(p) != len(q):
        raise DegreeMismatch(f"degrees {len(p)} and {len(q)} differ")
    return tuple(map(q.__getitem__, p))


def inverse(p) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugate(p, q) -> tuple:
    """``q^-1 p q``."""
    return compose(compose(inverse(q), p), q)


def commutes(p, q) -> bool:
    return compose(p, q) == compose(q, p)


def power(p, k: int) -> tuple:
    if k < 0:
        p, k = inverse(p), -k
    result = identity(len(p))
    base = tuple(p)
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def cycles(p) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def perm_order(p) -> int:
    return math.lcm(*(len(c) for c in cycles(p))) if len(p) else 1


def format_cycles(p) -> str:
    parts = ["(%s)" % " ".join(map(str, c)) for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "()"


def naive_closure(generators: Iterable, degree: int, limit: int = NAIVE_LIMIT) -> set:
    """All elements of the group generated by ``generators``, by breadth-first
    multiplication.  Raises if more than ``limit`` elements are reached."""
    gens = [tuple(g) for g in generators]
    start = identity(degree)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise AlgebraError(f"closure exceeds {limit} elements")
                queue.append(y)
    return seen


def _mul(p, q):
    return tuple(map(q.__getitem__, p))


class _Level:
    __slots__ = ("base", "gens", "trans", "trans_inv", "checked")

    def __init__(self, base, degree):
        e = tuple(range(degree))
        self.base = base
        self.gens = []
        self.trans = {base: e}       # point -> u with u[base] == point
        self.trans_inv = {base: e}
        self.checked = set()         # (point, generator index) already sifted

    def extend_orbit(self):
        queue = deque(self.trans)
        while queue:
            pt = queue.popleft()
            u = self.trans[pt]
            for g in self.gens:
                img = g[pt]
                if img not in self.trans:
                    v = _mul(u, g)
                    self.trans[img] = v
                    self.trans_inv[img] = inverse(v)
                    queue.append(img)


class _StabChain:
    """Base and strong generating set, grown incrementally."""

    def __init__(self, degree, base_prefix=()):
        self.degree = degree
        self.levels = [_Level(b, degree) for b in base_prefix]

    def sift(self, g, start=0):
        levels = self.levels
        for i in range(start, len(levels)):
            lvl = levels[i]
            u_inv = lvl.trans_inv.get(g[lvl.base])
            if u_inv is None:
                return g, i
            g = _mul(g, u_inv)
        return g, len(levels)

    def contains(self, g) -> bool:
        h, _ = self.sift(g)
        return is_identity(h)

    def add(self, g) -> bool:
        """Extend the group by ``g``; returns False if ``g`` was already a member."""
        h, j = self.sift(g)
        if is_identity(h):
            return False
        self._insert(h, 0, j)
        self._close(j)
        return True

    def _insert(self, h, lo, hi):
        for k in range(lo, hi + 1):
            if k == len(self.levels):
                moved = next(i for i, x in enumerate(h) if i != x)
                self.levels.append(_Level(moved, self.degree))
            lvl = self.levels[k]
            lvl.gens.append(h)
            lvl.extend_orbit()

    def _close(self, top):
        i = top
        while i >= 0:
            lvl = self.levels[i]
            found = None
            for pt in list(lvl.trans):
                u = lvl.trans[pt]
                for s_idx, s in enumerate(lvl.gens):
                    if (pt, s_idx) in lvl.checked:
                        continue
                    lvl.checked.add((pt, s_idx))
                    schreier = _mul(_mul(u, s), lvl.trans_inv[s[pt]])
                    h, j = self.sift(schreier, i + 1)
                    if not is_identity(h):
                        found = (h, j)
                        break
                if found:
                    break
            if found:
                h, j = found
                self._insert(h, i + 1, j)
                i = j
            else:
                i -= 1

    def order(self) -> int:
        return math.prod(len(lvl.trans) for lvl in self.levels)

    def strong_generators(self, level=0):
        if level >= len(self.levels):
            return []
        return list(self.levels[level].gens)


@dataclass(frozen=True)
class BlockSystem:
    degree: int
    blocks: tuple  # tuple of sorted tuples, ordered by least element

    def block_of(self, point) -> tuple:
        for b in self.blocks:
            if point in b:
                return b
        raise KeyError(point)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def is_trivial(self) -> bool:
        return len(self.blocks) in (1, self.degree)


@dataclass(frozen=True)
class GroupPredicates:
    is_regular: bool
    is_semiregular: bool
    is_elementary_abelian_2: bool
    fixed_points_of_group: frozenset


class PermGroup:
    """Finitely generated permutation group.

    The stabilizer chain uses base points in increasing order where possible
    and is created lazily under a lock, after which the object is read-only.
    """

    def __init__(self, generators: Iterable = (), degree: int | None = None, *,
                 _chain: _StabChain | None = None):
        gens = []
        seen = set()
        for g in generators:
            g = tuple(g)
            if g not in seen:
                seen.add(g)
                gens.append(g)
        if degree is None:
            if not gens:
                raise AlgebraError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in degree {degree} group")
            check_perm(g)
        if not 0 < degree <= MAX_DEGREE:
            raise AlgebraError(f"degree {degree} out of range")
        self.degree = degree
        self.generators = tuple(gens) if gens else (identity(degree),)
        self._chain = _chain
        self._lock = threading.Lock()

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    @property
    def chain(self) -> _StabChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    chain = _StabChain(self.degree)
                    for g in self.generators:
                        chain.add(g)
                    self._chain = chain
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __len__(self):
        return self.order()

    def contains(self, p) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            raise DegreeMismatch(f"permutation of degree {len(p)} tested in degree {self.degree} group")
        return self.chain.contains(p)

    __contains__ = contains

    def base(self) -> list[int]:
        return [lvl.base for lvl in self.chain.levels]

    def strong_generators(self) -> list:
        return self.chain.strong_generators(0)

    def elements(self) -> Iterator[tuple]:
        """Every element exactly once, as products of transversal elements."""
        levels = self.chain.levels
        if not levels:
            yield identity(self.degree)
            return

        def rec(i, acc):
            if i < 0:
                yield acc
                return
            for u in levels[i].trans.values():
                yield from rec(i - 1, _mul(acc, u))

        yield from rec(len(levels) - 1, identity(self.degree))

    def random_element(self, seed: int) -> tuple:
        """Uniformly random element, deterministic in ``seed`` (``random.Random``)."""
        rng = random.Random(seed)
        g = identity(self.degree)
        for lvl in reversed(self.chain.levels):
            us = list(lvl.trans.values())
            g = _mul(g, us[rng.randrange(len(us))])
        return g

    def orbit(self, point: int) -> frozenset:
        if not 0 <= point < self.degree:
            raise AlgebraError(f"point {point} out of range")
        seen = {point}
        queue = [point]
        while queue:
            x = queue.pop()
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def orbits(self) -> list[frozenset]:
        out = []
        covered = set()
        for i in range(self.degree):
            if i not in covered:
                o = self.orbit(i)
                covered |= o
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def minimal_block(self, a: int, b: int) -> BlockSystem:
        """Finest invariant partition with ``a`` and ``b`` in a common block."""
        n = self.degree
        if not (0 <= a < n and 0 <= b < n):
            raise AlgebraError("seed point out of range")
        if not self.is_transitive():
            raise NotTransitive()
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        queue = []
        if a != b:
            parent[find(b)] = find(a)
            queue.append((a, b))
        while queue:
            x, y = queue.pop()
            for g in self.generators:
                rx, ry = find(g[x]), find(g[y])
                if rx != ry:
                    parent[ry] = rx
                    queue.append((rx, ry))
        classes = {}
        for x in range(n):
            classes.setdefault(find(x), []).append(x)
        blocks = tuple(sorted(tuple(c) for c in classes.values()))
        system = BlockSystem(n, blocks)
        assert self._preserves(system), "block closure produced a non-invariant partition"
        return system

    def _preserves(self, system: BlockSystem) -> bool:
        where = {}
        for idx, blk in enumerate(system.blocks):
            for x in blk:
                where[x] = idx
        sizes = {len(b) for b in system.blocks}
        if len(sizes) != 1 or self.degree % sizes.pop():
            return False
        for g in self.generators:
            for blk in system.blocks:
                if len({where[g[x]] for x in blk}) != 1:
                    return False
        return True

    def is_primitive(self) -> bool:
        if not self.is_transitive():
            raise NotTransitive()
        return all(len(self.minimal_block(0, b).blocks) == 1
                   for b in range(1, self.degree))

    def normal_closure(self, perms: Iterable) -> "PermGroup":
        """Smallest subgroup containing ``perms`` and normalized by this group."""
        chain = _StabChain(self.degree)
        gens = []
        queue = []
        for s in perms:
            s = tuple(s)
            if len(s) != self.degree:
                raise DegreeMismatch("normal closure of a permutation of the wrong degree")
            if chain.add(s):
                gens.append(s)
                queue.append(s)
        while queue:
            s = queue.pop()
            for g in self.generators:
                c = conjugate(s, g)
                if chain.add(c):
                    gens.append(c)
                    queue.append(c)
        return PermGroup(gens, self.degree, _chain=chain)

    def stabilizer(self, *points: int) -> "PermGroup":
        """Pointwise stabilizer of ``points``."""
        chain = _StabChain(self.degree, base_prefix=points)
        for g in self.strong_generators() or self.generators:
            chain.add(g)
        gens = chain.strong_generators(len(points))
        return PermGroup(gens, self.degree)

    def transitivity_degree(self, domain: Iterable[int] | None = None, cap: int = 4) -> int:
        """Largest ``k <= cap`` such that the group is k-transitive on ``domain``."""
        dom = set(range(self.degree)) if domain is None else set(domain)
        if cap < 1:
            raise AlgebraError("cap must be at least 1")
        for g in self.generators:
            if any(g[x] not in dom for x in dom):
                raise NotInvariant("domain is not invariant under the group")
        group = self
        remaining = sorted(dom)
        k = 0
        while k < cap and remaining:
            pt = remaining[0]
            if group.orbit(pt) & set(remaining) != set(remaining):
                break
            k += 1
            group = group.stabilizer(pt)
            remaining = remaining[1:]
        return k

    def structure_predicates(self) -> GroupPredicates:
        order = self.order()
        orbits = self.orbits()
        semiregular = all(len(o) == order for o in orbits)
        gens = self.generators
        ea2 = (all(is_identity(compose(g, g)) for g in gens)
               and all(commutes(g, h) for i, g in enumerate(gens) for h in gens[i + 1:]))
        fixed = frozenset(x for x in range(self.degree) if all(g[x] == x for g in gens))
        return GroupPredicates(
            is_regular=len(orbits) == 1 and order == self.degree,
            is_semiregular=semiregular,
            is_elementary_abelian_2=ea2,
            fixed_points_of_group=fixed,
        )
