"""Exhaustive enumeration of small loops (normalized Latin squares)."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator

import numpy as np

from .errors import AlgebraError, OrderTooLarge
from .loops import LoopTable, associativity_witness, is_automorphic

MAX_ORDER = 7
CANONICAL_MAX = 9
FILTERS = frozenset({"commutative", "automorphic", "nonassociative"})


@dataclass(frozen=True)
class SearchSpec:
    n: int
    filters: frozenset = field(default_factory=frozenset)
    canonicalize: bool = False

    def __post_init__(self):
        object.__setattr__(self, "filters", frozenset(self.filters))
        if self.n < 1:
            raise AlgebraError("order must be positive")
        if self.n > MAX_ORDER:
            raise OrderTooLarge(f"order {self.n} exceeds {MAX_ORDER}")
        unknown = self.filters - FILTERS
        if unknown:
            raise AlgebraError(f"unknown filters {sorted(unknown)}")


def _complete(n: int, grid: list, rows: list, cols: list, start: int, commutative: bool):
    """Fill cells from index ``start`` (row-major over the (n-1)x(n-1) body),
    values ascending, yielding each completed grid."""
    last = (n - 1) * (n - 1)
    full = (1 << n) - 1

    def rec(pos):
        if pos == last:
            yield tuple(tuple(r) for r in grid)
            return
        i, j = divmod(pos, n - 1)
        i += 1
        j += 1
        if commutative and j < i:
            v = grid[j][i]
            bit = 1 << v
            if rows[i] & bit or cols[j] & bit:
                return
            grid[i][j] = v
            rows[i] |= bit
            cols[j] |= bit
            yield from rec(pos + 1)
            rows[i] ^= bit
            cols[j] ^= bit
            return
        free = full & ~(rows[i] | cols[j])
        while free:
            bit = free & -free
            free ^= bit
            grid[i][j] = bit.bit_length() - 1
            rows[i] |= bit
            cols[j] |= bit
            yield from rec(pos + 1)
            rows[i] ^= bit
            cols[j] ^= bit

    yield from rec(start)


def _start(n: int):
    grid = [[0] * n for _ in range(n)]
    for k in range(n):
        grid[0][k] = grid[k][0] = k
    rows = [1 << i for i in range(n)]
    rows[0] = (1 << n) - 1
    cols = [1 << j for j in range(n)]
    cols[0] = (1 << n) - 1
    return grid, rows, cols


def normalized_tables(n: int, commutative: bool = False) -> Iterator[tuple]:
    """All normalized Cayley tables of order n in lexicographic order."""
    if n == 1:
        yield ((0,),)
        return
    grid, rows, cols = _start(n)
    yield from _complete(n, grid, rows, cols, 0, commutative)


def _first_rows(n: int) -> list[tuple]:
    """Completions of row 1, the unit of parallel work."""
    grid, rows, cols = _start(n)
    out = []
    for g in _complete_row(n, grid, rows, cols):
        out.append(g)
    return out


def _complete_row(n, grid, rows, cols):
    # row 1 only: positions 0 .. n-2
    def rec(j):
        if j == n:
            yield tuple(grid[1])
            return
        free = ((1 << n) - 1) & ~(rows[1] | cols[j])
        while free:
            bit = free & -free
            free ^= bit
            grid[1][j] = bit.bit_length() - 1
            rows[1] |= bit
            cols[j] |= bit
            yield from rec(j + 1)
            rows[1] ^= bit
            cols[j] ^= bit
    yield from rec(1)


def _subtree(args) -> list[tuple]:
    n, row1, filters = args
    commutative = "commutative" in filters
    grid, rows, cols = _start(n)
    for j in range(1, n):
        v = row1[j]
        grid[1][j] = v
        rows[1] |= 1 << v
        cols[j] |= 1 << v
    out = []
    for t in _complete(n, grid, rows, cols, n - 1, commutative):
        if _passes(t, filters):
            out.append(t)
    return out


def _passes(rows: tuple, filters) -> bool:
    if not filters - {"commutative"}:
        return True
    Q = LoopTable(rows)
    if "nonassociative" in filters and associativity_witness(Q) is None:
        return False
    if "automorphic" in filters and not is_automorphic(Q):
        return False
    return True


def enumerate_loops(spec: SearchSpec, workers: int = 1) -> Iterator[LoopTable]:
    """Stream every normalized table of order ``spec.n`` passing the filters.

    With ``canonicalize`` one representative per isomorphism class is given
    (its canonical form).  Output order is lexicographic either way and does
    not depend on ``workers``.
    """
    n = spec.n
    filters = spec.filters
    commutative = "commutative" in filters
    if workers > 1 and n > 2:
        jobs = [(n, r, filters) for r in _first_rows(n)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [t for part in pool.map(_subtree, jobs) for t in part]
        found.sort()
        stream = iter(found)
    else:
        stream = (t for t in normalized_tables(n, commutative) if _passes(t, filters))
    if not spec.canonicalize:
        for t in stream:
            yield LoopTable(t)
        return
    seen = {canonical_form(LoopTable(t)).rows for t in stream}
    for t in sorted(seen):
        yield LoopTable(t)


def count_loops(spec: SearchSpec, workers: int = 1) -> int:
    return sum(1 for _ in enumerate_loops(spec, workers))


def canonical_form(Q: LoopTable) -> LoopTable:
    """Lexicographically least table among all relabelings fixing 0."""
    n = Q.n
    if n > CANONICAL_MAX:
        raise OrderTooLarge(f"canonical form limited to order {CANONICAL_MAX}")
    if n <= 2:
        return Q
    sigmas = np.array([(0,) + p for p in permutations(range(1, n))])
    inv = np.argsort(sigmas, axis=1)
    T = Q.arr
    best = None
    chunk = 5040
    for s in range(0, len(sigmas), chunk):
        sg, iv = sigmas[s:s + chunk], inv[s:s + chunk]
        # relabeled[k, i, j] = sigma_k(T[inv_k(i), inv_k(j)])
        body = T[iv[:, :, None], iv[:, None, :]]
        tables = np.take_along_axis(sg, body.reshape(len(sg), -1), axis=1)
        order = np.lexsort(tables.T[::-1])
        cand = tuple(tables[order[0]].tolist())
        if best is None or cand < best:
            best = cand
    return LoopTable([best[i * n:(i + 1) * n] for i in range(n)])
