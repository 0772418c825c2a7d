"""Small loops used as fixtures and CLI constructions."""
from __future__ import annotations

from itertools import permutations

from . import perms
from .loops import LoopTable

# Order-5 loop that is neither power-associative nor automorphic.
NA5_ROWS = (
    (0, 1, 2, 3, 4),
    (1, 2, 3, 4, 0),
    (2, 0, 4, 1, 3),
    (3, 4, 0, 2, 1),
    (4, 3, 1, 0, 2),
)


def na5() -> LoopTable:
    return LoopTable(NA5_ROWS)


def cyclic(n: int) -> LoopTable:
    if n < 1:
        raise ValueError("n must be positive")
    return LoopTable([[(i + j) % n for j in range(n)] for i in range(n)])


def elementary_abelian_2(k: int) -> LoopTable:
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = 1 << k
    return LoopTable([[i ^ j for j in range(n)] for i in range(n)])


def dihedral(m: int) -> LoopTable:
    """Dihedral group of order 2m; r^i s^a is stored at index i + m*a."""
    if m < 1:
        raise ValueError("m must be positive")

    def mul(x, y):
        i, a = x % m, x // m
        j, b = y % m, y // m
        return (i + (j if a == 0 else -j)) % m + m * ((a + b) % 2)

    n = 2 * m
    return LoopTable([[mul(x, y) for y in range(n)] for x in range(n)])


def direct_product(A: LoopTable, B: LoopTable) -> LoopTable:
    """Componentwise product; (a, b) is stored at index a*|B| + b."""
    nb = B.n
    n = A.n * nb
    rows = []
    for x in range(n):
        a1, b1 = divmod(x, nb)
        rows.append([A.rows[a1][y // nb] * nb + B.rows[b1][y % nb] for y in range(n)])
    return LoopTable(rows)


def group_from_permutations(elements) -> LoopTable:
    """Cayley table of a permutation group listed with the identity first."""
    elements = [tuple(e) for e in elements]
    index = {e: i for i, e in enumerate(elements)}
    if not perms.is_identity(elements[0]):
        raise ValueError("identity must come first")
    rows = [[index[perms.compose(a, b)] for b in elements] for a in elements]
    return LoopTable(rows)


def _sign(p) -> int:
    return (-1) ** sum(len(c) - 1 for c in perms.cycles(p))


def symmetric(m: int) -> LoopTable:
    """S_m with elements in lexicographic order of their image tuples."""
    return group_from_permutations(sorted(permutations(range(m))))


def alternating(m: int) -> LoopTable:
    return group_from_permutations(
        sorted(p for p in permutations(range(m)) if _sign(p) == 1))


def relabel(Q: LoopTable, sigma) -> LoopTable:
    """Isomorphic copy with element x renamed sigma[x]; sigma must fix 0."""
    sigma = tuple(sigma)
    if sigma[0] != 0:
        raise ValueError("relabeling must fix the neutral element")
    inv = perms.inverse(sigma)
    n = Q.n
    return LoopTable([[sigma[Q.rows[inv[i]][inv[j]]] for j in range(n)] for i in range(n)])
