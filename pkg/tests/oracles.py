"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here imports the package under test.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from math import prod


def sign(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def per(A) -> int:
    n = len(A)
    return sum(prod(A[i][p[i]] for i in range(n)) for p in permutations(range(n)))


def det(A) -> int:
    n = len(A)
    return sum(sign(p) * prod(A[i][p[i]] for i in range(n)) for p in permutations(range(n)))


def even_per(A) -> int:
    n = len(A)
    return sum(prod(A[i][p[i]] for i in range(n)) for p in permutations(range(n)) if sign(p) == 1)


def minor(A, i, j):
    return [[v for c, v in enumerate(row) if c != j] for r, row in enumerate(A) if r != i]


def gf2_nullity(A) -> int:
    """Count kernel vectors by enumeration; nullity is log2 of that count."""
    n = len(A[0]) if A else 0
    kernel = sum(
        1 for x in product((0, 1), repeat=n)
        if all(sum(a * b for a, b in zip(row, x)) % 2 == 0 for row in A)
    )
    return kernel.bit_length() - 1


def derangements(n: int) -> int:
    return sum(1 for p in permutations(range(n)) if all(p[i] != i for i in range(n)))


def diagonals(g):
    n = len(g)
    for p in permutations(range(n)):
        yield p, [g[r][p[r]] for r in range(n)]


def transversals(g):
    return [p for p, s in diagonals(g) if len(set(s)) == len(g)]


def spectrum(g, even_only=False):
    n = len(g)
    E = [0] * (n + 1)
    for p, s in diagonals(g):
        if not even_only or sign(p) == 1:
            E[len(set(s))] += 1
    return E[1:]


def r_sequence(g):
    n = len(g)
    out = []
    for r in range(1, n + 1):
        total = 0
        for S in combinations(range(n), r):
            ind = [[1 if v in S else 0 for v in row] for row in g]
            total += per(ind)
        out.append(total)
    return out


def partial_transversals(g) -> int:
    """Transversals of a square Latin array of any symbol alphabet."""
    k = len(g)
    return sum(
        1 for p in permutations(range(k)) if len({g[r][p[r]] for r in range(k)}) == k
    )


def depleted(g):
    n = len(g)
    return [[partial_transversals(minor(g, i, j)) for j in range(n)] for i in range(n)]


def near_rows(g):
    """N_r: weight n-1 diagonals whose row-r symbol is the repeated one."""
    n = len(g)
    N = [0] * n
    for _, s in diagonals(g):
        if len(set(s)) == n - 1:
            for r in range(n):
                if s.count(s[r]) == 2:
                    N[r] += 1
    return N


def parity(perm) -> int:
    return 0 if sign(perm) == 1 else 1


def type_counts(g):
    """(w, x, y, z) by parity labels of the three maps of each transversal."""
    n = len(g)
    counts = {"000": 0, "011": 0, "101": 0, "110": 0}
    for p in transversals(g):
        syms = [g[r][p[r]] for r in range(n)]
        sc = [0] * n
        ss = [0] * n
        for r in range(n):
            sc[p[r]] = syms[r]
            ss[syms[r]] = r
        counts[f"{parity(p)}{parity(sc)}{parity(ss)}"] += 1
    return counts["000"], counts["011"], counts["101"], counts["110"]


def signed(g) -> int:
    return sum(sign(p) for p in transversals(g))


def latin_squares(n):
    """Every Latin square of order n (tiny n only), rows as tuples."""
    perms = list(permutations(range(n)))

    def grow(rows):
        if len(rows) == n:
            yield tuple(rows)
            return
        for p in perms:
            if all(p[c] != row[c] for row in rows for c in range(n)):
                yield from grow(rows + [p])

    yield from grow([])


def is_latin(g) -> bool:
    n = len(g)
    full = set(range(n))
    return all(set(row) == full for row in g) and all({g[r][c] for r in range(n)} == full for c in range(n))


def count_transversals(g) -> int:
    """Plain recursive search; fast enough for order 11 in pure Python."""
    n = len(g)

    def rec(r, cols, syms):
        if r == n:
            return 1
        return sum(
            rec(r + 1, cols | {c}, syms | {g[r][c]})
            for c in range(n)
            if c not in cols and g[r][c] not in syms
        )

    return rec(0, frozenset(), frozenset())
