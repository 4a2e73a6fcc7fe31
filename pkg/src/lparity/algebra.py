"""Exact integer matrix kernels.

Permanents go through Ryser's inclusion-exclusion formula walked in Gray-code
order, so each step adds or removes one column from the running row sums.
Small cases run in exact int64; larger ones run modulo a handful of
31-bit primes and are reconstructed with the Chinese remainder theorem, the
number of primes being chosen from an a-priori bound on ``|per A|``.
Everything returned is a Python ``int``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from itertools import permutations

import numba as nb
import numpy as np

from .core import OrderGuardError, permutation_parity

_INT64_SAFE = 1 << 62

# Descending primes below 2**31; products of two residues fit in int64.
_PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
)

BRUTEFORCE_MAX = 9
EVEN_BRUTEFORCE_MAX = 7


def as_matrix(A) -> np.ndarray:
    """Coerce to a 2-d integer array; huge entries stay as Python ints (object)."""
    if isinstance(A, np.ndarray) and A.dtype.kind in "iub" and A.ndim == 2:
        return A.astype(np.int64, copy=False)
    a = np.array(A, dtype=object)
    if a.size == 0:
        return np.zeros((a.shape[0] if a.ndim == 2 else 0, a.shape[1] if a.ndim == 2 else 0), np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    if all(isinstance(v, (int, np.integer)) for v in a.flat):
        vals = [int(v) for v in a.flat]
        if max(abs(v) for v in vals) < _INT64_SAFE:
            return np.array(vals, dtype=np.int64).reshape(a.shape)
        return np.array(vals, dtype=object).reshape(a.shape)
    raise TypeError("matrix entries must be integers")


def _square(A) -> np.ndarray:
    a = as_matrix(A)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix is not square: {a.shape}")
    return a


# --------------------------------------------------------------------------
# Ryser kernels


@nb.njit(cache=True, nogil=True)
def _gray_seed(a, start, rs):
    n = a.shape[0]
    g = start ^ (start >> 1)
    for j in range(n):
        if (g >> j) & 1:
            for i in range(n):
                rs[i] += a[i, j]
    return g


@nb.njit(cache=True, nogil=True)
def _gray_step(a, k, rs):
    # column flipped between Gray words k-1 and k is the lowest set bit of k
    n = a.shape[0]
    j = 0
    t = k
    while (t & 1) == 0:
        t >>= 1
        j += 1
    g = k ^ (k >> 1)
    if (g >> j) & 1:
        for i in range(n):
            rs[i] += a[i, j]
    else:
        for i in range(n):
            rs[i] -= a[i, j]
    return g


@nb.njit(cache=True, nogil=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@nb.njit(cache=True, nogil=True)
def _ryser_exact(a, start, stop):
    n = a.shape[0]
    rs = np.zeros(n, np.int64)
    g = _gray_seed(a, start, rs)
    total = 0
    for k in range(start, stop):
        if k > start:
            g = _gray_step(a, k, rs)
        if g == 0:
            continue
        prod = 1
        for i in range(n):
            prod *= rs[i]
            if prod == 0:
                break
        if (n - _popcount(g)) & 1:
            total -= prod
        else:
            total += prod
    return total


@nb.njit(cache=True, nogil=True)
def _ryser_modular(a, moduli, group, start, stop):
    # Row sums are exact; up to `group` of them multiply exactly in int64
    # before each reduction.
    n = a.shape[0]
    nm = moduli.shape[0]
    acc = np.zeros(nm, np.int64)
    rs = np.zeros(n, np.int64)
    ngroups = (n + group - 1) // group
    parts = np.zeros(ngroups, np.int64)
    g = _gray_seed(a, start, rs)
    for k in range(start, stop):
        if k > start:
            g = _gray_step(a, k, rs)
        if g == 0:
            continue
        zero = False
        for q in range(ngroups):
            part = 1
            for r in range(q * group, min(q * group + group, n)):
                part *= rs[r]
            if part == 0:
                zero = True
                break
            parts[q] = part
        if zero:
            continue
        neg = (n - _popcount(g)) & 1
        for q in range(nm):
            p = moduli[q]
            prod = parts[0] % p
            for r in range(1, ngroups):
                prod = (prod * (parts[r] % p)) % p
            if neg:
                acc[q] -= prod
                if acc[q] < 0:
                    acc[q] += p
            else:
                acc[q] += prod
                if acc[q] >= p:
                    acc[q] -= p
    return acc


def _ranges(total: int, parts: int):
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _map_ranges(fn, total, threads):
    chunks = _ranges(total, threads)
    if len(chunks) == 1:
        return [fn(*chunks[0])]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        return list(pool.map(lambda ch: fn(*ch), chunks))


def _crt(residues, moduli) -> int:
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        r, p = int(r), int(p)
        t = ((r - x) * pow(m, -1, p)) % p
        x += m * t
        m *= p
    return x if x <= m // 2 else x - m


def _ryser_python(a) -> int:
    """Gray-code Ryser on Python ints; the route for entries beyond int64."""
    n = len(a)
    rows = [[int(v) for v in row] for row in a]
    rs = [0] * n
    total = 0
    g = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        g ^= 1 << j
        sign = 1 if (g >> j) & 1 else -1
        for i in range(n):
            rs[i] += sign * rows[i][j]
        prod = 1
        for v in rs:
            prod *= v
            if not prod:
                break
        if (n - bin(g).count("1")) & 1:
            total -= prod
        else:
            total += prod
    return total


def _row_abs_sums(a) -> list[int]:
    return [sum(abs(int(v)) for v in row) for row in a.tolist()]


def permanent(A, mod: int | None = None, threads: int = 1) -> int:
    """Exact permanent (or its residue modulo ``mod``) via Ryser's formula.

    ``threads > 1`` splits the subset range into contiguous chunks, each
    reseeding its Gray state; the result is identical to the sequential one.
    """
    a = _square(A)
    n = a.shape[0]
    if mod is not None and mod < 1:
        raise ValueError("modulus must be positive")
    if n == 0:
        return 1 % mod if mod else 1
    row_abs = _row_abs_sums(a)
    col_abs = _row_abs_sums(a.T)
    if min(row_abs) == 0 or min(col_abs) == 0:
        return 0
    if a.dtype == object or max(row_abs) >= _INT64_SAFE or n > 62:
        value = _ryser_python(a)
        return value % mod if mod else value
    term_bound = math.prod(row_abs)
    total = 1 << n
    if (term_bound << n) < _INT64_SAFE:
        parts = _map_ranges(lambda lo, hi: _ryser_exact(a, lo, hi), total, threads)
        value = sum(int(p) for p in parts)
        return value % mod if mod else value
    bits = max(row_abs).bit_length()
    group = max(1, 62 // bits)
    if mod is not None and mod < (1 << 31):
        moduli = np.array([mod], np.int64)
    else:
        bound = min(term_bound, math.prod(col_abs))
        moduli_l, prod = [], 1
        for p in _PRIMES:
            if prod > 2 * bound:
                break
            moduli_l.append(p)
            prod *= p
        if prod <= 2 * bound:
            value = _ryser_python(a)
            return value % mod if mod else value
        moduli = np.array(moduli_l, np.int64)
    parts = _map_ranges(lambda lo, hi: _ryser_modular(a, moduli, group, lo, hi), total, threads)
    residues = [sum(int(p[q]) for p in parts) % int(moduli[q]) for q in range(len(moduli))]
    if mod is not None and len(moduli) == 1 and int(moduli[0]) == mod:
        return residues[0]
    value = _crt(residues, moduli.tolist())
    return value % mod if mod else value


def permanent_bruteforce(A) -> int:
    """Sum over all ``n!`` permutations; the oracle for :func:`permanent`."""
    a = _square(A)
    n = a.shape[0]
    if n > BRUTEFORCE_MAX:
        raise OrderGuardError("permanent_bruteforce", n, BRUTEFORCE_MAX)
    rows = [[int(v) for v in row] for row in a.tolist()]
    total = 0
    for perm in permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= rows[i][j]
            if not prod:
                break
        total += prod
    return total


# --------------------------------------------------------------------------
# determinant


@nb.njit(cache=True, nogil=True)
def _bareiss_int64(m):
    n = m.shape[0]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k, k] == 0:
            piv = -1
            for i in range(k + 1, n):
                if m[i, k] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            for j in range(n):
                t = m[k, j]
                m[k, j] = m[piv, j]
                m[piv, j] = t
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i, j] = (m[i, j] * m[k, k] - m[i, k] * m[k, j]) // prev
        prev = m[k, k]
    return sign * m[n - 1, n - 1]


def _bareiss_python(rows) -> int:
    m = [[int(v) for v in row] for row in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        mkk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * mkk - mik * rowk[j]) // prev
        prev = mkk
    return sign * m[n - 1][n - 1]


def determinant(A, mod: int | None = None) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = _square(A)
    n = a.shape[0]
    if n == 0:
        value = 1
    elif a.dtype != object:
        # Bareiss intermediates are minors; their pairwise products must fit.
        hadamard_sq = math.prod(max(1, sum(int(v) * int(v) for v in row)) for row in a.tolist())
        if 4 * hadamard_sq < _INT64_SAFE:
            value = int(_bareiss_int64(a.copy()))
        else:
            value = _bareiss_python(a.tolist())
    else:
        value = _bareiss_python(a.tolist())
    return value % mod if mod else value


def even_permanent(A) -> int:
    """Sum over even permutations only: ``(per A + det A) / 2``."""
    p, d = permanent(A), determinant(A)
    if (p + d) % 2:
        raise ArithmeticError("per + det is odd; this cannot happen for integer matrices")
    return (p + d) // 2


def even_permanent_bruteforce(A) -> int:
    a = _square(A)
    n = a.shape[0]
    if n > EVEN_BRUTEFORCE_MAX:
        raise OrderGuardError("even_permanent_bruteforce", n, EVEN_BRUTEFORCE_MAX)
    rows = a.tolist()
    total = 0
    for perm in permutations(range(n)):
        if permutation_parity(perm):
            continue
        prod = 1
        for i, j in enumerate(perm):
            prod *= int(rows[i][j])
        total += prod
    return total


def submatrix(A, i: int, j: int) -> np.ndarray:
    a = as_matrix(A)
    n, m = a.shape
    if not (0 <= i < n and 0 <= j < m):
        raise IndexError(f"({i},{j}) outside {n}x{m} matrix")
    return np.delete(np.delete(a, i, axis=0), j, axis=1)


def permanental_minor(A, i: int, j: int) -> int:
    """``per A(i|j)``: permanent after deleting row ``i`` and column ``j``."""
    _square(A)
    return permanent(submatrix(A, i, j))


def permanental_minors(A) -> list[list[int]]:
    a = _square(A)
    n = a.shape[0]
    return [[permanent(submatrix(a, i, j)) for j in range(n)] for i in range(n)]


# --------------------------------------------------------------------------
# GF(2)


def gf2_rank(A) -> int:
    """Rank over GF(2); rows are packed into Python int bitsets."""
    a = as_matrix(A)
    rows = []
    for row in a.tolist():
        bits = 0
        for j, v in enumerate(row):
            if int(v) & 1:
                bits |= 1 << j
        rows.append(bits)
    rank = 0
    pivots: dict[int, int] = {}  # leading bit -> reduced row
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            if lead in pivots:
                r ^= pivots[lead]
            else:
                pivots[lead] = r
                rank += 1
                break
    return rank


def gf2_nullity(A) -> int:
    """``cols - rank`` over GF(2)."""
    a = as_matrix(A)
    return a.shape[1] - gf2_rank(a)


# --------------------------------------------------------------------------
# derangements and regular 0-1 matrices


def derangement(n: int) -> int:
    """``d_n`` from ``d_n = n d_{n-1} + (-1)^n`` with ``d_0 = 1``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    d = 1
    for i in range(1, n + 1):
        d = i * d + (-1) ** i
    return d


def regular_degree(A) -> int | None:
    """``k`` if ``A`` is a 0-1 matrix with every row and column sum ``k``."""
    a = as_matrix(A)
    if a.dtype == object or a.shape[0] != a.shape[1]:
        return None
    if a.size == 0:
        return 0
    if not np.isin(a, (0, 1)).all():
        return None
    rows, cols = a.sum(axis=1), a.sum(axis=0)
    k = int(rows[0])
    if (rows == k).all() and (cols == k).all():
        return k
    return None


def _random_perfect_matching(allowed: np.ndarray, rng: np.random.Generator):
    """Kuhn's augmenting paths with randomised vertex order."""
    n = allowed.shape[0]
    adj = [list(rng.permutation(np.flatnonzero(allowed[i]))) for i in range(n)]
    match_col = [-1] * n

    def augment(i, seen):
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                if match_col[j] < 0 or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    for i in rng.permutation(n):
        if not augment(int(i), [False] * n):
            return None
    perm = np.empty(n, np.int64)
    for j, i in enumerate(match_col):
        perm[i] = j
    return perm


def sample_regular(n: int, k: int, seed=None, max_tries: int = 32) -> np.ndarray:
    """A member of Lambda_n^k built as a union of ``k`` disjoint permutation matrices.

    Uniformity over Lambda_n^k is not claimed.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    flip = k > n // 2
    kk = n - k if flip else k
    for _ in range(max_tries):
        a = np.zeros((n, n), np.int64)
        for _ in range(kk):
            perm = _random_perfect_matching(a == 0, rng)
            if perm is None:
                break
            a[np.arange(n), perm] = 1
        else:
            if flip:
                a = 1 - a
            a = a[rng.permutation(n)][:, rng.permutation(n)]
            if regular_degree(a) != k and not (n == 0):
                raise AssertionError("sampler produced a non-regular matrix")
            return a
    raise RuntimeError(f"could not sample Lambda_{n}^{k} after {max_tries} attempts")


# --------------------------------------------------------------------------
# text format


def parse_matrix(text: str) -> np.ndarray:
    """First line ``rows cols``, then integer rows."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        rows, cols = (int(t) for t in lines[0])
    except ValueError:
        raise ValueError("header must be 'rows cols'") from None
    body = lines[1:]
    if len(body) != rows or any(len(r) != cols for r in body):
        raise ValueError(f"expected {rows} rows of {cols} integers")
    return as_matrix([[int(t) for t in r] for r in body]) if rows else np.zeros((0, cols), np.int64)


def format_matrix(A) -> str:
    a = as_matrix(A)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    lines += [" ".join(str(int(v)) for v in row) for row in a.tolist()]
    return "\n".join(lines) + "\n"
