"""Transversal and diagonal counts of Latin squares.

Two families of routes are kept side by side: direct enumeration (depth-first
search over rows with column and symbol bitmasks) and the subset-sum route
through permanents of symbol-indicator matrices.  They are independent, which
is what makes cross-checking them meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable, NamedTuple

import numba as nb
import numpy as np

from . import algebra
from .core import (
    LatinSquare,
    OrderGuardError,
    RowLatinSquare,
    SymbolArray,
    conjugate,
    cycle_count,
)

SPECTRUM_MAX = 11
R_SEQUENCE_MAX = 13
VIA_DET_MAX = 20
_KERNEL_MAX = 20  # counts of at most 20! fit in int64
_MASK_BITS = 63


# --------------------------------------------------------------------------
# kernels


@nb.njit(cache=True, nogil=True)
def _count_kernel(sym):
    # one entry per row, distinct columns and symbols; requires rows <= cols
    m, k = sym.shape
    if m == 0:
        return 1
    ptr = np.zeros(m + 1, np.int64)
    chosen = np.zeros(m, np.int64)
    used_c = 0
    used_s = 0
    count = 0
    level = 0
    while level >= 0:
        c = ptr[level]
        if c >= k:
            level -= 1
            if level >= 0:
                c = chosen[level]
                used_c ^= 1 << c
                used_s ^= 1 << sym[level, c]
                ptr[level] = c + 1
            continue
        s = sym[level, c]
        if (used_c >> c) & 1 or (used_s >> s) & 1:
            ptr[level] = c + 1
            continue
        if level == m - 1:
            count += 1
            ptr[level] = c + 1
            continue
        chosen[level] = c
        used_c |= 1 << c
        used_s |= 1 << s
        level += 1
        ptr[level] = 0
    return count


@nb.njit(cache=True, nogil=True)
def _parity(perm, seen):
    n = perm.shape[0]
    for i in range(n):
        seen[i] = False
    cycles = 0
    for i in range(n):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return (n - cycles) & 1


@nb.njit(cache=True, nogil=True)
def _transversal_kernel(sym, collect, out):
    # Square input.  bins[4*er + 2*ec + es] counts transversals by the
    # parities of row->col, col->sym and sym->row, each found by cycle count.
    n = sym.shape[0]
    bins = np.zeros(8, np.int64)
    if n == 0:
        bins[0] = 1
        return bins
    ptr = np.zeros(n + 1, np.int64)
    chosen = np.zeros(n, np.int64)
    sig_c = np.zeros(n, np.int64)
    sig_s = np.zeros(n, np.int64)
    seen = np.zeros(n, np.bool_)
    used_c = 0
    used_s = 0
    found = 0
    level = 0
    while level >= 0:
        c = ptr[level]
        if c >= n:
            level -= 1
            if level >= 0:
                c = chosen[level]
                used_c ^= 1 << c
                used_s ^= 1 << sym[level, c]
                ptr[level] = c + 1
            continue
        s = sym[level, c]
        if (used_c >> c) & 1 or (used_s >> s) & 1:
            ptr[level] = c + 1
            continue
        chosen[level] = c
        if level == n - 1:
            for r in range(n):
                cc = chosen[r]
                ss = sym[r, cc]
                sig_c[cc] = ss
                sig_s[ss] = r
            er = _parity(chosen, seen)
            ec = _parity(sig_c, seen)
            es = _parity(sig_s, seen)
            bins[4 * er + 2 * ec + es] += 1
            if collect:
                for r in range(n):
                    out[found, r] = chosen[r]
            found += 1
            ptr[level] = c + 1
            continue
        used_c |= 1 << c
        used_s |= 1 << s
        level += 1
        ptr[level] = 0
    return bins


@nb.njit(cache=True, nogil=True)
def _diagonal_kernel(sym, n_symbols):
    # Every diagonal: weight histogram, even-diagonal histogram, and for
    # weight n-1 the rows carrying the repeated symbol.
    n = sym.shape[0]
    E = np.zeros(n + 1, np.int64)
    Eev = np.zeros(n + 1, np.int64)
    N = np.zeros(n, np.int64)
    if n == 0:
        return E, Eev, N
    cnt = np.zeros(n_symbols, np.int64)
    ptr = np.zeros(n + 1, np.int64)
    chosen = np.zeros(n, np.int64)
    par = np.zeros(n + 1, np.int64)
    used_c = 0
    distinct = 0
    level = 0
    while level >= 0:
        c = ptr[level]
        if c >= n:
            level -= 1
            if level >= 0:
                c = chosen[level]
                used_c ^= 1 << c
                s = sym[level, c]
                cnt[s] -= 1
                if cnt[s] == 0:
                    distinct -= 1
                ptr[level] = c + 1
            continue
        if (used_c >> c) & 1:
            ptr[level] = c + 1
            continue
        # inversions added: earlier rows holding a larger column
        above = used_c >> (c + 1)
        inv = 0
        while above:
            above &= above - 1
            inv += 1
        p = (par[level] + inv) & 1
        s = sym[level, c]
        chosen[level] = c
        if level == n - 1:
            w = distinct + (1 if cnt[s] == 0 else 0)
            E[w] += 1
            if p == 0:
                Eev[w] += 1
            if w == n - 1:
                cnt[s] += 1
                for r in range(n):
                    if cnt[sym[r, chosen[r]]] == 2:
                        N[r] += 1
                cnt[s] -= 1
            ptr[level] = c + 1
            continue
        used_c |= 1 << c
        if cnt[s] == 0:
            distinct += 1
        cnt[s] += 1
        par[level + 1] = p
        level += 1
        ptr[level] = 0
    return E, Eev, N


@nb.njit(cache=True, nogil=True)
def _r_sequence_kernel(sym, even):
    # R_r = sum over r-subsets S of per (or even per) of the S-indicator
    # matrix; n <= 13 keeps Ryser terms and Bareiss products inside int64.
    n = sym.shape[0]
    R = np.zeros(n + 1, np.int64)
    a = np.zeros((n, n), np.int64)
    work = np.zeros((n, n), np.int64)
    rs = np.zeros(n, np.int64)
    for mask in range(1, 1 << n):
        size = 0
        t = mask
        while t:
            t &= t - 1
            size += 1
        for i in range(n):
            for j in range(n):
                a[i, j] = (mask >> sym[i, j]) & 1
        for i in range(n):
            rs[i] = 0
        per = 0
        g = 0
        for k in range(1, 1 << n):
            j = 0
            t = k
            while (t & 1) == 0:
                t >>= 1
                j += 1
            g ^= 1 << j
            if (g >> j) & 1:
                for i in range(n):
                    rs[i] += a[i, j]
            else:
                for i in range(n):
                    rs[i] -= a[i, j]
            prod = 1
            for i in range(n):
                prod *= rs[i]
                if prod == 0:
                    break
            pc = 0
            t = g
            while t:
                t &= t - 1
                pc += 1
            if (n - pc) & 1:
                per -= prod
            else:
                per += prod
        if even:
            for i in range(n):
                for j in range(n):
                    work[i, j] = a[i, j]
            det = _bareiss(work)
            R[size] += (per + det) // 2
        else:
            R[size] += per
    return R


@nb.njit(cache=True, nogil=True)
def _bareiss(m):
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


# --------------------------------------------------------------------------
# result types


def _diagonal_total(n: int, variant: str) -> int:
    if variant == "even" and n >= 2:
        return factorial(n) // 2
    return factorial(n)


@dataclass(frozen=True)
class DiagonalSpectrum:
    """``counts[m-1]`` is E_m, the number of diagonals with exactly m symbols.

    Index with the weight: ``spec[m]`` (zero outside ``1..n``).
    """

    order: int
    counts: tuple[int, ...]
    variant: str = "plain"

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(v) for v in self.counts))
        if len(self.counts) != self.order:
            raise ValueError("need one count per weight 1..n")
        if any(v < 0 for v in self.counts):
            raise ValueError("negative diagonal count")
        if self.order and sum(self.counts) != _diagonal_total(self.order, self.variant):
            raise ValueError(
                f"counts sum to {sum(self.counts)}, expected "
                f"{_diagonal_total(self.order, self.variant)}"
            )

    def __getitem__(self, m: int) -> int:
        if 1 <= m <= self.order:
            return self.counts[m - 1]
        return 0

    def as_list(self) -> list[int]:
        return list(self.counts)


@dataclass(frozen=True)
class RSequence:
    """``values[r-1]`` is R_r; ``seq[0]`` is 0 by convention."""

    order: int
    values: tuple[int, ...]
    variant: str = "plain"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.order:
            raise ValueError("need one value per r = 1..n")

    def __getitem__(self, r: int) -> int:
        if 1 <= r <= self.order:
            return self.values[r - 1]
        if r == 0:
            return 0
        raise IndexError(r)

    def as_list(self) -> list[int]:
        return list(self.values)


class ParityTypeCounts(NamedTuple):
    """Transversals of types T^000, T^011, T^101, T^110."""

    w: int
    x: int
    y: int
    z: int

    @property
    def total(self) -> int:
        return self.w + self.x + self.y + self.z

    def as_dict(self) -> dict:
        return {"w": self.w, "x": self.x, "y": self.y, "z": self.z}


@dataclass(frozen=True)
class DepletedCounts:
    """``t[i][j]`` transversals of ``L(i|j)``; ``N[r]`` as in the row identity."""

    order: int
    t: tuple[tuple[int, ...], ...]
    N: tuple[int, ...] | None

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.t]

    def total(self) -> int:
        return sum(self.row_sums())


# --------------------------------------------------------------------------
# transversal counts


def _count_python(cells: np.ndarray) -> int:
    m, k = cells.shape
    rows = cells.tolist()

    def rec(r, used_c, used_s):
        if r == m:
            return 1
        total = 0
        row = rows[r]
        for c in range(k):
            s = row[c]
            if not (used_c >> c) & 1 and not (used_s >> s) & 1:
                total += rec(r + 1, used_c | (1 << c), used_s | (1 << s))
        return total

    return rec(0, 0, 0)


def _count_cells(cells: np.ndarray, n_symbols: int) -> int:
    if cells.shape[0] > cells.shape[1]:
        cells = cells.T
    m, k = cells.shape
    if m <= _KERNEL_MAX and k <= _MASK_BITS and n_symbols <= _MASK_BITS:
        return int(_count_kernel(np.ascontiguousarray(cells, dtype=np.int64)))
    return _count_python(cells)


def count_transversals(A: SymbolArray) -> int:
    """Number of transversals of a square, row-Latin square or Latin array.

    For an ``m x k`` array a transversal is ``min(m, k)`` entries sharing no
    row, column or symbol.  The empty array has one (empty) transversal.
    """
    return _count_cells(A.cells, A.n_symbols)


def _require_square(L):
    if not isinstance(L, RowLatinSquare):
        raise TypeError(f"expected a square, got {type(L).__name__}")
    if L.order > _KERNEL_MAX:
        raise OrderGuardError("transversal enumeration", L.order, _KERNEL_MAX)


def _type_bins(L: SymbolArray) -> np.ndarray:
    _require_square(L)
    dummy = np.zeros((0, 0), np.int64)
    return _transversal_kernel(np.ascontiguousarray(L.cells), False, dummy)


def transversals(L: LatinSquare) -> np.ndarray:
    """All transversals as rows of column indices (row -> column maps)."""
    _require_square(L)
    total = int(_type_bins(L).sum())
    out = np.zeros((total, L.order), np.int64)
    _transversal_kernel(np.ascontiguousarray(L.cells), True, out)
    return out


def parity_type_counts(L: LatinSquare) -> ParityTypeCounts:
    bins = _type_bins(L)
    stray = int(bins[1] + bins[2] + bins[4] + bins[7])
    if stray:
        raise RuntimeError(f"{stray} transversals with odd parity sum")
    return ParityTypeCounts(int(bins[0]), int(bins[3]), int(bins[5]), int(bins[6]))


def signed_count(L: LatinSquare) -> int:
    """Even transversals minus odd ones, parity taken from the row -> column map."""
    bins = _type_bins(L)
    even = int(bins[:4].sum())
    odd = int(bins[4:].sum())
    return even - odd


# --------------------------------------------------------------------------
# subset evaluations


def indicator(L: SymbolArray, symbols: Iterable[int]) -> np.ndarray:
    """0-1 matrix marking the cells whose symbol lies in ``symbols``."""
    sel = np.zeros(L.n_symbols, dtype=bool)
    for s in symbols:
        if not 0 <= s < L.n_symbols:
            raise ValueError(f"symbol {s} out of range")
        sel[s] = True
    return sel[L.cells].astype(np.int64)


def angle_eval(L: SymbolArray, symbols: Iterable[int], mode: str = "per") -> int:
    """One term of a subset sum: substitute 1 for ``symbols`` and 0 elsewhere."""
    a = indicator(L, symbols)
    if mode == "per":
        return algebra.permanent(a)
    if mode == "det":
        return algebra.determinant(a)
    if mode == "even_per":
        return algebra.even_permanent(a)
    raise ValueError(f"unknown mode {mode!r}")


def signed_count_via_det(L: LatinSquare) -> int:
    """Alternating sum of subset determinants over all symbol subsets."""
    n = L.order
    if n > VIA_DET_MAX:
        raise OrderGuardError("signed_count_via_det", n, VIA_DET_MAX)
    total = 0
    for mask in range(1 << n):
        syms = [s for s in range(n) if (mask >> s) & 1]
        d = algebra.determinant(indicator(L, syms)) if syms else (1 if n == 0 else 0)
        total += -d if (n - len(syms)) & 1 else d
    return total


def r_sequence(L: LatinSquare, mode: str = "per") -> RSequence:
    """R_1..R_n, each the sum over r-subsets of symbols of the subset permanent."""
    if mode not in ("per", "even_per"):
        raise ValueError(f"unknown mode {mode!r}")
    n = L.order
    if n > R_SEQUENCE_MAX:
        raise OrderGuardError("r_sequence", n, R_SEQUENCE_MAX)
    R = _r_sequence_kernel(np.ascontiguousarray(L.cells), mode == "even_per")
    return RSequence(n, tuple(int(v) for v in R[1:]), "plain" if mode == "per" else "even")


def spectrum_from_r(R: RSequence) -> DiagonalSpectrum:
    """Inclusion-exclusion from subset sums to weight counts."""
    n = R.order
    E = []
    for m in range(1, n + 1):
        E.append(sum((-1) ** (m - r) * comb(n - r, n - m) * R[r] for r in range(1, m + 1)))
    return DiagonalSpectrum(n, tuple(E), R.variant)


def _diagonals(L: LatinSquare):
    n = L.order
    if n > SPECTRUM_MAX:
        raise OrderGuardError("diagonal enumeration", n, SPECTRUM_MAX)
    return _diagonal_kernel(np.ascontiguousarray(L.cells), L.n_symbols)


def spectrum_enumerate(L: LatinSquare) -> DiagonalSpectrum:
    """E_1..E_n by visiting all ``n!`` diagonals."""
    E, _, _ = _diagonals(L)
    return DiagonalSpectrum(L.order, tuple(int(v) for v in E[1:]))


def ev_spectrum(L: LatinSquare) -> DiagonalSpectrum:
    """Counts restricted to even diagonals."""
    _, Eev, _ = _diagonals(L)
    return DiagonalSpectrum(L.order, tuple(int(v) for v in Eev[1:]), "even")


def r2_cycle_formula(L: LatinSquare) -> int:
    """R_2 as a sum of ``2**c`` over unordered symbol pairs.

    ``c`` is the number of cycles of ``theta_s^-1 theta_s'`` where
    ``theta_s`` maps each row to the column holding ``s``.
    """
    pos = L.symbol_positions()  # pos[s] = theta_s
    n = L.order
    inv = np.argsort(pos, axis=1)
    total = 0
    for s in range(n):
        for t in range(s + 1, n):
            total += 1 << cycle_count(inv[s][pos[t]].tolist())
    return total


# --------------------------------------------------------------------------
# depleted squares


def depleted_t(L: SymbolArray) -> tuple[tuple[int, ...], ...]:
    if not isinstance(L, RowLatinSquare):
        raise TypeError("depleted counts need a square")
    n = L.order
    cells = L.cells
    out = []
    for i in range(n):
        rest = np.delete(cells, i, axis=0)
        out.append(
            tuple(_count_cells(np.delete(rest, j, axis=1), L.n_symbols) for j in range(n))
        )
    return tuple(out)


def near_transversal_rows(L: LatinSquare) -> tuple[int, ...]:
    """N_r by enumerating weight ``n-1`` diagonals."""
    _, _, N = _diagonals(L)
    return tuple(int(v) for v in N)


def depleted_counts(L: SymbolArray, n_method: str = "enumerate") -> DepletedCounts:
    """t_ij for every cell and, for Latin squares, N_r.

    ``n_method`` is "enumerate" (direct, guarded) or "identity"
    (``N_r = sum_c t_rc - E_n``).
    """
    t = depleted_t(L)
    N = None
    if isinstance(L, LatinSquare):
        if n_method == "enumerate":
            N = near_transversal_rows(L)
        elif n_method == "identity":
            En = count_transversals(L)
            N = tuple(sum(row) - En for row in t)
        else:
            raise ValueError(f"unknown n_method {n_method!r}")
    return DepletedCounts(L.order, t, N)


# --------------------------------------------------------------------------
# conjugate signed counts and the JSON report


def conjugate_signed_counts(L: LatinSquare) -> tuple[int, int, int]:
    """Signed counts of ``L`` and of its 312- and 231-conjugates."""
    return (
        signed_count(L),
        signed_count(conjugate(L, "312")),
        signed_count(conjugate(L, "231")),
    )


REPORT_FIELDS = ("spectrum", "signed", "types", "depleted", "ev", "r_seq")


def spectrum_report(L: SymbolArray, fields: Iterable[str] = REPORT_FIELDS) -> dict:
    """JSON-ready report; cost-guarded quantities land in ``skipped``."""
    fields = set(fields)
    unknown = fields - set(REPORT_FIELDS)
    if unknown:
        raise ValueError(f"unknown report fields {sorted(unknown)}")
    n = L.rows if L.rows == L.cols else None
    report: dict = {
        "order": n,
        "shape": list(L.shape),
        "n_symbols": L.n_symbols,
        "structure": type(L).__name__,
        "square": L.to_lists(),
        "transversals": count_transversals(L),
        "E": None,
        "E_ev": None,
        "R": None,
        "signed": None,
        "types": None,
        "t": None,
        "N": None,
        "skipped": {},
    }
    latin = isinstance(L, LatinSquare)

    def attempt(key, fn):
        try:
            report[key] = fn()
        except OrderGuardError as exc:
            report["skipped"][key] = f"skipped-cost: {exc}"

    if "spectrum" in fields and latin:
        attempt("E", lambda: spectrum_enumerate(L).as_list())
    if "ev" in fields and latin:
        attempt("E_ev", lambda: ev_spectrum(L).as_list())
    if "r_seq" in fields and latin:
        attempt("R", lambda: r_sequence(L).as_list())
    if "signed" in fields and latin:
        attempt("signed", lambda: signed_count(L))
    if "types" in fields and latin:
        attempt("types", lambda: parity_type_counts(L).as_dict())
    if "depleted" in fields and isinstance(L, RowLatinSquare):
        attempt("t", lambda: [list(r) for r in depleted_t(L)])
        if latin:
            attempt("N", lambda: list(near_transversal_rows(L)))
    return report
