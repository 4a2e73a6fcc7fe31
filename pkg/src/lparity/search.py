"""Corpora of Latin squares and the intercalate-turning residue search."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

import numba as nb
import numpy as np

from . import fixtures as _fixtures
from .core import (
    Intercalate,
    LatinSquare,
    OrderGuardError,
    SymbolArray,
    cyclic_square,
    find_intercalates,
    square_parities,
    turn_intercalate,
)
from .spectrum import (
    SPECTRUM_MAX,
    count_transversals,
    depleted_t,
    parity_type_counts,
    spectrum_enumerate,
)

EXHAUSTIVE_MAX = 7
BURN_IN_FACTOR = 10


# --------------------------------------------------------------------------
# exhaustive reduced squares


def exhaustive_reduced(n: int) -> Iterator[LatinSquare]:
    """Every reduced square of order ``n`` exactly once, lexicographically.

    First row and first column are in natural order; the remaining cells are
    filled row by row with the smallest admissible symbol first.
    """
    if n > EXHAUSTIVE_MAX:
        raise OrderGuardError("exhaustive_reduced", n, EXHAUSTIVE_MAX)
    if n <= 0:
        return
    grid = [[0] * n for _ in range(n)]
    row_used = [0] * n
    col_used = [0] * n
    for i in range(n):
        grid[0][i] = grid[i][0] = i
        row_used[i] |= 1 << i
        col_used[i] |= 1 << i
    row_used[0] = col_used[0] = (1 << n) - 1
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]
    total = len(cells)

    def fill(idx):
        if idx == total:
            yield LatinSquare(grid)
            return
        r, c = cells[idx]
        free = ~(row_used[r] | col_used[c]) & ((1 << n) - 1)
        while free:
            low = free & -free
            s = low.bit_length() - 1
            free ^= low
            grid[r][c] = s
            row_used[r] |= low
            col_used[c] |= low
            yield from fill(idx + 1)
            row_used[r] ^= low
            col_used[c] ^= low

    yield from fill(0)


# --------------------------------------------------------------------------
# Jacobson-Matthews walk


@nb.njit(cache=True, nogil=True)
def _jm_walk(start, steps, seed):
    n = start.shape[0]
    np.random.seed(seed)
    cube = np.zeros((n, n, n), np.int8)
    for r in range(n):
        for c in range(n):
            cube[r, c, start[r, c]] = 1
    proper = True
    ir = ic = isym = 0
    done = 0
    while done < steps or not proper:
        if proper:
            while True:
                r = np.random.randint(n)
                c = np.random.randint(n)
                s = np.random.randint(n)
                if cube[r, c, s] == 0:
                    break
            r2 = c2 = s2 = 0
            for t in range(n):
                if cube[t, c, s] == 1:
                    r2 = t
                if cube[r, t, s] == 1:
                    c2 = t
                if cube[r, c, t] == 1:
                    s2 = t
        else:
            r, c, s = ir, ic, isym
            # two candidates on each line through the improper cell
            pick = np.random.randint(2)
            r2 = -1
            for t in range(n):
                if cube[t, c, s] == 1:
                    if pick == 0:
                        r2 = t
                        break
                    pick -= 1
            pick = np.random.randint(2)
            c2 = -1
            for t in range(n):
                if cube[r, t, s] == 1:
                    if pick == 0:
                        c2 = t
                        break
                    pick -= 1
            pick = np.random.randint(2)
            s2 = -1
            for t in range(n):
                if cube[r, c, t] == 1:
                    if pick == 0:
                        s2 = t
                        break
                    pick -= 1
        cube[r, c, s] += 1
        cube[r, c2, s2] += 1
        cube[r2, c, s2] += 1
        cube[r2, c2, s] += 1
        cube[r, c, s2] -= 1
        cube[r, c2, s] -= 1
        cube[r2, c, s] -= 1
        cube[r2, c2, s2] -= 1
        if cube[r2, c2, s2] < 0:
            proper = False
            ir, ic, isym = r2, c2, s2
        else:
            proper = True
        done += 1
    out = np.zeros((n, n), np.int64)
    for r in range(n):
        for c in range(n):
            for s in range(n):
                if cube[r, c, s] == 1:
                    out[r, c] = s
    return out


def _seed32(seed, *extra) -> int:
    return int(np.random.SeedSequence([int(seed), *map(int, extra)]).generate_state(1)[0])


def random_square(n: int, seed: int, burn_in: int | None = None) -> LatinSquare:
    """Jacobson-Matthews random walk from the cyclic square.

    ``burn_in`` defaults to ``10 n^3`` moves; the walk then continues until
    it sits on a proper square.  Same ``(n, seed)``, same square.
    """
    if n < 1:
        raise ValueError("order must be positive")
    start = np.ascontiguousarray(cyclic_square(n).cells)
    if n == 1:
        return LatinSquare(start)
    if burn_in is None:
        burn_in = BURN_IN_FACTOR * n**3
    cells = _jm_walk(start, int(burn_in), _seed32(seed))
    return LatinSquare(cells)


# --------------------------------------------------------------------------
# corpora


@dataclass(frozen=True)
class Corpus:
    """A lazily produced, reproducible stream of subjects.

    ``kind`` is "exhaustive", "random" or "fixtures".
    """

    kind: str
    order: int | None = None
    count: int | None = None
    seed: int | None = None

    @classmethod
    def exhaustive(cls, n: int) -> "Corpus":
        if n > EXHAUSTIVE_MAX:
            raise OrderGuardError("exhaustive_reduced", n, EXHAUSTIVE_MAX)
        return cls("exhaustive", order=n)

    @classmethod
    def random(cls, n: int, count: int, seed: int) -> "Corpus":
        return cls("random", order=n, count=count, seed=seed)

    @classmethod
    def fixtures(cls) -> "Corpus":
        return cls("fixtures")

    def describe(self) -> str:
        if self.kind == "exhaustive":
            return f"exhaustive-reduced({self.order})"
        if self.kind == "random":
            return f"random({self.order}, {self.count}, {self.seed})"
        return "fixtures"

    def __iter__(self) -> Iterator[SymbolArray]:
        if self.kind == "exhaustive":
            yield from exhaustive_reduced(self.order)
        elif self.kind == "random":
            for i in range(self.count):
                yield random_square(self.order, _seed32(self.seed, self.order, i))
        elif self.kind == "fixtures":
            yield from _fixtures.paper_fixtures().values()
        else:
            raise ValueError(f"unknown corpus kind {self.kind!r}")


def random_corpus(n: int, count: int, seed: int) -> Corpus:
    return Corpus.random(n, count, seed)


# --------------------------------------------------------------------------
# residue search


def excluded_residue(n: int, k: int, m: int) -> str | None:
    """Why no order-``n`` square can have ``k mod m`` transversals, if known.

    Even orders force an even count; orders 2 mod 4 force a multiple of 4.
    """
    forced = 4 if n % 4 == 2 else 2 if n % 2 == 0 else 1
    g = gcd(m, forced)
    if k % g:
        which = "multiple of 4 for order 2 mod 4" if forced == 4 else "even for even order"
        return f"transversal count must be {which}; {k} mod {m} is unreachable"
    return None


@dataclass
class SearchResult:
    target: tuple[int, int]
    start: LatinSquare
    found: LatinSquare | None = None
    turns: list[Intercalate] = field(default_factory=list)
    count: int | None = None
    steps: int = 0
    restarts: int = 0
    excluded: str | None = None

    @property
    def success(self) -> bool:
        return self.found is not None

    def to_json(self) -> dict:
        k, m = self.target
        return {
            "target": {"k": k, "m": m},
            "status": "excluded" if self.excluded else ("found" if self.found is not None else "exhausted"),
            "reason": self.excluded,
            "start": self.start.to_lists(),
            "found": self.found.to_lists() if self.found is not None else None,
            "count": self.count,
            "residue": None if self.count is None else self.count % m,
            "steps": self.steps,
            "restarts": self.restarts,
            # 1-based (r1, r2, c1, c2) from the start square
            "turns": [[t.r1 + 1, t.r2 + 1, t.c1 + 1, t.c2 + 1] for t in self.turns],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def replay(start: LatinSquare, turns) -> LatinSquare:
    """Re-apply a turn sequence; entries are Intercalates or 1-based cell quadruples."""
    L = start
    for t in turns:
        if not isinstance(t, Intercalate):
            r1, r2, c1, c2 = (int(v) - 1 for v in t)
            g = L.cells
            t = Intercalate(r1, r2, c1, c2, int(g[r1, c1]), int(g[r1, c2]))
        L = turn_intercalate(L, t)
    return L


def residue_search(
    start: LatinSquare,
    k: int,
    m: int,
    budget: int,
    seed: int,
    stagnation: int | None = None,
) -> SearchResult:
    """Random walk over intercalate turns until the count is ``k mod m``.

    The walk restarts from ``start`` after ``stagnation`` steps without a new
    residue (default ``budget // 10``).  A hit is recounted from scratch and
    replayed from ``start`` before it is returned.
    """
    if m < 2 or not 0 <= k < m:
        raise ValueError(f"need m >= 2 and 0 <= k < m, got k={k}, m={m}")
    if budget <= 0:
        raise ValueError("budget must be positive")
    result = SearchResult(target=(k, m), start=start)
    reason = excluded_residue(start.order, k, m)
    if reason:
        result.excluded = reason
        return result
    if stagnation is None:
        stagnation = max(1, budget // 10)
    rng = np.random.default_rng(seed)

    current = start
    count = count_transversals(current)
    turns: list[Intercalate] = []
    seen = {count % m}
    quiet = 0
    step = 0
    while True:
        if count % m == k:
            found = replay(start, turns)
            if found != current or count_transversals(found) % m != k:
                raise RuntimeError("search hit failed independent re-verification")
            result.found, result.turns, result.count = found, list(turns), count
            result.steps = step
            return result
        if step >= budget:
            result.steps = step
            return result
        step += 1
        ics = find_intercalates(current)
        if not ics or quiet >= stagnation:
            if not ics and not turns:
                # the start square itself has nothing to turn
                result.steps = budget
                return result
            current, turns, quiet = start, [], 0
            count = count_transversals(current)
            seen = {count % m}
            result.restarts += 1
            continue
        ic = ics[int(rng.integers(len(ics)))]
        current = turn_intercalate(current, ic)
        turns.append(ic)
        count = count_transversals(current)
        if count % m in seen:
            quiet += 1
        else:
            seen.add(count % m)
            quiet = 0


# --------------------------------------------------------------------------
# the (w, E_{n-1}/2, pi_r, pi_c) classification


def sixteen_class(L: LatinSquare) -> tuple[int, int, int, int]:
    """``(w, E_{n-1}/2, pi_r, pi_c)`` mod 2 for an even-order square."""
    n = L.order
    if n % 2:
        raise ValueError("classification is defined for even orders")
    w = parity_type_counts(L).w
    if n <= SPECTRUM_MAX:
        near = spectrum_enumerate(L)[n - 1]
    else:
        # sum of all t_ij equals n E_n + 2 E_{n-1}
        near = (sum(map(sum, depleted_t(L))) - n * count_transversals(L)) // 2
    if near % 2:
        raise ArithmeticError(f"E_{n - 1} = {near} is odd")
    pi_r, pi_c, _ = square_parities(L)
    return (w % 2, (near // 2) % 2, pi_r, pi_c)


@dataclass
class ClassTable:
    order: int
    witnesses: dict[tuple[int, int, int, int], LatinSquare]
    sampled: int

    @property
    def complete(self) -> bool:
        return len(self.witnesses) == 16

    def missing(self) -> list[tuple[int, int, int, int]]:
        return [
            (a, b, c, d)
            for a in (0, 1)
            for b in (0, 1)
            for c in (0, 1)
            for d in (0, 1)
            if (a, b, c, d) not in self.witnesses
        ]


def sixteen_class_search(orders=(8, 10, 12), seed: int = 0, budget: int = 100_000) -> dict[int, ClassTable]:
    """Sample random squares until every class is witnessed or ``budget`` runs out."""
    tables = {}
    for n in orders:
        if n % 2:
            raise ValueError(f"order {n} is odd")
        witnesses: dict = {}
        sampled = 0
        while sampled < budget and len(witnesses) < 16:
            L = random_square(n, _seed32(seed, n, sampled))
            sampled += 1
            cls = sixteen_class(L)
            witnesses.setdefault(cls, L)
        tables[n] = ClassTable(n, witnesses, sampled)
    return tables
