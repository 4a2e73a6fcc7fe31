"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line with its wall time, and
the lines are repeated in the pytest terminal summary.  Run directly with
``python tests/test_acceptance.py`` to get just those lines.
"""

from __future__ import annotations

import functools
import time
import traceback

import numpy as np
import pytest

from lparity import algebra as A
from lparity import claims as C
from lparity import fixtures as F
from lparity import spectrum as S
from lparity.search import (
    Corpus,
    exhaustive_reduced,
    random_square,
    replay,
    residue_search,
    sixteen_class,
    sixteen_class_search,
)

RESULTS: list[str] = []


def criterion(number: int, title: str, limit: float | None):
    """Time the body, enforce ``limit`` seconds and record one status line."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            status, note = "PASS", ""
            try:
                detail = fn(*args, **kwargs)
                elapsed = time.perf_counter() - start
                if limit is not None and elapsed > limit:
                    status, note = "FAIL", f"over the {limit:g}s limit"
                elif detail:
                    note = detail
            except BaseException as exc:
                elapsed = time.perf_counter() - start
                status = "FAIL"
                note = f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
                line = f"[{status}] AC-{number:<2} {title} ({elapsed:.2f}s) {note}".rstrip()
                RESULTS.append(line)
                print(line)
                raise
            line = f"[{status}] AC-{number:<2} {title} ({elapsed:.2f}s) {note}".rstrip()
            RESULTS.append(line)
            print(line)
            assert status == "PASS", line

        return wrapper

    return deco


def _fails(suite: C.SuiteReport) -> list[str]:
    return [f"{f['claim']} on {f['subject']}" for f in suite.failures]


# --------------------------------------------------------------------------


@criterion(1, "Ryser permanent equals brute force on 300 random matrices", 10)
def test_ac01_permanent_oracle():
    rng = np.random.default_rng(1)
    for i in range(300):
        n = int(rng.integers(0, 8))
        if i % 2:
            M = rng.integers(0, 2, size=(n, n))
        else:
            M = rng.integers(-6, 7, size=(n, n))
        assert A.permanent(M) == A.permanent_bruteforce(M), M
    return "300 matrices"


@criterion(2, "spectrum from R equals enumeration (56 order-5, 100 order-6/7)", 120)
def test_ac02_spectrum_oracle():
    squares = list(exhaustive_reduced(5))
    squares += list(Corpus.random(6, 50, 2)) + list(Corpus.random(7, 50, 2))
    assert len(squares) == 156
    for L in squares:
        assert S.spectrum_from_r(S.r_sequence(L)) == S.spectrum_enumerate(L), L
    return f"{len(squares)} squares"


@criterion(3, "all 9408 reduced order-6 squares: E_6 = 0 mod 4, E+- = 0 mod 4, types", 300)
def test_ac03_order_six_exhaustive():
    keys = ["thm-bala", "thm-trans-mult-4", "thm-det-mult-4", "cor-types"]
    suite = C.run_suite(exhaustive_reduced(6), keys, threads=1)
    assert suite.subjects == 9408
    assert not suite.failures, _fails(suite)[:5]
    for k in keys:
        assert suite.tallies[k][C.PASS] == 9408, k
    return "9408 squares, 0 failures"


def _indicator_matrices(L):
    n = L.order
    for mask in range(1, 1 << n):
        yield S.indicator(L, [s for s in range(n) if mask >> s & 1])


@criterion(4, "every theorem over exhaustive orders <= 5 passes or is not applicable", 60)
def test_ac04_registry_small_orders():
    squares = [L for n in range(1, 6) for L in exhaustive_reduced(n)]
    corpus = squares + [M for L in squares for M in _indicator_matrices(L)]
    suite = C.run_suite(corpus, "all-theorems")
    assert not suite.failures, _fails(suite)[:5]
    for key, tally in suite.tallies.items():
        assert set(tally) <= {C.PASS, C.NOT_APPLICABLE}, (key, dict(tally))
    applied = sum(t[C.PASS] for t in suite.tallies.values())
    return f"{len(squares)} squares, {len(corpus) - len(squares)} matrices, {applied} passes"


@criterion(5, "L5: t_11 = 1, E_5 odd, every t_ij odd", 1)
def test_ac05_l5():
    L = F.fixture("L5")
    d = S.depleted_counts(L)
    En = S.count_transversals(L)
    assert d.t[0][0] == 1
    assert En % 2 == 1
    assert all(v % 2 == 1 for row in d.t for v in row)
    assert C.check("thm-delta-eq-trans", L).holds
    return f"E_5 = {En}"


@criterion(6, "row-Latin fixtures have 2 and 6 transversals, neither a multiple of 4", 1)
def test_ac06_row_latin():
    c2 = S.count_transversals(F.fixture("rowlatin2"))
    c6 = S.count_transversals(F.fixture("rowlatin6"))
    assert (c2, c6) == (2, 6)
    assert c2 % 4 and c6 % 4
    # the even-count theorem still holds for them
    assert C.check("thm-bala", F.fixture("rowlatin6")).holds
    return "counts 2, 6"


@criterion(7, "R-sequence identities on 50 random squares of orders 4-8", 120)
def test_ac07_identities():
    keys = [f"lem-identities-{c}" for c in "abcdef"]
    squares = [random_square(4 + i % 5, 7000 + i) for i in range(50)]
    suite = C.run_suite(squares, keys)
    assert not suite.failures, _fails(suite)[:5]
    assert all(suite.tallies[k][C.PASS] > 0 for k in keys)
    return "50 squares"


@criterion(8, "regular 0-1 matrix theorems by sampling, minors mod 2 exhaustively n <= 4", 300)
def test_ac08_matrix_theorems():
    plan = [
        ((5, 2), ["thm-minors-quad", "thm-per-2J"]),
        ((7, 2), ["thm-minors-quad", "thm-per-2J"]),
        ((7, 6), ["thm-minors-quad", "thm-per-2J"]),
        ((5, 4), ["thm-per-mod4", "cor-per-4k"]),
        ((7, 4), ["thm-per-mod4", "cor-per-4k"]),
    ]
    for (n, k), keys in plan:
        for s in range(500):
            M = A.sample_regular(n, k, seed=1000 * n + 10 * k + s)
            p = C.profile(M)
            for key in keys:
                assert C.check(key, p).outcome == C.PASS, (key, M)
    total = 0
    for n in range(1, 5):
        for bits in range(1 << (n * n)):
            M = ((bits >> np.arange(n * n)) & 1).reshape(n, n)
            r = C.check("thm-minors-mod2", M)
            assert r.outcome in (C.PASS, C.NOT_APPLICABLE), M
            total += 1
    return f"2500 samples, {total} exhaustive matrices"


@criterion(9, "R_2 and E_2 mod 3 on 100 random squares; d_n = 1 mod 4 for even n <= 20", 60)
def test_ac09_mod3():
    for i in range(100):
        n = 3 + i % 6
        L = random_square(n, 9000 + i)
        R2 = S.r_sequence(L)[2]
        E2 = S.spectrum_enumerate(L)[2]
        assert E2 == R2 - n * (n - 1)
        assert R2 % 3 != ((-1) ** n * (n + 1)) % 3
        assert C.check("lem-mod3", L).holds
    assert all(A.derangement(n) % 4 == 1 for n in range(2, 21, 2))
    return "100 squares"


@criterion(10, "residue search on the order-9 fixture for every k < m, m = 2..8", 1800)
def test_ac10_residue_search():
    L0 = F.fixture("order9")
    hits = 0
    for m in range(2, 9):
        for k in range(m):
            res = residue_search(L0, k, m, budget=10**6, seed=100 * m + k)
            assert res.success, (k, m)
            found = replay(L0, res.turns)
            assert found == res.found
            assert S.count_transversals(found) % m == k
            hits += 1
    return f"{hits} targets hit"


@criterion(11, "conjectures on 2000 random squares of orders 4-9: no counterexample", None)
def test_ac11_conjectures():
    keys = ["conj-even-a", "conj-even-b", "conj-quad-t", "conj-tij-Ek"]
    corpus = (random_square(4 + i % 6, 11_000 + i) for i in range(2000))
    suite = C.run_suite(corpus, keys, halt_on_counterexample=True)
    if suite.counterexamples:
        ce = suite.counterexamples[0]
        pytest.fail(f"counterexample to {ce['claim']}:\n{ce['square']}")
    assert suite.subjects == 2000
    return "2000 squares, 0 counterexamples"


def _timed(fn, *args):
    start = time.perf_counter()
    value = fn(*args)
    return value, time.perf_counter() - start


@criterion(12, "24x24 0-1 permanent < 5s, order-12 transversal count < 10s", None)
def test_ac12_performance():
    A.permanent(np.ones((3, 3), np.int64))  # compile outside the timed call
    S.count_transversals(random_square(4, 0))
    M = np.random.default_rng(12).integers(0, 2, size=(24, 24))
    per, t_per = _timed(A.permanent, M)
    assert per == A.permanent(M, threads=4)
    assert t_per < 5, f"permanent took {t_per:.2f}s"
    L = random_square(12, 12)
    _, t_count = _timed(S.count_transversals, L)
    assert t_count < 10, f"count took {t_count:.2f}s"
    return f"permanent {t_per:.2f}s, count {t_count:.2f}s"


@criterion(13, "all 16 classes witnessed at order 8 within 10^5 samples", None)
def test_ac13_sixteen_classes():
    table = sixteen_class_search(orders=(8,), seed=13, budget=100_000)[8]
    assert table.complete, table.missing()
    for cls, L in table.witnesses.items():
        assert sixteen_class(L) == cls
    return f"{table.sampled} samples"


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_ac")]
    failed = 0
    for t in tests:
        try:
            t()
        except BaseException:
            failed += 1
            if "-v" in sys.argv:
                traceback.print_exc()
    sys.exit(1 if failed else 0)
