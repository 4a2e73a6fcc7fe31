import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lparity import claims as C
from lparity import fixtures as F
from lparity.algebra import sample_regular
from lparity.core import cyclic_square, delete_row
from lparity.search import exhaustive_reduced, random_square
from strategies import latin_squares, zero_one_matrices

LATIN_KEYS = """
thm-bala thm-det-mult-4 thm-trans-mult-4 eq-types cor-types conj-even-a conj-even-b
lem-conj-equiv lem-transversal-parity thm-trans-equation eq-e-m lem-r2-cycles
thm-same-delta-row cor-same-delta cor-row-latin-even lem-delta-row lem-delta-all
thm-delta-eq-trans cor-nr-even conj-quad-t lem-identities-a lem-identities-b
lem-identities-c lem-identities-d lem-identities-e lem-identities-f thm-En-3-even
thm-En-1-even cor-R4k cor-Rk-2Rnk thm-Ei-odd-n thm-En1-mod4-odd thm-oddeven-sums
cor-even-diag cor-odd-diag thm-evper thm-pair-parity conj-tij-Ek lem-mod3 derived-E8
""".split()
MATRIX_KEYS = """
lem-even-perm lem-complement-det lem-det-mult4 eq-compdet lem-sum-complement
thm-minors-mod2 cor-minors-mod2 thm-minors-quad thm-per-2J thm-per-mod4 cor-per-4k
""".split()


def test_registry_covers_every_key():
    assert set(LATIN_KEYS + MATRIX_KEYS + ["census-22-63"]) == set(C.REGISTRY)


def test_claim_kinds():
    conj = {k for k, c in C.REGISTRY.items() if c.kind == C.CONJECTURE}
    assert conj == {"conj-even-a", "conj-even-b", "conj-quad-t", "conj-tij-Ek"}
    assert C.REGISTRY["census-22-63"].kind == C.DOC
    assert {k for k, c in C.REGISTRY.items() if c.external} == {"thm-En-3-even", "thm-En-1-even"}


def test_unknown_claim_rejected():
    with pytest.raises(C.UnknownClaimError):
        C.check("thm-nonsense", cyclic_square(3))
    with pytest.raises(C.UnknownClaimError):
        C.resolve_claims("thm-bala,thm-nonsense")


def test_subject_type_mismatch():
    with pytest.raises(TypeError):
        C.check("thm-bala", np.eye(3, dtype=int))
    with pytest.raises(TypeError):
        C.check("thm-per-mod4", cyclic_square(3))
    with pytest.raises(TypeError):
        C.check("cor-types", F.fixture("rowlatin6"))


def test_bala_on_order_four():
    r = C.check("thm-bala", next(exhaustive_reduced(4)))
    assert r.outcome == C.PASS and r.holds
    assert r.witness["E_n"] % 2 == 0 and r.witness["n"] == 4


def test_trans_mult_4_not_applicable_at_order_five():
    r = C.check("thm-trans-mult-4", cyclic_square(5))
    assert r.outcome == C.NOT_APPLICABLE
    assert r.holds is None and r.witness == {}


def test_delta_eq_trans_on_l5():
    r = C.check("thm-delta-eq-trans", F.fixture("L5"))
    assert r.holds
    assert r.witness["t"][0][0] == 1
    assert r.witness["E_n"] % 2 == 1


def test_skipped_cost_beyond_guard():
    r = C.check("eq-e-m", cyclic_square(12))
    assert r.outcome == C.SKIPPED
    assert "exceeds" in r.witness["guard"]


def test_documentation_only():
    r = C.check("census-22-63", cyclic_square(8))
    assert r.outcome == C.DOCUMENTATION


def test_row_latin_claims_accept_row_latin_squares():
    L = F.fixture("rowlatin6")
    assert C.check("thm-bala", L).holds
    assert C.check("thm-same-delta-row", L).holds
    assert C.check("cor-row-latin-even", L).holds


def test_row_latin_even_on_rectangle():
    for L in exhaustive_reduced(6):
        R = delete_row(L, 5)
        r = C.check("cor-row-latin-even", R)
        assert r.holds and r.witness["counts"][0] % 2 == 0
        break
    assert C.check("cor-row-latin-even", delete_row(cyclic_square(5), 0)).outcome == C.NOT_APPLICABLE


@pytest.mark.parametrize("name", ["order9", "order10", "order11", "L5", "rowlatin2", "rowlatin6"])
def test_fixture_reports_recheck_from_witness(name):
    suite_reports = []
    C.run_suite([F.fixture(name)], "all-theorems", sink=suite_reports.append)
    assert suite_reports
    for r in suite_reports:
        assert r.outcome != C.FAIL, r.claim
        assert r.recheck() == r.holds
        json.loads(r.dumps())


def test_tampered_witness_fails_recheck():
    r = C.check("thm-bala", cyclic_square(6))
    r.witness["E_n"] += 1
    assert r.recheck() is False


def test_check_is_deterministic():
    L = random_square(7, 1)
    a = C.check("conj-quad-t", L).to_json()
    b = C.check("conj-quad-t", L).to_json()
    a.pop("elapsed"), b.pop("elapsed")
    assert a == b


@given(latin_squares(min_order=1, max_order=8))
def test_theorems_hold_on_random_squares(L):
    p = C.profile(L)
    for key in C.resolve_claims("all-theorems"):
        if C.REGISTRY[key].subject == "matrix":
            continue
        r = C.check(key, p)
        assert r.outcome != C.FAIL, (key, L)


@given(latin_squares(min_order=1, max_order=8))
def test_hypotheses_gate_outcomes(L):
    n = L.order
    assert (C.check("thm-delta-eq-trans", L).outcome == C.NOT_APPLICABLE) == (n % 2 == 0)
    assert (C.check("cor-types", L).outcome == C.NOT_APPLICABLE) == (n % 4 != 2)


# -- matrices --------------------------------------------------------------


@given(st.sampled_from([(5, 2), (7, 2), (7, 6), (5, 4), (7, 4), (6, 3), (6, 2), (4, 2)]),
       st.integers(0, 2**31 - 1))
def test_matrix_theorems_on_regular_samples(nk, seed):
    M = sample_regular(*nk, seed)
    p = C.profile(M)
    for key in MATRIX_KEYS:
        assert C.check(key, p).outcome != C.FAIL, key


@given(zero_one_matrices(min_n=1, max_n=6))
def test_matrix_theorems_on_random_zero_one(M):
    p = C.profile(np.array(M))
    for key in MATRIX_KEYS:
        assert C.check(key, p).outcome != C.FAIL, key


def test_matrix_hypotheses():
    M = sample_regular(5, 2, 0)
    assert C.check("thm-minors-quad", M).holds
    assert C.check("lem-det-mult4", M).outcome == C.NOT_APPLICABLE
    assert C.check("thm-minors-quad", sample_regular(5, 3, 0)).outcome == C.NOT_APPLICABLE
    r = C.check("thm-minors-mod2", np.ones((3, 3), int))
    assert r.witness["nullity"] == 2 and r.holds


def test_matrix_subject_ids_are_stable():
    M = sample_regular(6, 3, 5)
    assert C.subject_id(M) == C.subject_id(M.copy())
    assert C.subject_id(M).startswith("m6x6-")


# -- suites ----------------------------------------------------------------


def test_suite_over_order_five():
    suite = C.run_suite(exhaustive_reduced(5), "all-theorems")
    assert suite.subjects == 56 and suite.ok and not suite.failures
    assert suite.tallies["thm-delta-eq-trans"][C.PASS] == 56
    assert suite.tallies["thm-bala"][C.NOT_APPLICABLE] == 56
    assert "56 subjects" in suite.table()


def test_suite_thread_count_does_not_change_report():
    squares = [random_square(6, s) for s in range(12)]
    one = C.run_suite(squares, "all-theorems", threads=1).to_json()
    many = C.run_suite(squares, "all-theorems", threads=4).to_json()
    assert one == many


def test_suite_preserves_failing_subjects(monkeypatch):
    fake = C.Claim("conj-fake", C.CONJECTURE, "latin", "always false",
                   C._always, lambda p: {"E_n": p.En}, lambda w: False)
    monkeypatch.setitem(C.REGISTRY, "conj-fake", fake)
    squares = [random_square(5, s) for s in range(4)]
    suite = C.run_suite(squares, ["conj-fake"])
    assert len(suite.counterexamples) == 4 and suite.ok
    f = suite.counterexamples[0]
    assert f["square"].startswith("5\n")
    halted = C.run_suite(squares, ["conj-fake"], halt_on_counterexample=True)
    assert halted.halted and halted.subjects == 1


def test_theorem_failure_makes_suite_not_ok(monkeypatch):
    fake = C.Claim("thm-fake", C.THEOREM, "latin", "always false",
                   C._always, lambda p: {}, lambda w: False)
    monkeypatch.setitem(C.REGISTRY, "thm-fake", fake)
    suite = C.run_suite([cyclic_square(3)], ["thm-fake"])
    assert not suite.ok and len(suite.theorem_failures) == 1


def test_suite_accepts_labelled_items():
    suite = C.run_suite([("z3", cyclic_square(3))], ["thm-bala", "thm-delta-eq-trans"])
    reports = []
    C.run_suite([("z3", cyclic_square(3))], ["thm-delta-eq-trans"], sink=reports.append)
    assert reports[0].subject == "z3"
    assert suite.subjects == 1


def test_mixed_corpus_skips_mismatched_claims():
    suite = C.run_suite([cyclic_square(4), sample_regular(5, 2, 1)], ["thm-bala", "thm-per-2J"])
    assert sum(suite.tallies["thm-bala"].values()) == 1
    assert sum(suite.tallies["thm-per-2J"].values()) == 1


@pytest.mark.slow
def test_conjectures_on_ten_thousand_squares():
    corpus = (random_square(7 + i % 4, 50_000 + i) for i in range(10_000))
    suite = C.run_suite(corpus, "conjectures", halt_on_counterexample=True)
    assert not suite.counterexamples, suite.counterexamples[0]["square"]
    assert suite.subjects == 10_000
