"""Executable registry of congruences and identities.

Each :class:`Claim` has a hypothesis, a ``gather`` step that computes a
witness dict, and a ``verdict`` that decides the claim from the witness
alone, so a stored report can be rechecked without recomputing anything.
"""

from __future__ import annotations

import hashlib
import json
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from math import comb, factorial
from typing import Callable, Iterable

import numpy as np

from . import algebra, spectrum
from .core import (
    LatinSquare,
    OrderGuardError,
    RowLatinRectangle,
    RowLatinSquare,
    conjugate,
    delete_row,
    format_square,
)

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
SKIPPED = "skipped-cost"
DOCUMENTATION = "documentation-only"
OUTCOMES = (PASS, FAIL, NOT_APPLICABLE, SKIPPED, DOCUMENTATION)

THEOREM = "theorem"
CONJECTURE = "conjecture"
DOC = "documentation"


class UnknownClaimError(KeyError):
    pass


# --------------------------------------------------------------------------
# cached per-subject quantities


class SquareProfile:
    """Lazily computed invariants of one square, shared across claims."""

    def __init__(self, L: RowLatinRectangle):
        self.L = L
        self.n = L.cols

    @cached_property
    def latin(self) -> bool:
        return isinstance(self.L, LatinSquare)

    @cached_property
    def En(self) -> int:
        return spectrum.count_transversals(self.L)

    @cached_property
    def _diag(self):
        E, Eev, N = spectrum._diagonals(self.L)
        return [int(v) for v in E], [int(v) for v in Eev], [int(v) for v in N]

    @cached_property
    def E(self) -> list[int]:
        """``E[m]`` for m = 0..n, with ``E[0] = 0``."""
        return self._diag[0]

    @cached_property
    def Eev(self) -> list[int]:
        return self._diag[1]

    @cached_property
    def N(self) -> list[int]:
        return self._diag[2]

    @cached_property
    def bins(self) -> list[int]:
        return [int(v) for v in spectrum._type_bins(self.L)]

    @cached_property
    def types(self) -> spectrum.ParityTypeCounts:
        b = self.bins
        return spectrum.ParityTypeCounts(b[0], b[3], b[5], b[6])

    @cached_property
    def signed(self) -> int:
        return sum(self.bins[:4]) - sum(self.bins[4:])

    @cached_property
    def conjugate_signed(self) -> tuple[int, int]:
        return (
            spectrum.signed_count(conjugate(self.L, "312")),
            spectrum.signed_count(conjugate(self.L, "231")),
        )

    @cached_property
    def R(self) -> list[int]:
        """``R[r]`` for r = 0..n, with ``R[0] = 0``."""
        return [0] + spectrum.r_sequence(self.L).as_list()

    @cached_property
    def t(self) -> list[list[int]]:
        return [list(row) for row in spectrum.depleted_t(self.L)]


class MatrixProfile:
    def __init__(self, A):
        self.A = algebra.as_matrix(A)
        self.shape = self.A.shape
        self.n = self.shape[0]

    @cached_property
    def square(self) -> bool:
        return self.shape[0] == self.shape[1]

    @cached_property
    def zero_one(self) -> bool:
        return self.A.dtype != object and bool(np.isin(self.A, (0, 1)).all())

    @cached_property
    def degree(self) -> int | None:
        return algebra.regular_degree(self.A) if self.square else None

    @cached_property
    def row_sums(self) -> list[int]:
        return [int(sum(int(v) for v in row)) for row in self.A.tolist()]

    @cached_property
    def col_sums(self) -> list[int]:
        return [int(sum(int(v) for v in col)) for col in self.A.T.tolist()]

    @cached_property
    def complement(self) -> np.ndarray:
        return 1 - self.A

    @cached_property
    def per(self) -> int:
        return algebra.permanent(self.A)

    @cached_property
    def det(self) -> int:
        return algebra.determinant(self.A)

    @cached_property
    def minors(self) -> list[list[int]]:
        return algebra.permanental_minors(self.A)


def profile(subject):
    if isinstance(subject, (SquareProfile, MatrixProfile)):
        return subject
    if isinstance(subject, RowLatinRectangle):
        return SquareProfile(subject)
    return MatrixProfile(subject)


def subject_kinds(subject) -> frozenset[str]:
    if isinstance(subject, (SquareProfile, MatrixProfile)):
        subject = subject.L if isinstance(subject, SquareProfile) else subject.A
    if isinstance(subject, LatinSquare):
        return frozenset({"latin", "row-latin", "rectangle"})
    if isinstance(subject, RowLatinSquare):
        return frozenset({"row-latin", "rectangle"})
    if isinstance(subject, RowLatinRectangle):
        return frozenset({"rectangle"})
    if isinstance(subject, np.ndarray) or (
        isinstance(subject, (list, tuple)) and subject and isinstance(subject[0], (list, tuple))
    ):
        return frozenset({"matrix"})
    return frozenset()


def subject_id(subject) -> str:
    if isinstance(subject, SquareProfile):
        subject = subject.L
    elif isinstance(subject, MatrixProfile):
        subject = subject.A
    if isinstance(subject, RowLatinRectangle):
        return subject.key()
    a = algebra.as_matrix(subject)
    digest = hashlib.sha1(algebra.format_matrix(a).encode()).hexdigest()[:12]
    return f"m{a.shape[0]}x{a.shape[1]}-{digest}"


def serialize(subject) -> str:
    if isinstance(subject, SquareProfile):
        subject = subject.L
    elif isinstance(subject, MatrixProfile):
        subject = subject.A
    if isinstance(subject, RowLatinRectangle):
        return format_square(subject)
    return algebra.format_matrix(subject)


# --------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Claim:
    key: str
    kind: str
    subject: str
    statement: str
    applies: Callable
    gather: Callable | None
    verdict: Callable[[dict], bool] | None
    max_order: int | None = None
    external: bool = False
    reduced_ok: str = "yes"


REGISTRY: dict[str, Claim] = {}


def _always(p) -> bool:
    return True


def claim(key, kind, subject, statement, *, applies=_always, verdict,
          max_order=None, external=False, reduced_ok="yes"):
    def deco(fn):
        if key in REGISTRY:
            raise ValueError(f"duplicate claim {key}")
        REGISTRY[key] = Claim(key, kind, subject, statement, applies, fn, verdict,
                              max_order, external, reduced_ok)
        return fn
    return deco


def _even(n):
    return n % 2 == 0


def _odd(n):
    return n % 2 == 1


def _same_parity(*vals) -> bool:
    return len({v % 2 for v in vals}) <= 1


# -- Latin squares: transversal counts and parities ------------------------

claim("lem-transversal-parity", THEOREM, "latin",
      "the three parities of every transversal sum to 0 mod 2",
      verdict=lambda w: w["bins"][1] + w["bins"][2] + w["bins"][4] + w["bins"][7] == 0,
      max_order=16)(lambda p: {"bins": p.bins})


@claim("thm-trans-equation", THEOREM, "latin",
       "E_n and E+- are alternating sums of subset permanents and determinants",
       verdict=lambda w: (
           w["E_n"] == sum((-1) ** (w["n"] - r) * w["R"][r] for r in range(w["n"] + 1))
           and w["signed"] == w["signed_via_det"]),
       max_order=10)
def _trans_equation(p):
    return {"E_n": p.En, "R": p.R, "signed": p.signed,
            "signed_via_det": spectrum.signed_count_via_det(p.L)}


claim("thm-bala", THEOREM, "row-latin", "even n: E_n is even",
      applies=lambda p: _even(p.n),
      verdict=lambda w: w["E_n"] % 2 == 0,
      max_order=20)(lambda p: {"E_n": p.En})

claim("thm-det-mult-4", THEOREM, "latin", "n = 2 mod 4: E+- = 0 mod 4",
      applies=lambda p: p.n % 4 == 2,
      verdict=lambda w: w["signed"] % 4 == 0,
      max_order=16,
      reduced_ok="yes: a relabelling changes at most the sign of E+-")(
    lambda p: {"signed": p.signed})

claim("thm-trans-mult-4", THEOREM, "latin", "n = 2 mod 4: E_n = 0 mod 4",
      applies=lambda p: p.n % 4 == 2,
      verdict=lambda w: w["E_n"] % 4 == 0,
      max_order=20)(lambda p: {"E_n": p.En})


def _types_witness(p):
    w, x, y, z = p.types
    s1, s2 = p.conjugate_signed
    return {"w": w, "x": x, "y": y, "z": z, "E_n": p.En,
            "signed": p.signed, "signed_312": s1, "signed_231": s2}


claim("eq-types", THEOREM, "latin",
      "type counts against E_n and the signed counts of three conjugates",
      verdict=lambda w: (
          w["w"] + w["x"] + w["y"] + w["z"] == w["E_n"]
          and w["w"] + w["x"] - w["y"] - w["z"] == w["signed"]
          and w["w"] - w["x"] + w["y"] - w["z"] == w["signed_312"]
          and w["w"] - w["x"] - w["y"] + w["z"] == w["signed_231"]
          and 4 * w["w"] == w["E_n"] + w["signed"] + w["signed_312"] + w["signed_231"]),
      max_order=16,
      reduced_ok="yes: the identities hold for every square, representative or not")(
    _types_witness)

claim("cor-types", THEOREM, "latin", "n = 2 mod 4: w, x, y, z share a parity",
      applies=lambda p: p.n % 4 == 2,
      verdict=lambda w: _same_parity(w["w"], w["x"], w["y"], w["z"]),
      max_order=16)(lambda p: p.types._asdict())

claim("conj-even-a", CONJECTURE, "latin", "even n: E_n = E+- mod 4",
      applies=lambda p: _even(p.n),
      verdict=lambda w: (w["E_n"] - w["signed"]) % 4 == 0,
      max_order=16,
      reduced_ok="no: sampled squares are used as drawn")(
    lambda p: {"E_n": p.En, "signed": p.signed})

claim("conj-even-b", CONJECTURE, "latin", "even n: w, x, y, z share a parity",
      applies=lambda p: _even(p.n),
      verdict=lambda w: _same_parity(w["w"], w["x"], w["y"], w["z"]),
      max_order=16,
      reduced_ok="no: sampled squares are used as drawn")(lambda p: p.types._asdict())


@claim("lem-conj-equiv", THEOREM, "latin",
       "even n: the two conj-even statements are equivalent",
       applies=lambda p: _even(p.n),
       verdict=lambda w: ((w["E_n"] - w["signed"]) % 4 == 0)
       == _same_parity(w["w"], w["x"], w["y"], w["z"]),
       max_order=16)
def _conj_equiv(p):
    return {"E_n": p.En, "signed": p.signed, **p.types._asdict()}


# -- depleted squares ------------------------------------------------------


def _rows_constant_parity(t) -> bool:
    return all(_same_parity(*row) for row in t)


claim("thm-same-delta-row", THEOREM, "row-latin",
      "t_ab = t_ac mod 2 along every row",
      verdict=lambda w: _rows_constant_parity(w["t"]),
      max_order=12)(lambda p: {"t": p.t})

claim("cor-same-delta", THEOREM, "latin", "every t_ij has the same parity",
      verdict=lambda w: _same_parity(*(v for row in w["t"] for v in row)),
      max_order=12)(lambda p: {"t": p.t})


def _row_latin_even_applies(p) -> bool:
    m, n = p.L.shape
    return _even(n) and (m == n or m == n - 1)


@claim("cor-row-latin-even", THEOREM, "rectangle",
       "even n: an (n-1) x n row-Latin rectangle has an even transversal count",
       applies=_row_latin_even_applies,
       verdict=lambda w: all(c % 2 == 0 for c in w["counts"]),
       max_order=14,
       reduced_ok="yes: each row deletion of the square is checked")
def _row_latin_even(p):
    L = p.L
    if L.rows == L.cols:
        return {"counts": [spectrum.count_transversals(delete_row(L, i)) for i in range(L.rows)]}
    return {"counts": [p.En]}


claim("lem-delta-row", THEOREM, "latin", "sum_c t_rc = E_n + N_r",
      verdict=lambda w: all(sum(row) == w["E_n"] + Nr for row, Nr in zip(w["t"], w["N"])),
      max_order=11)(lambda p: {"t": p.t, "E_n": p.En, "N": p.N})

claim("lem-delta-all", THEOREM, "latin", "sum of all t_ij = n E_n + 2 E_{n-1}",
      verdict=lambda w: sum(map(sum, w["t"])) == w["n"] * w["E_n"] + 2 * w["E_n-1"],
      max_order=11)(lambda p: {"t": p.t, "E_n": p.En, "E_n-1": p.E[p.n - 1] if p.n > 1 else 0})

claim("thm-delta-eq-trans", THEOREM, "latin", "odd n: t_rc = E_n mod 2",
      applies=lambda p: _odd(p.n),
      verdict=lambda w: all((v - w["E_n"]) % 2 == 0 for row in w["t"] for v in row),
      max_order=12)(lambda p: {"t": p.t, "E_n": p.En})

claim("cor-nr-even", THEOREM, "latin", "every N_r is even",
      verdict=lambda w: all(v % 2 == 0 for v in w["N"]),
      max_order=11)(lambda p: {"N": p.N})


def _quads_vanish(M, m: int) -> bool:
    M = np.asarray(M, dtype=np.int64) % m
    if M.size == 0:
        return True
    pair = M[:, None, :] + M[None, :, :]  # rows a, b summed: pair[a, b, c]
    quad = pair[:, :, :, None] + pair[:, :, None, :]
    return bool((quad % m == 0).all())


claim("conj-quad-t", CONJECTURE, "latin",
      "t_ac + t_bc + t_ad + t_bd = 0 mod 4 for all a, b, c, d",
      verdict=lambda w: _quads_vanish(w["t"], 4),
      max_order=12,
      reduced_ok="no: sampled squares are used as drawn")(lambda p: {"t": p.t})


# -- subset sums and the diagonal spectrum ---------------------------------


def _R_claim(key, statement, verdict, applies=_always):
    claim(key, THEOREM, "latin", statement, applies=applies, verdict=verdict,
          max_order=spectrum.R_SEQUENCE_MAX)(lambda p: {"R": p.R})


_R_claim("lem-identities-a", "R_1 = n", lambda w: w["R"][1] == w["n"])
_R_claim("lem-identities-b", "R_{n-1} = n d_n",
         lambda w: w["R"][w["n"] - 1] == w["n"] * algebra.derangement(w["n"]))
_R_claim("lem-identities-c", "R_n = n!", lambda w: w["R"][w["n"]] == factorial(w["n"]))
_R_claim("lem-identities-d", "R_{2i} is even",
         lambda w: all(v % 2 == 0 for v in w["R"][2::2]))
_R_claim("lem-identities-e", "even n: R_i + R_{n-i} is even",
         lambda w: all((w["R"][i] + w["R"][w["n"] - i]) % 2 == 0 for i in range(w["n"] + 1)),
         applies=lambda p: _even(p.n))
_R_claim("lem-identities-f", "even n: R_{n/2} is even",
         lambda w: w["R"][w["n"] // 2] % 2 == 0,
         applies=lambda p: _even(p.n))
_R_claim("cor-R4k", "odd n: R_{4k} = 0 mod 4",
         lambda w: all(v % 4 == 0 for v in w["R"][4::4]),
         applies=lambda p: _odd(p.n))
_R_claim("cor-Rk-2Rnk", "odd n, k = 2 mod 4: R_k + 2 R_{n-k} = 0 mod 4",
         lambda w: all((w["R"][k] + 2 * w["R"][w["n"] - k]) % 4 == 0
                       for k in range(2, w["n"] + 1, 4)),
         applies=lambda p: _odd(p.n))


def _spectrum_from_R(n, R):
    return [0] + [
        sum((-1) ** (m - r) * comb(n - r, n - m) * R[r] for r in range(1, m + 1))
        for m in range(1, n + 1)
    ]


claim("eq-e-m", THEOREM, "latin",
      "inclusion-exclusion from R_r reproduces the enumerated spectrum",
      verdict=lambda w: _spectrum_from_R(w["n"], w["R"]) == w["E"],
      max_order=spectrum.SPECTRUM_MAX)(lambda p: {"R": p.R, "E": p.E})

claim("lem-r2-cycles", THEOREM, "latin",
      "R_2 equals the sum of 2^cycles over unordered symbol pairs",
      applies=lambda p: p.n >= 2,
      verdict=lambda w: w["R_2"] == w["cycle_sum"],
      max_order=spectrum.R_SEQUENCE_MAX)(
    lambda p: {"R_2": p.R[2], "cycle_sum": spectrum.r2_cycle_formula(p.L)})


def _E_claim(key, statement, verdict, applies=_always, kind=THEOREM, external=False):
    claim(key, kind, "latin", statement, applies=applies, verdict=verdict,
          max_order=spectrum.SPECTRUM_MAX, external=external)(lambda p: {"E": p.E})


def _E(w, m) -> int:
    return w["E"][m] if 1 <= m <= w["n"] else 0


_E_claim("thm-En-3-even", "n = 2 mod 4: E_{n-3} is even",
         lambda w: _E(w, w["n"] - 3) % 2 == 0,
         applies=lambda p: p.n % 4 == 2, external=True)
_E_claim("thm-En-1-even", "E_{n-1} is even",
         lambda w: _E(w, w["n"] - 1) % 2 == 0, external=True)
_E_claim("thm-Ei-odd-n", "odd n: E_i is even for even i",
         lambda w: all(v % 2 == 0 for v in w["E"][2::2]),
         applies=lambda p: _odd(p.n))
_E_claim("thm-En1-mod4-odd", "odd n: E_{n-1} = 0 mod 4",
         lambda w: _E(w, w["n"] - 1) % 4 == 0,
         applies=lambda p: _odd(p.n))
_E_claim("thm-oddeven-sums", "even n > 2: odd-weight and even-weight totals are n mod 4",
         lambda w: sum(w["E"][1::2]) % 4 == w["n"] % 4 == sum(w["E"][2::2]) % 4,
         applies=lambda p: _even(p.n) and p.n > 2)
_E_claim("cor-even-diag", "the number of diagonals of even weight is even",
         lambda w: sum(w["E"][2::2]) % 2 == 0)
_E_claim("cor-odd-diag", "n > 1: the number of diagonals of odd weight is even",
         lambda w: sum(w["E"][1::2]) % 2 == 0,
         applies=lambda p: p.n > 1)
_E_claim("thm-pair-parity", "even n: E_{2i-1} = E_{2i} mod 2",
         lambda w: all((_E(w, 2 * i - 1) - _E(w, 2 * i)) % 2 == 0
                       for i in range(1, w["n"] // 2 + 1)),
         applies=lambda p: _even(p.n))
_E_claim("derived-E8", "n = 3 mod 4: E_8 = 0 mod 4",
         lambda w: _E(w, 8) % 4 == 0,
         applies=lambda p: p.n % 4 == 3)


@claim("thm-evper", THEOREM, "latin",
       "even n > 2: even-diagonal counts split into two even totals",
       applies=lambda p: _even(p.n) and p.n > 2,
       verdict=lambda w: sum(w["E_ev"][3::2]) % 2 == 0
       and (w["E_ev"][1] + sum(w["E_ev"][2::2])) % 2 == 0,
       max_order=spectrum.SPECTRUM_MAX)
def _evper(p):
    return {"E_ev": p.Eev}


@claim("lem-mod3", THEOREM, "latin",
       "R_2, E_2 even and each avoids one residue mod 3",
       applies=lambda p: p.n >= 2,
       verdict=lambda w: (
           w["R_2"] % 2 == 0 and w["E_2"] % 2 == 0
           and w["E_2"] == w["R_2"] - w["n"] * (w["n"] - 1)
           and w["R_2"] % 3 != ((-1) ** w["n"] * (w["n"] + 1)) % 3
           and w["E_2"] % 3 != ((-1) ** w["n"] * (w["n"] + 1) - w["n"] * (w["n"] - 1)) % 3),
       max_order=spectrum.SPECTRUM_MAX)
def _mod3(p):
    return {"R_2": p.R[2], "E_2": p.E[2]}


def _tij_verdict(w) -> bool:
    n, E, R = w["n"], w["E"], w["R"]
    twice_t = {(2 * v) % 4 for row in w["t"] for v in row}
    Nr = {v % 4 for v in w["N"]}
    En1 = E[n - 1] % 4
    if n % 4 == 2:
        return twice_t | Nr <= {En1}
    chain = {E[n] % 4, En1, (2 * E[n - 2]) % 4} | twice_t | Nr
    sums = sum(R[1::2]) % 4 == 0 and (sum(R[2::2]) - E[n]) % 4 == 0
    implication = all((v + E[n]) % 4 == 0 for v in w["N"])
    return len(chain) == 1 and sums and implication


@claim("conj-tij-Ek", CONJECTURE, "latin",
       "even n: residue chains linking E_n, E_{n-1}, E_{n-2}, t_ij and N_r mod 4",
       applies=lambda p: _even(p.n) and p.n >= 2,
       verdict=_tij_verdict,
       max_order=spectrum.SPECTRUM_MAX,
       reduced_ok="no: sampled squares are used as drawn")
def _tij(p):
    w = {"E": p.E, "t": p.t, "N": p.N}
    w["R"] = p.R if p.n % 4 == 0 else []
    return w


claim("census-22-63", DOC, "latin",
      "order 8 squares realise 22 mod 63 transversals (census over all order-8 squares)",
      verdict=None)(None)


# -- integer matrices ------------------------------------------------------


def _lam(p, n_pred, k_pred) -> bool:
    return p.degree is not None and n_pred(p.n) and k_pred(p.degree)


claim("lem-even-perm", THEOREM, "matrix", "all row sums even: det and per are even",
      applies=lambda p: p.square and p.n >= 1 and all(s % 2 == 0 for s in p.row_sums),
      verdict=lambda w: w["det"] % 2 == 0 and w["per"] % 2 == 0,
      max_order=24)(lambda p: {"det": p.det, "per": p.per})


def _row_complement(p) -> np.ndarray:
    a = p.A
    odd = (a.sum(axis=1) % 2 == 1)[:, None]
    return np.where(odd, 1 - a, a)


claim("lem-complement-det", THEOREM, "matrix",
      "0-1, even order: det A + det A* is even",
      applies=lambda p: p.square and p.zero_one and _even(p.n),
      verdict=lambda w: (w["det"] + w["det_star"]) % 2 == 0,
      max_order=64)(lambda p: {"det": p.det, "det_star": algebra.determinant(_row_complement(p))})

claim("lem-det-mult4", THEOREM, "matrix", "A in Lambda_n^k, n and k even: det = 0 mod 4",
      applies=lambda p: _lam(p, _even, _even),
      verdict=lambda w: w["det"] % 4 == 0,
      max_order=64)(lambda p: {"det": p.det, "k": p.degree})

claim("eq-compdet", THEOREM, "matrix",
      "A in Lambda_n^k: k det(J-A) = (-1)^(n-1) (n-k) det A",
      applies=lambda p: _lam(p, lambda n: n >= 1, _always),
      verdict=lambda w: w["k"] * w["det_comp"] == (-1) ** (w["n"] - 1) * (w["n"] - w["k"]) * w["det"],
      max_order=64)(
    lambda p: {"k": p.degree, "det": p.det, "det_comp": algebra.determinant(p.complement)})

claim("lem-sum-complement", THEOREM, "matrix",
      "n = 2 mod 4, k odd, A in Lambda_n^k: det A + det(J-A) = 0 mod 4",
      applies=lambda p: _lam(p, lambda n: n % 4 == 2, _odd),
      verdict=lambda w: (w["det"] + w["det_comp"]) % 4 == 0,
      max_order=64)(
    lambda p: {"k": p.degree, "det": p.det, "det_comp": algebra.determinant(p.complement)})


@claim("thm-minors-mod2", THEOREM, "matrix",
       "n > 1: all minors even iff nullity >= 2; all odd iff nullity 1 and even totals",
       applies=lambda p: p.square and p.n > 1,
       verdict=lambda w: (
           (all(v == 0 for row in w["minors_mod2"] for v in row)) == (w["nullity"] >= 2)
           and (all(v == 1 for row in w["minors_mod2"] for v in row))
           == (w["nullity"] == 1 and w["totals_even"])),
       max_order=12)
def _minors_mod2(p):
    return {
        "minors_mod2": [[v % 2 for v in row] for row in p.minors],
        "nullity": algebra.gf2_nullity(p.A),
        "totals_even": all(s % 2 == 0 for s in p.row_sums + p.col_sums),
    }


claim("cor-minors-mod2", THEOREM, "matrix",
      "all row and column sums even: every minor has the same parity",
      applies=lambda p: p.square and p.n >= 1
      and all(s % 2 == 0 for s in p.row_sums + p.col_sums),
      verdict=lambda w: _same_parity(*(v for row in w["minors_mod2"] for v in row)),
      max_order=12)(lambda p: {"minors_mod2": [[v % 2 for v in row] for row in p.minors]})

claim("thm-minors-quad", THEOREM, "matrix",
      "n odd, k = 2 mod 4, A in Lambda_n^k: quadruples of minors sum to 0 mod 4",
      applies=lambda p: _lam(p, _odd, lambda k: k % 4 == 2),
      verdict=lambda w: _quads_vanish(w["minors_mod4"], 4),
      max_order=12)(lambda p: {"k": p.degree, "minors_mod4": [[v % 4 for v in row] for row in p.minors]})

claim("thm-per-2J", THEOREM, "matrix",
      "n odd, k = 2 mod 4, A in Lambda_n^k: per A + 2 per(J-A) = 0 mod 4",
      applies=lambda p: _lam(p, _odd, lambda k: k % 4 == 2),
      verdict=lambda w: (w["per"] + 2 * w["per_comp"]) % 4 == 0,
      max_order=24)(
    lambda p: {"k": p.degree, "per": p.per, "per_comp": algebra.permanent(p.complement)})

claim("thm-per-mod4", THEOREM, "matrix",
      "n odd, row sums = 0 mod 4, column sums even: per = 0 mod 4",
      applies=lambda p: p.square and _odd(p.n)
      and all(s % 4 == 0 for s in p.row_sums) and all(s % 2 == 0 for s in p.col_sums),
      verdict=lambda w: w["per"] % 4 == 0,
      max_order=24)(lambda p: {"per": p.per})

claim("cor-per-4k", THEOREM, "matrix", "n odd, A in Lambda_n^{4k}: per = 0 mod 4",
      applies=lambda p: _lam(p, _odd, lambda k: k % 4 == 0),
      verdict=lambda w: w["per"] % 4 == 0,
      max_order=24)(lambda p: {"k": p.degree, "per": p.per})


# --------------------------------------------------------------------------
# checking


@dataclass
class ClaimReport:
    claim: str
    kind: str
    subject: str
    outcome: str
    witness: dict = field(default_factory=dict)
    elapsed: float = 0.0
    external: bool = False

    @property
    def holds(self) -> bool | None:
        if self.outcome in (PASS, FAIL):
            return self.outcome == PASS
        return None

    def recheck(self) -> bool | None:
        """Re-derive ``holds`` from the stored witness alone."""
        if self.holds is None:
            return None
        return bool(REGISTRY[self.claim].verdict(self.witness))

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "kind": self.kind,
            "external": self.external,
            "subject": self.subject,
            "outcome": self.outcome,
            "holds": self.holds,
            "witness": self.witness,
            "elapsed": round(self.elapsed, 6),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, default=_jsonable)


def _jsonable(v):
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    raise TypeError(type(v).__name__)


def get_claim(key: str) -> Claim:
    try:
        return REGISTRY[key]
    except KeyError:
        raise UnknownClaimError(key) from None


def check(key: str, subject, *, ident: str | None = None) -> ClaimReport:
    """Evaluate one claim on one subject (square, rectangle or matrix)."""
    c = get_claim(key)
    p = profile(subject)
    if c.subject not in subject_kinds(p):
        raise TypeError(f"claim {key} needs a {c.subject} subject, got {type(subject).__name__}")
    ident = ident or subject_id(p)
    report = ClaimReport(key, c.kind, ident, NOT_APPLICABLE, {}, 0.0, c.external)
    if c.kind == DOC:
        report.outcome = DOCUMENTATION
        return report
    start = time.perf_counter()
    try:
        if not c.applies(p):
            return report
        if c.max_order is not None and p.n > c.max_order:
            report.outcome = SKIPPED
            report.witness = {"n": p.n, "guard": f"order {p.n} exceeds {c.max_order}"}
            return report
        witness = {"n": p.n, **c.gather(p)}
    except OrderGuardError as exc:
        report.outcome = SKIPPED
        report.witness = {"n": p.n, "guard": str(exc)}
        return report
    finally:
        report.elapsed = time.perf_counter() - start
    report.witness = witness
    report.outcome = PASS if c.verdict(witness) else FAIL
    return report


# --------------------------------------------------------------------------
# claim sets and suites

CLAIM_SETS = {
    "all-theorems": lambda: [k for k, c in REGISTRY.items() if c.kind == THEOREM],
    "conjectures": lambda: [k for k, c in REGISTRY.items() if c.kind == CONJECTURE],
}


def resolve_claims(spec) -> list[str]:
    """Accept a set name, a comma-separated string or an iterable of keys."""
    if isinstance(spec, str):
        if spec in CLAIM_SETS:
            return CLAIM_SETS[spec]()
        spec = [s.strip() for s in spec.split(",") if s.strip()]
    keys = list(dict.fromkeys(spec))
    unknown = [k for k in keys if k not in REGISTRY]
    if unknown:
        raise UnknownClaimError(", ".join(unknown))
    return keys


@dataclass
class SuiteReport:
    tallies: dict[str, Counter]
    kinds: dict[str, str]
    failures: list[dict]
    subjects: int = 0
    halted: bool = False

    @property
    def theorem_failures(self) -> list[dict]:
        return [f for f in self.failures if f["kind"] == THEOREM]

    @property
    def counterexamples(self) -> list[dict]:
        return [f for f in self.failures if f["kind"] == CONJECTURE]

    @property
    def ok(self) -> bool:
        return not self.theorem_failures

    def table(self) -> str:
        head = f"{'claim':<24}{'kind':<12}" + "".join(f"{o:>20}" for o in OUTCOMES[:4])
        lines = [head, "-" * len(head)]
        for key in sorted(self.tallies):
            t = self.tallies[key]
            lines.append(f"{key:<24}{self.kinds[key]:<12}"
                         + "".join(f"{t.get(o, 0):>20}" for o in OUTCOMES[:4]))
        lines.append(f"{self.subjects} subjects, {len(self.theorem_failures)} theorem failures, "
                     f"{len(self.counterexamples)} conjecture counterexamples")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "subjects": self.subjects,
            "halted": self.halted,
            "tallies": {k: dict(v) for k, v in sorted(self.tallies.items())},
            "failures": self.failures,
        }


def _evaluate(subject, keys, ident):
    p = profile(subject)
    kinds = subject_kinds(p)
    return [check(k, p, ident=ident) for k in keys if REGISTRY[k].subject in kinds]


def run_suite(corpus: Iterable, claims="all-theorems", *, threads: int = 1,
              sink: Callable[[ClaimReport], None] | None = None,
              halt_on_counterexample: bool = False) -> SuiteReport:
    """Check every claim against every subject of ``corpus``.

    Items may be subjects or ``(label, subject)`` pairs.  Claims whose
    subject type does not match an item are skipped for that item.
    """
    keys = resolve_claims(claims)
    suite = SuiteReport({k: Counter() for k in keys}, {k: REGISTRY[k].kind for k in keys}, [])

    def split(item):
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], str):
            return item[1], item[0]
        return item, None

    def job(item):
        subject, label = split(item)
        return subject, _evaluate(subject, keys, label)

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    results = pool.map(job, corpus) if pool else map(job, corpus)
    try:
        for subject, reports in results:
            suite.subjects += 1
            stop = False
            for r in reports:
                suite.tallies[r.claim][r.outcome] += 1
                if sink is not None:
                    sink(r)
                if r.outcome == FAIL:
                    suite.failures.append({
                        "claim": r.claim, "kind": r.kind, "subject": r.subject,
                        "witness": r.witness, "square": serialize(subject),
                    })
                    stop = stop or (halt_on_counterexample and r.kind == CONJECTURE)
            if stop:
                suite.halted = True
                break
    finally:
        if pool:
            pool.shutdown(wait=True, cancel_futures=True)
    suite.failures.sort(key=lambda f: (f["claim"], f["subject"]))
    return suite
