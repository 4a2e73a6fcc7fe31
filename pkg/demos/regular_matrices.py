"""Permanents and minors of random k-regular 0-1 matrices.

Shows the residues mod 4 that the matrix theorems predict, for a handful of
samples per family.

Run: python3 demos/regular_matrices.py
"""

from collections import Counter

from lparity import algebra, claims


def main(samples: int = 200):
    for n, k in [(5, 2), (7, 2), (7, 6), (5, 4), (7, 4), (6, 3)]:
        residues = Counter()
        outcomes = Counter()
        for s in range(samples):
            M = algebra.sample_regular(n, k, seed=s)
            residues[algebra.permanent(M) % 4] += 1
            p = claims.profile(M)
            for key in ("thm-per-2J", "thm-per-mod4", "thm-minors-quad"):
                outcomes[claims.check(key, p).outcome] += 1
        print(f"n={n} k={k}: per mod 4 {dict(sorted(residues.items()))}  claims {dict(outcomes)}")


if __name__ == "__main__":
    main()
