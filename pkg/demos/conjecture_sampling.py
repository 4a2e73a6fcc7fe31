"""Sample random squares and test the open conjectures on each.

A counterexample, if one ever appears, is written to counterexample.lsq.

Run: python3 demos/conjecture_sampling.py [count] [seed]
"""

import sys

from lparity import claims
from lparity.search import random_square


def main(count: int = 300, seed: int = 0):
    corpus = ((f"n{4 + i % 6}-s{seed + i}", random_square(4 + i % 6, seed + i)) for i in range(count))
    suite = claims.run_suite(corpus, "conjectures", halt_on_counterexample=True)
    print(suite.table())
    if suite.counterexamples:
        ce = suite.counterexamples[0]
        with open("counterexample.lsq", "w") as fh:
            fh.write(ce["square"])
        print(f"counterexample to {ce['claim']} saved to counterexample.lsq")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
