"""Turn intercalates in the order-9 fixture until every residue mod m shows up.

Each hit is replayed from its turn list and recounted from scratch.

Run: python3 demos/residue_walk.py [max_modulus]
"""

import sys

from lparity import fixtures
from lparity.search import replay, residue_search
from lparity.spectrum import count_transversals


def main(max_m: int = 8):
    start = fixtures.fixture("order9")
    print(f"start: {count_transversals(start)} transversals")
    for m in range(2, max_m + 1):
        found = []
        for k in range(m):
            res = residue_search(start, k, m, budget=10**6, seed=m * 100 + k)
            if not res.success:
                found.append(f"{k}:{res.status}")
                continue
            recount = count_transversals(replay(start, res.turns))
            assert recount % m == k
            found.append(f"{k}:{recount}({len(res.turns)} turns)")
        print(f"mod {m}: " + "  ".join(found))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
