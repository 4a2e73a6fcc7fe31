"""Walk through the bundled fixture squares and print their headline numbers.

Run: python3 demos/fixture_tour.py
"""

from lparity import fixtures, spectrum
from lparity.core import LatinSquare


def main():
    for name in fixtures.NAMES:
        L = fixtures.fixture(name)
        count = spectrum.count_transversals(L)
        line = f"{name:10s} {type(L).__name__:15s} order {L.order:2d}  transversals {count:5d}"
        if isinstance(L, LatinSquare):
            w, x, y, z = spectrum.parity_type_counts(L)
            line += f"  signed {spectrum.signed_count(L):4d}  types w={w} x={x} y={y} z={z}"
        print(line)

    # the order-5 fixture has a single transversal avoiding its shaded cell
    d = spectrum.depleted_counts(fixtures.fixture("L5"))
    print("\nL5 depleted counts t_ij:")
    for row in d.t:
        print("   ", " ".join(f"{v:2d}" for v in row))
    print("near-transversal row counts N_r:", d.N)


if __name__ == "__main__":
    main()
