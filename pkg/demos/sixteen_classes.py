"""Sample even-order squares until all 16 mod-2 classes of
(w, E_{n-1}/2, row parity, column parity) have a witness.

Run: python3 demos/sixteen_classes.py
"""

from lparity.search import sixteen_class_search


def main():
    for order, table in sixteen_class_search(orders=(8, 10), seed=2026, budget=100_000).items():
        state = "complete" if table.complete else f"missing {table.missing()}"
        print(f"order {order}: {len(table.witnesses)}/16 classes after {table.sampled} squares, {state}")
        for cls in sorted(table.witnesses):
            print("   ", cls)


if __name__ == "__main__":
    main()
