#!/usr/bin/env python3
"""Convert the raw UCI files under data/ into the CSV layout the CLI reads.

monks-*.train  : whitespace-separated "class a1 a2 a3 a4 a5 a6 id"; the id
                 column is dropped and a header row is added.
agaricus-lepiota.data : already comma-separated with the class first; a header
                 is added and the veil-type column is removed (it is constant
                 across all rows, and constant columns are rejected by the
                 encoder).
"""

import csv
import os
import sys

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")

MUSHROOM_COLUMNS = [
    "class", "cap-shape", "cap-surface", "cap-color", "bruises", "odor",
    "gill-attachment", "gill-spacing", "gill-size", "gill-color",
    "stalk-shape", "stalk-root", "stalk-surface-above-ring",
    "stalk-surface-below-ring", "stalk-color-above-ring",
    "stalk-color-below-ring", "veil-type", "veil-color", "ring-number",
    "ring-type", "spore-print-color", "population", "habitat",
]


def convert_monk(index):
    src = os.path.join(DATA, f"monks-{index}.train")
    dst = os.path.join(DATA, f"monk{index}.csv")
    with open(src) as f:
        rows = [line.split() for line in f if line.strip()]
    for row in rows:
        if len(row) != 8:
            sys.exit(f"{src}: expected 8 fields per row, got {len(row)}")
    with open(dst, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["class", "a1", "a2", "a3", "a4", "a5", "a6"])
        for row in rows:
            w.writerow(row[:7])
    print(f"{dst}: {len(rows)} rows")


def convert_mushroom():
    src = os.path.join(DATA, "agaricus-lepiota.data")
    dst = os.path.join(DATA, "mushroom.csv")
    with open(src) as f:
        rows = [line.strip().split(",") for line in f if line.strip()]
    for row in rows:
        if len(row) != len(MUSHROOM_COLUMNS):
            sys.exit(f"{src}: expected {len(MUSHROOM_COLUMNS)} fields per row")
    constant = [i for i in range(len(MUSHROOM_COLUMNS))
                if len({row[i] for row in rows}) == 1]
    if constant != [MUSHROOM_COLUMNS.index("veil-type")]:
        sys.exit(f"{src}: unexpected constant columns {constant}")
    keep = [i for i in range(len(MUSHROOM_COLUMNS)) if i not in constant]
    with open(dst, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow([MUSHROOM_COLUMNS[i] for i in keep])
        for row in rows:
            w.writerow([row[i] for i in keep])
    print(f"{dst}: {len(rows)} rows, dropped columns "
          f"{[MUSHROOM_COLUMNS[i] for i in constant]}")


if __name__ == "__main__":
    for i in (1, 2, 3):
        convert_monk(i)
    convert_mushroom()
