#!/usr/bin/env python3
"""Dump the canonical 150-row Fisher iris table to data/iris.csv.

Uses the copy bundled with scikit-learn (public domain, identical to the
UCI distribution). Columns: sepal_length,sepal_width,petal_length,
petal_width,species.
"""
import sys

from sklearn.datasets import load_iris


def main() -> None:
    out = sys.argv[1] if len(sys.argv) > 1 else "data/iris.csv"
    iris = load_iris()
    names = iris.target_names
    with open(out, "w") as f:
        f.write("sepal_length,sepal_width,petal_length,petal_width,species\n")
        for row, t in zip(iris.data, iris.target):
            f.write(",".join(f"{v:.1f}" for v in row) + f",{names[t]}\n")


if __name__ == "__main__":
    main()
