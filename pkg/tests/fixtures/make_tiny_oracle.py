"""Regenerate tiny_oracle.json: SNIV class-1 interval for the bundled tiny
dataset from closed-form quadratic roots, one quadratic per instrument.

    python tests/fixtures/make_tiny_oracle.py
"""

import json
import sys
from pathlib import Path

import numpy as np

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

from conftest import intersect_intervals, quadratic_solution_set  # noqa: E402

from sniv.stats import ClassSpec, radius, read_csv  # noqa: E402

ALPHA = 0.05
BALL = 1000.0


def oracle():
    data = Path(__file__).resolve().parents[2] / "src" / "sniv" / "data" / "tiny.csv"
    s = read_csv(data)
    r = radius(ClassSpec(1, alpha=ALPHA), s.d_z, s.n)
    x, y = s.X[:, 0], s.y
    B = np.sqrt(BALL)
    pieces = [(-B, B)]
    for l in range(s.d_z):
        z = s.Z[:, l]
        # r^2 E[z^2 (y - x b)^2] - E[z (y - x b)]^2 >= 0 as a b^2 + b1 b + c >= 0
        a = r**2 * np.mean(z**2 * x**2) - np.mean(z * x) ** 2
        b1 = -2 * r**2 * np.mean(z**2 * x * y) + 2 * np.mean(z * x) * np.mean(z * y)
        c = r**2 * np.mean(z**2 * y**2) - np.mean(z * y) ** 2
        pieces = intersect_intervals(pieces, quadratic_solution_set(a, b1, c, -B, B))
    return {
        "alpha": ALPHA,
        "class": 1,
        "ball": BALL,
        "radius": r,
        "pieces": [list(p) for p in pieces],
        "lower": pieces[0][0],
        "upper": pieces[-1][1],
    }


if __name__ == "__main__":
    (HERE / "tiny_oracle.json").write_text(json.dumps(oracle(), indent=2) + "\n")
