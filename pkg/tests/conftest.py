import logging

import numpy as np
import pytest

from sniv.stats import Sample


@pytest.fixture(autouse=True)
def _quiet_radius_warnings():
    # the class side-condition warnings are expected in every test
    logging.getLogger("sniv.stats").setLevel(logging.ERROR)
    yield


def simulate_iv(seed, n=200, d_x=1, d_z=2, strength=0.7, endog=0.5):
    """Small homoskedastic IV sample with beta = (1, -1, 0, ...)."""
    g = np.random.default_rng(seed)
    Z = g.standard_normal((n, d_z))
    u = g.standard_normal(n)
    Pi = np.zeros((d_z, d_x))
    for k in range(d_x):
        Pi[k % d_z, k] = strength
        Pi[(k + 1) % d_z, k] += 0.3 * strength
    X = Z @ Pi + endog * u[:, None] + g.standard_normal((n, d_x))
    beta = np.zeros(d_x)
    beta[0] = 1.0
    if d_x > 1:
        beta[1] = -1.0
    y = X @ beta + u
    return Sample(y, X, Z), beta


def quadratic_solution_set(a, b, c, lo, hi):
    """Closed intervals of {t in [lo, hi] : a t^2 + b t + c >= 0} via the quadratic formula."""
    def inside(t):
        return a * t * t + b * t + c >= 0

    if abs(a) < 1e-300:
        if abs(b) < 1e-300:
            return [(lo, hi)] if c >= 0 else []
        root = -c / b
        return [(max(lo, root), hi)] if b > 0 else [(lo, min(hi, root))]
    disc = b * b - 4 * a * c
    if disc < 0:
        return [(lo, hi)] if a > 0 else []
    s = np.sqrt(disc)
    r1, r2 = sorted(((-b - s) / (2 * a), (-b + s) / (2 * a)))
    if a < 0:
        left, right = max(lo, r1), min(hi, r2)
        return [(left, right)] if left <= right else []
    out = []
    if lo <= r1:
        out.append((lo, min(r1, hi)))
    if r2 <= hi:
        out.append((max(r2, lo), hi))
    return [iv for iv in out if iv[0] <= iv[1] and inside(0.5 * (iv[0] + iv[1]))]


def intersect_intervals(a, b):
    out = []
    for l1, u1 in a:
        for l2, u2 in b:
            lo, hi = max(l1, l2), min(u1, u2)
            if lo <= hi:
                out.append((lo, hi))
    return sorted(out)


def random_semialgebraic(seed, d=None):
    """Bounded, nonempty and usually nonconvex degree-2 instance in d <= 4 variables.

    Returns (set, objective, witness) where witness is a known feasible point.
    """
    from sniv.hierarchy import Layout, SemialgebraicSet, linear_objective
    from sniv.poly import Polynomial

    g = np.random.default_rng(seed)
    d = d or int(g.integers(1, 5))
    witness = g.uniform(-0.5, 0.5, d)
    ineqs = []
    # an ellipsoid containing the witness keeps the set bounded
    A = g.standard_normal((d, d))
    Q = A @ A.T / d + 0.5 * np.eye(d)
    c = witness + g.uniform(-0.3, 0.3, d)
    rho = (witness - c) @ Q @ (witness - c) + g.uniform(0.3, 1.5)
    ineqs.append(Polynomial.quadratic(-Q, 2 * Q @ c, rho - c @ Q @ c))
    # a hole or a slab makes it nonconvex; the witness stays outside the hole
    for _ in range(int(g.integers(0, 3))):
        h = witness + g.uniform(-1.0, 1.0, d)
        gap = np.sum((witness - h) ** 2)
        r2 = g.uniform(0.1, 0.9) * gap
        ineqs.append(Polynomial.quadratic(np.eye(d), -2 * h, h @ h - r2))
    sset = SemialgebraicSet(Layout.simple(d), tuple(ineqs), (), 1000.0)
    u = g.standard_normal(d)
    return sset, linear_objective(d, u / np.linalg.norm(u)), witness
