import numpy as np
import pytest
from conftest import intersect_intervals, quadratic_solution_set, simulate_iv

from sniv.encode import (
    ARUndefined,
    SnivConfig,
    ar_critical_value,
    ar_forms,
    dump_system,
    encode_ar,
    encode_custom,
    encode_sniv,
    load_system,
)
from sniv.poly import Polynomial
from sniv.stats import ClassSpec, Sample, chisq_quantile, cross_moments, radius


def sniv_condition(sample, beta, theta, r, questioned=None, s=None, cls=1):
    """Self-normalised condition evaluated directly from the raw data."""
    U = sample.y - sample.X @ beta
    if s is not None:
        support = np.count_nonzero(np.asarray(beta)[questioned])
        if support > s:
            return False
    ok = True
    for l in range(sample.d_z):
        zu = sample.Z[:, l] * U
        m = zu.mean() - theta[l]
        if cls == 4:
            scale = np.sqrt(np.mean(sample.Z[:, l] ** 2) * np.mean(U**2))
        else:
            scale = np.sqrt(np.mean((zu - theta[l]) ** 2))
        ok &= abs(m) <= r * scale + 1e-12
    return bool(ok)


def test_exact_fit_point_is_inside():
    g = np.random.default_rng(0)
    Z = g.standard_normal((40, 2))
    X = Z @ [[1.0], [0.5]] + g.standard_normal((40, 1))
    s = Sample(X @ [2.0], X, Z)
    sset = encode_sniv(cross_moments(s), 0.01, SnivConfig())
    assert sset.contains([2.0])
    assert all(v == pytest.approx(0.0, abs=1e-12) for v in sset.violations([2.0], include_ball=False))


@pytest.mark.parametrize("seed", range(5))
def test_single_regressor_matches_quadratic_formula(seed):
    s, _ = simulate_iv(seed, n=150, d_x=1, d_z=1)
    r = radius(ClassSpec(1), 1, s.n)
    x, y, z = s.X[:, 0], s.y, s.Z[:, 0]
    # r^2 E[z^2 (y - x b)^2] - E[z (y - x b)]^2 = a b^2 + b1 b + c
    a = r**2 * np.mean(z**2 * x**2) - np.mean(z * x) ** 2
    b1 = -2 * r**2 * np.mean(z**2 * x * y) + 2 * np.mean(z * x) * np.mean(z * y)
    c = r**2 * np.mean(z**2 * y**2) - np.mean(z * y) ** 2
    B = np.sqrt(1000.0)
    pieces = quadratic_solution_set(a, b1, c, -B, B)
    sset = encode_sniv(cross_moments(s), r, SnivConfig())
    grid = np.linspace(-B, B, 20001)
    inside = sset.contains_many(grid[:, None])
    oracle = np.zeros_like(inside)
    for lo, hi in pieces:
        oracle |= (grid >= lo) & (grid <= hi)
    # disagreements only within rounding distance of a root
    bad = grid[inside != oracle]
    roots = [v for iv in pieces for v in iv]
    assert all(min(abs(b - r0) for r0 in roots) < 1e-6 for b in bad)


def test_instrument_rescaling_invariance():
    s, _ = simulate_iv(1, n=120, d_x=2, d_z=3)
    Z2 = s.Z.copy()
    Z2[:, 1] *= 7.5
    t = Sample(s.y, s.X, Z2)
    r = radius(ClassSpec(2), 3, s.n)
    a = encode_sniv(cross_moments(s), r, SnivConfig())
    b = encode_sniv(cross_moments(t), r, SnivConfig())
    pts = np.random.default_rng(2).uniform(-3, 4, (3000, 2))
    np.testing.assert_array_equal(a.contains_many(pts, tol=0), b.contains_many(pts, tol=0))


@pytest.mark.parametrize("cls", [1, 3, 4])
def test_membership_roundtrip_with_sparsity_and_theta(cls):
    s, beta = simulate_iv(3, n=100, d_x=3, d_z=4)
    g = np.random.default_rng(4)
    r = 0.25
    exo = None if cls == 4 else (0, 1)
    cfg = SnivConfig(class_spec=ClassSpec(cls, draws=1000), questioned=(0, 2), s=1, exogenous=exo)
    sset = encode_sniv(cross_moments(s), r, cfg)
    ntheta = 0 if exo is None else 2
    agree = 0
    for _ in range(10000):
        b = beta + g.normal(0, 0.6, 3)
        # zero out coordinates at random so the certificate matters
        b[g.random(3) < 0.4] = 0.0
        th = np.zeros(4)
        if ntheta:
            th[2:] = g.normal(0, 0.2, 2) * (g.random(2) < 0.7)
        direct = sniv_condition(s, b, th, r, questioned=[0, 2], s=1, cls=cls)
        encoded = sset.contains(np.concatenate([b, th[2:]]) if ntheta else b, tol=1e-12)
        agree += direct == encoded
    assert agree == 10000


def test_monotone_in_s_and_radius():
    s, beta = simulate_iv(5, n=100, d_x=3, d_z=3)
    t = cross_moments(s)
    pts = np.random.default_rng(6).normal(0, 1.5, (4000, 3))
    pts[np.random.default_rng(7).random((4000, 3)) < 0.4] = 0.0
    prev = None
    for s_cert in range(0, 4):
        m = encode_sniv(t, 0.2, SnivConfig(s=s_cert)).contains_many(pts)
        if prev is not None:
            assert np.all(m >= prev)
        prev = m
    full = encode_sniv(t, 0.2, SnivConfig()).contains_many(pts)
    np.testing.assert_array_equal(prev, full)
    small = encode_sniv(t, 0.1, SnivConfig()).contains_many(pts)
    assert np.all(full >= small)


def test_config_validation():
    t = cross_moments(simulate_iv(0, d_x=2, d_z=3)[0])
    with pytest.raises(ValueError):
        encode_sniv(t, 0.1, SnivConfig(s=3))
    with pytest.raises(ValueError):
        encode_sniv(t, 0.1, SnivConfig(exogenous=(0,), s_tilde=3))
    with pytest.raises(ValueError):
        encode_sniv(t, 0.1, SnivConfig(class_spec=ClassSpec(4), exogenous=(0,)))
    with pytest.raises(ValueError):
        encode_sniv(t, 0.0, SnivConfig())


def test_sparsity_structure():
    t = cross_moments(simulate_iv(0, d_x=3, d_z=3)[0])
    sset = encode_sniv(t, 0.1, SnivConfig(s=1, questioned=(0, 1)))
    # d_Z moment inequalities, 2 bounds per indicator, one counting inequality
    assert len(sset.inequalities) == 3 + 4 + 1
    assert len(sset.equalities) == 4
    # a point with two questioned nonzeros violates the certificate
    assert not sset.contains([1.0, 1.0, 0.0])


def test_theta_sign_restriction():
    t = cross_moments(simulate_iv(0, d_x=1, d_z=3)[0])
    sset = encode_sniv(t, 10.0, SnivConfig(exogenous=(0, 1), theta_signs={2: 1}))
    assert not sset.contains([1.0, -0.5])
    assert sset.contains([1.0, 0.5])


@pytest.mark.parametrize("seed", range(4))
def test_ar_single_regressor_matches_quadratic_formula(seed):
    s, _ = simulate_iv(seed, n=120, d_x=1, d_z=1)
    x, y, z = s.X[:, 0], s.y, s.Z[:, 0]
    n = s.n
    C = chisq_quantile(0.95, 1)

    def stat_coeffs(v, w):
        # bilinear helper for u = y - x b
        return v @ w

    P = np.outer(z, z) / (z @ z)
    M = np.eye(n) - P
    # p(b) = u'Pu, q(b) = u'Mu/(n-1); C q - p = a b^2 + b1 b + c
    a = C * stat_coeffs(x, M @ x) / (n - 1) - x @ P @ x
    b1 = -2 * (C * (x @ M @ y) / (n - 1) - x @ P @ y)
    c = C * (y @ M @ y) / (n - 1) - y @ P @ y
    pieces = quadratic_solution_set(a, b1, c, -50, 50)
    sset = encode_ar(s, 0.05)
    grid = np.linspace(-50, 50, 10001)
    inside = sset.contains_many(grid[:, None])
    oracle = np.zeros_like(inside)
    for lo, hi in pieces:
        oracle |= (grid >= lo) & (grid <= hi)
    bad = grid[inside != oracle]
    roots = [v for iv in pieces for v in iv]
    assert all(min(abs(b - r0) for r0 in roots) < 1e-6 for b in bad)


def test_ar_forms_are_psd():
    s, _ = simulate_iv(2, n=80, d_x=2, d_z=4)
    A, Bq = ar_forms(s)
    assert np.linalg.eigvalsh(A)[0] >= -1e-10
    assert np.linalg.eigvalsh(Bq)[0] > 0


def test_ar_subvector_full_dimension_reduces():
    s, _ = simulate_iv(2, n=80, d_x=2, d_z=4)
    assert ar_critical_value(0.05, 4, 2, 2) == ar_critical_value(0.05, 4, 2)
    assert encode_ar(s, 0.05, d_x1=2).inequalities == encode_ar(s, 0.05).inequalities


def test_ar_errors():
    g = np.random.default_rng(0)
    s = Sample(g.standard_normal(5), g.standard_normal((5, 1)), g.standard_normal((5, 6)))
    with pytest.raises(ARUndefined):
        encode_ar(s, 0.05)
    z = g.standard_normal(30)
    s = Sample(g.standard_normal(30), g.standard_normal((30, 1)), np.column_stack([z, 2 * z]))
    with pytest.raises(np.linalg.LinAlgError):
        encode_ar(s, 0.05)


def test_custom_examples():
    b1sq = Polynomial(2, {(2, 0): 1.0})
    one = Polynomial.constant(2, 1.0)
    zero = Polynomial.constant(2, 0.0)
    sset = encode_custom(b1sq, one)
    assert sset.contains([0.9, 20.0]) and not sset.contains([1.1, 0.0])
    assert encode_custom(zero, one).contains([25.0, 15.0])
    assert not encode_custom(one, zero).contains([0.0, 0.0])
    with pytest.raises(ValueError):
        encode_custom(Polynomial.constant(1, 0.0), one)


def test_dump_roundtrip():
    t = cross_moments(simulate_iv(0, d_x=2, d_z=4)[0])
    sset = encode_sniv(t, 0.1, SnivConfig(s=1, exogenous=(0, 1), s_tilde=1))
    assert load_system(dump_system(sset, ["header"])) == sset
