import numpy as np
import pytest
from conftest import random_semialgebraic

from sniv import sdp
from sniv.hierarchy import BallPolicy, Layout, SemialgebraicSet, linear_objective, relax, run
from sniv.poly import Polynomial


def one_var(*ineqs, eqs=()):
    return SemialgebraicSet(Layout.simple(1), tuple(ineqs), tuple(eqs))


def test_quartic_interval():
    # 1 - x^4 >= 0  ->  min x = -1
    res = run(one_var(Polynomial(1, {(0,): 1.0, (4,): -1.0})), linear_objective(1, [1.0]), hbar=3)
    assert res.certified
    assert res.bound == pytest.approx(-1.0, abs=1e-6)
    assert res.bound <= -1.0 + 1e-9


def test_two_point_set():
    # x (1 - x) = 0  ->  min x = 0, attained at a single atom
    res = run(one_var(eqs=(Polynomial(1, {(1,): 1.0, (2,): -1.0}),)), linear_objective(1, [1.0]), hbar=2)
    assert res.certified and res.certified_level == 1
    assert res.bound == pytest.approx(0.0, abs=1e-6)
    assert res.point[0] == pytest.approx(0.0, abs=1e-5)


def test_annulus_direction():
    g1 = Polynomial(2, {(0, 0): 1.0, (2, 0): -1.0, (0, 2): -1.0})
    g2 = Polynomial(2, {(2, 0): 1.0, (0, 2): 1.0, (0, 0): -0.25})
    sset = SemialgebraicSet(Layout.simple(2), (g1, g2))
    res = run(sset, linear_objective(2, [0.6, 0.8]), hbar=3)
    assert res.certified
    assert res.bound == pytest.approx(-1.0, abs=1e-6)


def test_empty_set_verdict():
    res = run(one_var(Polynomial(1, {(0,): -1.0, (2,): -1.0})), linear_objective(1, [1.0]), hbar=2)
    assert res.verdict == "empty"


def test_ball_escalation_and_unbounded_flag():
    sset = SemialgebraicSet(Layout.simple(2), ())
    res = run(sset, linear_objective(2, [1.0, 0.0]), hbar=2, ball=BallPolicy(cap=1e5))
    assert res.ball_active
    assert res.ball_radius_sq == pytest.approx(1e5)
    assert res.bound == pytest.approx(-np.sqrt(1e5), rel=1e-6)
    # a fixed ball is not escalated
    res = run(sset, linear_objective(2, [1.0, 0.0]), hbar=2, ball=BallPolicy(cap=1000.0))
    assert res.solves == 1 and res.ball_active


def test_relaxation_sizes():
    sset = SemialgebraicSet(Layout.simple(3), (Polynomial(3, {(0, 0, 0): 1.0, (2, 0, 0): -1.0}),))
    rel = relax(sset, linear_objective(3, [1, 0, 0]), 2)
    # moment matrix, one inequality, the ball
    assert [b.dim for b in rel.problem.blocks] == [10, 4, 4]
    assert rel.max_half_degree == 1


def test_equalities_need_enough_degree():
    sset = one_var(eqs=(Polynomial(1, {(4,): 1.0, (0,): -1.0}),))
    res = run(sset, linear_objective(1, [1.0]), hbar=3)
    assert res.bound == pytest.approx(-1.0, abs=1e-6)
    with pytest.raises(ValueError):
        run(sset, linear_objective(1, [1.0]), hbar=1)


@pytest.mark.parametrize("seed", range(12))
def test_bounds_are_sound_and_monotone(seed):
    sset, obj, witness = random_semialgebraic(seed)
    bounds = {}
    for h in (1, 2):
        sol = sdp.solve(relax(sset, obj, h).problem)
        assert sol.optimal
        bounds[h] = sol.objective_value
    assert bounds[1] <= bounds[2] + 1e-7
    # any feasible point upper-bounds the minimum
    g = np.random.default_rng(seed)
    pts = witness + g.uniform(-2, 2, (4000, sset.nvars))
    pts = np.vstack([witness, pts[sset.contains_many(pts, include_ball=False)]])
    assert bounds[2] <= obj.evaluate_many(pts).min() + 1e-7
