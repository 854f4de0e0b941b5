import io

import numpy as np
import pytest

from sniv import sdp
from sniv.poly import MatrixStructure


def lmi(*mats):
    """Block whose value at mu = (1, x, y, ...) is mats[0] + x mats[1] + ..."""
    arr = np.array(mats, dtype=float)
    return MatrixStructure(arr.shape[1], arr)


def problem(c, blocks):
    c = np.asarray(c, dtype=float)
    return sdp.SdpProblem.from_forms(len(c), dict(enumerate(c)), blocks)


def test_two_by_two_example():
    # min x s.t. [[1, x], [x, 1]] PSD  ->  -1
    sol = sdp.solve(problem([0, 1], [lmi([[1, 0], [0, 1]], [[0, 1], [1, 0]])]))
    assert sol.status == sdp.OPTIMAL
    assert sol.objective_value == pytest.approx(-1.0, abs=1e-6)
    assert sol.mu[1] == pytest.approx(-1.0, abs=1e-6)


def test_hyperbolic_constraint():
    # min x + y s.t. [[x, 1], [1, y]] PSD  ->  2 at x = y = 1 (AM-GM)
    blk = lmi(np.zeros((2, 2)) + [[0, 1], [1, 0]], [[1, 0], [0, 0]], [[0, 0], [0, 1]])
    sol = sdp.solve(problem([0, 1, 1], [blk]))
    assert sol.objective_value == pytest.approx(2.0, abs=1e-6)


def test_largest_eigenvalue():
    # min t s.t. t I - A PSD  ->  lambda_max(A)
    g = np.random.default_rng(3)
    A = g.standard_normal((4, 4))
    A = A + A.T
    sol = sdp.solve(problem([0, 1], [lmi(-A, np.eye(4))]))
    assert sol.objective_value == pytest.approx(np.linalg.eigvalsh(A)[-1], abs=1e-6)


def test_two_blocks():
    # min x s.t. x >= 0.5 and [[x, 1], [1, x]] PSD  ->  1
    blocks = [lmi([[-0.5]], [[1.0]]), lmi([[0, 1], [1, 0]], np.eye(2))]
    sol = sdp.solve(problem([0, 1], blocks))
    assert sol.objective_value == pytest.approx(1.0, abs=1e-6)


def test_equality_constrained():
    # min -x - y s.t. x + y... with x = 2y imposed: [[1, x], [x, 1]] and [[1, y], [y, 1]] PSD
    # x = 2y, |x| <= 1, |y| <= 1  ->  x = 1, y = 0.5, value -1.5
    blocks = [lmi(np.eye(2), [[0, 1], [1, 0]], np.zeros((2, 2))), lmi(np.eye(2), np.zeros((2, 2)), [[0, 1], [1, 0]])]
    p = sdp.SdpProblem.from_forms(3, {1: -1.0, 2: -1.0}, blocks, equalities=[{1: 1.0, 2: -2.0}])
    sol = sdp.solve(p)
    assert sol.objective_value == pytest.approx(-1.5, abs=1e-6)


def test_infeasible_flagged():
    # x >= 0 and -1 - x >= 0
    sol = sdp.solve(problem([0, 1], [lmi([[0.0]], [[1.0]]), lmi([[-1.0]], [[-1.0]])]))
    assert sol.status == sdp.PRIMAL_INFEASIBLE


def test_inconsistent_equalities_flagged():
    p = sdp.SdpProblem.from_forms(2, {1: 1.0}, [lmi([[1.0]], [[0.0]])], equalities=[{1: 1.0}, {1: 1.0}], eq_rhs=[0.0, 1.0])
    assert sdp.solve(p).status == sdp.PRIMAL_INFEASIBLE


def test_unbounded_flagged():
    # min x s.t. 1 - x >= 0
    sol = sdp.solve(problem([0, 1], [lmi([[1.0]], [[-1.0]])]))
    assert sol.status == sdp.DUAL_INFEASIBLE


def random_lmi(seed, m=3, d=4):
    g = np.random.default_rng(seed)
    mats = [np.eye(d) * 2.0]
    for _ in range(m):
        a = g.standard_normal((d, d))
        mats.append(0.5 * (a + a.T))
    c = np.concatenate([[0.0], g.standard_normal(m)])
    return c, mats


@pytest.mark.parametrize("seed", range(6))
def test_matches_cvxopt(seed):
    cvxopt = pytest.importorskip("cvxopt")
    from cvxopt import matrix, solvers

    c, mats = random_lmi(seed)
    m = len(c) - 1
    d = mats[0].shape[0]
    # cvxopt: min c'x s.t. sum x_i G_i <= h, here -sum x_i A_i <= A_0
    G = [matrix(np.column_stack([-mats[i + 1].ravel(order="F") for i in range(m)]))]
    h = [matrix(mats[0])]
    # the random box keeps the problem bounded
    Gl = matrix(np.vstack([np.eye(m), -np.eye(m)]))
    hl = matrix(np.full(2 * m, 3.0))
    solvers.options["show_progress"] = False
    solvers.options["abstol"] = 1e-9
    solvers.options["reltol"] = 1e-9
    solvers.options["feastol"] = 1e-9
    ref = solvers.sdp(matrix(c[1:]), Gl=Gl, hl=hl, Gs=G, hs=h)
    assert ref["status"] == "optimal"
    box = [lmi(np.array([[3.0]]), *[np.array([[(-1.0 if j == i else 0.0)]]) for j in range(m)]) for i in range(m)]
    box += [lmi(np.array([[3.0]]), *[np.array([[(1.0 if j == i else 0.0)]]) for j in range(m)]) for i in range(m)]
    sol = sdp.solve(problem(c, [lmi(*mats)] + box))
    assert sol.objective_value == pytest.approx(ref["primal objective"], abs=1e-6)


def test_numeric_rank():
    g = np.random.default_rng(0)
    u = g.standard_normal((5, 2))
    assert sdp.numeric_rank(u @ u.T) == 2
    assert sdp.numeric_rank(np.zeros((3, 3))) == 0
    assert sdp.numeric_rank(np.diag([1.0, 1e-9])) == 1


def test_sdpa_roundtrip():
    c, mats = random_lmi(1)
    p = problem(c, [lmi(*mats)])
    buf = io.StringIO()
    sdp.write_sdpa(p, buf)
    buf.seek(0)
    q = sdp.read_sdpa(buf)
    assert sdp.solve(q).objective_value == pytest.approx(sdp.solve(p).objective_value, abs=1e-6)
