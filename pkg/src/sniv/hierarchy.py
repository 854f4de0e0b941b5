"""Moment relaxations of semialgebraic minimisation problems.

:func:`relax` builds the level-h SDP for ``min f(x) s.t. g_j(x) >= 0,
q_i(x) = 0`` intersected with the ball ``B - |x_ball|^2 >= 0``, and
:func:`run` climbs the hierarchy until the flatness (rank) test certifies
the bound or the top level is reached.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import sdp
from .poly import (
    Polynomial,
    basis_size,
    grlex_index,
    localizing_matrix_structure,
    moment_matrix_structure,
    monomials_upto,
    riesz,
)

__all__ = [
    "Layout",
    "SemialgebraicSet",
    "Relaxation",
    "HierarchyResult",
    "BallPolicy",
    "relax",
    "run",
    "linear_objective",
]


@dataclass(frozen=True)
class Layout:
    """Named variable blocks of the decision vector.

    ``blocks`` maps a block name (``beta``, ``theta``, ``zeta``, ``eta``)
    to ``(start, size)``. ``indicators`` pairs each auxiliary 0/1 variable
    with the variable whose support it tracks. ``theta_instruments`` lists
    the (0-based) instrument index of every theta coordinate.
    """

    blocks: Tuple[Tuple[str, int, int], ...]
    indicators: Tuple[Tuple[int, int], ...] = ()
    theta_instruments: Tuple[int, ...] = ()

    @classmethod
    def simple(cls, nvars: int, name: str = "beta") -> "Layout":
        return cls(((name, 0, nvars),))

    def block(self, name: str) -> range:
        for n, start, size in self.blocks:
            if n == name:
                return range(start, start + size)
        return range(0)

    @property
    def nvars(self) -> int:
        return sum(size for _, _, size in self.blocks)

    @property
    def primary(self) -> List[int]:
        """Variables of interest: beta then theta."""
        return list(self.block("beta")) + list(self.block("theta"))

    def names(self) -> List[str]:
        out = []
        for name, _, size in self.blocks:
            if name == "theta" and len(self.theta_instruments) == size:
                # theta coordinates are named after their instrument
                out.extend(f"theta{l + 1}" for l in self.theta_instruments)
            else:
                out.extend(f"{name}{k + 1}" for k in range(size))
        return out


@dataclass(frozen=True)
class SemialgebraicSet:
    """``{x : g_j(x) >= 0, q_i(x) = 0, B - |x_P|^2 >= 0}``.

    ``P`` is ``layout.primary`` (beta and theta). The ball constraint is not
    stored with the inequalities: it is appended when the set is relaxed or
    checked, so that its radius can be escalated.
    """

    layout: Layout
    inequalities: Tuple[Polynomial, ...]
    equalities: Tuple[Polynomial, ...] = ()
    ball_radius_sq: float = 1000.0
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        n = self.layout.nvars
        for p in self.inequalities + self.equalities:
            if p.nvars != n:
                raise ValueError(f"polynomial has {p.nvars} variables, layout has {n}")
        if self.ball_radius_sq <= 0:
            raise ValueError("ball radius must be positive")

    @property
    def nvars(self) -> int:
        return self.layout.nvars

    def ball_polynomial(self, radius_sq: float | None = None) -> Polynomial:
        B = self.ball_radius_sq if radius_sq is None else radius_sq
        p = Polynomial.constant(self.nvars, B)
        for k in self.layout.primary:
            mono = [0] * self.nvars
            mono[k] = 2
            p = p + Polynomial(self.nvars, {tuple(mono): -1.0})
        return p

    def with_ball(self, radius_sq: float) -> "SemialgebraicSet":
        return replace(self, ball_radius_sq=float(radius_sq))

    def full_point(self, point: Sequence[float]) -> np.ndarray:
        """Extend a (beta, theta) point with exact support indicators."""
        p = np.asarray(point, dtype=float)
        prim = self.layout.primary
        if p.shape == (self.nvars,):
            return p
        if p.shape != (len(prim),):
            raise ValueError(f"point must have {len(prim)} (or {self.nvars}) coordinates")
        full = np.zeros(self.nvars)
        full[prim] = p
        for aux, target in self.layout.indicators:
            full[aux] = 1.0 if full[target] != 0.0 else 0.0
        return full

    def violations(self, point: Sequence[float], include_ball: bool = True) -> np.ndarray:
        x = self.full_point(point)
        vals = [g(x) for g in self.inequalities]
        if include_ball:
            vals.append(self.ball_polynomial()(x))
        return np.array(vals)

    def contains(self, point: Sequence[float], tol: float = 1e-9, include_ball: bool = True) -> bool:
        x = self.full_point(point)
        if any(g(x) < -tol for g in self.inequalities):
            return False
        if include_ball and self.ball_polynomial()(x) < -tol * max(1.0, self.ball_radius_sq):
            return False
        return all(abs(q(x)) <= tol for q in self.equalities)

    def contains_many(self, points: np.ndarray, tol: float = 1e-9, include_ball: bool = True) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.nvars:
            full = np.zeros((pts.shape[0], self.nvars))
            full[:, self.layout.primary] = pts
            for aux, target in self.layout.indicators:
                full[:, aux] = (full[:, target] != 0.0).astype(float)
            pts = full
        ok = np.ones(pts.shape[0], dtype=bool)
        for g in self.inequalities:
            ok &= g.evaluate_many(pts) >= -tol
        for q in self.equalities:
            ok &= np.abs(q.evaluate_many(pts)) <= tol
        if include_ball:
            ok &= self.ball_polynomial().evaluate_many(pts) >= -tol * max(1.0, self.ball_radius_sq)
        return ok


def linear_objective(nvars: int, coefs: Dict[int, float] | Sequence[float], positions: Sequence[int] | None = None) -> Polynomial:
    """``sum_k u_k x_{positions[k]}`` as a polynomial in ``nvars`` variables."""
    if isinstance(coefs, dict):
        items = coefs.items()
    else:
        pos = list(positions) if positions is not None else list(range(len(coefs)))
        items = zip(pos, coefs)
    terms = {}
    for k, c in items:
        mono = [0] * nvars
        mono[k] = 1
        terms[tuple(mono)] = float(c)
    return Polynomial(nvars, terms)


@dataclass
class Relaxation:
    """Level-h SDP together with the variable scaling used to build it."""

    problem: sdp.SdpProblem
    level: int
    scale: np.ndarray  # x = scale * x_scaled
    max_half_degree: int  # e = max_j ceil(deg g_j / 2)
    ball_index: int  # block index of the ball localizing matrix


def _half_degree(p: Polynomial) -> int:
    return max(1, math.ceil(p.degree / 2))


def _normalise(p: Polynomial) -> Polynomial:
    m = p.max_abs_coef()
    return p if m == 0 else p * (1.0 / m)


def relax(sset: SemialgebraicSet, objective: Polynomial, h: int) -> Relaxation:
    """Level-``h`` moment relaxation of ``min objective`` over ``sset``.

    Primary variables are rescaled by ``sqrt(B)`` so the ball becomes the
    unit ball; every constraint is divided by its largest coefficient. Both
    leave the feasible set unchanged and keep moments of order ``2h`` near
    unit size. Equalities enter as the linear constraints
    ``L(q * m) = 0`` for every monomial ``m`` with ``deg(q m) <= 2h``.
    """
    n = sset.nvars
    scale = np.ones(n)
    scale[sset.layout.primary] = math.sqrt(sset.ball_radius_sq)
    ineqs = [_normalise(g.scale_variables(scale)) for g in sset.inequalities]
    ball = _normalise(sset.ball_polynomial().scale_variables(scale))
    ineqs.append(ball)
    eqs = [_normalise(q.scale_variables(scale)) for q in sset.equalities]
    f = objective.scale_variables(scale)

    halves = [_half_degree(g) for g in ineqs] + [_half_degree(q) for q in eqs]
    e = max(halves)
    if h < e or 2 * h < f.degree:
        raise ValueError(f"level {h} too small: constraints need at least {max(e, math.ceil(f.degree / 2))}")
    nm = basis_size(n, 2 * h)
    blocks = [moment_matrix_structure(n, h, nm)]
    for g, eg in zip(ineqs, halves):
        blocks.append(localizing_matrix_structure(g, n, h - eg, nm))
    eq_forms = []
    for q in eqs:
        for mono in monomials_upto(n, 2 * h - q.degree):
            form = riesz(q.mul_monomial(mono))
            if form:
                eq_forms.append(form)
    problem = sdp.SdpProblem.from_forms(nm, riesz(f, h), blocks, eq_forms)
    return Relaxation(problem, h, scale, e, ball_index=len(blocks) - 1)


@dataclass(frozen=True)
class BallPolicy:
    """Escalate ``B`` tenfold while the ball binds, up to ``cap``."""

    factor: float = 10.0
    cap: float = 1e5
    active_fraction: float = 0.99


@dataclass
class HierarchyResult:
    bound: float
    verdict: str  # "ok", "empty" or "failed"
    bounds: Dict[int, float] = field(default_factory=dict)
    statuses: Dict[int, str] = field(default_factory=dict)
    seconds: Dict[int, float] = field(default_factory=dict)
    ranks: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    certified_level: Optional[int] = None
    level: Optional[int] = None
    ball_active: bool = False
    ball_radius_sq: float = float("nan")
    point: Optional[np.ndarray] = None
    solves: int = 0
    elapsed: float = 0.0

    @property
    def certified(self) -> bool:
        return self.certified_level is not None

    @property
    def total_seconds(self) -> float:
        return float(sum(self.seconds.values()))


def _flat(mu: np.ndarray, n: int, h: int, e: int, rank_tol: float) -> Tuple[bool, Tuple[int, int]]:
    Mh = moment_matrix_structure(n, h).evaluate(mu)
    low = h - e
    Ml = moment_matrix_structure(n, low).evaluate(mu) if low > 0 else np.array([[mu[0]]])
    rh = sdp.numeric_rank(Mh, rank_tol)
    rl = sdp.numeric_rank(Ml, rank_tol)
    return rh == rl, (rh, rl)


def _run_fixed(sset, objective, hbar, start_h, tol, active_fraction) -> HierarchyResult:
    n = sset.nvars
    res = HierarchyResult(bound=-np.inf, verdict="failed", ball_radius_sq=sset.ball_radius_sq)
    last_mu = None
    last_rel = None
    for h in range(start_h, hbar + 1):
        t0 = time.perf_counter()
        rel = relax(sset, objective, h)
        sol = sdp.solve(rel.problem, tol)
        res.seconds[h] = time.perf_counter() - t0
        res.statuses[h] = sol.status
        res.solves += 1
        if sol.status == sdp.PRIMAL_INFEASIBLE:
            res.verdict = "empty"
            res.bound = np.inf
            res.level = h
            return res
        if not sol.optimal:
            continue
        res.bounds[h] = sol.objective_value
        res.bound = sol.objective_value
        res.level = h
        res.verdict = "ok"
        last_mu, last_rel = sol.mu, rel
        flat, ranks = _flat(sol.mu, n, h, rel.max_half_degree, tol.rank_tol)
        res.ranks[h] = ranks
        if flat:
            res.certified_level = h
            break
    if last_mu is not None:
        first = np.array([last_mu[1 + k] for k in range(n)])
        res.point = first * last_rel.scale
        # ball localizing value in scaled coordinates: 1 - L(|x_P|^2) after normalisation
        prim = sset.layout.primary
        second = 0.0
        for k in prim:
            mono = [0] * n
            mono[k] = 2
            second += last_mu[grlex_index(mono)]
        res.ball_active = second >= active_fraction
    return res


def run(
    sset: SemialgebraicSet,
    objective: Polynomial,
    hbar: int = 2,
    start_h: int | None = None,
    tolerances: sdp.Tolerances | None = None,
    ball: BallPolicy | None = None,
) -> HierarchyResult:
    """Climb the hierarchy from ``start_h`` to ``hbar``.

    Stops at the first level whose moment matrix passes the flatness test
    ``rank M_h = rank M_{h-e}``. A primal-infeasible level ends the run with
    verdict ``"empty"``. While the ball constraint binds at the solution,
    ``B`` is multiplied by ``ball.factor`` up to ``ball.cap``; a ball that
    still binds at the cap is reported through ``ball_active``.
    """
    tol = tolerances or sdp.Tolerances()
    policy = ball or BallPolicy()
    if start_h is None:
        degs = [p.degree for p in sset.inequalities + sset.equalities] + [2, objective.degree]
        start_h = max(1, max(math.ceil(d / 2) for d in degs))
    if hbar < start_h:
        raise ValueError("hbar must be at least the starting level")
    current = sset
    total_solves = 0
    elapsed = 0.0
    while True:
        res = _run_fixed(current, objective, hbar, start_h, tol, policy.active_fraction)
        total_solves += res.solves
        elapsed += res.total_seconds
        res.solves = total_solves
        res.elapsed = elapsed
        if res.verdict != "ok" or not res.ball_active:
            return res
        nextB = current.ball_radius_sq * policy.factor
        if nextB > policy.cap * (1 + 1e-12):
            return res
        current = current.with_ball(nextB)
