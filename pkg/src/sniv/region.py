"""Support-function sweeps and the polyhedral outer envelope they define."""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import HalfspaceIntersection
from scipy.stats import qmc

from . import hierarchy, sdp
from .hierarchy import BallPolicy, SemialgebraicSet
from .stats import normal_quantile

log = logging.getLogger(__name__)

__all__ = [
    "DirectionBound",
    "Envelope",
    "Interval",
    "direction_grid",
    "sweep",
    "interval",
    "contains",
    "cross_section",
]


def direction_grid(dim: int, count: int, seed: int = 0) -> np.ndarray:
    """``count`` unit vectors in ``R^dim``: the ``2 dim`` signed axes first,
    then scrambled Sobol points pushed through the normal quantile and
    normalised. In one dimension only ``+1`` and ``-1`` exist, so
    ``count`` is ignored there."""
    if dim < 1:
        raise ValueError("dim must be positive")
    if count < 2 * dim:
        raise ValueError(f"count must be at least 2*dim = {2 * dim}")
    eye = np.eye(dim)
    axes = np.empty((2 * dim, dim))
    axes[0::2] = eye
    axes[1::2] = -eye
    rest = count - 2 * dim
    if rest == 0 or dim == 1:
        return axes
    sob = qmc.Sobol(dim, scramble=True, seed=seed)
    out = []
    while len(out) < rest:
        u = sob.random_base2(max(4, int(np.ceil(np.log2(rest)))))
        u = np.clip(u, 1e-12, 1 - 1e-12)
        g = normal_quantile(u)
        norms = np.linalg.norm(g, axis=1)
        for v, nv in zip(g, norms):
            if nv > 1e-8 and len(out) < rest:
                out.append(v / nv)
    return np.vstack([axes, np.array(out)])


@dataclass(frozen=True)
class DirectionBound:
    u: Tuple[float, ...]
    bound: float  # lower bound on min u.x over the set; -inf if the solve failed
    level: Optional[int]
    certified: bool
    ball_active: bool
    seconds: float
    verdict: str

    def record(self, timing: bool = False) -> Dict:
        out = {
            "u": list(self.u),
            "bound": self.bound if np.isfinite(self.bound) else None,
            "level": self.level,
            "certified": self.certified,
            "ball_active": self.ball_active,
            "verdict": self.verdict,
        }
        if timing:
            out["seconds"] = self.seconds
        return out


@dataclass
class Envelope:
    """Polyhedron ``{x : u.x >= bound(u) for all swept u}`` over (beta, theta)."""

    names: List[str]
    bounds: List[DirectionBound]
    hbar: int
    ball_radius_sq: float
    seconds: float = 0.0
    meta: Dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def empty(self) -> bool:
        return any(b.verdict == "empty" for b in self.bounds)

    @property
    def failed(self) -> List[DirectionBound]:
        return [b for b in self.bounds if b.verdict == "failed"]

    @property
    def certified_fraction(self) -> float:
        ok = [b for b in self.bounds if b.verdict == "ok"]
        return sum(b.certified for b in ok) / len(ok) if ok else 0.0

    def halfspaces(self) -> Tuple[np.ndarray, np.ndarray]:
        use = [b for b in self.bounds if b.verdict == "ok" and np.isfinite(b.bound)]
        U = np.array([b.u for b in use]).reshape(-1, self.dim)
        c = np.array([b.bound for b in use])
        return U, c

    def contains(self, point: Sequence[float], tol: float = 1e-7) -> bool:
        return bool(self.contains_many(np.atleast_2d(point), tol)[0])

    def contains_many(self, points: np.ndarray, tol: float = 1e-7) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.empty:
            return np.zeros(pts.shape[0], dtype=bool)
        U, c = self.halfspaces()
        if U.shape[0] == 0:
            return np.ones(pts.shape[0], dtype=bool)
        slack = pts @ U.T - c
        return np.all(slack >= -tol * np.maximum(1.0, np.abs(c)), axis=1)

    def _axis(self, k: int, sign: float) -> Optional[DirectionBound]:
        for b in self.bounds:
            u = np.asarray(b.u)
            if abs(u[k] - sign) < 1e-12 and abs(np.sum(np.abs(u)) - 1.0) < 1e-12:
                return b
        return None

    def interval(self, k: int) -> "Interval":
        lo, hi = self._axis(k, 1.0), self._axis(k, -1.0)
        if lo is None or hi is None:
            raise ValueError(f"coordinate {k} axes were not swept")
        return Interval.from_bounds(k, self.names[k], lo, hi)

    def intervals(self) -> List["Interval"]:
        return [self.interval(k) for k in range(self.dim)]

    def to_json(self, timing: bool = False) -> Dict:
        """Plain-data view; wall-clock fields only with ``timing`` so the
        default output is reproducible."""
        out = {
            "names": self.names,
            "hbar": self.hbar,
            "ball_radius_sq": self.ball_radius_sq,
            "empty": self.empty,
            "certified_fraction": self.certified_fraction,
            "directions": [b.record(timing) for b in self.bounds],
            **self.meta,
        }
        if timing:
            out["seconds"] = self.seconds
        return out


@dataclass(frozen=True)
class Interval:
    coordinate: int
    name: str
    lower: float
    upper: float
    certified_lower: bool
    certified_upper: bool
    unbounded_lower: bool
    unbounded_upper: bool
    empty: bool = False

    @classmethod
    def from_bounds(cls, k: int, name: str, lo: DirectionBound, hi: DirectionBound) -> "Interval":
        empty = lo.verdict == "empty" or hi.verdict == "empty"
        lower = lo.bound if lo.verdict == "ok" else -np.inf
        upper = -hi.bound if hi.verdict == "ok" else np.inf
        return cls(
            k,
            name,
            np.nan if empty else lower,
            np.nan if empty else upper,
            lo.certified,
            hi.certified,
            lo.ball_active or lo.verdict == "failed",
            hi.ball_active or hi.verdict == "failed",
            empty,
        )

    @property
    def width(self) -> float:
        return self.upper - self.lower if not self.empty else 0.0

    def record(self) -> Dict:
        def num(v):
            return v if np.isfinite(v) else None

        return {
            "coordinate": self.coordinate,
            "name": self.name,
            "lower": num(self.lower),
            "upper": num(self.upper),
            "certified_lower": self.certified_lower,
            "certified_upper": self.certified_upper,
            "unbounded_lower": self.unbounded_lower,
            "unbounded_upper": self.unbounded_upper,
            "empty": self.empty,
        }


def _solve_direction(args) -> DirectionBound:
    sset, u, hbar, tol, policy = args
    prim = sset.layout.primary
    obj = hierarchy.linear_objective(sset.nvars, list(u), prim)
    t0 = time.perf_counter()
    try:
        res = hierarchy.run(sset, obj, hbar=hbar, tolerances=tol, ball=policy)
    except (np.linalg.LinAlgError, ValueError, FloatingPointError) as exc:
        log.warning("direction %s failed: %s", np.round(u, 4).tolist(), exc)
        return DirectionBound(tuple(map(float, u)), -np.inf, None, False, False, time.perf_counter() - t0, "failed")
    if res.verdict == "failed":
        log.warning("direction %s: no level solved to optimality", np.round(u, 4).tolist())
    bound = res.bound if res.verdict == "ok" else (np.inf if res.verdict == "empty" else -np.inf)
    return DirectionBound(
        tuple(map(float, u)), float(bound), res.level, bool(res.certified), bool(res.ball_active),
        time.perf_counter() - t0, res.verdict,
    )


def _workers(workers: Optional[int]) -> int:
    if workers is None:
        workers = int(os.environ.get("SNIV_WORKERS", "1"))
    if workers < 1:
        raise ValueError("workers must be at least 1")
    return workers


def sweep(
    sset: SemialgebraicSet,
    directions: np.ndarray,
    hbar: int = 2,
    workers: Optional[int] = None,
    tolerances: Optional[sdp.Tolerances] = None,
    ball: Optional[BallPolicy] = None,
) -> Envelope:
    """Lower-bound ``u . x`` over the set for every row ``u`` of ``directions``.

    Each direction is an independent, deterministic computation, so the
    result does not depend on ``workers``.
    """
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    names = [sset.layout.names()[k] for k in sset.layout.primary]
    if dirs.shape[1] != len(names):
        raise ValueError(f"directions have dimension {dirs.shape[1]}, set has {len(names)}")
    norms = np.linalg.norm(dirs, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-12):
        dirs = dirs / norms[:, None]
    tol = tolerances or sdp.Tolerances()
    policy = ball or BallPolicy()
    jobs = [(sset, u, hbar, tol, policy) for u in dirs]
    n_workers = min(_workers(workers), len(jobs))
    t0 = time.perf_counter()
    if n_workers == 1:
        results = [_solve_direction(j) for j in jobs]
    else:
        with ProcessPoolExecutor(n_workers) as pool:
            results = list(pool.map(_solve_direction, jobs, chunksize=max(1, len(jobs) // (4 * n_workers))))
    env = Envelope(names, results, hbar, sset.ball_radius_sq, time.perf_counter() - t0)
    if env.failed:
        log.warning("%d of %d directions failed and were dropped", len(env.failed), len(results))
    return env


def interval(
    sset: SemialgebraicSet,
    k: int,
    hbar: int = 2,
    tolerances: Optional[sdp.Tolerances] = None,
    ball: Optional[BallPolicy] = None,
    workers: Optional[int] = 1,
) -> Interval:
    """Projection interval ``[f*(e_k), -f*(-e_k)]`` for primary coordinate ``k``."""
    dim = len(sset.layout.primary)
    if not 0 <= k < dim:
        raise ValueError(f"coordinate {k} out of range for {dim} coordinates")
    e = np.zeros((2, dim))
    e[0, k], e[1, k] = 1.0, -1.0
    env = sweep(sset, e, hbar, workers, tolerances, ball)
    return env.interval(k)


def contains(sset: SemialgebraicSet, point: Sequence[float], tol: float = 1e-9) -> bool:
    """Direct membership: indicators set to the exact support of the point."""
    return sset.contains(point, tol)


def cross_section(env: Envelope, axes: Tuple[int, int] = (0, 1), anchor: Optional[Sequence[float]] = None) -> np.ndarray:
    """Vertices (counter-clockwise) of the envelope slice through ``anchor``
    in the plane of coordinates ``axes``. Empty array if the slice is empty."""
    i, j = axes
    U, c = env.halfspaces()
    if env.empty or U.shape[0] == 0:
        return np.empty((0, 2))
    p = np.zeros(env.dim) if anchor is None else np.asarray(anchor, dtype=float)
    others = [k for k in range(env.dim) if k not in (i, j)]
    rhs = c - U[:, others] @ p[others] if others else c
    A2 = U[:, [i, j]]
    keep = np.linalg.norm(A2, axis=1) > 1e-12
    if np.any(~keep & (rhs > 1e-9)):
        return np.empty((0, 2))
    A2, rhs = A2[keep], rhs[keep]
    # u.x >= b  <=>  -u.x + b <= 0
    hs = np.column_stack([-A2, rhs])
    norms = np.linalg.norm(A2, axis=1)
    lp = linprog(
        np.array([0.0, 0.0, -1.0]),
        A_ub=np.column_stack([-A2, norms]),
        b_ub=-rhs,
        bounds=[(None, None), (None, None), (0, None)],
        method="highs",
    )
    if lp.status != 0 or lp.x[2] <= 1e-10:
        return np.empty((0, 2))
    hsi = HalfspaceIntersection(hs, lp.x[:2])
    v = hsi.intersections
    ctr = v.mean(axis=0)
    order = np.argsort(np.arctan2(v[:, 1] - ctr[1], v[:, 0] - ctr[0]))
    return v[order]
