"""Monte Carlo designs and the experiment harness behind the coverage tables."""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla

from . import region
from .encode import ARUndefined, SnivConfig, ar_critical_value, ar_forms, encode_ar, encode_sniv
from .hierarchy import BallPolicy
from .stats import ClassSpec, Sample, bootstrap_radius, cross_moments, radius, rng

log = logging.getLogger(__name__)

__all__ = [
    "DESIGNS",
    "METHODS",
    "Design",
    "RepRecord",
    "RunMetrics",
    "make_design",
    "dgp",
    "true_point",
    "run_experiment",
    "emit_table",
]

DESIGNS = ("classical", "many_instruments", "weak", "invalid", "endogenous")
METHODS = ("sniv1", "sniv2", "sniv3", "sniv4", "ar", "ar-ci")


@dataclass(frozen=True)
class Design:
    """One simulation design.

    ``d_z`` counts every instrument in the generated sample, including the
    redundant ones of ``many_instruments`` and the re-used regressors of
    ``endogenous``.
    """

    name: str
    n: int
    d_x: int
    d_z: int
    pi_star: float = 0.3
    het: bool = False
    s: Optional[int] = None
    s_tilde: Optional[int] = None
    n_endogenous: int = 0  # regressors re-used as instruments (endogenous design)
    n_questioned_exogenous: int = 0  # exogenous instruments whose validity is also questioned

    def __post_init__(self):
        if self.name not in DESIGNS:
            raise ValueError(f"unknown design {self.name!r}; choose from {', '.join(DESIGNS)}")
        if not 0.0 <= self.pi_star <= 1.0:
            raise ValueError("pi_star must lie in [0, 1]")
        if self.n < 2 or self.d_x < 1 or self.d_z < 1:
            raise ValueError("n, d_x and d_z must be positive (n >= 2)")
        if self.name == "invalid":
            if self.d_z != self.d_x - 1 or self.d_z < 2:
                raise ValueError("invalid design needs d_z = d_x - 1 >= 2")
        elif self.name == "endogenous":
            if not 1 <= self.n_endogenous <= self.d_x:
                raise ValueError("endogenous design re-uses between 1 and d_x regressors")
            if self.base_d_z < self.d_x:
                raise ValueError("endogenous design needs at least d_x base instruments")
        elif self.d_z < self.d_x:
            raise ValueError(f"{self.name} design needs d_z >= d_x")

    @property
    def base_d_z(self) -> int:
        return self.d_z - self.n_endogenous if self.name == "endogenous" else self.d_z

    @property
    def beta(self) -> np.ndarray:
        b = np.zeros(self.d_x)
        b[0] = 1.0
        if self.d_x > 1:
            b[1] = -1.0
        return b

    @property
    def omega(self) -> np.ndarray:
        """Covariance of ``(U, V_1, ..., V_dX)`` (U entry scaled by |Z_1| when het)."""
        k = self.d_x + 1
        om = np.zeros((k, k))
        om[0, 0] = 1.0
        for j in range(2, k + 1):
            om[0, j - 1] = om[j - 1, 0] = (-1) ** j * (1.0 - self.pi_star) / 5.0
            om[j - 1, j - 1] = 1.0 - self.pi_star
        return om

    @property
    def pi(self) -> np.ndarray:
        """First-stage matrix for the generated (non-reused) regressors, d_X x base d_Z."""
        P = np.zeros((self.d_x, self.base_d_z))
        r = math.sqrt(self.pi_star)
        if self.name == "invalid":
            P[0, -2] = r / 2.0
            P[0, -1] = -r / 2.0
        else:
            for k in range(self.d_x):
                P[k, k] = r
        return P

    @property
    def exogenous(self) -> Optional[Tuple[int, ...]]:
        if self.name != "endogenous":
            return None
        return tuple(range(self.base_d_z - self.n_questioned_exogenous))

    @property
    def theta(self) -> np.ndarray:
        """Population ``E[Z_l U]`` for the questioned instruments (empty otherwise)."""
        if self.name != "endogenous":
            return np.zeros(0)
        om = self.omega
        scale = math.sqrt(2.0 / math.pi) if self.het else 1.0  # E|Z_1|
        vals = [0.0] * self.n_questioned_exogenous
        vals += [scale * om[0, j + 1] for j in range(self.n_endogenous)]
        return np.array(vals)


_DEFAULTS = {
    "classical": dict(n=500, d_x=2, d_z=4, pi_star=0.3),
    "many_instruments": dict(n=500, d_x=2, d_z=40, pi_star=0.3),
    "weak": dict(n=500, d_x=2, d_z=4, pi_star=0.03),
    "invalid": dict(n=2000, d_x=3, d_z=2, pi_star=0.3, s=2),
    "endogenous": dict(n=2000, d_x=2, d_z=5, pi_star=0.3, s_tilde=1, n_endogenous=1, n_questioned_exogenous=1),
}


def make_design(name: str, **overrides) -> Design:
    """Desk-scale defaults for ``name`` with keyword overrides (``None`` ignored)."""
    if name not in _DEFAULTS:
        raise ValueError(f"unknown design {name!r}; choose from {', '.join(DESIGNS)}")
    kw = dict(_DEFAULTS[name])
    kw.update({k: v for k, v in overrides.items() if v is not None})
    if name == "invalid" and "d_x" in overrides and "d_z" not in overrides and overrides["d_x"] is not None:
        kw["d_z"] = kw["d_x"] - 1
    return Design(name=name, **kw)


def dgp(design: Design, seed: int, rep: int = 0) -> Sample:
    """Draw one sample. Replication ``rep`` uses its own substream of ``seed``."""
    g = rng(seed, (rep,))
    n = design.n
    Z = g.standard_normal((n, design.base_d_z))
    om = design.omega
    L = np.linalg.cholesky(om) if np.all(np.linalg.eigvalsh(om) > 0) else _psd_root(om)
    E = g.standard_normal((n, design.d_x + 1)) @ L.T
    U = E[:, 0] * (np.abs(Z[:, 0]) if design.het else 1.0)
    V = E[:, 1:]
    if design.name == "invalid":
        X = np.empty((n, design.d_x))
        X[:, 0] = Z @ design.pi[0] + V[:, 0]
        X[:, 1:] = Z
    else:
        X = Z @ design.pi.T + V
    if design.name == "endogenous":
        Z = np.hstack([Z, X[:, : design.n_endogenous]])
    y = X @ design.beta + U
    return Sample(y, X, Z)


def _psd_root(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return v * np.sqrt(np.clip(w, 0.0, None))


def true_point(design: Design) -> np.ndarray:
    return np.concatenate([design.beta, design.theta])


# experiment -----------------------------------------------------------------------

@dataclass
class RepRecord:
    rep: int
    ok: bool
    covered: bool = False
    covered_envelope: bool = False
    widths: Tuple[float, ...] = ()
    certified: int = 0
    solves: int = 0
    seconds: float = 0.0
    theta_zero_rejected: Optional[bool] = None
    all_detected: Optional[bool] = None
    error: str = ""


@dataclass
class RunMetrics:
    design: str
    method: str
    reps: int
    failures: int
    widths: Tuple[float, ...]
    widths_se: Tuple[float, ...]
    coverage: float
    coverage_se: float
    coverage_envelope: float
    exact_fraction: float
    seconds_per_solve: float
    theta_detect: Optional[float] = None
    theta_both: Optional[float] = None
    records: List[RepRecord] = field(default_factory=list, repr=False)


def _ar_interval_contains(sample: Sample, alpha: float, k: int, value: float) -> bool:
    """Exact AR projection membership of ``beta_k = value`` with the sub-vector critical value."""
    A, Bq = ar_forms(sample)
    C = ar_critical_value(alpha, sample.d_z, sample.d_x, 1)
    d = sample.d_x
    # v = (1, -beta) restricted to beta_k = value: v = t*a + W w
    a = np.zeros(d + 1)
    a[0], a[1 + k] = 1.0, -value
    W = np.zeros((d + 1, d - 1))
    others = [j for j in range(d) if j != k]
    for i, j in enumerate(others):
        W[1 + j, i] = -1.0
    T = np.column_stack([a, W])
    Ar, Br = T.T @ A @ T, T.T @ Bq @ T
    lam = sla.eigh(Ar, Br, eigvals_only=True)[0]
    return bool(lam <= C)


def _encode(method: str, design: Design, sample: Sample, alpha: float, ball: float, draws: int, seed: int, rep: int):
    if method in ("ar", "ar-ci"):
        return encode_ar(sample, alpha, 1 if method == "ar-ci" else None, ball=ball)
    cls = int(method[-1])
    spec = ClassSpec(cls, alpha, draws, seed)
    if cls == 4:
        r = bootstrap_radius(sample.Z, alpha, draws, seed=int(rng(seed, (rep, 1)).integers(2**31)))
    else:
        r = radius(spec, sample.d_z, sample.n)
    cfg = SnivConfig(
        class_spec=spec,
        s=design.s,
        exogenous=design.exogenous,
        s_tilde=design.s_tilde,
        ball=ball,
    )
    return encode_sniv(cross_moments(sample), r, cfg)


@dataclass(frozen=True)
class _Job:
    design: Design
    method: str
    rep: int
    seed: int
    alpha: float
    hbar: int
    ball: float
    directions: int
    draws: int


def _one_rep(job: _Job) -> RepRecord:
    d = job.design
    rec = RepRecord(rep=job.rep, ok=False)
    t0 = time.perf_counter()
    try:
        sample = dgp(d, job.seed, job.rep)
        sset = _encode(job.method, d, sample, job.alpha, job.ball, job.draws, job.seed, job.rep)
        truth = true_point(d) if job.method.startswith("sniv") else d.beta
        dim = len(sset.layout.primary)
        # no escalation: B stays fixed, a binding ball reads as unbounded
        policy = BallPolicy(cap=job.ball)
        if job.method == "ar-ci":
            dirs = np.array([[1.0] + [0.0] * (dim - 1), [-1.0] + [0.0] * (dim - 1)])
        else:
            dirs = region.direction_grid(dim, max(job.directions, 2 * dim), seed=job.seed)
        env = region.sweep(sset, dirs, job.hbar, workers=1, ball=policy)
        rec.solves = len(env.bounds)
        rec.certified = sum(b.certified for b in env.bounds)
        if job.method == "ar-ci":
            rec.covered = _ar_interval_contains(sample, job.alpha, 0, d.beta[0])
            iv = env.interval(0)
            rec.covered_envelope = bool(not iv.empty and iv.lower - 1e-7 <= d.beta[0] <= iv.upper + 1e-7)
            rec.widths = (iv.width,)
        else:
            rec.covered = sset.contains(truth, tol=1e-9)
            rec.covered_envelope = env.contains(truth)
            rec.widths = tuple(env.interval(k).width for k in range(d.d_x))
        if d.name == "endogenous" and job.method.startswith("sniv"):
            nb = d.d_x
            zero = truth.copy()
            zero[nb:] = 0.0
            rec.theta_zero_rejected = not sset.contains(zero, tol=1e-9)
            flags = []
            for j in range(d.n_questioned_exogenous, len(d.theta)):
                p = truth.copy()
                p[nb + j] = 0.0
                flags.append(not sset.contains(p, tol=1e-9))
            rec.all_detected = all(flags)
        rec.ok = True
    except (ARUndefined, np.linalg.LinAlgError, ValueError) as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
        rec.ok = False
    rec.seconds = time.perf_counter() - t0
    return rec


def _se(p: float, m: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / m) if m else float("nan")


def run_experiment(
    design: Design,
    method: str,
    reps: int,
    seed: int = 0,
    alpha: float = 0.05,
    hbar: int = 2,
    ball: float = 1000.0,
    directions: int = 16,
    draws: int = 1000,
    workers: int = 1,
) -> RunMetrics:
    """Simulate ``reps`` samples and summarise coverage, widths and timing.

    Failed replications (for instance AR with ``d_Z >= n``) are counted in
    ``failures`` and excluded from the averages.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    jobs = [_Job(design, method, r, seed, alpha, hbar, ball, directions, draws) for r in range(reps)]
    if workers == 1:
        records = [_one_rep(j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(_one_rep, jobs))
    return _summarise(design, method, records)


def _summarise(design: Design, method: str, records: List[RepRecord]) -> RunMetrics:
    good = [r for r in records if r.ok]
    m = len(good)
    for r in records:
        if not r.ok:
            log.warning("replication %d failed: %s", r.rep, r.error)
    if m == 0:
        nan = float("nan")
        return RunMetrics(design.name, method, len(records), len(records), (), (), nan, nan, nan, nan, nan, records=records)
    W = np.array([r.widths for r in good])
    cov = float(np.mean([r.covered for r in good]))
    cov_env = float(np.mean([r.covered_envelope for r in good]))
    solves = sum(r.solves for r in good)
    detect = both = None
    if good[0].theta_zero_rejected is not None:
        detect = float(np.mean([r.theta_zero_rejected for r in good]))
        both = float(np.mean([r.all_detected for r in good]))
    return RunMetrics(
        design=design.name,
        method=method,
        reps=len(records),
        failures=len(records) - m,
        widths=tuple(float(v) for v in W.mean(axis=0)),
        widths_se=tuple(float(v) for v in (W.std(axis=0, ddof=1) / math.sqrt(m) if m > 1 else np.zeros(W.shape[1]))),
        coverage=cov,
        coverage_se=_se(cov, m),
        coverage_envelope=cov_env,
        exact_fraction=sum(r.certified for r in good) / solves if solves else float("nan"),
        seconds_per_solve=sum(r.seconds for r in good) / solves if solves else float("nan"),
        theta_detect=detect,
        theta_both=both,
        records=records,
    )


# tables ------------------------------------------------------------------------

def _fmt(v, digits=3) -> str:
    if v is None:
        return ""
    if isinstance(v, float) and not math.isfinite(v):
        return "inf" if v > 0 else ("nan" if math.isnan(v) else "-inf")
    return f"{v:.{digits}f}"


def emit_table(
    metrics: Sequence[RunMetrics],
    fmt: str = "csv",
    max_widths: int = 5,
    timing: bool = True,
    provenance: Optional[Dict[str, object]] = None,
) -> str:
    """Render one row per (design, method) in csv or markdown.

    ``timing=False`` drops the seconds column so the table is reproducible
    byte for byte; ``provenance`` items become trailing constant columns.
    """
    if fmt not in ("csv", "markdown"):
        raise ValueError("format must be 'csv' or 'markdown'")
    prov = dict(provenance or {})
    k = min(max_widths, max((len(m.widths) for m in metrics), default=0)) or min(max_widths, 2)
    wcols = [f"beta{i + 1}" for i in range(k)]
    if fmt == "csv":
        header = ["design", "method", "reps", "failures", *wcols, "cover", "cover_envelope", "exact"]
        header += ["time"] * timing + ["theta_nonzero", *prov]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for m in metrics:
            widths = [_fmt(m.widths[i], 6) if i < len(m.widths) else "" for i in range(k)]
            row = [m.design, m.method, m.reps, m.failures, *widths,
                   _fmt(m.coverage, 6), _fmt(m.coverage_envelope, 6), _fmt(m.exact_fraction, 6)]
            row += [_fmt(m.seconds_per_solve, 6)] * timing + [_fmt(m.theta_detect, 6), *prov.values()]
            w.writerow(row)
        return buf.getvalue()
    header = ["Design", "Method", *[f"β{i + 1}" for i in range(k)], "Cover", "Exact"] + ["Time"] * timing + ["θ≠0"]
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for m in metrics:
        widths = [_fmt(m.widths[i]) if i < len(m.widths) else "" for i in range(k)]
        cover = f"{_fmt(m.coverage)} ({_fmt(m.coverage_envelope)})"
        row = [m.design, m.method, *widths, cover, _fmt(m.exact_fraction)]
        row += [_fmt(m.seconds_per_solve)] * timing + [_fmt(m.theta_detect)]
        lines.append("| " + " | ".join(row) + " |")
    if prov:
        lines.append("")
        lines.append(", ".join(f"{k}: {v}" for k, v in prov.items()))
    return "\n".join(lines) + "\n"
