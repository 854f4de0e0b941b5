"""Data container, sample cross-moments, critical radii and random streams."""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import special

log = logging.getLogger(__name__)

__all__ = [
    "Sample",
    "MomentTables",
    "ClassSpec",
    "cross_moments",
    "radius",
    "bootstrap_radius",
    "normal_quantile",
    "normal_cdf",
    "chisq_quantile",
    "partial_out",
    "rng",
    "read_csv",
    "write_csv",
]


@dataclass(frozen=True)
class Sample:
    """Outcome ``y`` (n,), regressors ``X`` (n, d_X) and instruments ``Z`` (n, d_Z)."""

    y: np.ndarray
    X: np.ndarray
    Z: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float).reshape(-1)
        X = np.asarray(self.X, dtype=float)
        Z = np.asarray(self.Z, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if Z.ndim == 1:
            Z = Z[:, None]
        n = y.shape[0]
        if X.shape[0] != n or Z.shape[0] != n:
            raise ValueError(f"row counts differ: y {n}, X {X.shape[0]}, Z {Z.shape[0]}")
        if n < 2:
            raise ValueError("need at least two observations")
        for name, a in (("y", y), ("X", X), ("Z", Z)):
            if not np.all(np.isfinite(a)):
                raise ValueError(f"{name} contains non-finite entries")
        if Z.shape[1] and np.any(np.all(Z == Z[0], axis=0) & (Z[0] == 0)):
            raise ValueError("instrument column identically zero")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Z", Z)

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def d_x(self) -> int:
        return self.X.shape[1]

    @property
    def d_z(self) -> int:
        return self.Z.shape[1]


@dataclass(frozen=True)
class MomentTables:
    """Sample cross-moments from which every encoder polynomial is assembled.

    Contracting with ``(1, -beta)`` reproduces ``E_n[Z_l U(beta)]`` via
    :meth:`moment` and ``E_n[Z_l^2 U(beta)^2]`` via :meth:`second_moment`.
    """

    n: int
    zy: np.ndarray  # E_n[Z_l y]
    zx: np.ndarray  # E_n[Z_l X_k]
    z2y2: np.ndarray  # E_n[Z_l^2 y^2]
    z2yx: np.ndarray  # E_n[Z_l^2 y X_k]
    z2xx: np.ndarray  # E_n[Z_l^2 X_j X_k]
    z2: np.ndarray  # E_n[Z_l^2]
    y2: float
    yx: np.ndarray
    xx: np.ndarray

    @property
    def d_z(self) -> int:
        return self.zy.shape[0]

    @property
    def d_x(self) -> int:
        return self.zx.shape[1]

    def moment(self, beta) -> np.ndarray:
        return self.zy - self.zx @ np.asarray(beta, dtype=float)

    def second_moment(self, beta) -> np.ndarray:
        b = np.asarray(beta, dtype=float)
        return self.z2y2 - 2.0 * self.z2yx @ b + np.einsum("ljk,j,k->l", self.z2xx, b, b)

    def residual_variance(self, beta) -> float:
        b = np.asarray(beta, dtype=float)
        return float(self.y2 - 2.0 * self.yx @ b + b @ self.xx @ b)


def cross_moments(sample: Sample) -> MomentTables:
    n = sample.n
    y, X, Z = sample.y, sample.X, sample.Z
    Z2 = Z * Z
    return MomentTables(
        n=n,
        zy=Z.T @ y / n,
        zx=Z.T @ X / n,
        z2y2=Z2.T @ (y * y) / n,
        z2yx=Z2.T @ (X * y[:, None]) / n,
        z2xx=np.einsum("il,ij,ik->ljk", Z2, X, X) / n,
        z2=Z2.mean(axis=0),
        y2=float(y @ y / n),
        yx=X.T @ y / n,
        xx=X.T @ X / n,
    )


@dataclass(frozen=True)
class ClassSpec:
    """Distribution class for the critical radius.

    Classes 1-3 use closed-form radii; class 4 is the Gaussian multiplier
    bootstrap and needs ``draws`` and ``seed``.
    """

    cls: int = 1
    alpha: float = 0.05
    draws: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.cls not in (1, 2, 3, 4):
            raise ValueError(f"unknown class {self.cls}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.cls == 4 and self.draws < 1000:
            raise ValueError("class 4 needs at least 1000 bootstrap draws")


def normal_cdf(x):
    return special.ndtr(x)


def normal_quantile(p):
    p = np.asarray(p, dtype=float)
    if np.any((p <= 0) | (p >= 1)):
        raise ValueError("p must lie in (0, 1)")
    out = special.ndtri(p)
    return float(out) if out.ndim == 0 else out


def chisq_quantile(p: float, df: float) -> float:
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    if df < 1:
        raise ValueError("df must be >= 1")
    return float(special.chdtri(df, 1.0 - p))


_warned_classes: set = set()


def _warn_unchecked(cls: int) -> None:
    # the side conditions of classes 1-3 involve population moment bounds
    if cls in _warned_classes:
        return
    _warned_classes.add(cls)
    msg = {
        1: "class 1 radius assumes a bounded (2+delta)-moment ratio; not verifiable from data",
        2: "class 2 radius assumes a bounded fourth-moment ratio; not verifiable from data",
        3: "class 3 radius assumes Z_l U(beta) is symmetric; not verifiable from data",
    }[cls]
    log.warning(msg)


def radius(spec: ClassSpec, d_z: int, n: int) -> float:
    """Critical radius r_n for classes 1-3.

    Class 2 uses Euler's number in ``log(d_Z (2e + 1) / alpha)``; class 3
    uses ``e**3``.
    """
    if d_z < 1 or n < 1:
        raise ValueError("d_z and n must be positive")
    a = spec.alpha
    if spec.cls == 4:
        raise ValueError("class 4 radius is data dependent; use bootstrap_radius")
    _warn_unchecked(spec.cls)
    if spec.cls == 1:
        return -normal_quantile(a / (2.0 * d_z)) / math.sqrt(n)
    if spec.cls == 2:
        return 2.0 * math.sqrt(math.log(d_z * (2.0 * math.e + 1.0) / a) / n)
    return -normal_quantile(9.0 * a / (4.0 * d_z * math.e**3)) / math.sqrt(n)


def bootstrap_radius(Z: np.ndarray | Sample, alpha: float, draws: int = 1000, seed: int = 0, chunk: int = 256) -> float:
    """Multiplier-bootstrap quantile of ``|D_Z E_n[Z W]|_inf``.

    ``W`` is i.i.d. standard normal, independent of ``Z``; ``D_Z`` is
    diagonal with entries ``E_n[Z_l^2]^{-1/2}``.
    """
    if isinstance(Z, Sample):
        Z = Z.Z
    Z = np.asarray(Z, dtype=float)
    if Z.ndim == 1:
        Z = Z[:, None]
    n = Z.shape[0]
    z2 = np.mean(Z * Z, axis=0)
    if np.any(z2 <= 0):
        raise ValueError("degenerate instrument column (zero second moment)")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    Zs = Z / np.sqrt(z2)
    gen = rng(seed)
    stats = np.empty(draws)
    for start in range(0, draws, chunk):
        k = min(chunk, draws - start)
        W = gen.standard_normal((n, k))
        stats[start : start + k] = np.max(np.abs(Zs.T @ W), axis=0) / n
    return float(np.quantile(stats, 1.0 - alpha))


def partial_out(sample: Sample, exog_columns: Sequence[int] = (), extra: Optional[np.ndarray] = None) -> Sample:
    """Residualise y, the remaining X columns and Z on exogenous regressors.

    ``exog_columns`` index columns of ``X`` that are removed; ``extra`` adds
    further exogenous columns (for example an intercept).
    """
    cols = sorted(set(int(c) for c in exog_columns))
    parts = [sample.X[:, cols]] if cols else []
    if extra is not None:
        e = np.asarray(extra, dtype=float)
        parts.append(e[:, None] if e.ndim == 1 else e)
    if not parts:
        return sample
    W = np.hstack(parts)
    G = W.T @ W
    if np.linalg.cond(G) > 1e12:
        raise np.linalg.LinAlgError("Gram matrix of exogenous columns is singular")

    def resid(A):
        return A - W @ np.linalg.solve(G, W.T @ A)

    keep = [k for k in range(sample.d_x) if k not in cols]
    return Sample(resid(sample.y), resid(sample.X[:, keep]), resid(sample.Z))


def rng(seed: int, stream: int | Sequence[int] | None = None) -> np.random.Generator:
    """Deterministic generator; ``stream`` selects an independent substream."""
    if stream is None:
        return np.random.default_rng(np.random.SeedSequence(seed))
    key = (int(stream),) if np.isscalar(stream) else tuple(int(s) for s in stream)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


# CSV --------------------------------------------------------------------------

def read_csv(path) -> Sample:
    """Read ``y,x1..x{d_X},z1..z{d_Z}`` with a strict header."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ValueError("empty CSV file") from None
        if not header or header[0] != "y":
            raise ValueError("first column must be 'y'")
        xs = [h for h in header if h.startswith("x")]
        zs = [h for h in header if h.startswith("z")]
        expected = ["y"] + [f"x{k}" for k in range(1, len(xs) + 1)] + [f"z{k}" for k in range(1, len(zs) + 1)]
        if header != expected:
            raise ValueError(f"header must be {','.join(expected)}; got {','.join(header)}")
        if not xs or not zs:
            raise ValueError("need at least one regressor and one instrument column")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ValueError(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
            try:
                rows.append([float(c) for c in row])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
    data = np.array(rows, dtype=float).reshape(-1, len(header))
    dx = len(xs)
    return Sample(data[:, 0], data[:, 1 : 1 + dx], data[:, 1 + dx :])


def write_csv(sample: Sample, path) -> None:
    header = ["y"] + [f"x{k}" for k in range(1, sample.d_x + 1)] + [f"z{k}" for k in range(1, sample.d_z + 1)]
    data = np.column_stack([sample.y, sample.X, sample.Z])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in data:
            w.writerow([repr(float(v)) for v in row])
