"""Confidence sets as semialgebraic sets.

Each encoder returns a :class:`~sniv.hierarchy.SemialgebraicSet` over the
decision vector ``(beta, theta, zeta, eta)``:

* ``beta``  -- regression coefficients (d_X),
* ``theta`` -- shifts of the moment conditions of the instruments whose
  exogeneity is questioned (one per such instrument, zero otherwise),
* ``zeta``  -- support indicators for the questioned coefficients (only with
  a sparsity certificate ``s``),
* ``eta``   -- support indicators for ``theta`` (only with ``s_tilde``).

Every polynomial is divided by its largest absolute coefficient; this does
not change the set and puts membership tolerances on a common scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla

from .hierarchy import Layout, SemialgebraicSet
from .poly import Polynomial, format_polynomial, parse_polynomial
from .stats import ClassSpec, MomentTables, Sample, chisq_quantile

__all__ = [
    "SnivConfig",
    "ARUndefined",
    "encode_sniv",
    "encode_ar",
    "encode_custom",
    "ar_forms",
    "ar_critical_value",
    "dump_system",
    "load_system",
]


class ARUndefined(ValueError):
    """The Anderson-Rubin statistic is not defined for these dimensions."""


@dataclass(frozen=True)
class SnivConfig:
    """Options for :func:`encode_sniv`.

    Parameters
    ----------
    class_spec : ClassSpec
        Distribution class and level.
    questioned : sequence of int, optional
        0-based indices ``S_Q`` of regressors whose coefficient may be zero.
        Defaults to all regressors when ``s`` is given.
    s : int, optional
        Sparsity certificate: at most ``s`` nonzero coefficients in ``S_Q``.
    exogenous : sequence of int, optional
        0-based indices ``S_perp`` of instruments known to be exogenous.
        ``None`` means every instrument is exogenous (``theta = 0``).
    s_tilde : int, optional
        At most ``s_tilde`` endogenous instruments among the questioned ones.
    ball : float
        Squared radius ``B`` of the ball intersected with the set.
    beta_constraints, theta_constraints : sequence of Polynomial
        Extra inequalities (``>= 0``) over beta (d_X variables) or over the
        theta coordinates (one per questioned instrument).
    theta_signs : dict
        Instrument index -> +1 or -1 to impose ``theta_l >= 0`` or ``<= 0``.
    """

    class_spec: ClassSpec = field(default_factory=ClassSpec)
    questioned: Optional[Tuple[int, ...]] = None
    s: Optional[int] = None
    exogenous: Optional[Tuple[int, ...]] = None
    s_tilde: Optional[int] = None
    ball: float = 1000.0
    beta_constraints: Tuple[Polynomial, ...] = ()
    theta_constraints: Tuple[Polynomial, ...] = ()
    theta_signs: Dict[int, int] = field(default_factory=dict)

    def endogenous_candidates(self, d_z: int) -> List[int]:
        if self.exogenous is None:
            return []
        exo = set(self.exogenous)
        return [l for l in range(d_z) if l not in exo]

    def questioned_set(self, d_x: int) -> List[int]:
        if self.s is None:
            return []
        return sorted(set(self.questioned)) if self.questioned is not None else list(range(d_x))

    def validate(self, d_x: int, d_z: int) -> None:
        if self.exogenous is not None and any(not 0 <= l < d_z for l in self.exogenous):
            raise ValueError("exogenous instrument index out of range")
        if self.questioned is not None and any(not 0 <= k < d_x for k in self.questioned):
            raise ValueError("questioned regressor index out of range")
        sq = self.questioned_set(d_x)
        if self.s is not None and not 0 <= self.s <= len(sq):
            raise ValueError(f"sparsity certificate s={self.s} must lie in [0, {len(sq)}]")
        cand = self.endogenous_candidates(d_z)
        if self.s_tilde is not None:
            if self.exogenous is None:
                raise ValueError("s_tilde needs the set of known-exogenous instruments")
            if not 0 <= self.s_tilde <= len(cand):
                raise ValueError(f"s_tilde={self.s_tilde} must lie in [0, {len(cand)}]")
        if self.class_spec.cls == 4 and cand:
            raise ValueError("class 4 cannot be combined with potentially endogenous instruments")
        if self.ball <= 0:
            raise ValueError("ball radius must be positive")


def _normalise(p: Polynomial) -> Polynomial:
    m = p.max_abs_coef()
    return p if m == 0 else p * (1.0 / m)


def _layout(d_x: int, theta_for: Sequence[int], zeta_for: Sequence[int], with_eta: bool) -> Layout:
    blocks = [("beta", 0, d_x)]
    pos = d_x
    if theta_for:
        blocks.append(("theta", pos, len(theta_for)))
        pos += len(theta_for)
    indicators = []
    if zeta_for:
        blocks.append(("zeta", pos, len(zeta_for)))
        indicators += [(pos + i, k) for i, k in enumerate(zeta_for)]
        pos += len(zeta_for)
    if with_eta and theta_for:
        blocks.append(("eta", pos, len(theta_for)))
        indicators += [(pos + i, d_x + i) for i in range(len(theta_for))]
        pos += len(theta_for)
    return Layout(tuple(blocks), tuple(indicators), tuple(theta_for))


def _sparsity_block(nv: int, targets: Sequence[int], aux: Sequence[int], bound: int):
    """Indicator encoding of ``|support(x_targets)| <= bound``."""
    ineqs, eqs, labels = [], [], []
    one = Polynomial.constant(nv, 1.0)
    total = Polynomial.constant(nv, float(bound))
    for t, a in zip(targets, aux):
        za = Polynomial.variable(nv, a)
        xt = Polynomial.variable(nv, t)
        eqs.append(za * (one - za))
        eqs.append((one - za) * xt)
        ineqs += [za, one - za]
        labels += [f"indicator {a} >= 0", f"indicator {a} <= 1"]
        total = total - za
    ineqs.append(total)
    labels.append(f"support count <= {bound}")
    return ineqs, eqs, labels


def encode_sniv(tables: MomentTables, r_n: float, cfg: SnivConfig) -> SemialgebraicSet:
    """Encode the self-normalised confidence set.

    For classes 1-3 and every instrument ``l`` the inequality is
    ``r^2 E_n[(Z_l U - theta_l)^2] - (E_n[Z_l U] - theta_l)^2 >= 0``;
    for class 4 it is ``r^2 E_n[Z_l^2] E_n[U^2] - E_n[Z_l U]^2 >= 0``.
    """
    if not r_n > 0:
        raise ValueError("radius must be positive")
    d_x, d_z = tables.d_x, tables.d_z
    cfg.validate(d_x, d_z)
    theta_for = cfg.endogenous_candidates(d_z)
    zeta_for = cfg.questioned_set(d_x)
    with_eta = cfg.s_tilde is not None
    layout = _layout(d_x, theta_for, zeta_for, with_eta)
    nv = layout.nvars
    beta = [Polynomial.variable(nv, k) for k in range(d_x)]
    theta_pos = {l: d_x + i for i, l in enumerate(theta_for)}

    def linear_in_beta(const: float, coefs: np.ndarray) -> Polynomial:
        p = Polynomial.constant(nv, const)
        for k in range(d_x):
            if coefs[k] != 0.0:
                p = p + beta[k] * float(coefs[k])
        return p

    def quad_in_beta(const: float, lin: np.ndarray, quad: np.ndarray) -> Polynomial:
        # const - 2 lin.beta + beta' quad beta
        Q = np.zeros((nv, nv))
        Q[:d_x, :d_x] = quad
        g = np.zeros(nv)
        g[:d_x] = -2.0 * lin
        return Polynomial.quadratic(Q, g, const)

    r2 = r_n * r_n
    ineqs: List[Polynomial] = []
    labels: List[str] = []
    if cfg.class_spec.cls == 4:
        uu = quad_in_beta(tables.y2, tables.yx, tables.xx)
    for l in range(d_z):
        m1 = linear_in_beta(tables.zy[l], -tables.zx[l])  # E_n[Z_l U(beta)]
        if cfg.class_spec.cls == 4:
            g = uu * (r2 * tables.z2[l]) - m1 * m1
        else:
            m2 = quad_in_beta(tables.z2y2[l], tables.z2yx[l], tables.z2xx[l])
            if l in theta_pos:
                t = Polynomial.variable(nv, theta_pos[l])
                m2 = m2 - m1 * t * 2.0 + t * t
                m1 = m1 - t
            g = m2 * r2 - m1 * m1
        ineqs.append(_normalise(g))
        labels.append(f"moment z{l + 1}")

    eqs: List[Polynomial] = []
    if zeta_for:
        start = layout.block("zeta").start
        i2, e2, l2 = _sparsity_block(nv, zeta_for, [start + i for i in range(len(zeta_for))], cfg.s)
        ineqs += i2
        eqs += e2
        labels += l2
    if with_eta and theta_for:
        start = layout.block("eta").start
        targets = [theta_pos[l] for l in theta_for]
        i2, e2, l2 = _sparsity_block(nv, targets, [start + i for i in range(len(theta_for))], cfg.s_tilde)
        ineqs += i2
        eqs += e2
        labels += l2
    for l, sign in cfg.theta_signs.items():
        if l not in theta_pos:
            raise ValueError(f"sign restriction on instrument {l} which is not questioned")
        ineqs.append(Polynomial.variable(nv, theta_pos[l], float(np.sign(sign))))
        labels.append(f"theta sign z{l + 1}")
    for p in cfg.beta_constraints:
        if p.nvars != d_x:
            raise ValueError("beta constraint has the wrong variable count")
        ineqs.append(p.embed(nv, list(range(d_x))))
        labels.append("beta parameter space")
    for p in cfg.theta_constraints:
        if p.nvars != len(theta_for):
            raise ValueError("theta constraint has the wrong variable count")
        ineqs.append(p.embed(nv, [theta_pos[l] for l in theta_for]))
        labels.append("theta parameter space")
    return SemialgebraicSet(layout, tuple(ineqs), tuple(eqs), float(cfg.ball), tuple(labels))


# Anderson-Rubin -------------------------------------------------------------------

def ar_critical_value(alpha: float, d_z: int, d_x: int, d_x1: Optional[int] = None) -> float:
    """``C_alpha(d_Z)`` or, for a sub-vector of size ``d_x1``, ``C_alpha(d_Z - d_X + d_x1)``."""
    df = d_z if d_x1 is None else d_z - d_x + d_x1
    return chisq_quantile(1.0 - alpha, df)


def ar_forms(sample: Sample) -> Tuple[np.ndarray, np.ndarray]:
    """Quadratic forms ``(A, Bq)`` with ``p_AR = v'Av`` and ``q_AR = v'Bq v``, ``v = (1, -beta)``."""
    n, d_z, d_x = sample.n, sample.d_z, sample.d_x
    if d_z >= n:
        raise ARUndefined(f"AR statistic undefined: d_Z={d_z} >= n={n}")
    if d_z < d_x:
        raise ARUndefined(f"AR statistic needs d_Z >= d_X (got {d_z} < {d_x})")
    Z = sample.Z
    G = Z.T @ Z
    ev = np.linalg.eigvalsh(G)
    if ev[0] <= 0 or ev[-1] / ev[0] > 1e12:
        raise np.linalg.LinAlgError("Z'Z is singular or too ill-conditioned")
    cf = sla.cho_factor(G)
    W = np.column_stack([sample.y, sample.X])
    ZW = Z.T @ W
    A = ZW.T @ sla.cho_solve(cf, ZW)
    A = 0.5 * (A + A.T)
    Bq = (W.T @ W - A) / (n - d_z)
    return A, 0.5 * (Bq + Bq.T)


def encode_ar(sample: Sample, alpha: float, d_x1: Optional[int] = None, ball: float = 1000.0) -> SemialgebraicSet:
    """Anderson-Rubin set ``C q_AR(beta) - p_AR(beta) >= 0``.

    With ``d_x1`` the critical value is the sub-vector one,
    ``C_alpha(d_Z - d_X + d_x1)``; intervals for a coordinate use
    ``d_x1 = 1``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    d_x = sample.d_x
    if d_x1 is not None and not 1 <= d_x1 <= d_x:
        raise ValueError("d_x1 must lie in [1, d_X]")
    A, Bq = ar_forms(sample)
    C = ar_critical_value(alpha, sample.d_z, d_x, d_x1)
    Q = C * Bq - A
    # (1, -b)' Q (1, -b) = Q00 - 2 Q[0,1:] b + b' Q[1:,1:] b
    g = Polynomial.quadratic(Q[1:, 1:], -2.0 * Q[0, 1:], Q[0, 0])
    return SemialgebraicSet(Layout.simple(d_x), (_normalise(g),), (), float(ball), ("anderson-rubin",))


def encode_custom(p_hat: Polynomial, q_hat: Polynomial, ball: float = 1000.0) -> SemialgebraicSet:
    """Set ``{beta : p_hat(beta) <= q_hat(beta)}`` for a user-supplied test."""
    if p_hat.nvars != q_hat.nvars:
        raise ValueError("p_hat and q_hat must share the variable layout")
    g = q_hat - p_hat
    return SemialgebraicSet(Layout.simple(p_hat.nvars), (_normalise(g),), (), float(ball), ("custom test",))


# text dump ------------------------------------------------------------------------

def dump_system(sset: SemialgebraicSet, header: Sequence[str] = ()) -> str:
    """Serialise a set: layout lines, then one ``inequality``/``equality``
    section per polynomial in the poly text format, each closed by ``end``.
    The ball is recorded as ``ball B`` and is implied, not listed."""
    lay = sset.layout
    lines = [f"# {h}" for h in header]
    lines.append(f"nvars {sset.nvars}")
    for name, start, size in lay.blocks:
        lines.append(f"block {name} {start} {size}")
    for aux, target in lay.indicators:
        lines.append(f"indicator {aux} {target}")
    if lay.theta_instruments:
        lines.append("theta_instruments " + " ".join(str(l) for l in lay.theta_instruments))
    lines.append(f"ball {sset.ball_radius_sq:.17g}")
    labels = list(sset.labels) + [""] * (len(sset.inequalities) - len(sset.labels))
    for g, lab in zip(sset.inequalities, labels):
        lines += [f"inequality {lab}".rstrip(), format_polynomial(g), "end"]
    for q in sset.equalities:
        lines += ["equality", format_polynomial(q), "end"]
    return "\n".join(lines) + "\n"


def load_system(text: str) -> SemialgebraicSet:
    """Inverse of :func:`dump_system`."""
    nvars = None
    blocks, indicators, theta_inst = [], [], ()
    ball = 1000.0
    ineqs, eqs, labels = [], [], []
    lines = iter(text.splitlines())
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "nvars":
            nvars = int(rest)
        elif key == "block":
            name, start, size = rest.split()
            blocks.append((name, int(start), int(size)))
        elif key == "indicator":
            a, t = rest.split()
            indicators.append((int(a), int(t)))
        elif key == "theta_instruments":
            theta_inst = tuple(int(v) for v in rest.split())
        elif key == "ball":
            ball = float(rest)
        elif key in ("inequality", "equality"):
            if nvars is None:
                raise ValueError("nvars must precede the polynomials")
            body = []
            for b in lines:
                if b.strip() == "end":
                    break
                body.append(b)
            else:
                raise ValueError("polynomial section without 'end'")
            p = parse_polynomial(body, nvars)
            if key == "inequality":
                ineqs.append(p)
                labels.append(rest)
            else:
                eqs.append(p)
        else:
            raise ValueError(f"unknown line {line!r}")
    if nvars is None:
        raise ValueError("missing nvars line")
    layout = Layout(tuple(blocks), tuple(indicators), theta_inst) if blocks else Layout.simple(nvars)
    return SemialgebraicSet(layout, tuple(ineqs), tuple(eqs), ball, tuple(labels))
