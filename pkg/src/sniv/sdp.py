"""Dense primal-dual interior-point solver for the small SDPs produced by
moment relaxations, plus numeric rank estimation.

Problems are stated over a moment vector ``mu``::

    minimize    c @ mu + c0
    subject to  sum_i mu[i] * F_k[i]  >= 0   (PSD, for every block k)
                E @ mu == e

The equalities (which always include ``mu[0] == 1``) are eliminated through
an echelon basis, leaving an LMI problem in free variables ``z``. That LMI
problem is the dual of a standard-form SDP; it is solved with an infeasible
path-following method using the HKM search direction and a Mehrotra
predictor-corrector step.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .poly import MatrixStructure

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
PRIMAL_INFEASIBLE = "primal-infeasible"
DUAL_INFEASIBLE = "dual-infeasible"
MAX_ITERATIONS = "max-iterations"
NUMERICAL_FAILURE = "numerical-failure"

__all__ = [
    "SdpProblem",
    "SdpSolution",
    "Tolerances",
    "solve",
    "numeric_rank",
    "write_sdpa",
    "read_sdpa",
    "OPTIMAL",
    "PRIMAL_INFEASIBLE",
    "DUAL_INFEASIBLE",
    "MAX_ITERATIONS",
    "NUMERICAL_FAILURE",
]


@dataclass(frozen=True)
class Tolerances:
    gap: float = 1e-8
    feas: float = 1e-8
    psd: float = 1e-8
    infeas: float = 1e-8
    max_iter: int = 200
    # a stalled or broken-down run is accepted when its best iterate has
    # moment-side residual below ``accept`` and gap and SOS-side residual
    # below ``accept_sos``; the residual is charged to the reported bound and
    # the reported value is the smaller of the two sides, so a loose gap only
    # costs tightness (sets without interior stall this way)
    accept: float = 1e-6
    accept_sos: float = 1e-4
    rank_tol: float = 1e-6


@dataclass
class SdpProblem:
    """Linear objective over a moment vector with LMI blocks and equalities.

    ``blocks`` hold ``(nmoments, dim, dim)`` coefficient stacks. ``eq_matrix``
    rows are linear equalities ``eq_matrix @ mu == eq_rhs``; the
    normalisation ``mu[0] == 1`` is added by :meth:`normalised` callers and
    is not implied.
    """

    nmoments: int
    objective: np.ndarray
    blocks: List[MatrixStructure]
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    objective_constant: float = 0.0
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        self.eq_matrix = np.atleast_2d(np.asarray(self.eq_matrix, dtype=float)).reshape(-1, self.nmoments)
        self.eq_rhs = np.asarray(self.eq_rhs, dtype=float).reshape(-1)
        if self.objective.shape != (self.nmoments,):
            raise ValueError("objective length must equal the moment count")
        for blk in self.blocks:
            if blk.nmoments > self.nmoments:
                raise ValueError("block references moments beyond the moment vector")
            if not np.allclose(blk.coeffs, blk.coeffs.transpose(0, 2, 1)):
                raise ValueError("block coefficient matrices must be symmetric")

    @classmethod
    def from_forms(
        cls,
        nmoments: int,
        objective: Mapping[int, float],
        blocks: Sequence[MatrixStructure],
        equalities: Sequence[Mapping[int, float]] = (),
        eq_rhs: Sequence[float] | None = None,
        normalise: bool = True,
    ) -> "SdpProblem":
        """Build from sparse linear forms; adds ``mu[0] == 1`` when ``normalise``."""
        c = np.zeros(nmoments)
        for i, v in objective.items():
            c[i] += v
        rows = []
        rhs = list(eq_rhs) if eq_rhs is not None else [0.0] * len(equalities)
        for form in equalities:
            r = np.zeros(nmoments)
            for i, v in form.items():
                r[i] += v
            rows.append(r)
        if normalise:
            r = np.zeros(nmoments)
            r[0] = 1.0
            rows.insert(0, r)
            rhs.insert(0, 1.0)
        E = np.array(rows) if rows else np.zeros((0, nmoments))
        return cls(nmoments, c, list(blocks), E, np.array(rhs, dtype=float))


@dataclass
class SdpSolution:
    mu: Optional[np.ndarray]
    objective_value: float
    status: str
    duality_gap: float
    iterations: int
    dual_bound: float = float("nan")
    seconds: float = 0.0
    primal_residual: float = float("nan")
    dual_residual: float = float("nan")

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def numeric_rank(matrix: np.ndarray, rel_tol: float = 1e-6) -> int:
    """Number of singular values above ``rel_tol`` times the largest."""
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] <= 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


# equality elimination ------------------------------------------------------

def _echelon_basis(E: np.ndarray, e: np.ndarray, tol: float = 1e-10):
    """Return (mu_p, N, consistent) with {mu : E mu = e} = mu_p + range(N).

    Gaussian elimination with pivots taken from the highest-index columns
    first, so high-degree moments are expressed through lower ones and the
    basis stays sparse for the structured equalities used here.
    """
    m, n = E.shape
    if m == 0:
        return np.zeros(n), sp.identity(n, format="csr"), True
    A = np.hstack([E, e[:, None]]).astype(float)
    scale = np.max(np.abs(A[:, :n]), axis=1)
    scale[scale == 0] = 1.0
    A /= scale[:, None]
    pivots: List[int] = []
    row = 0
    for col in range(n - 1, -1, -1):
        if row >= m:
            break
        piv = row + int(np.argmax(np.abs(A[row:, col])))
        if abs(A[piv, col]) <= tol:
            continue
        A[[row, piv]] = A[[piv, row]]
        A[row] /= A[row, col]
        others = np.flatnonzero(np.abs(A[:, col]) > 0)
        others = others[others != row]
        if others.size:
            A[others] -= np.outer(A[others, col], A[row])
        A[np.abs(A) < 1e-15] = 0.0
        pivots.append(col)
        row += 1
    consistent = bool(np.all(np.abs(A[row:, n]) <= 1e3 * tol))
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    mu_p = np.zeros(n)
    for r, col in enumerate(pivots):
        mu_p[col] = A[r, n]
    rows, cols, vals = [], [], []
    free_pos = {j: k for k, j in enumerate(free)}
    for j in free:
        rows.append(j)
        cols.append(free_pos[j])
        vals.append(1.0)
    for r, col in enumerate(pivots):
        for j in np.flatnonzero(A[r, :n]):
            if j in free_pos:
                rows.append(col)
                cols.append(free_pos[j])
                vals.append(-A[r, j])
    N = sp.csr_matrix((vals, (rows, cols)), shape=(n, len(free)))
    return mu_p, N, consistent


# interior point core ---------------------------------------------------------

class _Lmi:
    """max b@z  s.t.  S_k = C_k - sum_j z_j A_kj  PSD, with a standard-form dual."""

    def __init__(self, C: List[np.ndarray], Avec: List[sp.csr_matrix], b: np.ndarray):
        self.C = C
        self.Avec = Avec  # per block: (m, d*d), row j = ravel(A_kj)
        self.AvecT = [a.T.tocsr() for a in Avec]
        self.b = b
        self.dims = [c.shape[0] for c in C]
        self.m = b.shape[0]

    def A(self, X: List[np.ndarray]) -> np.ndarray:
        out = np.zeros(self.m)
        for Av, Xk in zip(self.Avec, X):
            out += Av @ Xk.ravel()
        return out

    def At(self, z: np.ndarray) -> List[np.ndarray]:
        return [(AT @ z).reshape(d, d) for AT, d in zip(self.AvecT, self.dims)]

    def schur(self, X: List[np.ndarray], Sinv: List[np.ndarray]) -> np.ndarray:
        M = np.zeros((self.m, self.m))
        for Av, Xk, Si in zip(self.Avec, X, Sinv):
            if Xk.shape[0] == 1:
                col = Av.toarray()[:, 0] if sp.issparse(Av) else Av[:, 0]
                M += (Xk[0, 0] * Si[0, 0]) * np.outer(col, col)
                continue
            K = np.kron(Xk, Si)
            M += np.asarray(Av @ (Av @ K).T)
        return M


def _inner(X: List[np.ndarray], S: List[np.ndarray]) -> float:
    return float(sum(np.vdot(a, b) for a, b in zip(X, S)))


def _sym(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


def _all_pd(blocks: List[np.ndarray]) -> bool:
    try:
        for b in blocks:
            np.linalg.cholesky(b)
    except np.linalg.LinAlgError:
        return False
    return True


def _max_step(X: np.ndarray, dX: np.ndarray, L: np.ndarray | None = None) -> float:
    """Largest alpha with X + alpha dX PSD (X positive definite)."""
    if X.shape[0] == 1:
        d = dX[0, 0]
        return np.inf if d >= 0 else -X[0, 0] / d
    if L is None:
        L = np.linalg.cholesky(X)
    Li = sla.solve_triangular(L, np.eye(X.shape[0]), lower=True)
    W = Li @ dX @ Li.T
    lam = np.linalg.eigvalsh(_sym(W))[0]
    return np.inf if lam >= 0 else -1.0 / lam


def _solve_schur(M: np.ndarray, rhs: np.ndarray, refine: int = 2) -> np.ndarray:
    cf = None
    try:
        cf = sla.cho_factor(M, lower=True, check_finite=False)
    except (np.linalg.LinAlgError, ValueError):
        reg = 1e-13 * max(1.0, float(np.max(np.abs(np.diag(M)))))
        try:
            cf = sla.cho_factor(M + reg * np.eye(M.shape[0]), lower=True, check_finite=False)
        except (np.linalg.LinAlgError, ValueError):
            return np.linalg.lstsq(M, rhs, rcond=None)[0]
    x = sla.cho_solve(cf, rhs, check_finite=False)
    # iterative refinement against the unregularised matrix
    for _ in range(refine):
        r = rhs - M @ x
        x = x + sla.cho_solve(cf, r, check_finite=False)
    return x


def _ipm(lmi: _Lmi, tol: Tolerances):
    nb = len(lmi.C)
    ntot = sum(lmi.dims)
    b = lmi.b
    normA = [max(1.0, float(sp.linalg.norm(Av)) if sp.issparse(Av) else float(np.linalg.norm(Av))) for Av in lmi.Avec]
    normC = max(1.0, float(np.sqrt(sum(np.sum(c * c) for c in lmi.C))))
    normb = max(1.0, float(np.linalg.norm(b)))
    xi = max(10.0, np.sqrt(ntot), ntot * float(np.max((1 + np.abs(b)).max() / (1 + np.array(normA)))))
    eta = max(10.0, np.sqrt(ntot), max(max(normA), normC))
    X = [xi * np.eye(d) for d in lmi.dims]
    S = [eta * np.eye(d) for d in lmi.dims]
    z = np.zeros(lmi.m)

    status = MAX_ITERATIONS
    best = None
    stall = 0
    it = 0
    info = {}
    for it in range(1, tol.max_iter + 1):
        AX = lmi.A(X)
        rp = b - AX
        AtZ = lmi.At(z)
        Rd = [c - s - a for c, s, a in zip(lmi.C, S, AtZ)]
        pobj = _inner(lmi.C, X)
        dobj = float(b @ z)
        gap = _inner(X, S)
        relgap = gap / (1.0 + abs(pobj) + abs(dobj))
        pinf = float(np.linalg.norm(rp)) / normb
        dinf = float(np.sqrt(sum(np.sum(r * r) for r in Rd))) / normC
        info = dict(pobj=pobj, dobj=dobj, gap=gap, relgap=relgap, pinf=pinf, dinf=dinf, rp1=float(np.abs(rp).sum()))
        score = max(relgap, pinf, dinf)
        log.debug("it %3d pobj %+.6e dobj %+.6e relgap %.1e pinf %.1e dinf %.1e", it, pobj, dobj, relgap, pinf, dinf)
        if best is None or score < best[0]:
            best = (score, [x.copy() for x in X], z.copy(), [s.copy() for s in S], dict(info))
        if relgap < tol.gap and pinf < tol.feas and dinf < tol.feas:
            status = OPTIMAL
            break
        # certificates of infeasibility of either side
        if pobj < 0 and np.linalg.norm(AX) / -pobj < tol.infeas:
            status = PRIMAL_INFEASIBLE  # LMI side empty
            break
        if dobj > 0:
            AtzS = np.sqrt(sum(np.sum((a + s) ** 2) for a, s in zip(AtZ, S)))
            if AtzS / dobj < tol.infeas:
                status = DUAL_INFEASIBLE
                break

        try:
            LX = [np.linalg.cholesky(x) for x in X]
            LS = [np.linalg.cholesky(s) for s in S]
        except np.linalg.LinAlgError:
            status = NUMERICAL_FAILURE
            break
        Sinv = [sla.cho_solve((l, True), np.eye(l.shape[0])) for l in LS]
        M = lmi.schur(X, Sinv)
        mu = gap / ntot

        def direction(sigma, corr=None):
            # M dz = b - A(sigma mu S^-1 - X Rd S^-1 - corr), using rp + A(X) = b
            G = []
            for k in range(nb):
                t = X[k] @ Rd[k] @ Sinv[k] - sigma * mu * Sinv[k]
                if corr is not None:
                    t = t + corr[k]
                G.append(t)
            dz = _solve_schur(M, b + lmi.A(G))
            AtdZ = lmi.At(dz)
            dS = [Rd[k] - AtdZ[k] for k in range(nb)]
            dX = []
            for k in range(nb):
                t = sigma * mu * Sinv[k] - X[k] - X[k] @ dS[k] @ Sinv[k]
                if corr is not None:
                    t = t - corr[k]
                dX.append(_sym(t))
            return dX, dz, dS

        dXp, dzp, dSp = direction(0.0)
        try:
            ap = min(1.0, min(_max_step(X[k], dXp[k], LX[k]) for k in range(nb)))
            ad = min(1.0, min(_max_step(S[k], dSp[k], LS[k]) for k in range(nb)))
        except np.linalg.LinAlgError:
            status = NUMERICAL_FAILURE
            break
        newgap = _inner([X[k] + ap * dXp[k] for k in range(nb)], [S[k] + ad * dSp[k] for k in range(nb)])
        expon = max(1.0, 3.0 * min(ap, ad) ** 2)
        ratio = max(0.0, newgap / gap) if gap > 0 else 0.0
        sigma = min(1.0, ratio**expon)
        corr = [dXp[k] @ dSp[k] @ Sinv[k] for k in range(nb)]
        dX, dz, dS = direction(sigma, corr)
        try:
            ap = min(_max_step(X[k], dX[k], LX[k]) for k in range(nb))
            ad = min(_max_step(S[k], dS[k], LS[k]) for k in range(nb))
        except np.linalg.LinAlgError:
            status = NUMERICAL_FAILURE
            break
        gamma = 0.9 + 0.09 * min(1.0, ap, ad)
        ap = min(1.0, gamma * ap)
        ad = min(1.0, gamma * ad)
        for _ in range(8):
            Xn = [_sym(X[k] + ap * dX[k]) for k in range(nb)]
            Sn = [_sym(S[k] + ad * dS[k]) for k in range(nb)]
            if _all_pd(Xn) and _all_pd(Sn):
                break
            # rounding pushed an iterate to the boundary; shorten the step
            ap *= 0.8
            ad *= 0.8
        else:
            status = NUMERICAL_FAILURE
            break
        X, S = Xn, Sn
        z = z + ad * dz
        if max(ap, ad) < 1e-8:
            stall += 1
            if stall >= 3:
                break
        else:
            stall = 0
    else:
        it = tol.max_iter
    if status in (MAX_ITERATIONS, NUMERICAL_FAILURE) and best is not None:
        score, X, z, S, info = best
        if info["relgap"] < tol.accept_sos and info["dinf"] < tol.accept and info["pinf"] < tol.accept_sos:
            log.debug("accepting best iterate: relgap %.1e dinf %.1e pinf %.1e", info["relgap"], info["dinf"], info["pinf"])
            status = OPTIMAL
    return status, X, z, S, info, it


def solve(problem: SdpProblem, tolerances: Tolerances | None = None) -> SdpSolution:
    """Solve ``problem``; see the module docstring for the problem form.

    ``objective_value`` is evaluated at the returned moment vector and
    ``dual_bound`` is the standard-form dual objective (a certified lower
    bound whenever the dual residual is small).
    """
    tol = tolerances or Tolerances()
    t0 = time.perf_counter()
    mu_p, N, consistent = _echelon_basis(problem.eq_matrix, problem.eq_rhs)
    if not consistent:
        return SdpSolution(None, float("nan"), PRIMAL_INFEASIBLE, float("nan"), 0, seconds=time.perf_counter() - t0)
    c = problem.objective
    const = float(c @ mu_p) + problem.objective_constant
    cz = np.asarray(N.T @ c).ravel()
    C_blocks, Avec = [], []
    used = np.zeros(N.shape[1], dtype=bool)
    for blk in problem.blocks:
        nm, d = blk.nmoments, blk.dim
        F = blk.coeffs.reshape(nm, d * d)
        C_blocks.append((mu_p[:nm] @ F).reshape(d, d))
        Fs = sp.csr_matrix(F)
        Az = (N[:nm].T @ Fs).tocsr()  # (nfree, d*d), coefficient of z_j in the block
        Az.eliminate_zeros()
        used |= np.asarray(abs(Az).sum(axis=1)).ravel() > 0
        Avec.append(-Az)
    if N.shape[1] == 0:
        # fully determined moment vector
        mu = mu_p.copy()
        feas = all(
            np.linalg.eigvalsh(blk.evaluate(mu))[0] >= -tol.psd * (1 + np.linalg.norm(blk.evaluate(mu)))
            for blk in problem.blocks
        )
        status = OPTIMAL if feas else PRIMAL_INFEASIBLE
        val = float(c @ mu) + problem.objective_constant
        return SdpSolution(mu if feas else None, val, status, 0.0, 0, dual_bound=val, seconds=time.perf_counter() - t0)
    if np.any(~used & (np.abs(cz) > 1e-14)):
        return SdpSolution(None, -np.inf, DUAL_INFEASIBLE, float("nan"), 0, seconds=time.perf_counter() - t0)
    keep = np.flatnonzero(used)
    Avec = [a[keep] for a in Avec]
    cz = cz[keep]
    Nk = N[:, keep]

    cscale = 1.0
    lmi = _Lmi(C_blocks, Avec, -cz / cscale)
    # diverging iterates may overflow before the Cholesky test flags them
    with np.errstate(over="ignore", invalid="ignore"):
        status, X, z, S, info, iters = _ipm(lmi, tol)
    seconds = time.perf_counter() - t0
    if status == PRIMAL_INFEASIBLE:
        return SdpSolution(None, float("inf"), PRIMAL_INFEASIBLE, float("nan"), iters, seconds=seconds)
    if status == DUAL_INFEASIBLE:
        return SdpSolution(None, -np.inf, DUAL_INFEASIBLE, float("nan"), iters, seconds=seconds)
    mu = mu_p + np.asarray(Nk @ z).ravel()
    primal_value = float(problem.objective @ mu) + problem.objective_constant
    # b'z' <= <C,X> + |b - A(X)|_1 max|z'| for every feasible z'; scaled
    # pseudo-moments are O(1), so the residual is charged with max(1, |z|_inf)
    slack = info.get("rp1", 0.0) * max(1.0, float(np.max(np.abs(z))) if z.size else 1.0)
    dual_bound = -(info.get("pobj", np.nan) + slack) * cscale + const
    gap = abs(primal_value - dual_bound)
    # the smaller of the two is the safer lower bound on the relaxation value
    value = min(primal_value, dual_bound) if np.isfinite(dual_bound) else primal_value
    if status == OPTIMAL:
        # confirm block feasibility of the recovered moment vector
        for blk in problem.blocks:
            Mk = blk.evaluate(mu)
            lam = np.linalg.eigvalsh(Mk)[0] if blk.dim > 1 else Mk[0, 0]
            if lam < -tol.psd * (1.0 + np.linalg.norm(Mk)):
                log.debug("block PSD check failed: %.3e", lam)
                status = MAX_ITERATIONS
                break
    return SdpSolution(
        mu,
        value,
        status,
        gap,
        iters,
        dual_bound=dual_bound,
        seconds=seconds,
        primal_residual=info.get("dinf", np.nan),
        dual_residual=info.get("pinf", np.nan),
    )


# SDPA sparse format -----------------------------------------------------------

def write_sdpa(problem: SdpProblem, path_or_file) -> None:
    """Write the equality-reduced problem in sparse SDPA format.

    Variables are the free coordinates after eliminating equalities; the
    constant objective offset is recorded in a comment line.
    """
    mu_p, N, consistent = _echelon_basis(problem.eq_matrix, problem.eq_rhs)
    if not consistent:
        raise ValueError("equality constraints are inconsistent")
    c = np.asarray(N.T @ problem.objective).ravel()
    const = float(problem.objective @ mu_p) + problem.objective_constant
    lines = [f'"reduced moment relaxation; objective offset {const:.17g}"', str(N.shape[1]), str(len(problem.blocks))]
    lines.append(" ".join(str(b.dim) for b in problem.blocks))
    lines.append(" ".join(f"{v:.17g}" for v in c))
    for k, blk in enumerate(problem.blocks, start=1):
        nm, d = blk.nmoments, blk.dim
        F = blk.coeffs.reshape(nm, d * d)
        F0 = -(mu_p[:nm] @ F).reshape(d, d)
        Fz = np.asarray((N[:nm].T @ sp.csr_matrix(F)).todense())
        for mat, M in [(0, F0)] + [(j + 1, Fz[j].reshape(d, d)) for j in range(Fz.shape[0])]:
            for i in range(d):
                for jj in range(i, d):
                    if M[i, jj] != 0.0:
                        lines.append(f"{mat} {k} {i + 1} {jj + 1} {M[i, jj]:.17g}")
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w") as fh:
            fh.write(text)


def read_sdpa(path_or_file) -> SdpProblem:
    """Read sparse SDPA (``min c@x s.t. sum x_i F_i - F_0 PSD``).

    The result is an :class:`SdpProblem` whose moment 0 is the constant one,
    so ``mu = (1, x)``.
    """
    if hasattr(path_or_file, "read"):
        raw = path_or_file.read()
    else:
        with open(path_or_file) as fh:
            raw = fh.read()
    offset = 0.0
    tokens: List[str] = []
    for line in raw.splitlines():
        s = line.strip()
        if not s:
            continue
        if s[0] in "\"*":
            if "offset" in s:
                try:
                    offset = float(s.rsplit(" ", 1)[-1].rstrip('"'))
                except ValueError:
                    pass
            continue
        tokens.append(s.replace(",", " ").replace("{", " ").replace("}", " "))
    m = int(tokens[0].split()[0])
    nblocks = int(tokens[1].split()[0])
    sizes = [int(float(t)) for t in tokens[2].split()][:nblocks]
    c = [float(t) for t in tokens[3].split()][:m]
    coeffs = [np.zeros((m + 1, abs(d), abs(d))) for d in sizes]
    for line in tokens[4:]:
        f = line.split()
        mat, blk, i, j, v = int(f[0]), int(f[1]) - 1, int(f[2]) - 1, int(f[3]) - 1, float(f[4])
        val = -v if mat == 0 else v
        if sizes[blk] < 0:
            if i != j:
                continue
        coeffs[blk][mat, i, j] = val
        coeffs[blk][mat, j, i] = val
    blocks: List[MatrixStructure] = []
    for blk, d in enumerate(sizes):
        if d < 0:  # diagonal (LP) block -> 1x1 blocks
            for i in range(-d):
                blocks.append(MatrixStructure(1, coeffs[blk][:, i : i + 1, i : i + 1].copy()))
        else:
            blocks.append(MatrixStructure(d, coeffs[blk]))
    obj = np.concatenate([[0.0], c])
    E = np.zeros((1, m + 1))
    E[0, 0] = 1.0
    return SdpProblem(m + 1, obj, blocks, E, np.array([1.0]), objective_constant=offset)
