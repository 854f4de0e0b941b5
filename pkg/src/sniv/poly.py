"""Sparse multivariate polynomials, graded-lex monomial indexing and the
moment / localizing matrix structures built on top of them.

Monomials are tuples of non-negative exponents, one per decision variable.
Moment vectors are indexed in graded lexicographic order: monomials are
sorted by total degree, and within a degree lexicographically with the
first variable most significant, so for two variables the order is
``1, x1, x2, x1^2, x1 x2, x2^2, ...``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

import numpy as np

Monomial = Tuple[int, ...]

__all__ = [
    "Monomial",
    "Polynomial",
    "MatrixStructure",
    "basis_size",
    "monomials_upto",
    "grlex_index",
    "grlex_monomial",
    "riesz",
    "apply_form",
    "dirac_moments",
    "moment_matrix_structure",
    "moment_index_grid",
    "localizing_matrix_structure",
    "format_polynomial",
    "parse_polynomial",
]


def basis_size(nvars: int, degree: int) -> int:
    """Number of monomials in ``nvars`` variables of degree at most ``degree``."""
    if degree < 0:
        return 0
    return math.comb(nvars + degree, degree)


def _compositions(total: int, nvars: int) -> Iterator[Monomial]:
    # exponent vectors summing to `total`, lexicographically descending
    if nvars == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, nvars - 1):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def monomials_upto(nvars: int, degree: int) -> Tuple[Monomial, ...]:
    """All monomials of degree <= ``degree`` in graded-lex order."""
    if nvars == 0:
        return ((),)
    out: List[Monomial] = []
    for d in range(degree + 1):
        out.extend(_compositions(d, nvars))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _index_table(nvars: int, degree: int) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_upto(nvars, degree))}


def _count_with_degree(nvars: int, degree: int) -> int:
    # monomials of exactly `degree`
    if nvars == 0:
        return 1 if degree == 0 else 0
    return math.comb(nvars - 1 + degree, degree)


def grlex_index(m: Sequence[int]) -> int:
    """Position of monomial ``m`` in the graded-lex order.

    The index does not depend on any degree cap, so it is stable when a
    moment vector is truncated at a higher order.
    """
    m = tuple(int(e) for e in m)
    if any(e < 0 for e in m):
        raise ValueError(f"negative exponent in {m}")
    nvars = len(m)
    total = sum(m)
    idx = basis_size(nvars, total - 1)
    remaining = total
    # count monomials of the same degree that come earlier (larger leading exponent)
    for k in range(nvars - 1):
        for e in range(remaining, m[k], -1):
            idx += _count_with_degree(nvars - k - 1, remaining - e)
        remaining -= m[k]
    return idx


def grlex_monomial(index: int, nvars: int) -> Monomial:
    """Inverse of :func:`grlex_index`."""
    if index < 0:
        raise ValueError("index must be non-negative")
    degree = 0
    while basis_size(nvars, degree) <= index:
        degree += 1
    offset = index - basis_size(nvars, degree - 1)
    exps = []
    remaining = degree
    for k in range(nvars - 1):
        for e in range(remaining, -1, -1):
            block = _count_with_degree(nvars - k - 1, remaining - e)
            if offset < block:
                exps.append(e)
                remaining -= e
                break
            offset -= block
    exps.append(remaining)
    return tuple(exps)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial with float coefficients.

    Parameters
    ----------
    nvars : int
        Number of decision variables.
    terms : mapping, optional
        Monomial exponent tuple -> coefficient. Zero coefficients are dropped.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], float] | None = None):
        self.nvars = int(nvars)
        clean: Dict[Monomial, float] = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.nvars:
                raise ValueError(f"monomial {mono} does not have {self.nvars} exponents")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = float(coef)
            if c != 0.0:
                clean[mono] = clean.get(mono, 0.0) + c
                if clean[mono] == 0.0:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, value: float) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, k: int, coef: float = 1.0) -> "Polynomial":
        mono = [0] * nvars
        mono[k] = 1
        return cls(nvars, {tuple(mono): coef})

    @classmethod
    def linear(cls, coefs: Sequence[float], const: float = 0.0) -> "Polynomial":
        n = len(coefs)
        p = {(0,) * n: const}
        for k, c in enumerate(coefs):
            mono = [0] * n
            mono[k] = 1
            p[tuple(mono)] = c
        return cls(n, p)

    @classmethod
    def quadratic(cls, Q: np.ndarray, g: Sequence[float], c: float) -> "Polynomial":
        """Build ``x^T Q x + g^T x + c`` (Q need not be symmetric)."""
        Q = np.asarray(Q, dtype=float)
        n = Q.shape[0]
        terms: Dict[Monomial, float] = {(0,) * n: c}
        for k in range(n):
            mono = [0] * n
            mono[k] = 1
            terms[tuple(mono)] = terms.get(tuple(mono), 0.0) + float(g[k])
            for j in range(n):
                coef = Q[k, j]
                if coef == 0.0:
                    continue
                m2 = [0] * n
                m2[k] += 1
                m2[j] += 1
                terms[tuple(m2)] = terms.get(tuple(m2), 0.0) + float(coef)
        return cls(n, terms)

    # basic protocol ---------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, float]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree 0 by convention here."""
        return max((sum(m) for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Sequence[int]) -> float:
        return self._terms.get(tuple(mono), 0.0)

    def max_abs_coef(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "Polynomial(0)"
        parts = []
        for mono in sorted(self._terms, key=grlex_index):
            parts.append(f"{self._terms[mono]:+g}*x^{mono}")
        return "Polynomial(" + " ".join(parts) + ")"

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different variable spaces")
            return other
        return Polynomial.constant(self.nvars, float(other))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0.0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = float(other)
            return Polynomial(self.nvars, {m: s * c for m, c in self._terms.items()})
        other = self._coerce(other)
        out: Dict[Monomial, float] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0.0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.nvars, 1.0)
        for _ in range(int(k)):
            out = out * self
        return out

    def mul_monomial(self, mono: Monomial) -> "Polynomial":
        return Polynomial(self.nvars, {_mono_mul(m, mono): c for m, c in self._terms.items()})

    def scale_variables(self, factors: Sequence[float]) -> "Polynomial":
        """Substitute ``x_k -> factors[k] * x_k``."""
        f = np.asarray(factors, dtype=float)
        out = {}
        for m, c in self._terms.items():
            out[m] = c * float(np.prod(f ** np.asarray(m)))
        return Polynomial(self.nvars, out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Re-express in a larger variable space; variable k goes to ``positions[k]``."""
        out = {}
        for m, c in self._terms.items():
            big = [0] * nvars
            for k, e in enumerate(m):
                big[positions[k]] += e
            out[tuple(big)] = c
        return Polynomial(nvars, out)

    def __call__(self, point: Sequence[float]) -> float:
        x = np.asarray(point, dtype=float)
        if x.shape != (self.nvars,):
            raise ValueError(f"point must have shape ({self.nvars},)")
        total = 0.0
        for m, c in self._terms.items():
            total += c * float(np.prod(x ** np.asarray(m)))
        return total

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorised evaluation at the rows of ``points``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(pts.shape[0])
        for m, c in self._terms.items():
            out += c * np.prod(pts ** np.asarray(m), axis=1)
        return out


def riesz(p: Polynomial, order: int | None = None) -> Dict[int, float]:
    """Riesz functional of ``p``: a sparse linear form over moment indices.

    ``order`` is the order h of the ambient moment vector (degree cap 2h); a
    polynomial of higher degree raises ``ValueError``.
    """
    if order is not None and p.degree > 2 * order:
        raise ValueError(f"degree {p.degree} exceeds moment order 2*{order}")
    form: Dict[int, float] = {}
    for m, c in p.items():
        i = grlex_index(m)
        form[i] = form.get(i, 0.0) + c
    return form


def apply_form(form: Mapping[int, float], mu: np.ndarray) -> float:
    return float(sum(c * mu[i] for i, c in form.items()))


def dirac_moments(point: Sequence[float], order: int) -> np.ndarray:
    """Moment vector of the point mass at ``point`` up to degree ``2*order``."""
    x = np.asarray(point, dtype=float)
    monos = np.array(monomials_upto(len(x), 2 * order), dtype=float)
    if len(x) == 0:
        return np.ones(1)
    return np.prod(x ** monos, axis=1)


@dataclass(frozen=True)
class MatrixStructure:
    """Symmetric matrix whose entries are linear forms in the moments.

    ``coeffs`` has shape ``(nmoments, dim, dim)``: the matrix evaluated at a
    moment vector ``mu`` is ``tensordot(mu, coeffs, 1)``. Dense storage is
    fine at the sizes produced here (dim below ~100).
    """

    dim: int
    coeffs: np.ndarray

    @property
    def nmoments(self) -> int:
        return self.coeffs.shape[0]

    def entry(self, i: int, j: int) -> Dict[int, float]:
        col = self.coeffs[:, i, j]
        return {int(k): float(col[k]) for k in np.flatnonzero(col)}

    def evaluate(self, mu: np.ndarray) -> np.ndarray:
        mu = np.asarray(mu, dtype=float)
        n = self.coeffs.shape[0]
        return np.tensordot(mu[:n], self.coeffs, axes=1)

    def referenced(self) -> np.ndarray:
        return np.flatnonzero(np.any(self.coeffs != 0.0, axis=(1, 2)))


@functools.lru_cache(maxsize=64)
def moment_index_grid(nvars: int, h: int) -> np.ndarray:
    """Integer matrix of grlex indices: entry (i, j) indexes ``m_i * m_j``."""
    basis = monomials_upto(nvars, h)
    table = _index_table(nvars, 2 * h)
    grid = np.empty((len(basis), len(basis)), dtype=np.int64)
    for a, ma in enumerate(basis):
        for b in range(a, len(basis)):
            k = table[_mono_mul(ma, basis[b])]
            grid[a, b] = grid[b, a] = k
    return grid


def moment_matrix_structure(nvars: int, h: int, nmoments: int | None = None) -> MatrixStructure:
    """Structure of ``M_h(mu)``; entry (i, j) is the moment of ``m_i * m_j``."""
    if h < 0:
        raise ValueError("order must be non-negative")
    grid = moment_index_grid(nvars, h)
    dim = grid.shape[0]
    nm = nmoments if nmoments is not None else basis_size(nvars, 2 * h)
    coeffs = np.zeros((nm, dim, dim))
    rows, cols = np.indices((dim, dim))
    coeffs[grid.ravel(), rows.ravel(), cols.ravel()] = 1.0
    return MatrixStructure(dim, coeffs)


def localizing_matrix_structure(
    q: Polynomial, nvars: int, hq: int, nmoments: int | None = None
) -> MatrixStructure:
    """Structure of the localizing matrix ``M_hq(q mu)``.

    Entry (i, j) is ``riesz(q * m_i * m_j)``. ``hq`` is the reduced order
    ``h - ceil(deg q / 2)``; a negative value means the constraint cannot
    enter the relaxation at this level.
    """
    if hq < 0:
        raise ValueError("localizing order is negative: constraint degree too high for this level")
    if q.nvars != nvars:
        raise ValueError("polynomial variable count does not match")
    grid = moment_index_grid(nvars, hq)
    dim = grid.shape[0]
    need = basis_size(nvars, 2 * hq + q.degree)
    nm = nmoments if nmoments is not None else need
    if nm < need:
        raise ValueError("moment vector too short for this localizing matrix")
    coeffs = np.zeros((nm, dim, dim))
    basis = monomials_upto(nvars, hq)
    rows, cols = np.indices((dim, dim))
    for mono, c in q.items():
        shifted = np.array(
            [[grlex_index(_mono_mul(_mono_mul(basis[a], basis[b]), mono)) for b in range(dim)] for a in range(dim)]
        )
        np.add.at(coeffs, (shifted.ravel(), rows.ravel(), cols.ravel()), c)
    return MatrixStructure(dim, coeffs)


# text serialisation ---------------------------------------------------------

def format_polynomial(p: Polynomial) -> str:
    """One term per line: ``coefficient e1 e2 ... ed`` in graded-lex order."""
    lines = []
    for mono in sorted(p.terms, key=grlex_index):
        exps = " ".join(str(e) for e in mono)
        lines.append(f"{p.coefficient(mono):.17g} {exps}")
    return "\n".join(lines)


def parse_polynomial(text: str | Iterable[str], nvars: int) -> Polynomial:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    terms: Dict[Monomial, float] = {}
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != nvars + 1:
            raise ValueError(f"expected {nvars + 1} fields, got {len(fields)}: {line!r}")
        mono = tuple(int(f) for f in fields[1:])
        terms[mono] = terms.get(mono, 0.0) + float(fields[0])
    return Polynomial(nvars, terms)
