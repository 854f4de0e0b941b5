import itertools
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sniv.poly import (
    Polynomial,
    basis_size,
    dirac_moments,
    format_polynomial,
    grlex_index,
    grlex_monomial,
    localizing_matrix_structure,
    moment_index_grid,
    moment_matrix_structure,
    monomials_upto,
    parse_polynomial,
    riesz,
)


def brute_grlex(nvars, degree):
    monos = [m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) <= degree]
    return sorted(monos, key=lambda m: (sum(m), [-e for e in m]))


@pytest.mark.parametrize("nvars", range(1, 5))
@pytest.mark.parametrize("degree", range(0, 5))
def test_grlex_order_matches_sorted_enumeration(nvars, degree):
    assert list(monomials_upto(nvars, degree)) == brute_grlex(nvars, degree)


@pytest.mark.parametrize("nvars", range(1, 13))
@pytest.mark.parametrize("h", range(0, 4))
def test_moment_matrix_dimension_is_binomial(nvars, h):
    grid = moment_index_grid(nvars, h)
    assert grid.shape == (math.comb(nvars + h, h),) * 2
    assert len(monomials_upto(nvars, h)) == basis_size(nvars, h) == math.comb(nvars + h, h)
    # every moment up to degree 2h appears in the matrix
    assert len(np.unique(grid)) == math.comb(nvars + 2 * h, 2 * h)
    if nvars <= 6:
        assert moment_matrix_structure(nvars, h).dim == grid.shape[0]


def test_grlex_index_roundtrip_and_cap_independence():
    for nvars in (1, 2, 3, 5):
        monos = monomials_upto(nvars, 4)
        for i, m in enumerate(monos):
            assert grlex_index(m) == i
            assert grlex_monomial(i, nvars) == m


def test_small_examples():
    assert monomials_upto(2, 1) == ((0, 0), (1, 0), (0, 1))
    assert grlex_index((0, 2)) == 5
    with pytest.raises(ValueError):
        grlex_index((1, -1))


poly_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.floats(-5, 5, allow_nan=False),
    max_size=6,
)


@settings(max_examples=60, deadline=None)
@given(poly_terms, poly_terms, st.tuples(st.floats(-2, 2), st.floats(-2, 2)))
def test_arithmetic_matches_sympy(ta, tb, pt):
    x, y = sympy.symbols("x y")

    def sym(terms):
        return sum((c * x**i * y**j for (i, j), c in terms.items()), sympy.Integer(0))

    a, b = Polynomial(2, ta), Polynomial(2, tb)
    subs = {x: pt[0], y: pt[1]}
    for ours, theirs in [
        (a + b, sym(ta) + sym(tb)),
        (a - b, sym(ta) - sym(tb)),
        (a * b, sym(ta) * sym(tb)),
        (a**2, sym(ta) ** 2),
    ]:
        expected = float(theirs.evalf(subs=subs))
        assert ours(pt) == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_riesz_and_dirac_agree_with_evaluation():
    g = np.random.default_rng(0)
    p = Polynomial(3, {(2, 0, 1): 1.5, (0, 1, 0): -2.0, (0, 0, 0): 0.25, (1, 1, 1): 3.0})
    for _ in range(5):
        pt = g.standard_normal(3)
        mu = dirac_moments(pt, 3)
        form = riesz(p)
        assert sum(c * mu[i] for i, c in form.items()) == pytest.approx(p(pt))
    with pytest.raises(ValueError):
        riesz(p, order=1)


def test_moment_and_localizing_matrices_at_a_point():
    # at a Dirac measure, M_h = v v' and the localizing matrix is g(x) v v'
    g = np.random.default_rng(1)
    pt = g.standard_normal(2)
    h = 2
    v = np.array([np.prod(pt ** np.array(m)) for m in monomials_upto(2, h)])
    mu = dirac_moments(pt, 2 * h)
    np.testing.assert_allclose(moment_matrix_structure(2, h).evaluate(mu), np.outer(v, v), atol=1e-12)
    q = Polynomial(2, {(0, 0): 1.0, (2, 0): -1.0, (0, 2): -1.0})
    L = localizing_matrix_structure(q, 2, 1, nmoments=len(mu)).evaluate(mu)
    w = v[:3]
    np.testing.assert_allclose(L, q(pt) * np.outer(w, w), atol=1e-12)


def test_text_format_roundtrip():
    p = Polynomial(3, {(0, 0, 0): 1 / 3, (1, 0, 2): -2.5e-7, (0, 4, 0): 12.0})
    assert parse_polynomial(format_polynomial(p), 3) == p
    with pytest.raises(ValueError):
        parse_polynomial("1 0 0", 3)


def test_quadratic_constructor_matches_matrix_form():
    g = np.random.default_rng(2)
    Q = g.standard_normal((3, 3))
    Q = Q + Q.T
    lin = g.standard_normal(3)
    p = Polynomial.quadratic(Q, lin, 0.7)
    x = g.standard_normal(3)
    assert p(x) == pytest.approx(x @ Q @ x + lin @ x + 0.7)


def test_embed_and_scale():
    p = Polynomial(2, {(1, 1): 2.0, (2, 0): 1.0})
    e = p.embed(4, [3, 1])
    assert e((0.0, 5.0, 0.0, 2.0)) == pytest.approx(p((2.0, 5.0)))
    s = p.scale_variables([2.0, 3.0])
    assert s((1.0, 1.0)) == pytest.approx(p((2.0, 3.0)))
