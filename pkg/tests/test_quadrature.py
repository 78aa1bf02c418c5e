"""Gauss-Legendre rules and semi-infinite grids."""

import numpy as np
import pytest

from airyproc import airy, quadrature
from airyproc.errors import ConfigurationError

AI_SQ_INTEGRAL = 0.066987483779663974  # Ai'(0)^2, the closed-form tail at s=0


def test_one_point_rule():
    x, w = quadrature.gauss_legendre(1)
    assert x.tolist() == [0.0]
    assert w.tolist() == [2.0]


def test_two_point_rule():
    x, w = quadrature.gauss_legendre(2)
    assert np.allclose(x, [-1 / np.sqrt(3), 1 / np.sqrt(3)], atol=1e-15)
    assert np.allclose(w, [1.0, 1.0], atol=1e-15)


def test_five_point_rule_on_x8():
    x, w = quadrature.gauss_legendre(5)
    assert abs(float(w @ x**8) - 2.0 / 9.0) < 1e-15


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_exactness_through_degree(n):
    x, w = quadrature.gauss_legendre(n)
    for deg in range(2 * n):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        got = float(w @ x**deg)
        assert abs(got - exact) <= 1e-13 * max(1.0, abs(exact))


def test_rule_symmetry_and_weight_sum():
    for n in (3, 64, 120, 512):
        x, w = quadrature.gauss_legendre(n)
        assert np.all(np.diff(x) > 0)
        assert np.allclose(x, -x[::-1], atol=0)
        assert abs(w.sum() - 2.0) < 1e-14


def test_grid_invariants():
    g = quadrature.semi_infinite_grid(-3.0, 19.0, 120)
    assert np.all(np.diff(g.nodes) > 0)
    assert g.nodes[0] > g.s and g.nodes[-1] < g.s + g.L
    assert np.all(g.weights > 0)
    assert abs(g.weights.sum() - g.L) < 1e-12 * g.L
    assert g.integrate(np.ones(g.n)) == pytest.approx(g.L, rel=1e-15)


def test_airy_squared_tail_integral():
    g = quadrature.semi_infinite_grid(0.0, 16.0, 80)
    a, _ = airy.ai_values(g.nodes)
    assert abs(g.integrate(a * a) - AI_SQ_INTEGRAL) < 1e-10


def test_airy_integral_third():
    # oracle: adaptive quadrature at tight tolerance (analytic value 1/3)
    from scipy.integrate import quad

    ref, _ = quad(airy.ai, 0.0, 30.0, limit=200, epsabs=1e-12, epsrel=1e-12)
    g = quadrature.semi_infinite_grid(0.0, 16.0, 80)
    a, _ = airy.ai_values(g.nodes)
    got = g.integrate(a)
    assert abs(got - ref) < 1e-9
    assert abs(got - 1.0 / 3.0) < 1e-9


def test_refinement_convergence():
    vals = {}
    for n in (64, 128, 256):
        g = quadrature.semi_infinite_grid(0.0, 16.0, n)
        a, _ = airy.ai_values(g.nodes)
        vals[n] = g.integrate(a * a)
    assert abs(vals[128] - vals[64]) < 1e-12
    assert abs(vals[256] - vals[128]) < 1e-12


def test_default_cutoff_covers_oscillatory_part():
    assert quadrature.default_cutoff(2.0) == 16.0
    assert quadrature.default_cutoff(-6.0) == 22.0
    assert quadrature.default_cutoff(-6.0, base=20.0) == 26.0


def test_configuration_errors():
    with pytest.raises(ConfigurationError):
        quadrature.gauss_legendre(0)
    with pytest.raises(ConfigurationError):
        quadrature.gauss_legendre(513)
    with pytest.raises(ConfigurationError):
        quadrature.semi_infinite_grid(0.0, 0.0, 10)
    with pytest.raises(ConfigurationError):
        quadrature.semi_infinite_grid(0.0, -1.0, 10)
    with pytest.raises(ConfigurationError):
        quadrature.semi_infinite_grid(np.inf, 1.0, 10)
