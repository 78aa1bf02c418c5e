"""Airy kernel closed form, damped blocks, and their rank-one expansions."""

import numpy as np
import pytest

from airyproc import airy, kernels, quadrature
from airyproc.errors import DomainError, UnsupportedParameterError

# 40-digit oracle values
K_00 = 0.066987483779663974  # = Ai'(0)^2; diagonal closed form
K_12 = 0.0016246403966291770
K_NEAR_DIAG = 0.036776434911834652  # K(0.3 + 1e-5, 0.3), difference quotient at 40 digits
UPPER_002 = 0.034006028278785917  # adaptive quadrature of e^{-2z} Ai(z)^2
LOWER_002 = -0.097246054320978492  # -(adaptive quadrature of e^{-2z} Ai(-z)^2)


@pytest.mark.parametrize("x", [-1.0, 0.0, 1.0])
def test_diagonal_closed_form(x):
    pair = airy.ai_pair(x)
    assert kernels.airy_kernel(x, x) == pytest.approx(pair.ai_prime**2 - x * pair.ai**2, abs=1e-15)


def test_symmetry():
    assert kernels.airy_kernel(1.0, 2.0) == kernels.airy_kernel(2.0, 1.0)
    assert kernels.airy_kernel(1.0, 2.0) == pytest.approx(K_12, abs=1e-15)


def test_against_defining_integral():
    # quadrature of Ai(z)^2 over (0, oo) on a fine grid
    g = quadrature.semi_infinite_grid(0.0, 20.0, 200)
    a, _ = airy.ai_values(g.nodes)
    assert abs(kernels.airy_kernel(0.0, 0.0) - g.integrate(a * a)) < 1e-10
    assert kernels.airy_kernel(0.0, 0.0) == pytest.approx(K_00, abs=1e-14)


def test_near_diagonal_taylor_form():
    assert kernels.airy_kernel(0.3 + 1e-5, 0.3) == pytest.approx(K_NEAR_DIAG, abs=1e-13)
    # both sides of the switch threshold against 40-digit difference quotients
    assert kernels.airy_kernel(0.3 + 9e-5, 0.3) == pytest.approx(0.036773325695502187, abs=1e-12)
    assert kernels.airy_kernel(0.3 + 1.1e-4, 0.3) == pytest.approx(0.036772548417880022, abs=1e-12)


def test_kernel_matrix_matches_scalar():
    xs = np.array([-2.0, 0.5, 3.0])
    ys = np.array([-2.0, 1.0])
    mat = kernels.airy_kernel_matrix(xs, ys)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            assert mat[i, j] == kernels.airy_kernel(float(x), float(y))


class TestUpperBlock:
    def test_oracle_value(self):
        assert kernels.offdiag_upper(0.0, 0.0, 2.0) == pytest.approx(UPPER_002, abs=1e-11)

    def test_symmetric(self):
        assert kernels.offdiag_upper(-1.0, 2.0, 3.0) == kernels.offdiag_upper(2.0, -1.0, 3.0)

    def test_large_t_limit(self):
        # t * upper -> Ai(x) Ai(y); gap at t=100 is the t^-1 correction
        val = 100.0 * kernels.offdiag_upper(0.0, 0.0, 100.0)
        assert abs(val / airy.ai(0.0) ** 2 - 1.0) <= 2e-2

    def test_below_k_on_positive_axis(self):
        for x, y in [(0.0, 0.0), (0.5, 1.5), (2.0, 0.1)]:
            assert kernels.offdiag_upper(x, y, 1.0) <= kernels.airy_kernel(x, y)

    def test_refinement_stable(self):
        base = kernels.offdiag_upper(-4.0, 1.0, 2.0)
        finer = kernels.offdiag_upper(-4.0, 1.0, 2.0, panel_len=0.5, nodes_per_panel=32)
        assert abs(base - finer) < 1e-10

    def test_t_min(self):
        with pytest.raises(UnsupportedParameterError):
            kernels.offdiag_upper(0.0, 0.0, 0.25)


class TestLowerBlock:
    def test_oracle_value(self):
        assert kernels.offdiag_lower(0.0, 0.0, 2.0) == pytest.approx(LOWER_002, abs=1e-11)

    def test_symmetric(self):
        assert kernels.offdiag_lower(-1.0, 2.0, 3.0) == kernels.offdiag_lower(2.0, -1.0, 3.0)

    def test_sign_of_large_t_limit(self):
        val = -2000.0 * kernels.offdiag_lower(0.0, 0.0, 2000.0)
        assert abs(val / airy.ai(0.0) ** 2 - 1.0) <= 2e-3

    def test_half_panel_self_convergence(self):
        base = kernels.offdiag_lower(0.0, 0.0, 2.0)
        finer = kernels.offdiag_lower(0.0, 0.0, 2.0, panel_len=0.5)
        assert abs(base - finer) < 1e-9

    def test_refinement_stable(self):
        base = kernels.offdiag_lower(-6.0, 1.0, 1.0)
        finer = kernels.offdiag_lower(-6.0, 1.0, 1.0, panel_len=0.5, nodes_per_panel=32)
        assert abs(base - finer) < 1e-10

    def test_t_min(self):
        with pytest.raises(UnsupportedParameterError):
            kernels.offdiag_lower(0.0, 0.0, 0.75)


def test_non_finite_arguments():
    with pytest.raises(DomainError):
        kernels.airy_kernel(np.nan, 0.0)
    with pytest.raises(DomainError):
        kernels.offdiag_upper(np.inf, 0.0, 2.0)
    with pytest.raises(DomainError):
        kernels.offdiag_lower(0.0, np.nan, 2.0)


class TestExpansionTerms:
    def test_order_one(self):
        blocks = kernels.expansion_blocks(1)
        (up,) = blocks["upper"]
        (low,) = blocks["lower"]
        assert (up.coefficient, up.left, up.right) == (1.0, "A", "A")
        assert (low.coefficient, low.left, low.right) == (-1.0, "A", "A")

    def test_order_three_coefficients(self):
        upper3 = [t for t in kernels.expansion_blocks(3)["upper"] if t.order == 3]
        assert [(t.coefficient, t.left, t.right) for t in upper3] == [
            (1.0, "App", "A"),
            (2.0, "Ap", "Ap"),
            (1.0, "A", "App"),
        ]
        lower3 = [t for t in kernels.expansion_blocks(3)["lower"] if t.order == 3]
        assert [t.coefficient for t in lower3] == [-1.0, -2.0, -1.0]

    def test_lower_signs_alternate(self):
        for term in kernels.expansion_blocks(3)["lower"]:
            expected_sign = -1.0 if term.order % 2 else 1.0
            assert np.sign(term.coefficient) == expected_sign

    def test_derivative_orders_sum(self):
        for block in ("upper", "lower"):
            for term in kernels.expansion_blocks(3)[block]:
                lo, ro = kernels.derivative_orders(term)
                assert lo + ro == term.order - 1

    def test_bad_order(self):
        with pytest.raises(DomainError):
            kernels.expansion_blocks(4)

    @pytest.mark.parametrize("block", ["upper", "lower"])
    def test_asymptotic_consistency(self, block):
        # remainder after three orders drops like t^-4
        fn = kernels.offdiag_upper if block == "upper" else kernels.offdiag_lower
        gaps = {}
        for t in (10.0, 20.0, 40.0):
            gaps[t] = abs(fn(0.0, 0.0, t) - kernels.expansion_value(0.0, 0.0, t, 3, block))
        for t in (10.0, 20.0):
            ratio = np.log2(gaps[t] / gaps[2 * t])
            assert 3.5 <= ratio <= 4.5
