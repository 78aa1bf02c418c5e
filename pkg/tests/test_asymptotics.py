"""Expansion coefficients c2, c4 and the determinant-route verification sweep."""

import numpy as np
import pytest

from airyproc import asymptotics, fredholm
from airyproc.errors import ConfigurationError


class TestCoefficients:
    def test_c2_factorizations_agree(self, table):
        # F2 F2 u u versus (F2')(F2') with F2' = u F2
        pair = asymptotics.coefficients(0.0, -1.0, table)
        f = pair.factors
        alt = (f["F2_s1"] * f["u_s1"]) * (f["F2_s2"] * f["u_s2"])
        assert abs(pair.c2 - alt) < 1e-9

    def test_c4_forms_agree(self, table):
        for s1, s2 in [(0.0, -1.0), (-2.0, 1.0), (0.0, 0.0)]:
            primary, presub = asymptotics.c4_forms(s1, s2, table)
            assert abs(primary - presub) <= 1e-10

    def test_vanishing_tail(self, table):
        pair = asymptotics.coefficients(4.0, 4.0, table)
        assert abs(pair.c2) <= 1e-6
        assert abs(pair.c4) <= 1e-5

    def test_c2_against_finite_difference_oracle(self, table):
        # (F2'(0))^2 by five-point differencing of the determinant route
        h = 0.02
        stencil = [(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)]
        fd = sum(c * fredholm.f2_det(k * h) for k, c in stencil) / (12 * h)
        pair = asymptotics.coefficients(0.0, 0.0, table)
        assert abs(pair.c2 - fd * fd) < 1e-6

    def test_exact_symmetry(self, table):
        a = asymptotics.coefficients(0.0, -1.5, table)
        b = asymptotics.coefficients(-1.5, 0.0, table)
        assert a.c2 == b.c2
        assert a.c4 == b.c4

    def test_positive_c2_on_lattice(self, table):
        for s1 in (-4.0, -2.0, 0.0, 2.0):
            for s2 in (-4.0, -2.0, 0.0, 2.0):
                assert asymptotics.coefficients(s1, s2, table).c2 > 0.0

    def test_factors_present(self, table):
        pair = asymptotics.coefficients(0.0, -1.0, table)
        assert set(pair.factors) == {
            "F2_s1", "F2_s2", "u_s1", "u_s2", "q_s1", "q_s2", "v_s1", "v_s2", "J_s1", "J_s2",
        }


@pytest.fixture(scope="module")
def report(table):
    return asymptotics.residual_sweep(0.0, 0.0, table=table)


class TestResidualSweep:
    def test_r0_monotone_to_zero(self, report):
        r0 = [e.r0 for e in report.entries]
        assert all(a > b > 0 for a, b in zip(r0, r0[1:]))

    def test_r2_converges_to_c2(self, report):
        gaps = [abs(e.r2 - report.analytic_c2) for e in report.entries]
        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_fitted_c2(self, report):
        assert abs(report.fitted_c2 / report.analytic_c2 - 1.0) <= 1e-3

    def test_fitted_c4(self, report):
        assert abs(report.fitted_c4 / report.analytic_c4 - 1.0) <= 1e-2

    def test_remainder_order_estimates(self, report):
        assert all(5.0 <= o <= 7.0 for o in report.order_estimates)

    def test_remainder_doubling_band(self, report):
        rem = {e.t: e.r6_proxy / e.t**6 for e in report.entries}
        assert 5.0 <= np.log2(abs(rem[4.0] / rem[8.0])) <= 7.0

    def test_trace_level_consistency(self, table):
        # r0 ~ -F2 F2 tr(T12 T21) at leading order; the difference is O(t^-4)
        # as a bound (in fact faster: the t^-4 cumulant terms cancel), so the
        # measured decay order must be at least 4
        f22 = fredholm.f2_det(0.0) ** 2
        gaps = {}
        for t in (5.0, 10.0):
            r0 = fredholm.joint_det(0.0, 0.0, t) - f22
            tr = fredholm.trace_t12_t21(0.0, 0.0, t)
            gaps[t] = abs(r0 + f22 * tr)
        assert gaps[5.0] < 1e-5
        order = np.log2(gaps[5.0] / gaps[10.0])
        assert order >= 3.5

    def test_parameter_guards(self, table):
        with pytest.raises(ConfigurationError):
            asymptotics.residual_sweep(0.0, 0.0, (4.0, 6.0), table=table)
        with pytest.raises(ConfigurationError):
            asymptotics.residual_sweep(0.0, 0.0, (1.0, 4.0, 8.0), table=table)
