"""Distribution of the MRC statistic ||h||^2: series, mixture, oracle."""

import math

import numpy as np
import pytest
from scipy import integrate

from thzdiv.channel_models import (
    AlphaMuB,
    alpha_mu_a_preset,
    alpha_mu_b_preset,
    envelope_moment,
    power_pdf,
)
from thzdiv.errors import DomainError
from thzdiv.sum_dist import (
    IidAlphaMuSum,
    convolution_oracle,
    delta_coefficients,
    iid_sum_power_pdf,
    inid_sum_power_pdf,
    moments_of_sum,
    solve_mixture_nodes,
)

INDOOR_1 = alpha_mu_a_preset("indoor_1")


class TestIidSeries:
    def test_single_branch_equals_power_pdf(self):
        s = IidAlphaMuSum.build(INDOOR_1, nu=1.0, l_branches=1)
        for y in (0.02, 0.3, 1.0, 3.0):
            assert iid_sum_power_pdf(s, y) == pytest.approx(
                power_pdf(INDOOR_1, 1.0, y), rel=1e-8)

    def test_normalizes(self):
        s = IidAlphaMuSum.build(INDOOR_1, nu=1.0, l_branches=2)
        mass, _ = integrate.quad(lambda y: iid_sum_power_pdf(s, y), 0.0, 60.0,
                                 limit=300)
        assert mass == pytest.approx(1.0, abs=1e-7)

    def test_mean_equals_sum_of_branch_means(self):
        L = 3
        s = IidAlphaMuSum.build(INDOOR_1, nu=1.0, l_branches=L)
        mean, _ = integrate.quad(lambda y: y * iid_sum_power_pdf(s, y),
                                 0.0, 80.0, limit=300)
        assert mean == pytest.approx(
            L * envelope_moment(INDOOR_1, 1.0, 2.0), rel=1e-6)

    def test_matches_convolution_oracle(self):
        L = 2
        s = IidAlphaMuSum.build(INDOOR_1, nu=1.0, l_branches=L)
        conv = convolution_oracle([lambda y: power_pdf(INDOOR_1, 1.0, y)] * L)
        for y in np.linspace(0.25, 4.0, 8):
            assert iid_sum_power_pdf(s, y) == pytest.approx(
                conv(y), rel=5e-3)

    def test_frozen_value(self):
        # Route-independent spot value (agrees with the convolution oracle).
        s = IidAlphaMuSum.build(INDOOR_1, nu=1.0, l_branches=2)
        assert iid_sum_power_pdf(s, 1.0) == pytest.approx(
            0.434856362085365, rel=1e-9)

    def test_far_tail_is_zero_not_garbage(self):
        # Regression: the alternating series once returned +/-inf and large
        # negative values around y ~ 14 for L = 3.
        s = IidAlphaMuSum.build(INDOOR_1, nu=1.0, l_branches=3)
        y = np.linspace(10.0, 40.0, 61)
        vals = np.atleast_1d(iid_sum_power_pdf(s, y))
        assert np.all(np.isfinite(vals))
        assert np.all(vals >= 0.0)

    def test_nu_scaling(self):
        s1 = IidAlphaMuSum.build(INDOOR_1, nu=1.0, l_branches=2)
        s2 = IidAlphaMuSum.build(INDOOR_1, nu=2.0, l_branches=2)
        # |h| scales by nu, so the power density scales by nu^-2 in value
        # and nu^2 in argument.
        assert iid_sum_power_pdf(s2, 4.0 * 0.9) == pytest.approx(
            iid_sum_power_pdf(s1, 0.9) / 4.0, rel=1e-8)

    def test_delta_recursion_base(self):
        # delta_0 = Gamma(alpha_bar * mu)^L by construction.
        d = delta_coefficients(1.726, 0.51571, 1.0, 2, count=4)
        assert d[0] == pytest.approx(math.gamma(1.726 * 0.51571) ** 2,
                                     rel=1e-12)

    def test_rejects_bad_build(self):
        with pytest.raises(DomainError):
            IidAlphaMuSum.build(INDOOR_1, nu=0.0, l_branches=2)
        with pytest.raises(DomainError):
            IidAlphaMuSum.build(INDOOR_1, nu=1.0, l_branches=0)


@pytest.fixture(scope="module")
def nodes():
    branches = [alpha_mu_b_preset("indoor_1"),
                alpha_mu_b_preset("indoor_1", x_mean=0.8)]
    return solve_mixture_nodes(branches, nu=1.0)


class TestMixtureNodes:
    def test_weights_positive_and_normalized_density(self, nodes):
        assert np.all(nodes.weights > 0.0)
        mass, _ = integrate.quad(lambda y: inid_sum_power_pdf(nodes, y),
                                 0.0, np.inf, limit=300)
        assert mass == pytest.approx(1.0, abs=1e-4)

    def test_moment_matching(self, nodes):
        # The mixture must reproduce the analytic moments of the sum.
        branches = [alpha_mu_b_preset("indoor_1"),
                    alpha_mu_b_preset("indoor_1", x_mean=0.8)]
        for n in (1, 2, 3):
            num, _ = integrate.quad(
                lambda y: y**n * inid_sum_power_pdf(nodes, y),
                0.0, np.inf, limit=300)
            assert num == pytest.approx(
                moments_of_sum(branches, 1.0, n), rel=1e-4)

    def test_matches_convolution_oracle(self, nodes):
        branches = [alpha_mu_b_preset("indoor_1"),
                    alpha_mu_b_preset("indoor_1", x_mean=0.8)]
        conv = convolution_oracle(
            [lambda y, b=b: power_pdf(b, 1.0, y) for b in branches])
        for y in np.linspace(0.2, 2.5, 6):
            assert inid_sum_power_pdf(nodes, y) == pytest.approx(
                conv(y), rel=0.01)

    def test_requires_common_alpha(self):
        mixed = [alpha_mu_b_preset("indoor_1"), alpha_mu_b_preset("indoor_2")]
        with pytest.raises(DomainError):
            solve_mixture_nodes(mixed, nu=1.0)

    def test_distinct_mu_supported(self):
        branches = [AlphaMuB(alpha=3.0, mu=0.6), AlphaMuB(alpha=3.0, mu=1.1)]
        nodes = solve_mixture_nodes(branches, nu=1.0)
        mass, _ = integrate.quad(lambda y: inid_sum_power_pdf(nodes, y),
                                 0.0, np.inf, limit=300)
        assert mass == pytest.approx(1.0, abs=1e-4)


class TestConvolutionOracle:
    def test_gamma_sum_closed_form(self):
        # Sum of two Gamma(k, 1) variables is Gamma(2k, 1): an exact oracle
        # check with no shared code path.
        from scipy import stats

        k = 1.7
        conv = convolution_oracle([lambda y: stats.gamma.pdf(y, k)] * 2,
                                  y_max=60.0)
        for y in (0.5, 2.0, 5.0):
            assert conv(y) == pytest.approx(stats.gamma.pdf(y, 2 * k),
                                            rel=2e-3)

    def test_mass_property(self):
        conv = convolution_oracle([lambda y: power_pdf(INDOOR_1, 1.0, y)] * 2)
        assert conv.mass == pytest.approx(1.0, abs=2e-3)

    def test_needs_input(self):
        with pytest.raises(DomainError):
            convolution_oracle([])
