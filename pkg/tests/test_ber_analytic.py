"""Exact and asymptotic BER routes, cross-checked against each other."""

import math

import numpy as np
import pytest
from scipy import integrate

from thzdiv.ber_analytic import (
    AsymptoteLaw,
    AsymptoteSource,
    ber_alpha_mu_gen_asymptote,
    ber_alpha_mu_gen_foxh,
    ber_alpha_mu_iid_asymptote,
    ber_exact_quadrature,
    ber_mg_asymptote,
    ber_mg_mgf,
    multinomial_compositions,
)
from thzdiv.channel_models import (
    AlphaMuA,
    alpha_mu_a_preset,
    alpha_mu_b_preset,
    mg_preset,
    power_pdf,
)
from thzdiv.errors import DomainError
from thzdiv.specfun import q_function
from thzdiv.sum_dist import (
    IidAlphaMuSum,
    convolution_oracle,
    iid_sum_power_pdf,
    inid_sum_power_pdf,
    solve_mixture_nodes,
)

RAYLEIGH = AlphaMuA(alpha=2.0, mu=1.0, z_hat=1.0)


def rayleigh_ber(upsilon, g=0.5):
    """Closed form for one Rayleigh branch with unit mean power."""
    x = g * upsilon
    return 0.5 * (1.0 - math.sqrt(x / (1.0 + x)))


class TestExactQuadrature:
    @pytest.mark.parametrize("upsilon", [0.2, 2.0, 30.0, 500.0])
    def test_rayleigh_closed_form(self, upsilon):
        pdf = lambda y: power_pdf(RAYLEIGH, 1.0, y)
        assert ber_exact_quadrature(pdf, upsilon, g=0.5) == pytest.approx(
            rayleigh_ber(upsilon), rel=1e-9)

    def test_low_snr_regression(self):
        # Regression: QUADPACK once missed the density mass entirely at low
        # SNR (huge integration window) and returned exactly 0.
        s = IidAlphaMuSum.build(alpha_mu_a_preset("indoor_1"), 1.0, 3)
        val = ber_exact_quadrature(lambda y: iid_sum_power_pdf(s, y), 0.1,
                                   g=0.5)
        assert val == pytest.approx(0.3172969639030704, rel=1e-7)

    def test_frozen_mid_snr_value(self):
        s = IidAlphaMuSum.build(alpha_mu_a_preset("indoor_1"), 1.0, 3)
        val = ber_exact_quadrature(lambda y: iid_sum_power_pdf(s, y), 10.0,
                                   g=0.5)
        assert val == pytest.approx(0.0009205840200195985, rel=1e-7)

    def test_g_and_upsilon_enter_as_product(self):
        pdf = lambda y: power_pdf(RAYLEIGH, 1.0, y)
        a = ber_exact_quadrature(pdf, 8.0, g=0.5)
        b = ber_exact_quadrature(pdf, 4.0, g=1.0)
        assert a == pytest.approx(b, rel=1e-9)

    def test_rejects_bad_args(self):
        pdf = lambda y: power_pdf(RAYLEIGH, 1.0, y)
        with pytest.raises(DomainError):
            ber_exact_quadrature(pdf, 0.0)
        with pytest.raises(DomainError):
            ber_exact_quadrature(pdf, 1.0, g=-1.0)


class TestAlphaMuIidAsymptote:
    def test_rayleigh_leading_constant(self):
        # Single Rayleigh branch: BER -> 1/(4 g Upsilon).
        vals, law = ber_alpha_mu_iid_asymptote(RAYLEIGH, 1.0, 1, 100.0, g=0.5)
        assert law.kappa2 == pytest.approx(1.0)
        assert law.kappa1 == pytest.approx(0.5, rel=1e-12)
        assert float(np.atleast_1d(vals)[0]) == pytest.approx(
            0.5 / 100.0, rel=1e-12)

    def test_diversity_exponent_value(self):
        model = alpha_mu_a_preset("indoor_1")
        _, law = ber_alpha_mu_iid_asymptote(model, 1.0, 3, 10.0)
        assert law.kappa2 == pytest.approx(2.6718006822, abs=1e-10)
        assert law.kappa1 == pytest.approx(0.4758708444458062, rel=1e-10)
        assert law.source is AsymptoteSource.ALPHA_MU_IID

    def test_converges_to_exact(self):
        model = alpha_mu_a_preset("indoor_1")
        s = IidAlphaMuSum.build(model, 1.0, 3)
        ratios = []
        for u in (100.0, 1000.0):
            exact = ber_exact_quadrature(lambda y: iid_sum_power_pdf(s, y), u,
                                         g=0.5)
            asym = float(np.atleast_1d(
                ber_alpha_mu_iid_asymptote(model, 1.0, 3, u)[0])[0])
            ratios.append(asym / exact)
        assert abs(ratios[1] - 1.0) < abs(ratios[0] - 1.0)
        assert ratios[1] == pytest.approx(1.0, abs=5e-4)

    def test_outage_proxy_same_exponent(self):
        model = alpha_mu_a_preset("indoor_2")
        _, law = ber_alpha_mu_iid_asymptote(model, 1.0, 2, 10.0,
                                            outage_proxy=True)
        assert law.kappa2 == pytest.approx(
            model.alpha / 2.0 * model.mu * 2, abs=1e-12)


@pytest.fixture(scope="module")
def nodes():
    return solve_mixture_nodes([alpha_mu_b_preset("indoor_1")] * 2, 1.0)


class TestFormBFoxH:
    @pytest.mark.parametrize("upsilon", [1.0, 40.0, 2000.0])
    def test_foxh_equals_quadrature(self, nodes, upsilon):
        # Two independent routes to the same number: the closed-form Fox-H
        # expression and direct quadrature over the sum density.
        p_h = ber_alpha_mu_gen_foxh(nodes, upsilon)
        p_q = ber_exact_quadrature(lambda y: inid_sum_power_pdf(nodes, y),
                                   upsilon, g=0.5)
        assert p_h == pytest.approx(p_q, rel=1e-8)

    def test_frozen_value(self, nodes):
        # kappa1 and the mixture nodes are solver outputs; freeze them only
        # to the accuracy the moment system pins down.
        assert ber_alpha_mu_gen_foxh(nodes, 40.0) == pytest.approx(
            0.000270781050, rel=1e-6)

    def test_asymptote_law(self, nodes):
        _, law = ber_alpha_mu_gen_asymptote(nodes, 100.0)
        assert law.kappa2 == pytest.approx(1.7812004548, abs=1e-9)
        assert law.kappa1 == pytest.approx(0.193843558, rel=1e-6)
        assert law.source is AsymptoteSource.ALPHA_MU_GEN

    def test_asymptote_converges(self, nodes):
        exact = ber_alpha_mu_gen_foxh(nodes, 3e4)
        asym = float(np.atleast_1d(ber_alpha_mu_gen_asymptote(nodes, 3e4)[0])[0])
        assert asym / exact == pytest.approx(1.0, abs=2e-3)


class TestMgMgf:
    CFG1 = mg_preset("mg_config1")

    def test_frozen_value(self):
        assert ber_mg_mgf([self.CFG1] * 2, 1.0, 2, 0.01, g=1.0) == pytest.approx(
            4.5999097374746705e-05, rel=1e-7)

    def test_matches_direct_quadrature(self):
        # Dual route: Craig-form MGF product vs numeric integration of
        # Q against the convolved SNR density.
        u = 0.003
        branches = [self.CFG1] * 2
        # The MG power support spans ~1e6, so the oracle needs a fine grid.
        conv = convolution_oracle(
            [lambda y: power_pdf(self.CFG1, 1.0, y)] * 2, y_max=8e5, n=2**17)
        direct, _ = integrate.quad(
            lambda y: conv(y) * float(q_function(math.sqrt(2.0 * u * y))),
            0.0, conv.y[-1], limit=600)
        mgf = ber_mg_mgf(branches, 1.0, 2, u, g=1.0)
        assert mgf == pytest.approx(direct, rel=2e-3)

    def test_low_snr_falls_back_to_oracle(self):
        # The residue series diverges here; the MGF route must still work.
        val = ber_mg_mgf([self.CFG1] * 2, 1.0, 2, 1e-4, g=1.0)
        assert 0.0 < val < 0.5
        assert val == pytest.approx(0.0315760441411177, rel=1e-6)

    def test_high_snr_mode_approaches_exact(self):
        gaps = []
        for u in (0.1, 10.0):
            exact = ber_mg_mgf([self.CFG1] * 2, 1.0, 2, u, g=1.0)
            hi = ber_mg_mgf([self.CFG1] * 2, 1.0, 2, u, g=1.0,
                            mode="high_snr")
            gaps.append(abs(hi / exact - 1.0))
        assert gaps[1] < gaps[0]

    def test_g_and_upsilon_enter_as_product(self):
        a = ber_mg_mgf([self.CFG1] * 2, 1.0, 2, 0.02, g=1.0)
        b = ber_mg_mgf([self.CFG1] * 2, 1.0, 2, 0.04, g=0.5)
        assert a == pytest.approx(b, rel=1e-8)


class TestMgAsymptote:
    CFG1 = mg_preset("mg_config1")
    CFG2 = mg_preset("mg_config2")

    def test_iid_diversity_law(self):
        _, law = ber_mg_asymptote([self.CFG1] * 2, 1.0, 1.0, g=1.0,
                                  dominant_only=True)
        assert law.kappa2 == pytest.approx(4.417045104, abs=1e-12)
        assert law.kappa1 == pytest.approx(2.4778534380468427e-12, rel=1e-9)
        assert law.source is AsymptoteSource.MG_IID

    def test_inid_diversity_law(self):
        _, law = ber_mg_asymptote([self.CFG1, self.CFG2], 1.0, 1.0, g=1.0)
        # (min beta of config 1 + min beta of config 2) / 2
        assert law.kappa2 == pytest.approx(4.085232282, abs=1e-12)
        assert law.kappa1 == pytest.approx(3.298357358551723e-11, rel=1e-9)
        assert law.source is AsymptoteSource.MG_INID

    def test_full_sum_close_to_dominant_term(self):
        # Components with large beta are multiplied by zeta^beta ~ 1e-18:
        # the dominant tuple carries essentially all of the asymptote.
        u = 1.0
        full = float(np.atleast_1d(
            ber_mg_asymptote([self.CFG1] * 2, 1.0, u, g=1.0)[0])[0])
        dom = float(np.atleast_1d(
            ber_mg_asymptote([self.CFG1] * 2, 1.0, u, g=1.0,
                             dominant_only=True)[0])[0])
        assert full == pytest.approx(dom, rel=1e-9)

    def test_converges_to_exact_at_high_snr(self):
        ratios = []
        for u in (1.0, 100.0):
            exact = ber_mg_mgf([self.CFG1] * 2, 1.0, 2, u, g=1.0)
            asym = float(np.atleast_1d(
                ber_mg_asymptote([self.CFG1] * 2, 1.0, u, g=1.0,
                                 dominant_only=True)[0])[0])
            ratios.append(asym / exact)
        assert ratios[1] < ratios[0]
        assert ratios[1] == pytest.approx(1.0, abs=0.05)


class TestHelpers:
    def test_multinomial_compositions_count(self):
        combos = list(multinomial_compositions(3, 4))
        assert len(combos) == math.comb(4 + 3 - 1, 3 - 1)
        assert all(sum(c) == 4 for c in combos)
        assert len(set(combos)) == len(combos)

    def test_asymptote_law_callable(self):
        law = AsymptoteLaw(kappa1=2.0, kappa2=1.5,
                           source=AsymptoteSource.FITTED)
        assert float(law(4.0)) == pytest.approx(2.0 * 4.0**-1.5)
        with pytest.raises(DomainError):
            AsymptoteLaw(kappa1=0.0, kappa2=1.0,
                         source=AsymptoteSource.FITTED)
