"""Closed-form and quadrature bit-error-probability expressions.

Every operation evaluates the average BER of an L-branch MRC receiver
under the error law E[Q(sqrt(2 g Upsilon ||h||^2))].  g = 1/2 reproduces
the Q(sqrt(Upsilon x)) convention used by the alpha-mu analyses; g = 1 is
BPSK in the MGF/Craig form used by the mixture-of-gamma analyses.

High-SNR asymptotes return an AsymptoteLaw (kappa1, kappa2) alongside the
value, with kappa2 the diversity exponent of BER ~ kappa1 * Upsilon^-kappa2.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy import special as sp

from .channel_models import AlphaMuA, MixtureGamma
from .errors import DomainError, EvaluationError
from .errors import AccuracyError
from .mg_laplace import (
    SquaredMgSnr,
    laplace_exact_series,
    laplace_high_snr,
    laplace_numeric_oracle,
    snr_pdf_mg,
)
from .specfun import FoxHParams, fox_h, q_function
from .sum_dist import MixtureNodes

__all__ = [
    "AsymptoteSource",
    "AsymptoteLaw",
    "ber_exact_quadrature",
    "ber_alpha_mu_iid_asymptote",
    "ber_alpha_mu_gen_foxh",
    "ber_alpha_mu_gen_asymptote",
    "ber_mg_mgf",
    "ber_mg_asymptote",
    "multinomial_compositions",
]

_SQRT_PI = math.sqrt(math.pi)


class AsymptoteSource(enum.Enum):
    ALPHA_MU_IID = "alpha_mu_iid"
    ALPHA_MU_GEN = "alpha_mu_gen"
    MG_IID = "mg_iid"
    MG_INID = "mg_inid"
    FITTED = "fitted"


@dataclass(frozen=True)
class AsymptoteLaw:
    """High-SNR law BER ~ kappa1 * Upsilon^-kappa2."""

    kappa1: float
    kappa2: float
    source: AsymptoteSource

    def __post_init__(self):
        if self.kappa1 <= 0 or self.kappa2 <= 0:
            raise DomainError("AsymptoteLaw requires kappa1, kappa2 > 0")

    def __call__(self, upsilon):
        return self.kappa1 * np.asarray(upsilon, dtype=float) ** (-self.kappa2)


def ber_exact_quadrature(sum_pdf, upsilon: float, g: float = 0.5) -> float:
    """Exact BER int_0^inf Q(sqrt(2 g Upsilon x)) f(x) dx by quadrature."""
    if upsilon <= 0 or g <= 0:
        raise DomainError("ber_exact_quadrature requires upsilon > 0, g > 0")

    def integrand(x):
        return float(q_function(math.sqrt(2.0 * g * upsilon * x)) * sum_pdf(x))

    # Q(sqrt(2 g U x)) is numerically zero beyond x_q; the remainder of the
    # density contributes nothing.  Log-spaced breakpoints keep QUADPACK from
    # overlooking density mass concentrated many orders below x_q.
    x_q = 1500.0 / (2.0 * g * upsilon)
    brk = list(np.geomspace(1e-10 * x_q, x_q, 25)[:-1])
    val, err = integrate.quad(integrand, 0.0, x_q, epsabs=1e-16, epsrel=1e-10,
                              limit=400, points=brk)
    if not math.isfinite(val) or err > max(1e-12, 1e-6 * abs(val)):
        raise EvaluationError(
            f"BER quadrature did not converge (err={err:.2e})")
    return min(max(val, 0.0), 0.5)


def ber_alpha_mu_iid_asymptote(model: AlphaMuA, nu: float, l_branches: int,
                               upsilon, g: float = 0.5,
                               outage_proxy: bool = False):
    """High-SNR BER for L i.i.d. alpha-mu (form A) branches.

    kappa2 = phi0 = (alpha/2) mu L.  The leading constant follows from the
    small-argument sum density C y^{phi0-1}/Gamma(phi0) integrated against
    the error law, which for g = 1/2 gives the 2^{phi0-1} factor (checked
    against the Rayleigh closed form and the quadrature oracle).  With
    ``outage_proxy`` the cruder Pr(||h||^2 <= 1/(2 g Upsilon)) bound is
    returned instead; it shares the same exponent.
    """
    if l_branches < 1:
        raise DomainError("l_branches must be >= 1")
    ab, m = model.alpha / 2.0, model.mu
    z_bar = (model.z_hat * nu) ** 2
    phi0 = ab * m * l_branches
    ln_c = l_branches * (math.log(ab) + m * math.log(m) + sp.gammaln(ab * m)
                         - sp.gammaln(m) - ab * m * math.log(z_bar))
    if outage_proxy:
        ln_k1 = ln_c - sp.gammaln(phi0 + 1.0) - phi0 * math.log(2.0 * g)
    else:
        ln_k1 = (ln_c + sp.gammaln(phi0 + 0.5) - sp.gammaln(phi0 + 1.0)
                 - 0.5 * math.log(math.pi) - math.log(2.0)
                 - phi0 * math.log(g))
    law = AsymptoteLaw(kappa1=math.exp(ln_k1), kappa2=phi0,
                       source=AsymptoteSource.ALPHA_MU_IID)
    return law(upsilon), law


def _eq23_foxh_params(nodes: MixtureNodes) -> FoxHParams:
    # Derived by Mellin-Parseval pairing of Q(sqrt(Upsilon y)) with one
    # mixture node's stretched-gamma density; the contour variable is
    # rescaled by alpha_bar, so every stretched gamma carries A = B =
    # alpha_bar (the fourth pair's coefficient is alpha_bar, not
    # alpha_bar*mu_bar).
    am = nodes.alpha_bar * nodes.mu_bar
    return FoxHParams(
        m=1, n=2,
        upper=((1.0 - am, nodes.alpha_bar), (0.5 - am, nodes.alpha_bar)),
        lower=((0.0, 1.0), (-am, nodes.alpha_bar)),
    )


def ber_alpha_mu_gen_foxh(nodes: MixtureNodes, upsilon: float) -> float:
    """Exact BER of the i.n.i.d. alpha-mu (form B) sum via Fox-H (g = 1/2)."""
    if upsilon <= 0:
        raise DomainError("upsilon must be positive")
    am = nodes.alpha_bar * nodes.mu_bar
    params = _eq23_foxh_params(nodes)
    total = 0.0
    for lam, om in zip(nodes.lambdas, nodes.omegas):
        z = (2.0 * nodes.beta_bar / (upsilon * om * nodes.z_bar)) ** nodes.alpha_bar
        h = fox_h(params, z)
        total += lam / (2.0 * _SQRT_PI) * (upsilon / 2.0) ** (-am) * h
    return total


def ber_alpha_mu_gen_asymptote(nodes: MixtureNodes, upsilon,
                               partial_proxy: bool = False):
    """High-SNR BER of the form-B sum; kappa2 = (alpha/2) sum_j mu_j.

    The full characterization carries the Fox-H residue constant h1*; the
    partial (outage-style) proxy shares the exponent with a cruder constant.
    """
    am = nodes.alpha_bar * nodes.mu_bar
    lam_sum = float(nodes.lambdas.sum())
    if partial_proxy:
        k1 = lam_sum / am
    else:
        h1 = math.exp(sp.gammaln(am) + sp.gammaln(0.5 + am)
                      - sp.gammaln(1.0 + am))
        k1 = 2.0 ** (am - 1.0) / _SQRT_PI * lam_sum * h1
    law = AsymptoteLaw(kappa1=k1, kappa2=am,
                       source=AsymptoteSource.ALPHA_MU_GEN)
    return law(upsilon), law


def _laplace_exact(snr: SquaredMgSnr, s: float) -> float:
    """Branch Laplace transform: residue series, quadrature fallback.

    The series diverges when some zeta_i / sqrt(Upsilon s) >= 1, which is
    precisely the low-effective-SNR regime where the transform is O(1) and
    the numeric oracle's absolute accuracy suffices.
    """
    try:
        return laplace_exact_series(snr, s)
    except AccuracyError:
        return laplace_numeric_oracle(lambda y: snr_pdf_mg(snr, y), s)


def _theta_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    half = math.pi / 4.0
    return half * (x + 1.0), half * w


def ber_mg_mgf(branches, nu: float, l_branches: int, upsilon: float,
               g: float = 1.0, mode: str = "exact") -> float:
    """Craig-form MGF BER for MG branches: (1/pi) int prod_l L_l(g/sin^2).

    ``exact`` evaluates each branch's Laplace transform by its residue
    series (machine-precision for every argument arising here, since the
    expansion parameter zeta_i / sqrt(Upsilon s) stays far below 1);
    ``high_snr`` keeps only the leading term of each series.
    """
    if upsilon <= 0 or g <= 0:
        raise DomainError("ber_mg_mgf requires upsilon > 0 and g > 0")
    branches = list(branches)
    if len(branches) == 1:
        branches = branches * l_branches
    if len(branches) != l_branches:
        raise DomainError("branches must have length 1 or l_branches")
    if mode not in ("exact", "high_snr"):
        raise DomainError("mode must be 'exact' or 'high_snr'")

    snrs = [SquaredMgSnr.from_model(b, upsilon, nu) for b in branches]

    def estimate(n_nodes: int) -> float:
        theta, w = _theta_nodes(n_nodes)
        s_vals = g / np.sin(theta) ** 2
        prod = np.ones_like(s_vals)
        cache: dict[int, np.ndarray] = {}
        for snr in snrs:
            key = id(snr.source)
            if key not in cache:
                if mode == "high_snr":
                    cache[key] = laplace_high_snr(snr, s_vals)
                else:
                    cache[key] = np.array(
                        [_laplace_exact(snr, s) for s in s_vals])
            prod = prod * cache[key]
        return float(np.sum(w * prod) / math.pi)

    est = estimate(64)
    check = estimate(96)
    if abs(check - est) > 1e-8 * max(abs(check), 1e-300):
        est2 = estimate(192)
        if abs(est2 - check) > 1e-7 * max(abs(est2), 1e-300):
            raise EvaluationError("theta quadrature did not stabilize")
        return est2
    return check


def multinomial_compositions(n_bins: int, total: int):
    """All (k_1..k_N) with nonnegative entries summing to ``total``, lexicographic."""
    if n_bins < 1 or total < 0:
        raise DomainError("need n_bins >= 1 and total >= 0")
    if n_bins == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in multinomial_compositions(n_bins - 1, total - k):
            yield (k,) + rest


def ber_mg_asymptote(branches, nu: float, upsilon, g: float = 1.0,
                     dominant_only: bool = False, term_cap: int = 10**6):
    """High-SNR BER for L MG branches (identical branches allowed).

    Enumerates every component index tuple (n_1..n_L); each contributes
    (1/pi) prod_l [alpha Gamma(beta/2) / (2 nu^beta g^{beta/2})]
    * 2^{sum beta - 1} B((sum beta + 1)/2, ...) * Upsilon^{-sum beta / 2}.
    kappa2 is the minimal sum beta/2; kappa1 sums the coefficients of all
    tuples attaining it.  ``dominant_only`` returns kappa1 Upsilon^-kappa2.
    """
    branches = list(branches)
    if not branches:
        raise DomainError("need at least one branch")
    if not all(isinstance(b, MixtureGamma) for b in branches):
        raise DomainError("ber_mg_asymptote expects MixtureGamma branches")
    sizes = [b.n_components for b in branches]
    n_terms = int(np.prod(sizes))
    if n_terms > term_cap:
        raise EvaluationError(
            f"{n_terms} index tuples exceed the cap {term_cap}; "
            "use dominant_only=True")

    per_branch = []
    for b in branches:
        beta = b.shapes
        ln_coef = (np.log(b.alphas) + sp.gammaln(beta / 2.0) - math.log(2.0)
                   - beta * math.log(nu) - (beta / 2.0) * math.log(g))
        per_branch.append(list(zip(ln_coef, beta)))

    exps = []
    ln_coefs = []
    for combo in itertools.product(*per_branch):
        beta_sum = sum(be for _, be in combo)
        ln_c = sum(lc for lc, _ in combo)
        ln_c += ((beta_sum - 1.0) * math.log(2.0)
                 + 2.0 * sp.gammaln(0.5 * (beta_sum + 1.0))
                 - sp.gammaln(beta_sum + 1.0)
                 - math.log(math.pi))
        exps.append(0.5 * beta_sum)
        ln_coefs.append(ln_c)
    exps = np.array(exps)
    ln_coefs = np.array(ln_coefs)

    kappa2 = float(exps.min())
    lead = np.isclose(exps, kappa2, rtol=0.0, atol=1e-9)
    kappa1 = float(np.exp(ln_coefs[lead]).sum())
    iid = all(b is branches[0] or b == branches[0] for b in branches)
    law = AsymptoteLaw(kappa1=kappa1, kappa2=kappa2,
                       source=AsymptoteSource.MG_IID if iid
                       else AsymptoteSource.MG_INID)
    u = np.asarray(upsilon, dtype=float)
    if dominant_only:
        return law(u), law
    value = np.sum(np.exp(ln_coefs[None, ...]
                          - exps[None, ...] * np.log(np.atleast_1d(u))[:, None]),
                   axis=1)
    value = float(value[0]) if u.ndim == 0 else value
    return value, law
