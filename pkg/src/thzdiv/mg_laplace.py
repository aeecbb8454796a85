"""Laplace transform of the squared mixture-of-gamma SNR density.

For gamma' = Upsilon |h|^2 under mixture-of-gamma fading the density is a
sum of stretched-exponential terms a_i y^{b_i-1} exp(-c_i sqrt(y)); its
Laplace transform admits an exact residue series (convergent for small
c_i/sqrt(s), i.e. large Upsilon*s) whose first term is the high-SNR
approximation.  A quadrature oracle covers the remaining region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy import special as sp

from .channel_models import MixtureGamma
from .errors import AccuracyError, DomainError, EvaluationError

__all__ = [
    "SquaredMgSnr",
    "snr_pdf_mg",
    "laplace_exact_series",
    "laplace_high_snr",
    "laplace_numeric_oracle",
]


@dataclass(frozen=True)
class SquaredMgSnr:
    """Parameters of the density of gamma' = Upsilon |h|^2 under MG fading."""

    a: np.ndarray  # alpha_i Upsilon^{-b_i} / (2 nu^{beta_i})
    b: np.ndarray  # beta_i / 2
    c: np.ndarray  # zeta_i / (sqrt(Upsilon) nu)
    source: MixtureGamma
    upsilon: float
    nu: float

    @classmethod
    def from_model(cls, model: MixtureGamma, upsilon: float,
                   nu: float = 1.0) -> "SquaredMgSnr":
        if upsilon <= 0 or nu <= 0:
            raise DomainError("SquaredMgSnr requires upsilon > 0 and nu > 0")
        beta = model.shapes
        b = beta / 2.0
        ln_a = (np.log(model.alphas) - b * math.log(upsilon)
                - beta * math.log(nu) - math.log(2.0))
        c = model.rates / (math.sqrt(upsilon) * nu)
        return cls(a=np.exp(ln_a), b=b, c=c, source=model,
                   upsilon=upsilon, nu=nu)


def snr_pdf_mg(s: SquaredMgSnr, y):
    """Density sum_i a_i y^{b_i-1} exp(-c_i sqrt(y)) at y >= 0."""
    arr = np.asarray(y, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("snr_pdf_mg requires y >= 0")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).astype(float)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        # Log-domain: y^{b-1} alone overflows for large shapes even where
        # the exponential tail makes the product negligible.
        yp = arr[pos][:, None]
        # a_i may underflow to 0 for very large shapes; log(0) = -inf is the
        # right sentinel (the component contributes exactly nothing).
        with np.errstate(divide="ignore"):
            ln = (np.log(s.a) + (s.b - 1.0) * np.log(yp) - s.c * np.sqrt(yp))
        out[pos] = np.sum(np.exp(ln), axis=1)
    if np.any(~pos):
        val = 0.0
        for ai, bi in zip(s.a, s.b):
            if bi - 1.0 > 0.0:
                continue
            if bi == 1.0:
                val += ai
            else:
                raise DomainError("snr density diverges at y = 0")
        out[~pos] = val
    return float(out[0]) if scalar else out


def laplace_exact_series(s: SquaredMgSnr, s_arg: float, terms: int = 200) -> float:
    """Residue series of L{f_gamma'}(s), truncated after ``terms`` terms.

    Converges usefully only while the expansion argument c_i/sqrt(s) stays
    below 1; otherwise an AccuracyError recommends the numeric oracle.
    """
    if s_arg <= 0:
        raise DomainError("laplace_exact_series requires s_arg > 0")
    if terms < 1:
        raise DomainError("terms must be >= 1")
    total = 0.0
    worst_ratio = 0.0
    for ai, bi, ci in zip(s.a, s.b, s.c):
        x = ci / math.sqrt(s_arg)
        worst_ratio = max(worst_ratio, x)
        acc = 0.0
        maxterm = 0.0
        last = math.inf
        for t in range(terms):
            ln_mag = (sp.gammaln((2.0 * bi + t) / 2.0) + t * math.log(x)
                      - sp.gammaln(t + 1.0))
            term = ((-1.0) ** t) * math.exp(ln_mag)
            acc += term
            maxterm = max(maxterm, abs(term))
            last = abs(term)
            if t >= 1 and last < 1e-16 * max(abs(acc), 1e-300):
                break
        else:
            # Truncated at the requested term count; only a divergent-looking
            # expansion argument is an error (deliberate truncation is not).
            if x >= 1.0 and last > 1e-12 * max(abs(acc), 1e-300):
                raise AccuracyError(
                    f"series argument {x:.3g} converges too slowly at "
                    f"{terms} terms; use laplace_numeric_oracle",
                    achieved=last / max(abs(acc), 1e-300))
        if maxterm * 1e-16 > 1e-10 * max(abs(acc), 1e-300):
            raise AccuracyError(
                "catastrophic cancellation in residue series; "
                "use laplace_numeric_oracle",
                achieved=maxterm * 1e-16 / max(abs(acc), 1e-300))
        total += ai * s_arg ** (-bi) * acc
    return total


def laplace_high_snr(s: SquaredMgSnr, s_arg) -> float:
    """First-term (high-Upsilon) approximation of the Laplace transform."""
    s_arr = np.asarray(s_arg, dtype=float)
    if np.any(s_arr <= 0):
        raise DomainError("laplace_high_snr requires s_arg > 0")
    scalar = s_arr.ndim == 0
    s_arr = np.atleast_1d(s_arr).astype(float)
    vals = np.sum(
        s.a * sp.gamma(s.b) * s_arr[:, None] ** (-s.b), axis=1)
    return float(vals[0]) if scalar else vals


def laplace_numeric_oracle(pdf, s_arg: float) -> float:
    """Adaptive quadrature of int_0^inf e^{-s y} f(y) dy."""
    if s_arg < 0:
        raise DomainError("laplace_numeric_oracle requires s_arg >= 0")

    def integrand(y):
        return math.exp(-s_arg * y) * float(pdf(y))

    val, err = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-12,
                              epsrel=1e-11, limit=400)
    if err > 1e-10:
        raise EvaluationError(
            f"Laplace quadrature error estimate {err:.2e} exceeds 1e-10")
    return val
