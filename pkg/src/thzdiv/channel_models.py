"""Fading models, THz link budget, and single-branch densities/moments.

Three small-scale fading families describe one diversity branch:

* ``AlphaMuA``   -- alpha-mu distribution parameterized by the alpha-root
  mean value Z-hat (indoor THz links).
* ``AlphaMuB``   -- alpha-mu distribution parameterized by the envelope
  mean x-bar (indoor THz links, i.n.i.d. analysis).
* ``MixtureGamma`` -- weighted mixture of gamma densities (outdoor THz).

The deterministic amplitude scale nu combines transmit power, antenna
gains, and the spreading/molecular-absorption path loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import special as sp

from .errors import DomainError

__all__ = [
    "SPEED_OF_LIGHT",
    "BOLTZMANN",
    "AlphaMuA",
    "AlphaMuB",
    "MixtureGamma",
    "BranchModel",
    "LinkBudget",
    "Scenario",
    "path_loss_amplitude",
    "branch_scale_nu",
    "envelope_pdf",
    "power_pdf",
    "envelope_moment",
    "ALPHA_MU_PRESETS",
    "MG_PRESETS",
    "alpha_mu_a_preset",
    "alpha_mu_b_preset",
    "mg_preset",
    "list_presets",
]

SPEED_OF_LIGHT = 299792458.0  # m/s
BOLTZMANN = 1.380649e-23  # J/K


@dataclass(frozen=True)
class AlphaMuA:
    """alpha-mu envelope model, Z-hat (alpha-root-mean) parameterization."""

    alpha: float
    mu: float
    z_hat: float = 1.0

    def __post_init__(self):
        if self.alpha <= 0 or self.mu <= 0 or self.z_hat <= 0:
            raise DomainError("AlphaMuA requires alpha, mu, z_hat > 0")


@dataclass(frozen=True)
class AlphaMuB:
    """alpha-mu envelope model parameterized by the mean x_mean = E|h_f|.

    ``beta_param`` is the derived constant Gamma(mu + 1/alpha)/Gamma(mu).
    """

    alpha: float
    mu: float
    x_mean: float = 1.0
    beta_param: float = field(init=False)

    def __post_init__(self):
        if self.alpha <= 0 or self.mu <= 0 or self.x_mean <= 0:
            raise DomainError("AlphaMuB requires alpha, mu, x_mean > 0")
        beta = math.exp(sp.gammaln(self.mu + 1.0 / self.alpha) - sp.gammaln(self.mu))
        object.__setattr__(self, "beta_param", beta)


@dataclass(frozen=True)
class MixtureGamma:
    """Mixture-of-gamma envelope model: components of (weight, shape, rate)."""

    components: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        comps = tuple((float(w), float(b), float(z)) for w, b, z in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise DomainError("MixtureGamma needs at least one component")
        if any(w <= 0 or w > 1 or b <= 0 or z <= 0 for w, b, z in comps):
            raise DomainError("MixtureGamma requires w in (0,1], beta > 0, zeta > 0")
        if abs(sum(w for w, _, _ in comps) - 1.0) > 1e-9:
            raise DomainError("MixtureGamma weights must sum to 1 (within 1e-9)")

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _, _ in self.components])

    @property
    def shapes(self) -> np.ndarray:
        return np.array([b for _, b, _ in self.components])

    @property
    def rates(self) -> np.ndarray:
        return np.array([z for _, _, z in self.components])

    @property
    def alphas(self) -> np.ndarray:
        """Per-component shorthand w_i * zeta_i^beta_i / Gamma(beta_i)."""
        w, b, z = self.weights, self.shapes, self.rates
        return w * np.exp(b * np.log(z) - sp.gammaln(b))


BranchModel = Union[AlphaMuA, AlphaMuB, MixtureGamma]


@dataclass(frozen=True)
class LinkBudget:
    """Deterministic THz link parameters yielding the amplitude scale nu.

    With ``normalized=True`` the scale is nu = 1 and noise power is 1,
    which is how SNR-swept scenarios are normally run.
    """

    f: float = 0.142e12  # Hz
    d: float = 20.0  # m
    kabs: float = 0.0  # 1/m
    rho: float = 2.0  # path-loss exponent, measurement best fit
    pt: float = 1.0  # W
    gt: float = 1.0  # linear
    gr: float = 1.0  # linear
    temperature: float = 300.0  # K
    bandwidth: float = 4e9  # Hz
    normalized: bool = True

    def __post_init__(self):
        pos = (self.f, self.d, self.rho, self.pt, self.gt, self.gr,
               self.temperature, self.bandwidth)
        if any(v <= 0 for v in pos) or self.kabs < 0:
            raise DomainError("LinkBudget physical fields must be positive (kabs >= 0)")

    @property
    def noise_power(self) -> float:
        if self.normalized:
            return 1.0
        return BOLTZMANN * self.temperature * self.bandwidth


@dataclass(frozen=True)
class Scenario:
    """Unit of work for a BER computation: branches, link, g, SNR grid."""

    branches: tuple[BranchModel, ...]
    link: LinkBudget = LinkBudget()
    g: float = 0.5
    snr_grid: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        grid = tuple(float(u) for u in self.snr_grid)
        object.__setattr__(self, "snr_grid", grid)
        if len(self.branches) < 1:
            raise DomainError("Scenario needs at least one branch")
        if self.g <= 0:
            raise DomainError("Scenario requires g > 0")
        if grid and (any(u <= 0 for u in grid) or any(
                b <= a for a, b in zip(grid[:-1], grid[1:]))):
            raise DomainError("snr_grid must be strictly ascending and positive")

    @property
    def l_branches(self) -> int:
        return len(self.branches)

    @property
    def nu(self) -> float:
        return branch_scale_nu(self.link)


def path_loss_amplitude(f: float, d: float, kabs: float = 0.0, rho: float = 2.0) -> float:
    """Free-space THz path-loss amplitude (c/(4 pi f d))^(rho/2) e^(-kabs d/2)."""
    if f <= 0 or d <= 0:
        raise DomainError("path_loss_amplitude requires f > 0 and d > 0")
    if kabs < 0 or rho <= 0:
        raise DomainError("path_loss_amplitude requires kabs >= 0 and rho > 0")
    spread = (SPEED_OF_LIGHT / (4.0 * math.pi * f * d)) ** (rho / 2.0)
    return spread * math.exp(-0.5 * kabs * d)


def branch_scale_nu(link: LinkBudget) -> float:
    """Amplitude scale nu = sqrt(Pt Gt Gr) * h_p (1 in normalized mode)."""
    if link.normalized:
        return 1.0
    hp = path_loss_amplitude(link.f, link.d, link.kabs, link.rho)
    return math.sqrt(link.pt * link.gt * link.gr) * hp


def _boundary_value(coef_at_zero: float, exponent: float) -> float:
    """Density value at y = 0 given the local coefficient and y-exponent."""
    if exponent > 0.0:
        return 0.0
    if exponent == 0.0:
        return coef_at_zero
    raise DomainError("density diverges at y = 0")


def _eval_pointwise(y, positive_fn, zero_value_fn):
    """Evaluate a density on y >= 0 with explicit y = 0 boundary handling."""
    arr = np.asarray(y, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("density argument must be nonnegative")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        out[pos] = positive_fn(arr[pos])
    if np.any(~pos):
        out[~pos] = zero_value_fn()
    return float(out[0]) if scalar else out


def envelope_pdf(model: BranchModel, y):
    """PDF of the small-scale fading envelope |h_f| at y >= 0."""
    if isinstance(model, AlphaMuA):
        a, m, zh = model.alpha, model.mu, model.z_hat
        lncoef = math.log(a) + m * math.log(m) - a * m * math.log(zh) - sp.gammaln(m)

        def f(x):
            return np.exp(lncoef + (a * m - 1.0) * np.log(x) - m * (x / zh) ** a)

        return _eval_pointwise(y, f, lambda: _boundary_value(math.exp(lncoef), a * m - 1.0))

    if isinstance(model, AlphaMuB):
        a, m, xb, beta = model.alpha, model.mu, model.x_mean, model.beta_param
        lncoef = math.log(a) + a * m * math.log(beta) - a * m * math.log(xb) - sp.gammaln(m)

        def f(x):
            return np.exp(lncoef + (a * m - 1.0) * np.log(x) - (beta * x / xb) ** a)

        return _eval_pointwise(y, f, lambda: _boundary_value(math.exp(lncoef), a * m - 1.0))

    if isinstance(model, MixtureGamma):
        al, b, z = model.alphas, model.shapes, model.rates

        def f(x):
            x = x[:, None]
            return np.sum(al * np.exp((b - 1.0) * np.log(x) - z * x), axis=1)

        def at_zero():
            val = 0.0
            for ai, bi in zip(al, b):
                val += _boundary_value(ai, bi - 1.0)
            return val

        return _eval_pointwise(y, f, at_zero)

    raise TypeError(f"unknown branch model {type(model)!r}")


def power_pdf(model: BranchModel, nu: float, y):
    """PDF of the scaled channel power |h|^2 = (nu |h_f|)^2 at y >= 0."""
    if nu <= 0:
        raise DomainError("power_pdf requires nu > 0")
    if isinstance(model, AlphaMuA):
        a, m = model.alpha, model.mu
        zn = model.z_hat * nu
        lncoef = (math.log(a) + m * math.log(m) - a * m * math.log(zn)
                  - sp.gammaln(m) - math.log(2.0))
        e = 0.5 * a * m - 1.0

        def f(x):
            return np.exp(lncoef + e * np.log(x) - m * x ** (0.5 * a) / zn**a)

        return _eval_pointwise(y, f, lambda: _boundary_value(math.exp(lncoef), e))

    if isinstance(model, AlphaMuB):
        a, m, beta = model.alpha, model.mu, model.beta_param
        xn = model.x_mean * nu
        lncoef = (math.log(a) + a * m * math.log(beta) - a * m * math.log(xn)
                  - sp.gammaln(m) - math.log(2.0))
        e = 0.5 * a * m - 1.0

        def f(x):
            return np.exp(lncoef + e * np.log(x) - (beta * np.sqrt(x) / xn) ** a)

        return _eval_pointwise(y, f, lambda: _boundary_value(math.exp(lncoef), e))

    if isinstance(model, MixtureGamma):
        al, b, z = model.alphas, model.shapes, model.rates
        lncoef = np.log(al) - b * math.log(nu) - math.log(2.0)
        e = 0.5 * b - 1.0

        def f(x):
            x = x[:, None]
            return np.sum(np.exp(lncoef + e * np.log(x) - (z / nu) * np.sqrt(x)), axis=1)

        def at_zero():
            val = 0.0
            for lc, ei in zip(lncoef, e):
                val += _boundary_value(math.exp(lc), ei)
            return val

        return _eval_pointwise(y, f, at_zero)

    raise TypeError(f"unknown branch model {type(model)!r}")


def envelope_moment(model: BranchModel, nu: float, k: float) -> float:
    """k-th moment E[|h|^k] of the scaled envelope |h| = nu |h_f|, k >= 0."""
    if k < 0:
        raise DomainError("envelope_moment requires k >= 0")
    if k == 0:
        return 1.0
    if isinstance(model, AlphaMuA):
        a, m = model.alpha, model.mu
        ln = (k * math.log(nu * model.z_hat)
              + sp.gammaln(m + k / a) - (k / a) * math.log(m) - sp.gammaln(m))
        return math.exp(ln)
    if isinstance(model, AlphaMuB):
        a, m = model.alpha, model.mu
        ln = (k * math.log(nu * model.x_mean / model.beta_param)
              + sp.gammaln(m + k / a) - sp.gammaln(m))
        return math.exp(ln)
    if isinstance(model, MixtureGamma):
        w, b, z = model.weights, model.shapes, model.rates
        terms = w * np.exp(sp.gammaln(b + k) - sp.gammaln(b) - k * np.log(z))
        return float(nu**k * terms.sum())
    raise TypeError(f"unknown branch model {type(model)!r}")


# --- presets from published THz measurements ---------------------------------

ALPHA_MU_PRESETS: dict[str, tuple[float, float]] = {
    "indoor_1": (3.45388, 0.51571),
    "indoor_2": (2.92801, 0.61844),
}

MG_PRESETS: dict[str, tuple[tuple[float, float, float], ...]] = {
    "mg_config1": (
        (0.67540627, 15.2709327, 0.069986341),
        (0.32459373, 4.417045104, 0.153163953),
    ),
    "mg_config2": (
        (0.512500204, 3.75341946, 0.159416427),
        (0.487499796, 22.59894871, 0.054461913),
    ),
    "mg_config3": (
        (0.536820771, 11.86214023, 0.073313171),
        (0.319060454, 34.27672813, 0.036198297),
        (0.144118775, 3.511663936, 0.155541075),
    ),
    "mg_config4": (
        (0.382437165, 3.363382854, 0.158117222),
        (0.366850269, 20.56338721, 0.046248736),
        (0.250712566, 65.00282197, 0.021761466),
    ),
}


def alpha_mu_a_preset(name: str, z_hat: float = 1.0) -> AlphaMuA:
    alpha, mu = ALPHA_MU_PRESETS[name]
    return AlphaMuA(alpha=alpha, mu=mu, z_hat=z_hat)


def alpha_mu_b_preset(name: str, x_mean: float = 1.0) -> AlphaMuB:
    alpha, mu = ALPHA_MU_PRESETS[name]
    return AlphaMuB(alpha=alpha, mu=mu, x_mean=x_mean)


def mg_preset(name: str) -> MixtureGamma:
    return MixtureGamma(components=MG_PRESETS[name])


def list_presets() -> dict[str, dict]:
    """All named presets with their raw parameters (for the CLI)."""
    out: dict[str, dict] = {}
    for name, (alpha, mu) in ALPHA_MU_PRESETS.items():
        out[name] = {"family": "alpha_mu", "alpha": alpha, "mu": mu}
    for name, comps in MG_PRESETS.items():
        out[name] = {
            "family": "mixture_gamma",
            "w": [c[0] for c in comps],
            "beta": [c[1] for c in comps],
            "zeta": [c[2] for c in comps],
        }
    return out
