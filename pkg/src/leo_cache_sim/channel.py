"""Rician fading as a non-central chi-squared power gain, plus the
Shannon-capacity power inversion under an outage-quantile design.

The amplitude of a Rician link squares to a 2-DOF non-central
chi-squared variable X with noncentrality lam (Rician K = lam / 2).
Gains are normalized as gain = scale * X / (2 + lam) so the mean gain
equals ``scale``, then reduced by a fixed atmospheric margin and,
optionally, multiplied by log-normal shadowing.

Power is sized against the eps-quantile of the gain rather than its
expected inverse: E[1/X] diverges near zero for this law, while the
quantile design guarantees the target rate with probability >= 1 - eps.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from leo_cache_sim import _kernels

# Table-style soft validation bands (dB); hard bound for the margin
SHADOWING_SIGMA_DB_RANGE = (5.0, 20.0)
ATMO_LOSS_DB_RANGE = (5.0, 40.0)
ATMO_LOSS_DB_MAX = 40.0


@dataclass(frozen=True)
class ChannelParams:
    """Power-gain law and outage design target for one link.

    noncentrality is the chi-squared lam (>= 0, Rician K = lam / 2);
    scale is the mean linear gain; outage_eps the per-link outage
    probability the power inversion designs against.
    """

    noncentrality: float
    scale: float = 1.0
    noise_power: float = 1.0
    outage_eps: float = 0.05
    atmo_loss_db: float = 0.0
    shadowing_sigma_db: float | None = None

    def __post_init__(self):
        if self.noncentrality < 0:
            raise ValueError("noncentrality must be >= 0")
        if self.scale <= 0:
            raise ValueError("scale must be > 0")
        if self.noise_power <= 0:
            raise ValueError("noise_power must be > 0")
        if not 0 < self.outage_eps <= 0.5:
            raise ValueError("outage_eps must lie in (0, 0.5]")
        if not 0 <= self.atmo_loss_db <= ATMO_LOSS_DB_MAX:
            raise ValueError(f"atmo_loss_db must lie in [0, {ATMO_LOSS_DB_MAX}]")
        lo, hi = ATMO_LOSS_DB_RANGE
        if self.atmo_loss_db != 0 and not lo <= self.atmo_loss_db <= hi:
            warnings.warn(
                f"atmo_loss_db {self.atmo_loss_db} outside the typical "
                f"[{lo}, {hi}] dB band",
                stacklevel=2,
            )
        if self.shadowing_sigma_db is not None:
            if self.shadowing_sigma_db <= 0:
                raise ValueError("shadowing_sigma_db must be > 0 when set")
            lo, hi = SHADOWING_SIGMA_DB_RANGE
            if not lo <= self.shadowing_sigma_db <= hi:
                warnings.warn(
                    f"shadowing_sigma_db {self.shadowing_sigma_db} outside "
                    f"the typical [{lo}, {hi}] dB band",
                    stacklevel=2,
                )

    @property
    def rician_k(self) -> float:
        """Rician K-factor, K = noncentrality / 2."""
        return self.noncentrality / 2.0

    @classmethod
    def from_rician_k(cls, k_factor: float, **kwargs) -> "ChannelParams":
        """Build params from a Rician K-factor (noncentrality = 2K)."""
        return cls(noncentrality=2.0 * k_factor, **kwargs)

    @property
    def atmo_factor(self) -> float:
        """Linear gain multiplier for the fixed atmospheric margin."""
        return 10.0 ** (-self.atmo_loss_db / 10.0)


@dataclass(frozen=True)
class GainSample:
    """One linear power-gain draw."""

    value: float

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("gain must be >= 0")


def ncx2_cdf(x: float, noncentrality: float) -> float:
    """CDF of the 2-DOF non-central chi-squared law, 1 - Q1(sqrt(nc), sqrt(x)).

    Delegates to the active kernel backend (compiled or pure Python).
    """
    if x < 0:
        return 0.0
    return _kernels.ncx2_cdf(x, noncentrality)


def gain_quantile(params: ChannelParams, eps: float) -> float:
    """eps-quantile of the linear power gain (analytic fading law only).

    Bisects the chi-squared CDF to |cdf - eps| <= 1e-9, rescales by
    scale / (2 + lam), and applies the atmospheric margin.  Shadowing is
    not part of this quantile; use gain_quantile_mc when it is enabled.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    lam = params.noncentrality
    x = _kernels.ncx2_quantile(eps, lam)
    return x * params.scale / (2.0 + lam) * params.atmo_factor


def sample_gains(params: ChannelParams, rng: np.random.Generator, n: int) -> np.ndarray:
    """Vectorized gain draws; see sample_gain for the construction."""
    lam = params.noncentrality
    mu = math.sqrt(lam / 2.0)
    z1 = rng.standard_normal(n)
    z2 = rng.standard_normal(n)
    h = (mu + z1) ** 2 + (mu + z2) ** 2
    g = h * (params.scale / (2.0 + lam)) * params.atmo_factor
    if params.shadowing_sigma_db is not None:
        shadow_db = params.shadowing_sigma_db * rng.standard_normal(n)
        g = g * 10.0 ** (shadow_db / 10.0)
    return g


def sample_gain(params: ChannelParams, rng: np.random.Generator) -> GainSample:
    """Draw one power gain.

    The line-of-sight offset sqrt(lam/2) is split equally between the
    in-phase and quadrature components, h = (sqrt(lam/2) + Z1)^2 +
    (sqrt(lam/2) + Z2)^2, giving noncentrality lam and mean 2 + lam;
    the draw is rescaled by scale / (2 + lam) (mean gain = scale),
    reduced by the atmospheric margin, and multiplied by log-normal
    shadowing (median 1) when configured.
    """
    return GainSample(float(sample_gains(params, rng, 1)[0]))


def gain_quantile_mc(
    params: ChannelParams,
    eps: float,
    rng: np.random.Generator,
    n_samples: int,
) -> float:
    """Empirical eps-quantile of the full gain law, shadowing included."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if n_samples < 1000:
        raise ValueError("n_samples too small for a stable quantile")
    g = sample_gains(params, rng, n_samples)
    return float(np.quantile(g, eps))


def required_power(rate_per_slot: float, gain: float, noise_power: float) -> float:
    """Transmit power for a target per-slot rate at a known gain.

    Shannon inversion with unit bandwidth per slot:
    p = (2^rate - 1) * noise / gain.
    """
    if rate_per_slot <= 0:
        raise ValueError("rate must be > 0")
    if noise_power <= 0:
        raise ValueError("noise_power must be > 0")
    if gain <= 0:
        raise ValueError("zero-gain link")
    return (2.0 ** rate_per_slot - 1.0) * noise_power / gain


def required_power_outage(rate_per_slot: float, params: ChannelParams) -> float:
    """Per-slot power meeting the rate with probability >= 1 - outage_eps.

    Sizes the Shannon inversion against the outage_eps-quantile gain.
    With unit noise power this is the required SNR.
    """
    g = gain_quantile(params, params.outage_eps)
    return required_power(rate_per_slot, g, params.noise_power)
