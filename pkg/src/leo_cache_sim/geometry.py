"""Deterministic orbital geometry for a circular-orbit relay satellite.

Slant ranges, propagation delays, pass-averaged delays, relay hop
counts, and satellite travel time.  The model is a spherical Earth with
the sub-satellite point moving at constant ground speed, so the central
angle between satellite and ground station is linear in time.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT_MPS = 299_792_458.0
MEAN_EARTH_RADIUS_M = 6_371_000.0

# typical LEO shell altitudes; outside this band is unusual but not invalid
ALTITUDE_RANGE_M = (500_000.0, 2_000_000.0)


@dataclass(frozen=True)
class OrbitConfig:
    """Circular-orbit geometry of one LEO satellite.

    altitude_m is height above the mean Earth surface, ground_speed_mps
    the speed of the sub-satellite point, and initial_angle_rad the
    central angle between the satellite ground track and the ground
    station at t = 0.
    """

    altitude_m: float
    ground_speed_mps: float
    initial_angle_rad: float = 0.0
    earth_radius_m: float = MEAN_EARTH_RADIUS_M

    def __post_init__(self):
        if self.altitude_m <= 0:
            raise ValueError("altitude_m must be > 0")
        if self.ground_speed_mps <= 0:
            raise ValueError("ground_speed_mps must be > 0")
        if self.earth_radius_m <= 0:
            raise ValueError("earth_radius_m must be > 0")
        lo, hi = ALTITUDE_RANGE_M
        if not lo <= self.altitude_m <= hi:
            warnings.warn(
                f"altitude {self.altitude_m / 1000:.0f} km outside the "
                f"typical LEO band [{lo / 1000:.0f}, {hi / 1000:.0f}] km",
                stacklevel=2,
            )


@dataclass(frozen=True)
class PassWindow:
    """Time interval during which a satellite link is usable, in seconds
    relative to slot 0.  Boundaries are configuration inputs; no
    elevation mask is modeled."""

    t_start_s: float
    t_end_s: float

    def __post_init__(self):
        if self.t_end_s <= self.t_start_s:
            raise ValueError("degenerate pass window")

    @property
    def duration_s(self) -> float:
        return self.t_end_s - self.t_start_s


@dataclass(frozen=True)
class MediumSpeeds:
    """Signal speeds: s_C for the data-center-to-cache medium, s_S for
    free space."""

    s_C_mps: float = SPEED_OF_LIGHT_MPS
    s_S_mps: float = SPEED_OF_LIGHT_MPS

    def __post_init__(self):
        if not 0 < self.s_C_mps <= self.s_S_mps <= SPEED_OF_LIGHT_MPS:
            raise ValueError(
                "speeds must satisfy 0 < s_C <= s_S <= speed of light"
            )


def central_angle_at(orbit: OrbitConfig, t: float) -> float:
    """Central angle between satellite and ground station at time t.

    Linear motion at the ground-track rate v / R_e; positive initial
    angles shrink as the satellite approaches, pass through zero
    overhead, and go negative as it recedes.
    """
    return orbit.initial_angle_rad - (orbit.ground_speed_mps / orbit.earth_radius_m) * t


def slant_range(orbit: OrbitConfig, central_angle: float) -> float:
    """Ground-station-to-satellite distance for a given central angle.

    Law of cosines on the triangle (Earth center, station, satellite):
    d = sqrt(R_e^2 + (R_e + h)^2 - 2 R_e (R_e + h) cos(angle)).
    Always >= altitude, with equality exactly overhead.
    """
    r_e = orbit.earth_radius_m
    r_s = r_e + orbit.altitude_m
    d2 = r_e * r_e + r_s * r_s - 2.0 * r_e * r_s * math.cos(central_angle)
    return math.sqrt(d2)


def prop_delay(distance_m: float, speed_mps: float) -> float:
    """One-way propagation delay distance / speed, in seconds."""
    return distance_m / speed_mps


def mean_pass_delay(
    orbit: OrbitConfig,
    window: PassWindow,
    speeds: MediumSpeeds,
    n_samples: int = 1024,
) -> float:
    """Mean free-space propagation delay over a pass window.

    Averages prop_delay(slant_range(...)) at n_samples uniformly spaced
    times (midpoint rule, so the estimate is O(1/n^2) accurate for the
    smooth slant-range curve).

    Parameters
    ----------
    orbit : OrbitConfig
        Satellite geometry.
    window : PassWindow
        Time interval to average over.
    speeds : MediumSpeeds
        Supplies the free-space signal speed.
    n_samples : int
        Number of sample times; at least 2.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    if window.t_end_s <= window.t_start_s:
        raise ValueError("degenerate pass window")
    step = window.duration_s / n_samples
    t = window.t_start_s + (np.arange(n_samples) + 0.5) * step
    angle = orbit.initial_angle_rad - (orbit.ground_speed_mps / orbit.earth_radius_m) * t
    r_e = orbit.earth_radius_m
    r_s = r_e + orbit.altitude_m
    dist = np.sqrt(r_e * r_e + r_s * r_s - 2.0 * r_e * r_s * np.cos(angle))
    return float(np.mean(dist)) / speeds.s_S_mps


def relay_count(lambda_per_m: float, d_C_m: float) -> int:
    """Number of relay satellites needed to haul over ground distance
    d_C at constellation density lambda: floor(lambda * d_C)."""
    if lambda_per_m < 0 or d_C_m < 0:
        raise ValueError("density and distance must be >= 0")
    return math.floor(lambda_per_m * d_C_m)


def travel_time(d_C_m: float, v_mps: float, kappa: float) -> float:
    """Time for a satellite to travel a distance kappa * d_C at ground
    speed v.  kappa is the (unspecified-by-the-model) proportionality
    between ground separation and actual path length."""
    if v_mps <= 0:
        raise ValueError("v_mps must be > 0")
    if kappa <= 0:
        raise ValueError("kappa must be > 0")
    return kappa * d_C_m / v_mps
