"""Power-cost functions for the baseline and the three relay scenarios.

Each scenario moves B_s of the B data chunks through the satellite path
and the rest through N terrestrial unicast sessions.  Satellite
downlink is multicast: one transmission serves the whole cache cluster.
Costs are per-frame energies (active slots times per-slot power), and
the scenario total weights satellite-side components by alpha and the
data-center side by 1 - alpha.
"""

import math
from dataclasses import dataclass

import numpy as np

from leo_cache_sim import allocation, channel, geometry
from leo_cache_sim.allocation import Segmentation, TimeFrame
from leo_cache_sim.channel import ChannelParams
from leo_cache_sim.errors import InfeasibleDeadlineError
from leo_cache_sim.geometry import MediumSpeeds, OrbitConfig, PassWindow

REL_TOL = 1e-12


@dataclass(frozen=True)
class ScenarioConfig:
    """One full problem instance.

    B_chunks indivisible chunks (chunk_bytes each) must reach N_caches
    edge caches, d_C_m away from the data center, within the frame.
    Uplink and downlink satellite legs have their own orbit, pass
    window, and channel; pi_relay is the fixed power cost per relay
    hop, mu_storage the cost per chunk-slot held onboard, and kappa the
    store-and-forward travel proportionality.
    """

    B_chunks: int
    frame: TimeFrame
    N_caches: int
    d_C_m: float
    speeds: MediumSpeeds
    orbit_ul: OrbitConfig
    orbit_dl: OrbitConfig
    pass_ul: PassWindow
    pass_dl: PassWindow
    ch_ul: ChannelParams
    ch_dl: ChannelParams
    ch_terr: ChannelParams
    lambda_per_m: float = 0.0
    pi_relay: float = 0.0
    alpha: float = 0.5
    mu_storage: float = 0.0
    kappa: float = 1.0
    chunk_bytes: int = 1400
    hop_processing_s: float = 0.0

    def __post_init__(self):
        if self.B_chunks < 0:
            raise ValueError("B_chunks must be >= 0")
        if self.N_caches < 1:
            raise ValueError("N_caches must be >= 1")
        if not 0 <= self.alpha <= 1:
            raise ValueError("alpha must lie in [0, 1]")
        if self.pi_relay < 0:
            raise ValueError("pi_relay must be >= 0")
        if self.mu_storage < 0:
            raise ValueError("mu_storage must be >= 0")
        if self.lambda_per_m < 0:
            raise ValueError("lambda_per_m must be >= 0")
        if self.d_C_m < 0:
            raise ValueError("d_C_m must be >= 0")
        if self.kappa <= 0:
            raise ValueError("kappa must be > 0")
        if self.chunk_bytes < 1:
            raise ValueError("chunk_bytes must be >= 1")
        if self.hop_processing_s < 0:
            raise ValueError("hop_processing_s must be >= 0")


@dataclass(frozen=True)
class PowerBreakdown:
    """Per-component frame energies and the alpha-weighted total."""

    p_ul: float
    p_dl: float
    p_relay: float
    p_terr: float
    p_storage: float
    alpha: float
    total_weighted: float

    def __post_init__(self):
        for name in ("p_ul", "p_dl", "p_relay", "p_terr", "p_storage"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        expect = self.alpha * (
            self.p_ul + self.p_dl + self.p_relay + self.p_storage
        ) + (1.0 - self.alpha) * self.p_terr
        if not math.isclose(self.total_weighted, expect, rel_tol=REL_TOL, abs_tol=0.0):
            raise ValueError("total_weighted violates the weighting identity")

    @classmethod
    def assemble(
        cls,
        alpha: float,
        p_ul: float = 0.0,
        p_dl: float = 0.0,
        p_relay: float = 0.0,
        p_terr: float = 0.0,
        p_storage: float = 0.0,
    ) -> "PowerBreakdown":
        total = alpha * (p_ul + p_dl + p_relay + p_storage) + (1.0 - alpha) * p_terr
        return cls(
            p_ul=p_ul,
            p_dl=p_dl,
            p_relay=p_relay,
            p_terr=p_terr,
            p_storage=p_storage,
            alpha=alpha,
            total_weighted=total,
        )


@dataclass(frozen=True)
class LinkQuantiles:
    """Precomputed outage-quantile gains for the three links.

    Computing these once per sweep (instead of per grid point) keeps
    the bisection kernel out of the inner loop; pass the same instance
    to every cost call of a sweep.
    """

    ul: float
    dl: float
    terr: float


def link_quantiles(
    cfg: ScenarioConfig,
    rng: np.random.Generator | None = None,
    mc_samples: int = 200_000,
) -> LinkQuantiles:
    """Outage-quantile gain of each link.

    Analytic (bisection on the chi-squared CDF) for pure Rician links;
    Monte Carlo over the composite law when shadowing is configured,
    which requires ``rng``.
    """

    def one(params: ChannelParams) -> float:
        if params.shadowing_sigma_db is None:
            return channel.gain_quantile(params, params.outage_eps)
        if rng is None:
            raise ValueError("shadowing-enabled channels need an rng")
        return channel.gain_quantile_mc(params, params.outage_eps, rng, mc_samples)

    return LinkQuantiles(
        ul=one(cfg.ch_ul), dl=one(cfg.ch_dl), terr=one(cfg.ch_terr)
    )


@dataclass(frozen=True)
class ScenarioEvaluation:
    """A cost breakdown plus the per-slot satellite link SNRs behind it.

    slot_snr_ul / slot_snr_dl are transmit power over noise power for
    one active slot of the respective satellite leg (zero when the leg
    is unused).
    """

    breakdown: PowerBreakdown
    slot_snr_ul: float
    slot_snr_dl: float
    segments: Segmentation | None

    @property
    def required_snr_db(self) -> float:
        """Peak per-slot satellite transmit SNR, in dB (-inf if unused)."""
        peak = max(self.slot_snr_ul, self.slot_snr_dl)
        if peak <= 0.0:
            return -math.inf
        return 10.0 * math.log10(peak)


def _terrestrial_energy(cfg: ScenarioConfig, data_units: float, q_terr: float) -> float:
    """Energy of N unicast sessions pushing data_units each, baseline style."""
    if data_units == 0:
        return 0.0
    t0 = allocation.baseline_deadline(
        cfg.frame, cfg.N_caches, cfg.d_C_m, cfg.speeds.s_C_mps
    )
    rate = allocation.uniform_rate(data_units, t0)
    p_slot = channel.required_power(rate, q_terr, cfg.ch_terr.noise_power)
    return cfg.N_caches * t0 * p_slot


def _quantiles(cfg: ScenarioConfig, quantiles: LinkQuantiles | None) -> LinkQuantiles:
    return quantiles if quantiles is not None else link_quantiles(cfg)


def _mean_delays(cfg: ScenarioConfig) -> tuple[float, float]:
    ul = geometry.mean_pass_delay(cfg.orbit_ul, cfg.pass_ul, cfg.speeds)
    dl = geometry.mean_pass_delay(cfg.orbit_dl, cfg.pass_dl, cfg.speeds)
    return ul, dl


def _sat_leg_energy(
    slots: int, data_units: float, q_gain: float, params: ChannelParams
) -> tuple[float, float]:
    """(per-slot power, leg energy) for pushing data_units over slots."""
    if slots < 1:
        raise InfeasibleDeadlineError(
            "infeasible deadline: satellite leg received no slots"
        )
    rate = allocation.uniform_rate(data_units, slots)
    p_slot = channel.required_power(rate, q_gain, params.noise_power)
    return p_slot, slots * p_slot


def evaluate_baseline(
    cfg: ScenarioConfig,
    data_units: float | None = None,
    quantiles: LinkQuantiles | None = None,
) -> ScenarioEvaluation:
    """All-terrestrial delivery: N unicast sessions, no satellite."""
    b = cfg.B_chunks if data_units is None else data_units
    if b < 0:
        raise ValueError("data_units must be >= 0")
    q = _quantiles(cfg, quantiles)
    p_terr = _terrestrial_energy(cfg, b, q.terr)
    return ScenarioEvaluation(
        breakdown=PowerBreakdown.assemble(cfg.alpha, p_terr=p_terr),
        slot_snr_ul=0.0,
        slot_snr_dl=0.0,
        segments=None,
    )


def evaluate_scenario1(
    cfg: ScenarioConfig,
    B_s: float,
    quantiles: LinkQuantiles | None = None,
) -> ScenarioEvaluation:
    """Immediate forward: one satellite relays B_s on the fly.

    Uplink and multicast downlink run concurrently at the same uniform
    rate over the delay-trimmed frame; the residual B - B_s goes out as
    baseline unicast.
    """
    _check_bs(cfg, B_s)
    q = _quantiles(cfg, quantiles)
    if B_s == 0:
        return evaluate_baseline(cfg, quantiles=q)
    mean_ul, mean_dl = _mean_delays(cfg)
    slots = allocation.scenario1_deadline(cfg.frame, mean_ul, mean_dl)
    p_ul_slot, e_ul = _sat_leg_energy(slots, B_s, q.ul, cfg.ch_ul)
    p_dl_slot, e_dl = _sat_leg_energy(slots, B_s, q.dl, cfg.ch_dl)
    p_terr = _terrestrial_energy(cfg, cfg.B_chunks - B_s, q.terr)
    return ScenarioEvaluation(
        breakdown=PowerBreakdown.assemble(
            cfg.alpha, p_ul=e_ul, p_dl=e_dl, p_terr=p_terr
        ),
        slot_snr_ul=p_ul_slot / cfg.ch_ul.noise_power,
        slot_snr_dl=p_dl_slot / cfg.ch_dl.noise_power,
        segments=None,
    )


def evaluate_scenario2(
    cfg: ScenarioConfig,
    B_s: float,
    split: float,
    quantiles: LinkQuantiles | None = None,
) -> ScenarioEvaluation:
    """Relay and forward: a chain of floor(lambda * d_C) satellites.

    Upload completes before the chain relays (the constellation itself
    store-and-forwards), so the usable frame splits between an upload
    and a download segment; each relay hop costs pi_relay.
    """
    _check_bs(cfg, B_s)
    q = _quantiles(cfg, quantiles)
    if B_s == 0:
        return evaluate_baseline(cfg, quantiles=q)
    hops = geometry.relay_count(cfg.lambda_per_m, cfg.d_C_m)
    per_hop = 0.0
    if hops > 0:
        spacing_m = 1.0 / cfg.lambda_per_m
        per_hop = spacing_m / cfg.speeds.s_S_mps + cfg.hop_processing_s
    mean_ul, mean_dl = _mean_delays(cfg)
    seg = allocation.scenario2_segments(
        cfg.frame, mean_ul, per_hop, hops, mean_dl, split
    )
    p_ul_slot, e_ul = _sat_leg_energy(seg.upload_slots, B_s, q.ul, cfg.ch_ul)
    p_dl_slot, e_dl = _sat_leg_energy(seg.download_slots, B_s, q.dl, cfg.ch_dl)
    p_terr = _terrestrial_energy(cfg, cfg.B_chunks - B_s, q.terr)
    return ScenarioEvaluation(
        breakdown=PowerBreakdown.assemble(
            cfg.alpha,
            p_ul=e_ul,
            p_dl=e_dl,
            p_relay=hops * cfg.pi_relay,
            p_terr=p_terr,
        ),
        slot_snr_ul=p_ul_slot / cfg.ch_ul.noise_power,
        slot_snr_dl=p_dl_slot / cfg.ch_dl.noise_power,
        segments=seg,
    )


def evaluate_scenario3(
    cfg: ScenarioConfig,
    B_s: float,
    split: float,
    quantiles: LinkQuantiles | None = None,
) -> ScenarioEvaluation:
    """Store and forward: the satellite hauls B_s across the gap itself.

    The frame loses ceil(travel / slot) slots while the satellite
    covers kappa * d_C at its ground speed; stored chunks pay
    mu_storage per chunk-slot from upload completion to broadcast end
    (travel plus download slots).
    """
    _check_bs(cfg, B_s)
    q = _quantiles(cfg, quantiles)
    if B_s == 0:
        return evaluate_baseline(cfg, quantiles=q)
    travel_s = geometry.travel_time(
        cfg.d_C_m, cfg.orbit_ul.ground_speed_mps, cfg.kappa
    )
    mean_ul, mean_dl = _mean_delays(cfg)
    terr_delay = cfg.d_C_m / cfg.speeds.s_C_mps
    seg = allocation.scenario3_segments(
        cfg.frame, mean_ul, mean_dl, terr_delay, travel_s, split
    )
    p_ul_slot, e_ul = _sat_leg_energy(seg.upload_slots, B_s, q.ul, cfg.ch_ul)
    p_dl_slot, e_dl = _sat_leg_energy(seg.download_slots, B_s, q.dl, cfg.ch_dl)
    p_storage = cfg.mu_storage * B_s * (seg.travel_slots + seg.download_slots)
    p_terr = _terrestrial_energy(cfg, cfg.B_chunks - B_s, q.terr)
    return ScenarioEvaluation(
        breakdown=PowerBreakdown.assemble(
            cfg.alpha,
            p_ul=e_ul,
            p_dl=e_dl,
            p_terr=p_terr,
            p_storage=p_storage,
        ),
        slot_snr_ul=p_ul_slot / cfg.ch_ul.noise_power,
        slot_snr_dl=p_dl_slot / cfg.ch_dl.noise_power,
        segments=seg,
    )


def _check_bs(cfg: ScenarioConfig, B_s: float) -> None:
    if not 0 <= B_s <= cfg.B_chunks:
        raise ValueError(f"B_s must lie in [0, {cfg.B_chunks}]")


def baseline_cost(
    cfg: ScenarioConfig,
    data_units: float | None = None,
    quantiles: LinkQuantiles | None = None,
) -> PowerBreakdown:
    """Cost of delivering everything terrestrially; see evaluate_baseline."""
    return evaluate_baseline(cfg, data_units, quantiles).breakdown


def scenario1_cost(
    cfg: ScenarioConfig, B_s: float, quantiles: LinkQuantiles | None = None
) -> PowerBreakdown:
    """Immediate-forward cost; see evaluate_scenario1."""
    return evaluate_scenario1(cfg, B_s, quantiles).breakdown


def scenario2_cost(
    cfg: ScenarioConfig,
    B_s: float,
    split: float,
    quantiles: LinkQuantiles | None = None,
) -> PowerBreakdown:
    """Relay-and-forward cost; see evaluate_scenario2."""
    return evaluate_scenario2(cfg, B_s, split, quantiles).breakdown


def scenario3_cost(
    cfg: ScenarioConfig,
    B_s: float,
    split: float,
    quantiles: LinkQuantiles | None = None,
) -> PowerBreakdown:
    """Store-and-forward cost; see evaluate_scenario3."""
    return evaluate_scenario3(cfg, B_s, split, quantiles).breakdown
