"""Deadline adjustment and time-frame segmentation.

The delivery frame is T discrete slots of fixed duration.  Propagation
and relay latencies consume slots conservatively (consumed time is
rounded up, usable time rounded down) so a returned budget never
violates the deadline.
"""

import math
from dataclasses import dataclass

from leo_cache_sim.errors import InfeasibleDeadlineError


@dataclass(frozen=True)
class TimeFrame:
    """Delivery period: total_slots slots of slot_duration_s seconds."""

    total_slots: int
    slot_duration_s: float

    def __post_init__(self):
        if self.total_slots < 1:
            raise ValueError("total_slots must be >= 1")
        if self.slot_duration_s <= 0:
            raise ValueError("slot_duration_s must be > 0")

    @property
    def duration_s(self) -> float:
        return self.total_slots * self.slot_duration_s


@dataclass(frozen=True)
class Segmentation:
    """Slot budget of one scenario's frame.

    Any count may be zero depending on the scenario; prop_adjust_slots
    is the propagation-delay trim taken off the frame.
    """

    upload_slots: int = 0
    relay_slots: int = 0
    travel_slots: int = 0
    download_slots: int = 0
    prop_adjust_slots: int = 0

    def __post_init__(self):
        for name in (
            "upload_slots",
            "relay_slots",
            "travel_slots",
            "download_slots",
            "prop_adjust_slots",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def consumed_slots(self) -> int:
        return (
            self.upload_slots
            + self.relay_slots
            + self.travel_slots
            + self.download_slots
            + self.prop_adjust_slots
        )


def uniform_rate(data_units: float, slots: int) -> float:
    """Per-slot rate that spreads data_units evenly over slots.

    Real-valued; rate * slots reproduces data_units to within fp
    rounding (1e-12 relative).
    """
    if slots < 1:
        raise InfeasibleDeadlineError("infeasible deadline: no slots available")
    if data_units < 0:
        raise ValueError("data_units must be >= 0")
    return data_units / slots


def baseline_deadline(
    frame: TimeFrame, n_caches: int, d_C_m: float, s_C_mps: float
) -> int:
    """Per-cache unicast slot budget under serialized service.

    The data center serves the N caches one after another, each losing
    the terrestrial one-way delay: floor(T/N - d_C/s_C), in slots.
    """
    if n_caches < 1:
        raise ValueError("n_caches must be >= 1")
    delay_slots = (d_C_m / s_C_mps) / frame.slot_duration_s
    slots = math.floor(frame.total_slots / n_caches - delay_slots)
    if slots <= 0:
        raise InfeasibleDeadlineError(
            f"infeasible deadline: floor(T/N - d_C/s_C) = {slots} slots"
        )
    return slots


def scenario1_deadline(
    frame: TimeFrame, mean_ul_delay_s: float, mean_dl_delay_s: float
) -> int:
    """Slots left for the immediate-forward satellite path.

    The frame is trimmed by the mean uplink plus mean downlink
    propagation delay: floor(T - (ul + dl)/slot).
    """
    if mean_ul_delay_s < 0 or mean_dl_delay_s < 0:
        raise ValueError("delays must be >= 0")
    trim = (mean_ul_delay_s + mean_dl_delay_s) / frame.slot_duration_s
    slots = math.floor(frame.total_slots - trim)
    if slots <= 0:
        raise InfeasibleDeadlineError(
            "infeasible deadline: propagation delay consumes the frame"
        )
    return slots


def _split_remaining(remaining: int, split: float) -> tuple[int, int]:
    """Divide the usable slots between upload and download."""
    upload = math.floor(split * remaining)
    return upload, remaining - upload


def scenario2_segments(
    frame: TimeFrame,
    ul_delay_s: float,
    per_hop_delay_s: float,
    hops: int,
    dl_delay_s: float,
    split: float,
) -> Segmentation:
    """Frame segmentation for the relay-chain scenario.

    The constellation store-and-forwards: upload completes, the chain
    relays for ceil(hops * per_hop / slot) slots, then the far-end
    satellite broadcasts.  The rest of the frame, after the propagation
    trim, divides between upload and download by ``split``.
    """
    if not 0 < split < 1:
        raise ValueError("split must lie in (0, 1)")
    if hops < 0:
        raise ValueError("hops must be >= 0")
    if per_hop_delay_s < 0 or ul_delay_s < 0 or dl_delay_s < 0:
        raise ValueError("delays must be >= 0")
    relay_slots = math.ceil(hops * per_hop_delay_s / frame.slot_duration_s)
    prop_adjust = math.ceil((ul_delay_s + dl_delay_s) / frame.slot_duration_s)
    remaining = frame.total_slots - relay_slots - prop_adjust
    if remaining <= 1:
        raise InfeasibleDeadlineError(
            "infeasible deadline: relay latency and propagation leave "
            f"{remaining} usable slots"
        )
    upload, download = _split_remaining(remaining, split)
    return Segmentation(
        upload_slots=upload,
        relay_slots=relay_slots,
        download_slots=download,
        prop_adjust_slots=prop_adjust,
    )


def scenario3_segments(
    frame: TimeFrame,
    ul_delay_s: float,
    dl_delay_s: float,
    terr_delay_s: float,
    travel_time_s: float,
    split: float,
) -> Segmentation:
    """Frame segmentation for the store-and-forward scenario.

    The satellite uploads, travels for ceil(travel / slot) slots toward
    the cache cluster, then broadcasts.  The propagation trim covers
    every delay component of the scenario (satellite up/down plus the
    terrestrial path used by residual data).
    """
    if not 0 < split < 1:
        raise ValueError("split must lie in (0, 1)")
    if travel_time_s < 0:
        raise ValueError("travel_time_s must be >= 0")
    if ul_delay_s < 0 or dl_delay_s < 0 or terr_delay_s < 0:
        raise ValueError("delays must be >= 0")
    travel_slots = math.ceil(travel_time_s / frame.slot_duration_s)
    prop_adjust = math.ceil(
        (ul_delay_s + dl_delay_s + terr_delay_s) / frame.slot_duration_s
    )
    remaining = frame.total_slots - travel_slots - prop_adjust
    if remaining <= 1:
        raise InfeasibleDeadlineError(
            "infeasible deadline: travel time and propagation leave "
            f"{remaining} usable slots"
        )
    upload, download = _split_remaining(remaining, split)
    return Segmentation(
        upload_slots=upload,
        travel_slots=travel_slots,
        download_slots=download,
        prop_adjust_slots=prop_adjust,
    )
