import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leo_cache_sim.allocation import (
    Segmentation,
    TimeFrame,
    baseline_deadline,
    scenario1_deadline,
    scenario2_segments,
    scenario3_segments,
    uniform_rate,
)
from leo_cache_sim.errors import InfeasibleDeadlineError

FRAME = TimeFrame(200, 1e-3)


class TestTypes:
    def test_frame_validation(self):
        with pytest.raises(ValueError):
            TimeFrame(0, 1e-3)
        with pytest.raises(ValueError):
            TimeFrame(10, 0.0)
        assert FRAME.duration_s == pytest.approx(0.2)

    def test_segmentation_rejects_negative(self):
        with pytest.raises(ValueError):
            Segmentation(upload_slots=-1)
        seg = Segmentation(upload_slots=5, download_slots=7, prop_adjust_slots=1)
        assert seg.consumed_slots == 13


class TestUniformRate:
    def test_case_study_rate(self):
        # 400 units over 200 slots: 2 per slot
        assert uniform_rate(400, 200) == 2.0

    def test_zero_data(self):
        assert uniform_rate(0, 100) == 0.0

    def test_fractional_rate(self):
        assert uniform_rate(400, 99) == pytest.approx(400 / 99, rel=1e-15)

    def test_no_slots_is_infeasible(self):
        with pytest.raises(InfeasibleDeadlineError):
            uniform_rate(400, 0)

    @given(
        st.floats(min_value=0.0, max_value=1e9),
        st.integers(min_value=1, max_value=10**6),
    )
    def test_rate_times_slots_recovers_data(self, b, s):
        assert uniform_rate(b, s) * s == pytest.approx(b, rel=1e-12, abs=1e-300)


class TestBaselineDeadline:
    def test_case_study_window(self):
        # T/N = 100 slots minus the 0.2001-slot terrestrial delay
        assert baseline_deadline(FRAME, 2, 60e3, 2.998e8) == 99

    def test_single_cache_no_distance(self):
        assert baseline_deadline(FRAME, 1, 0.0, 2.998e8) == 200

    def test_pure_division(self):
        assert baseline_deadline(FRAME, 2, 0.0, 2.998e8) == 100

    def test_infeasible(self):
        with pytest.raises(InfeasibleDeadlineError):
            baseline_deadline(TimeFrame(1, 1e-3), 2, 0.0, 2.998e8)

    @given(st.integers(min_value=1, max_value=20), st.integers(min_value=1, max_value=20))
    def test_non_increasing_in_n(self, n, bump):
        base = baseline_deadline(FRAME, n, 0.0, 2.998e8)
        assert baseline_deadline(FRAME, n + bump, 0.0, 2.998e8) <= base

    @given(st.floats(min_value=0.0, max_value=1e6), st.floats(min_value=0.0, max_value=1e6))
    def test_non_increasing_in_distance(self, d, bump):
        base = baseline_deadline(FRAME, 2, d, 2.998e8)
        try:
            longer = baseline_deadline(FRAME, 2, d + bump, 2.998e8)
        except InfeasibleDeadlineError:
            return
        assert longer <= base


class TestScenario1Deadline:
    def test_zero_delay_identity(self):
        assert scenario1_deadline(FRAME, 0.0, 0.0) == 200

    def test_case_study_trim(self):
        assert scenario1_deadline(FRAME, 4.003e-3, 4.003e-3) == 191

    def test_infeasible(self):
        with pytest.raises(InfeasibleDeadlineError):
            scenario1_deadline(TimeFrame(10, 1e-3), 6e-3, 5e-3)

    @given(st.floats(min_value=0.0, max_value=0.09), st.floats(min_value=0.0, max_value=0.05))
    def test_less_delay_never_fewer_slots(self, delay, cut):
        more = scenario1_deadline(FRAME, delay, 0.0)
        fewer = scenario1_deadline(FRAME, max(delay - cut, 0.0), 0.0)
        assert fewer >= more


class TestScenario2Segments:
    def test_symmetric_no_relay(self):
        seg = scenario2_segments(FRAME, 0.0, 0.0, 0, 0.0, 0.5)
        assert (seg.upload_slots, seg.relay_slots, seg.download_slots) == (100, 0, 100)
        assert seg.prop_adjust_slots == 0

    def test_relay_chain_consumes_slots(self):
        seg = scenario2_segments(FRAME, 0.0, 2e-3, 5, 0.0, 0.5)
        assert (seg.upload_slots, seg.relay_slots, seg.download_slots) == (95, 10, 95)

    def test_uneven_split_floor(self):
        seg = scenario2_segments(FRAME, 0.0, 2e-3, 5, 0.0, 0.25)
        # remaining 190: floor(0.25 * 190) up, rest down
        assert (seg.upload_slots, seg.download_slots) == (47, 143)

    def test_infeasible_when_relay_eats_frame(self):
        with pytest.raises(InfeasibleDeadlineError):
            scenario2_segments(FRAME, 0.0, 50e-3, 5, 0.0, 0.5)

    @given(
        st.floats(min_value=0.001, max_value=0.999),
        st.integers(min_value=0, max_value=20),
        st.floats(min_value=0.0, max_value=5e-3),
        st.floats(min_value=0.0, max_value=0.02),
    )
    def test_fits_frame(self, split, hops, per_hop, delay):
        try:
            seg = scenario2_segments(FRAME, delay, per_hop, hops, delay, split)
        except InfeasibleDeadlineError:
            return
        assert seg.consumed_slots <= FRAME.total_slots
        assert seg.upload_slots + seg.download_slots >= 2


class TestScenario3Segments:
    def test_no_travel(self):
        seg = scenario3_segments(FRAME, 0.0, 0.0, 0.0, 0.0, 0.5)
        assert (seg.upload_slots, seg.travel_slots, seg.download_slots) == (100, 0, 100)

    def test_case_study_travel_does_not_fit(self):
        # 60 km at 10 km/s is a 6 s crossing: 6000 slots against 200
        with pytest.raises(InfeasibleDeadlineError):
            scenario3_segments(FRAME, 0.0, 0.0, 0.0, 6.0, 0.5)

    def test_mid_frame_travel(self):
        seg = scenario3_segments(FRAME, 0.0, 0.0, 0.0, 50e-3, 0.5)
        assert (seg.upload_slots, seg.travel_slots, seg.download_slots) == (75, 50, 75)

    @given(
        st.floats(min_value=0.05, max_value=0.95),
        st.floats(min_value=0.0, max_value=0.25),
        st.floats(min_value=0.0, max_value=5e-3),
    )
    def test_fits_frame(self, split, travel, delay):
        try:
            seg = scenario3_segments(FRAME, delay, delay, delay, travel, split)
        except InfeasibleDeadlineError:
            return
        assert seg.consumed_slots <= FRAME.total_slots

    def test_more_travel_never_more_slots(self):
        budgets = []
        for travel in [0.0, 10e-3, 50e-3, 100e-3]:
            seg = scenario3_segments(FRAME, 1e-3, 1e-3, 0.0, travel, 0.5)
            budgets.append(seg.upload_slots + seg.download_slots)
        assert budgets == sorted(budgets, reverse=True)
