import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from leo_cache_sim import geometry
from leo_cache_sim.geometry import (
    MediumSpeeds,
    OrbitConfig,
    PassWindow,
    central_angle_at,
    mean_pass_delay,
    prop_delay,
    relay_count,
    slant_range,
    travel_time,
)

ORBIT = OrbitConfig(altitude_m=1.2e6, ground_speed_mps=1e4, initial_angle_rad=0.1)


class TestConfigTypes:
    def test_altitude_hard_bounds(self):
        with pytest.raises(ValueError):
            OrbitConfig(altitude_m=0.0, ground_speed_mps=1e4)
        with pytest.raises(ValueError):
            OrbitConfig(altitude_m=-5.0, ground_speed_mps=1e4)

    def test_altitude_soft_band_warns(self):
        with pytest.warns(UserWarning, match="typical LEO band"):
            OrbitConfig(altitude_m=300e3, ground_speed_mps=1e4)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            OrbitConfig(altitude_m=1.2e6, ground_speed_mps=1e4)

    def test_speed_and_radius_positive(self):
        with pytest.raises(ValueError):
            OrbitConfig(altitude_m=1.2e6, ground_speed_mps=0.0)
        with pytest.raises(ValueError):
            OrbitConfig(altitude_m=1.2e6, ground_speed_mps=1e4, earth_radius_m=-1.0)

    def test_degenerate_pass_window(self):
        with pytest.raises(ValueError, match="degenerate pass window"):
            PassWindow(1.0, 1.0)

    def test_medium_speed_ordering(self):
        MediumSpeeds(2.0e8, 2.997e8)
        with pytest.raises(ValueError):
            MediumSpeeds(2.997e8, 2.0e8)
        with pytest.raises(ValueError):
            MediumSpeeds(1.0e8, 3.1e8)  # faster than light


class TestCentralAngle:
    def test_identity_at_t0(self):
        assert central_angle_at(ORBIT, 0.0) == 0.1

    def test_zero_crossing(self):
        # 0.1 - (10000/6371000) t = 0 at t = 63.71 s
        assert central_angle_at(ORBIT, 63.71) == pytest.approx(0.0, abs=1e-12)

    def test_linearity_past_overhead(self):
        assert central_angle_at(ORBIT, 127.42) == pytest.approx(-0.1, abs=1e-12)


class TestSlantRange:
    def test_overhead_equals_altitude(self):
        assert slant_range(ORBIT, 0.0) == pytest.approx(1.2e6, rel=1e-12)

    def test_law_of_cosines_value(self):
        # independent half-angle form: d = sqrt(h^2 + 4 Re Rs sin^2(a/2))
        r_e, h = 6371000.0, 1200000.0
        r_s = r_e + h
        want = math.sqrt(h * h + 4.0 * r_e * r_s * math.sin(0.05) ** 2)
        got = slant_range(ORBIT, 0.1)
        assert got == pytest.approx(want, rel=1e-12)
        assert got == pytest.approx(1386342.88, abs=1.0)

    def test_even_in_angle(self):
        assert slant_range(ORBIT, 0.1) == slant_range(ORBIT, -0.1)

    @given(st.floats(min_value=0.0, max_value=math.pi / 2 - 0.01))
    def test_at_least_altitude(self, angle):
        assert slant_range(ORBIT, angle) >= ORBIT.altitude_m - 1e-6

    @given(
        st.floats(min_value=0.0, max_value=math.pi / 2 - 0.02),
        st.floats(min_value=1e-4, max_value=0.01),
    )
    def test_strictly_increasing_in_abs_angle(self, angle, step):
        assert slant_range(ORBIT, angle + step) > slant_range(ORBIT, angle)


class TestPropDelay:
    def test_zero_distance(self):
        assert prop_delay(0.0, 3e8) == 0.0

    def test_satellite_altitude_delay(self):
        assert prop_delay(1.2e6, 2.998e8) == pytest.approx(4.0026684e-3, rel=1e-6)

    def test_terrestrial_distance_delay(self):
        assert prop_delay(60e3, 2.998e8) == pytest.approx(2.0013342e-4, rel=1e-6)

    @given(
        st.floats(min_value=0.0, max_value=1e7),
        st.floats(min_value=0.0, max_value=1e7),
    )
    def test_linear_in_distance(self, a, b):
        s = 2.998e8
        assert prop_delay(a + b, s) == pytest.approx(
            prop_delay(a, s) + prop_delay(b, s), rel=1e-12, abs=1e-300
        )


class TestMeanPassDelay:
    SPEEDS = MediumSpeeds()

    def test_constant_integrand(self):
        # satellite pinned overhead: negligible motion, delay = h / s_S
        still = OrbitConfig(altitude_m=1.2e6, ground_speed_mps=1e-9, initial_angle_rad=0.0)
        got = mean_pass_delay(still, PassWindow(0.0, 1.0), self.SPEEDS, 64)
        assert got == pytest.approx(1.2e6 / self.SPEEDS.s_S_mps, rel=1e-12)

    def test_symmetric_window_halves(self):
        window = PassWindow(0.0, 127.42)
        half = PassWindow(0.0, 63.71)
        whole = mean_pass_delay(ORBIT, window, self.SPEEDS, 2048)
        left = mean_pass_delay(ORBIT, half, self.SPEEDS, 1024)
        assert whole == pytest.approx(left, rel=1e-12)

    def test_matches_trapezoid_oracle(self):
        window = PassWindow(0.0, 127.42)
        got = mean_pass_delay(ORBIT, window, self.SPEEDS, 10_000)
        # independent quadrature: fine composite trapezoid over the
        # same delay curve
        t = np.linspace(window.t_start_s, window.t_end_s, 200_001)
        angle = ORBIT.initial_angle_rad - (ORBIT.ground_speed_mps / ORBIT.earth_radius_m) * t
        r_e, r_s = ORBIT.earth_radius_m, ORBIT.earth_radius_m + ORBIT.altitude_m
        delay = np.sqrt(r_e**2 + r_s**2 - 2 * r_e * r_s * np.cos(angle)) / self.SPEEDS.s_S_mps
        want = float(np.trapezoid(delay, t)) / window.duration_s
        assert abs(got - want) < 1e-9

    def test_convergence_under_refinement(self):
        window = PassWindow(0.0, 127.42)
        coarse = mean_pass_delay(ORBIT, window, self.SPEEDS, 4096)
        fine = mean_pass_delay(ORBIT, window, self.SPEEDS, 8192)
        assert abs(coarse - fine) < 1e-8

    def test_rejects_tiny_sample_count(self):
        with pytest.raises(ValueError):
            mean_pass_delay(ORBIT, PassWindow(0.0, 1.0), self.SPEEDS, 1)


class TestRelayCount:
    def test_zero_density(self):
        assert relay_count(0.0, 1e9) == 0

    def test_case_study_constellation(self):
        # 8.34e-5 per m over 60 km: floor(5.004) = 5 relays
        assert relay_count(8.34e-5, 60e3) == 5

    def test_exact_multiple(self):
        assert relay_count(1e-4, 60e3) == 6

    @given(
        st.floats(min_value=0.0, max_value=1e-2),
        st.floats(min_value=0.0, max_value=1e6),
    )
    def test_floor_consistency(self, lam, d):
        n = relay_count(lam, d)
        assert n <= lam * d < n + 1

    @given(
        st.floats(min_value=0.0, max_value=1e-3),
        st.floats(min_value=0.0, max_value=1e-3),
        st.floats(min_value=0.0, max_value=1e5),
    )
    def test_monotone_in_density(self, lam, bump, d):
        assert relay_count(lam + bump, d) >= relay_count(lam, d)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            relay_count(-1e-5, 100.0)


class TestTravelTime:
    def test_zero_distance(self):
        assert travel_time(0.0, 1e4, 1.0) == 0.0

    def test_case_study_speed(self):
        assert travel_time(60e3, 1e4, 1.0) == 6.0

    def test_proportionality_constant(self):
        assert travel_time(60e3, 1e4, 0.5) == 3.0

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            travel_time(1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            travel_time(1.0, 1e4, 0.0)


def test_speed_of_light_constant():
    assert geometry.SPEED_OF_LIGHT_MPS == 299_792_458.0
