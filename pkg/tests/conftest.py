import dataclasses
from pathlib import Path

import pytest

from leo_cache_sim import (
    ChannelParams,
    MediumSpeeds,
    OrbitConfig,
    PassWindow,
    ScenarioConfig,
    TimeFrame,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
REFERENCE_CONFIG = REPO_ROOT / "configs" / "reference.json"

# nearly deterministic Rician link: relative gain spread ~ 2/sqrt(1e6)
NEAR_DETERMINISTIC = ChannelParams(noncentrality=1e6, scale=1.0, outage_eps=0.5)


def make_reference_cfg(**overrides) -> ScenarioConfig:
    """Case-study instance: 400 chunks, 200 ms frame, 2 caches at 60 km,
    one 1200 km satellite passing overhead, 5-relay constellation."""
    orbit = OrbitConfig(altitude_m=1.2e6, ground_speed_mps=1e4, initial_angle_rad=0.0)
    window = PassWindow(0.0, 0.2)
    ch = ChannelParams(noncentrality=10.0, scale=1.0)
    cfg = ScenarioConfig(
        B_chunks=400,
        frame=TimeFrame(200, 1e-3),
        N_caches=2,
        d_C_m=60e3,
        speeds=MediumSpeeds(),
        orbit_ul=orbit,
        orbit_dl=orbit,
        pass_ul=window,
        pass_dl=window,
        ch_ul=ch,
        ch_dl=ch,
        ch_terr=ch,
        lambda_per_m=8.34e-5,
        pi_relay=1.0,
        alpha=0.5,
        mu_storage=0.001,
        kappa=1.0,
    )
    return dataclasses.replace(cfg, **overrides) if overrides else cfg


@pytest.fixture
def reference_cfg() -> ScenarioConfig:
    return make_reference_cfg()
