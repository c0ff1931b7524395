"""Power-cost simulator for LEO-satellite-assisted edge-cache delivery.

Models a data center pushing content updates to a cluster of edge
caches either terrestrially (baseline) or partly through LEO satellites
(immediate forward, relay and forward, store and forward), and sweeps
the satellite data fraction for the power-optimal operating point.
"""

__version__ = "0.1.0"

from leo_cache_sim.allocation import (
    Segmentation,
    TimeFrame,
    baseline_deadline,
    scenario1_deadline,
    scenario2_segments,
    scenario3_segments,
    uniform_rate,
)
from leo_cache_sim.channel import (
    ChannelParams,
    GainSample,
    gain_quantile,
    gain_quantile_mc,
    ncx2_cdf,
    required_power,
    required_power_outage,
    sample_gain,
    sample_gains,
)
from leo_cache_sim.errors import (
    ConfigError,
    ConvergenceError,
    InfeasibleDeadlineError,
    NoFeasiblePointError,
)
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
from leo_cache_sim.optimizer import (
    ComparisonReport,
    Scenario,
    SweepResult,
    SweepSpec,
    compare,
    sweep,
)
from leo_cache_sim.scenarios import (
    LinkQuantiles,
    PowerBreakdown,
    ScenarioConfig,
    baseline_cost,
    link_quantiles,
    scenario1_cost,
    scenario2_cost,
    scenario3_cost,
)

__all__ = [
    "__version__",
    "ChannelParams",
    "ComparisonReport",
    "ConfigError",
    "ConvergenceError",
    "GainSample",
    "InfeasibleDeadlineError",
    "LinkQuantiles",
    "MediumSpeeds",
    "NoFeasiblePointError",
    "OrbitConfig",
    "PassWindow",
    "PowerBreakdown",
    "Scenario",
    "ScenarioConfig",
    "Segmentation",
    "SweepResult",
    "SweepSpec",
    "TimeFrame",
    "baseline_cost",
    "baseline_deadline",
    "central_angle_at",
    "compare",
    "gain_quantile",
    "gain_quantile_mc",
    "link_quantiles",
    "mean_pass_delay",
    "ncx2_cdf",
    "prop_delay",
    "relay_count",
    "required_power",
    "required_power_outage",
    "sample_gain",
    "sample_gains",
    "scenario1_cost",
    "scenario1_deadline",
    "scenario2_cost",
    "scenario2_segments",
    "scenario3_cost",
    "scenario3_segments",
    "slant_range",
    "sweep",
    "travel_time",
    "uniform_rate",
]
