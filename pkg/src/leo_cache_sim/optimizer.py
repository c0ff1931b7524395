"""Grid sweep over the satellite data fraction and inner time split.

For each fraction f of the B chunks, the satellite carries
B_s = round(f * B); scenarios with an upload/download split search a
split grid exhaustively (slot flooring makes the cost non-unimodal in
the split, so no golden-section shortcuts).  Infeasible grid points are
kept in the output with a flag rather than dropped, so the feasibility
boundary stays visible.
"""

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from leo_cache_sim import scenarios
from leo_cache_sim.errors import InfeasibleDeadlineError, NoFeasiblePointError
from leo_cache_sim.scenarios import (
    LinkQuantiles,
    PowerBreakdown,
    ScenarioConfig,
    ScenarioEvaluation,
)


class Scenario(str, Enum):
    BASELINE = "baseline"
    IMMEDIATE_FORWARD = "immediate_forward"
    RELAY_FORWARD = "relay_forward"
    STORE_FORWARD = "store_forward"


DEFAULT_FRACTION_GRID = tuple(i / 100 for i in range(101))
DEFAULT_SPLIT_GRID = tuple(i / 20 for i in range(1, 20))


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep: scenario, fraction grid, split grid, seed."""

    scenario: Scenario
    fraction_grid: tuple[float, ...] = DEFAULT_FRACTION_GRID
    split_grid: tuple[float, ...] = DEFAULT_SPLIT_GRID
    mc_samples: int = 200_000
    seed: int = 0

    def __post_init__(self):
        if not self.fraction_grid:
            raise ValueError("fraction_grid must be non-empty")
        if not self.split_grid:
            raise ValueError("split_grid must be non-empty")
        if any(not 0 <= f <= 1 for f in self.fraction_grid):
            raise ValueError("fraction_grid values must lie in [0, 1]")
        if any(not 0 < s < 1 for s in self.split_grid):
            raise ValueError("split_grid values must lie in (0, 1)")
        if list(self.fraction_grid) != sorted(self.fraction_grid):
            raise ValueError("fraction_grid must be sorted")
        if list(self.split_grid) != sorted(self.split_grid):
            raise ValueError("split_grid must be sorted")
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be >= 1")


@dataclass(frozen=True)
class SweepPoint:
    """One grid point: fraction, the split that won (nan when the
    scenario has none), and the resulting breakdown (None if
    infeasible)."""

    fraction: float
    split_used: float
    feasible: bool
    breakdown: PowerBreakdown | None
    required_snr_db: float

    def as_dict(self) -> dict:
        d = {
            "fraction": self.fraction,
            "split_used": self.split_used,
            "feasible": self.feasible,
            "required_snr_db": self.required_snr_db,
        }
        if self.breakdown is None:
            d["breakdown"] = None
        else:
            d["breakdown"] = {
                "p_ul": self.breakdown.p_ul,
                "p_dl": self.breakdown.p_dl,
                "p_relay": self.breakdown.p_relay,
                "p_terr": self.breakdown.p_terr,
                "p_storage": self.breakdown.p_storage,
                "total_weighted": self.breakdown.total_weighted,
            }
        return d


@dataclass(frozen=True)
class SweepResult:
    """Cost curve over the fraction grid with its argmin and the
    baseline reference total."""

    scenario: Scenario
    points: tuple[SweepPoint, ...]
    argmin_fraction: float
    argmin_split: float
    argmin_total: float
    baseline_total: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "scenario": self.scenario.value,
                "argmin_fraction": self.argmin_fraction,
                "argmin_split": self.argmin_split,
                "argmin_total": self.argmin_total,
                "baseline_total": self.baseline_total,
                "points": [p.as_dict() for p in self.points],
            },
            sort_keys=True,
        )


def _evaluate_point(
    cfg: ScenarioConfig,
    scenario: Scenario,
    fraction: float,
    split_grid: tuple[float, ...],
    quantiles: LinkQuantiles,
) -> SweepPoint:
    b_s = round(fraction * cfg.B_chunks)
    if scenario is Scenario.IMMEDIATE_FORWARD:
        try:
            ev = scenarios.evaluate_scenario1(cfg, b_s, quantiles)
        except InfeasibleDeadlineError:
            return SweepPoint(fraction, math.nan, False, None, math.nan)
        return SweepPoint(fraction, math.nan, True, ev.breakdown, ev.required_snr_db)

    evaluate = (
        scenarios.evaluate_scenario2
        if scenario is Scenario.RELAY_FORWARD
        else scenarios.evaluate_scenario3
    )
    if b_s == 0:
        # no satellite use, so the split is moot; evaluate once
        try:
            ev = evaluate(cfg, 0, split_grid[0], quantiles)
        except InfeasibleDeadlineError:
            return SweepPoint(fraction, math.nan, False, None, math.nan)
        return SweepPoint(fraction, math.nan, True, ev.breakdown, ev.required_snr_db)
    best: tuple[float, ScenarioEvaluation] | None = None
    for split in split_grid:
        try:
            ev = evaluate(cfg, b_s, split, quantiles)
        except InfeasibleDeadlineError:
            continue
        if best is None or ev.breakdown.total_weighted < best[1].breakdown.total_weighted:
            best = (split, ev)
    if best is None:
        return SweepPoint(fraction, math.nan, False, None, math.nan)
    split, ev = best
    return SweepPoint(fraction, split, True, ev.breakdown, ev.required_snr_db)


def sweep(cfg: ScenarioConfig, spec: SweepSpec) -> SweepResult:
    """Evaluate the scenario cost across the fraction grid.

    Grid points are independent; any Monte Carlo randomness (shadowing
    quantiles) is drawn once up front from the spec seed, so evaluation
    order cannot change the output.  The argmin is the smallest feasible
    total, ties broken toward the smallest fraction (prefer less
    satellite usage) and then the smallest split.
    """
    rng = np.random.default_rng(spec.seed)
    quantiles = scenarios.link_quantiles(cfg, rng=rng, mc_samples=spec.mc_samples)
    try:
        base = scenarios.evaluate_baseline(cfg, quantiles=quantiles)
        baseline_total = base.breakdown.total_weighted
    except InfeasibleDeadlineError:
        # satellite-only operating points may still exist
        base = None
        baseline_total = math.nan

    if spec.scenario is Scenario.BASELINE:
        if base is None:
            raise NoFeasiblePointError("no feasible operating point on the sweep grid")
        point = SweepPoint(0.0, math.nan, True, base.breakdown, base.required_snr_db)
        return SweepResult(
            scenario=spec.scenario,
            points=(point,),
            argmin_fraction=0.0,
            argmin_split=math.nan,
            argmin_total=baseline_total,
            baseline_total=baseline_total,
        )

    points = tuple(
        _evaluate_point(cfg, spec.scenario, f, spec.split_grid, quantiles)
        for f in spec.fraction_grid
    )
    best: SweepPoint | None = None
    for p in points:
        if not p.feasible:
            continue
        if best is None or p.breakdown.total_weighted < best.breakdown.total_weighted:
            best = p
    if best is None:
        raise NoFeasiblePointError("no feasible operating point on the sweep grid")
    return SweepResult(
        scenario=spec.scenario,
        points=points,
        argmin_fraction=best.fraction,
        argmin_split=best.split_used,
        argmin_total=best.breakdown.total_weighted,
        baseline_total=baseline_total,
    )


_SCENARIO_ORDER = {s: i for i, s in enumerate(Scenario)}


@dataclass(frozen=True)
class ComparisonRow:
    scenario: Scenario
    argmin_fraction: float
    argmin_total: float
    baseline_total: float
    delta_db: float


@dataclass(frozen=True)
class ComparisonReport:
    """Scenario ranking against the baseline."""

    rows: tuple[ComparisonRow, ...]
    best: Scenario

    def to_text(self) -> str:
        lines = [
            f"{'scenario':<20} {'argmin_fraction':>16} {'argmin_total':>16} "
            f"{'delta_vs_baseline_db':>22}",
        ]
        for row in self.rows:
            mark = " *" if row.scenario is self.best else ""
            lines.append(
                f"{row.scenario.value:<20} {row.argmin_fraction:>16.4f} "
                f"{row.argmin_total:>16.6e} {row.delta_db:>22.4f}{mark}"
            )
        lines.append(f"best: {self.best.value}")
        return "\n".join(lines) + "\n"


def _delta_db(total: float, baseline: float) -> float:
    if total > 0 and baseline > 0:
        return 10.0 * math.log10(total / baseline)
    if total == 0 and baseline > 0:
        return -math.inf
    return math.nan


def compare(results: list[SweepResult]) -> ComparisonReport:
    """Rank sweep results by their optimal weighted total.

    Rows come out in canonical scenario order regardless of input
    order; the best scenario is the smallest argmin total, ties broken
    toward the earlier scenario in that order.
    """
    if not results:
        raise ValueError("compare needs at least one sweep result")
    ordered = sorted(results, key=lambda r: _SCENARIO_ORDER[r.scenario])
    rows = tuple(
        ComparisonRow(
            scenario=r.scenario,
            argmin_fraction=r.argmin_fraction,
            argmin_total=r.argmin_total,
            baseline_total=r.baseline_total,
            delta_db=_delta_db(r.argmin_total, r.baseline_total),
        )
        for r in ordered
    )
    best = min(rows, key=lambda row: (row.argmin_total, _SCENARIO_ORDER[row.scenario]))
    return ComparisonReport(rows=rows, best=best.scenario)
