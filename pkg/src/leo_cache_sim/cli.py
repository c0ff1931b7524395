"""Command-line front end: load a JSON config, run sweeps, write CSVs.

Configs use human units (km, ms, dB, km/s); everything is converted to
base SI at load time so the core never sees mixed units.  Output is a
sweep CSV per scenario, a plain-text comparison report, and a
machine-readable run manifest.  Given the same config file and seed the
outputs are byte-identical.
"""

import argparse
import hashlib
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from leo_cache_sim import __version__, optimizer, scenarios
from leo_cache_sim.allocation import TimeFrame
from leo_cache_sim.channel import ChannelParams
from leo_cache_sim.errors import ConfigError, NoFeasiblePointError
from leo_cache_sim.geometry import (
    MediumSpeeds,
    OrbitConfig,
    PassWindow,
    travel_time,
)
from leo_cache_sim.optimizer import Scenario, SweepSpec
from leo_cache_sim.scenarios import ScenarioConfig

SEED_ENV_VAR = "LEO_CACHE_SIM_SEED"

CSV_HEADER = (
    "scenario,fraction,split,feasible,p_ul,p_dl,p_relay,p_terr,"
    "p_storage,total_weighted,required_snr_db"
)

# documentation-only plausibility bands
FREQUENCY_BANDS_GHZ = ((1.0, 17.0), (27.0, 75.0))
POWER_BUDGET_WH_RANGE = (10.0, 50.0)


def km_to_m(km: float) -> float:
    return km * 1000.0


def ms_to_s(ms: float) -> float:
    return ms / 1000.0


@dataclass(frozen=True)
class RunConfig:
    """A fully validated run: SI-unit scenario config plus sweep setup."""

    scenario_cfg: ScenarioConfig
    run_scenarios: tuple[Scenario, ...]
    fraction_grid: tuple[float, ...]
    split_grid: tuple[float, ...]
    mc_samples: int
    seed: int
    config_sha256: str
    warnings: tuple[str, ...]
    out_dir: str = "out"


class _Reader:
    """Typed access into the parsed JSON with field-path error messages."""

    def __init__(self, data: dict, path: str = ""):
        if not isinstance(data, dict):
            raise ConfigError(f"config section '{path or '<root>'}' must be an object")
        self.data = data
        self.path = path

    def _full(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def section(self, key: str, required: bool = True) -> "_Reader | None":
        if key not in self.data:
            if required:
                raise ConfigError(f"missing required config section '{self._full(key)}'")
            return None
        return _Reader(self.data[key], self._full(key))

    def num(self, key: str, default=None, required: bool = False) -> float | None:
        if key not in self.data:
            if required:
                raise ConfigError(f"missing required config field '{self._full(key)}'")
            return default
        v = self.data[key]
        if v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"config field '{self._full(key)}' must be a number")
        return float(v)

    def integer(self, key: str, default=None, required: bool = False) -> int | None:
        v = self.num(key, default=default, required=required)
        if v is None:
            return None
        if v != int(v):
            raise ConfigError(f"config field '{self._full(key)}' must be an integer")
        return int(v)

    def strings(self, key: str) -> list[str] | None:
        if key not in self.data:
            return None
        v = self.data[key]
        if not isinstance(v, list) or any(not isinstance(s, str) for s in v):
            raise ConfigError(f"config field '{self._full(key)}' must be a string list")
        return v


def _orbit(reader: _Reader) -> OrbitConfig:
    return OrbitConfig(
        altitude_m=km_to_m(reader.num("altitude_km", required=True)),
        ground_speed_mps=km_to_m(reader.num("ground_speed_km_per_s", required=True)),
        initial_angle_rad=math.radians(reader.num("initial_angle_deg", 0.0)),
        earth_radius_m=km_to_m(reader.num("earth_radius_km", 6371.0)),
    )


def _pass_window(reader: _Reader | None, frame_ms: float) -> PassWindow:
    if reader is None:
        return PassWindow(0.0, ms_to_s(frame_ms))
    return PassWindow(
        t_start_s=ms_to_s(reader.num("start_ms", 0.0)),
        t_end_s=ms_to_s(reader.num("end_ms", frame_ms)),
    )


def _channel(reader: _Reader) -> ChannelParams:
    return ChannelParams(
        noncentrality=reader.num("noncentrality", required=True),
        scale=reader.num("mean_gain", 1.0),
        noise_power=reader.num("noise_power", 1.0),
        outage_eps=reader.num("outage_eps", 0.05),
        atmo_loss_db=reader.num("atmo_loss_db", 0.0),
        shadowing_sigma_db=reader.num("shadowing_sigma_db", None),
    )


def _grid_from_step(step: float, path: str, open_interval: bool) -> tuple[float, ...]:
    if not 0 < step <= 0.5:
        raise ConfigError(f"config field '{path}' must lie in (0, 0.5]")
    n = round(1.0 / step)
    if abs(n * step - 1.0) > 1e-9:
        raise ConfigError(f"config field '{path}' must divide 1 evenly")
    if open_interval:
        return tuple(i / n for i in range(1, n))
    return tuple(i / n for i in range(n + 1))


def _parse_scenarios(names: list[str] | None, where: str) -> tuple[Scenario, ...]:
    if names is None or names == ["all"]:
        return tuple(Scenario)
    out = []
    for name in names:
        if name == "all":
            return tuple(Scenario)
        try:
            out.append(Scenario(name))
        except ValueError:
            valid = ", ".join(s.value for s in Scenario)
            raise ConfigError(
                f"unknown scenario '{name}' in {where} (valid: all, {valid})"
            ) from None
    return tuple(out)


def _annotation_warnings(root: _Reader) -> list[str]:
    notes = []
    ann = root.section("annotations", required=False)
    if ann is None:
        return notes
    freq = ann.num("frequency_ghz", None)
    if freq is not None and not any(lo <= freq <= hi for lo, hi in FREQUENCY_BANDS_GHZ):
        bands = " and ".join(f"[{lo:g}, {hi:g}]" for lo, hi in FREQUENCY_BANDS_GHZ)
        notes.append(
            f"annotations.frequency_ghz {freq:g} outside the typical {bands} GHz bands"
        )
    budget = ann.num("power_budget_wh", None)
    if budget is not None:
        lo, hi = POWER_BUDGET_WH_RANGE
        if not lo <= budget <= hi:
            notes.append(
                f"annotations.power_budget_wh {budget:g} outside the typical "
                f"[{lo:g}, {hi:g}] Wh range"
            )
    return notes


def load_config(path: str | os.PathLike) -> RunConfig:
    """Parse and validate a JSON run config.

    Hard invariant violations raise ConfigError; plausibility-range
    violations only add warnings.  Defaults: 1 ms slots, outage eps
    0.05, kappa 1, fraction step 0.01, split step 0.05.
    """
    raw_bytes = Path(path).read_bytes()
    sha = hashlib.sha256(raw_bytes).hexdigest()
    try:
        data = json.loads(raw_bytes)
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"config parse error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None

    root = _Reader(data)
    notes: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            data_sec = root.section("data")
            frame_sec = root.section("frame")
            cluster = root.section("cluster")
            frame_ms = frame_sec.num("duration_ms", required=True)
            slot_ms = frame_sec.num("slot_duration_ms", 1.0)
            if slot_ms <= 0 or frame_ms <= 0:
                raise ConfigError("frame durations must be > 0")
            total_slots = frame_ms / slot_ms
            if abs(total_slots - round(total_slots)) > 1e-9:
                raise ConfigError(
                    "frame.duration_ms must be an integer multiple of slot_duration_ms"
                )
            frame = TimeFrame(round(total_slots), ms_to_s(slot_ms))

            speeds_sec = root.section("signal_speeds", required=False)
            if speeds_sec is None:
                speeds = MediumSpeeds()
            else:
                speeds = MediumSpeeds(
                    s_C_mps=km_to_m(speeds_sec.num("terrestrial_km_per_s", 299792.458)),
                    s_S_mps=km_to_m(speeds_sec.num("free_space_km_per_s", 299792.458)),
                )

            uplink = root.section("uplink")
            downlink = root.section("downlink")
            relay = root.section("relay", required=False)
            weights = root.section("weights", required=False)
            store = root.section("store_forward", required=False)

            density_per_km = relay.num("density_per_km", 0.0) if relay else 0.0
            if density_per_km < 0:
                raise ConfigError("relay.density_per_km must be >= 0")

            cfg = ScenarioConfig(
                B_chunks=data_sec.integer("chunks", required=True),
                chunk_bytes=data_sec.integer("chunk_bytes", 1400),
                frame=frame,
                N_caches=cluster.integer("edge_caches", required=True),
                d_C_m=km_to_m(cluster.num("data_center_distance_km", required=True)),
                speeds=speeds,
                orbit_ul=_orbit(uplink.section("orbit")),
                orbit_dl=_orbit(downlink.section("orbit")),
                pass_ul=_pass_window(uplink.section("pass", required=False), frame_ms),
                pass_dl=_pass_window(downlink.section("pass", required=False), frame_ms),
                ch_ul=_channel(uplink.section("channel")),
                ch_dl=_channel(downlink.section("channel")),
                ch_terr=_channel(root.section("terrestrial_channel")),
                lambda_per_m=density_per_km / 1000.0,
                pi_relay=relay.num("power_cost", 0.0) if relay else 0.0,
                alpha=weights.num("alpha", 0.5) if weights else 0.5,
                mu_storage=(
                    weights.num("storage_cost_per_chunk_slot", 0.0) if weights else 0.0
                ),
                kappa=store.num("kappa", 1.0) if store else 1.0,
                hop_processing_s=(
                    ms_to_s(relay.num("hop_processing_ms", 0.0)) if relay else 0.0
                ),
            )
        except ConfigError:
            raise
        except ValueError as e:
            raise ConfigError(str(e)) from None
    notes.extend(str(w.message) for w in caught)
    notes.extend(_annotation_warnings(root))

    # surface the store-and-forward feasibility boundary at load time
    travel_s = travel_time(cfg.d_C_m, cfg.orbit_ul.ground_speed_mps, cfg.kappa)
    travel_slots = math.ceil(travel_s / cfg.frame.slot_duration_s)
    if travel_slots >= cfg.frame.total_slots - 1:
        notes.append(
            f"store_forward note: travel time {travel_s:g} s "
            f"({travel_slots} slots) does not fit the {cfg.frame.total_slots}-slot "
            "frame; fractions > 0 will be infeasible (reduce kappa or enlarge "
            "the frame)"
        )

    sweep_sec = root.section("sweep", required=False)
    if sweep_sec is None:
        fraction_step, split_step, mc_samples = 0.01, 0.05, 200_000
    else:
        fraction_step = sweep_sec.num("fraction_step", 0.01)
        split_step = sweep_sec.num("split_step", 0.05)
        mc_samples = sweep_sec.integer("mc_samples", 200_000)

    return RunConfig(
        scenario_cfg=cfg,
        run_scenarios=_parse_scenarios(root.strings("scenarios"), "config"),
        fraction_grid=_grid_from_step(fraction_step, "sweep.fraction_step", False),
        split_grid=_grid_from_step(split_step, "sweep.split_step", True),
        mc_samples=mc_samples,
        seed=root.integer("seed", 0),
        config_sha256=sha,
        warnings=tuple(notes),
    )


def _fmt(v: float) -> str:
    return "%.12e" % v


def _csv_rows(result: optimizer.SweepResult) -> list[str]:
    rows = []
    for p in result.points:
        if p.breakdown is None:
            fields = [math.nan] * 6
        else:
            b = p.breakdown
            fields = [b.p_ul, b.p_dl, b.p_relay, b.p_terr, b.p_storage, b.total_weighted]
        rows.append(
            ",".join(
                [
                    result.scenario.value,
                    _fmt(p.fraction),
                    _fmt(p.split_used),
                    "true" if p.feasible else "false",
                    *(_fmt(v) for v in fields),
                    _fmt(p.required_snr_db),
                ]
            )
        )
    return rows


def write_sweep_csv(result: optimizer.SweepResult, path: Path) -> None:
    lines = [CSV_HEADER, *_csv_rows(result)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def run(cfg: RunConfig, quiet: bool = False) -> int:
    """Execute the configured sweeps and write all artifacts into
    cfg.out_dir.

    Returns a process exit status: 0 on success, 1 when a sweep has no
    feasible operating point.
    """
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not quiet:
        for note in cfg.warnings:
            print(f"warning: {note}", file=sys.stderr)

    results = []
    outputs = []
    for scn in cfg.run_scenarios:
        spec = SweepSpec(
            scenario=scn,
            fraction_grid=cfg.fraction_grid,
            split_grid=cfg.split_grid,
            mc_samples=cfg.mc_samples,
            seed=cfg.seed,
        )
        try:
            result = optimizer.sweep(cfg.scenario_cfg, spec)
        except NoFeasiblePointError as e:
            print(f"error: scenario {scn.value}: {e}", file=sys.stderr)
            return 1
        csv_path = out / f"sweep_{scn.value}.csv"
        write_sweep_csv(result, csv_path)
        outputs.append(csv_path.name)
        results.append(result)
        if not quiet:
            print(f"wrote {csv_path}")

    report = optimizer.compare(results)
    report_path = out / "comparison.txt"
    report_path.write_text(report.to_text(), encoding="utf-8", newline="\n")
    outputs.append(report_path.name)
    if not quiet:
        print(f"wrote {report_path}")

    manifest = {
        "tool": "leo-cache-sim",
        "version": __version__,
        "seed": cfg.seed,
        "config_sha256": cfg.config_sha256,
        "scenarios": [s.value for s in cfg.run_scenarios],
        "fraction_grid_points": len(cfg.fraction_grid),
        "split_grid_points": len(cfg.split_grid),
        "mc_samples": cfg.mc_samples,
        "outputs": sorted(outputs),
        "warnings": list(cfg.warnings),
    }
    manifest_path = out / "manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
        newline="\n",
    )
    if not quiet:
        print(f"wrote {manifest_path}")
    return 0


def _resolve_seed(flag_seed: int | None, config_seed: int) -> int:
    if flag_seed is not None:
        return flag_seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
    return config_seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leo-cache-sim",
        description=(
            "Power-cost simulator for relaying edge-cache content updates "
            "through LEO satellites"
        ),
    )
    parser.add_argument("--config", required=True, help="JSON run config path")
    parser.add_argument(
        "--scenario",
        default=None,
        help="scenario name or 'all' (overrides the config's list)",
    )
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="RNG seed (overrides "
                        f"${SEED_ENV_VAR} and the config)")
    parser.add_argument(
        "--grid-steps",
        type=int,
        default=None,
        help="number of fraction-grid steps (grid has n+1 points)",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress progress output")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        fraction_grid = cfg.fraction_grid
        if args.grid_steps is not None:
            if args.grid_steps < 1:
                raise ConfigError("--grid-steps must be >= 1")
            fraction_grid = tuple(i / args.grid_steps for i in range(args.grid_steps + 1))
        run_scenarios = cfg.run_scenarios
        if args.scenario is not None:
            run_scenarios = _parse_scenarios([args.scenario], "--scenario")
        cfg = RunConfig(
            scenario_cfg=cfg.scenario_cfg,
            run_scenarios=run_scenarios,
            fraction_grid=fraction_grid,
            split_grid=cfg.split_grid,
            mc_samples=cfg.mc_samples,
            seed=_resolve_seed(args.seed, cfg.seed),
            config_sha256=cfg.config_sha256,
            warnings=cfg.warnings,
            out_dir=args.out,
        )
    except (ConfigError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return run(cfg, quiet=args.quiet)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
