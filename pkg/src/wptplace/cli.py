"""Command-line front end: config files, analysis commands, CSV/JSON output.

Config files are flat ``key = value`` text; nested fields use dotted paths
(``area.side_length_m``). Unknown keys are rejected. Every key has a default,
so an empty file (or no file at all) runs the stock scenario: 80 m square,
5 m exclusion strips, 10 m/s receivers, 1 kW transmitter at 433 MHz with
6 dBi antennas on both ends.

Exit codes: 0 success, 1 usage or config error, 2 infeasible placement,
3 reference-figure mismatch from ``reproduce``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields

from .energy import EnergyReport, report
from .errors import ConfigError, FeasibilityError
from .geometry import AreaConfig, Edge, Placement, Trajectory
from .placement import AllocationPolicy, SweepGrid, allocate, compare_placements, grid_search
from .propagation import RfParams

SEED_ENV_VAR = "WPT_SEED"

DEFAULT_AREA = AreaConfig(side_length_m=80.0, epsilon_m=5.0, speed_mps=10.0)
DEFAULT_RF = RfParams(
    tx_power_w=1000.0,
    tx_gain_dbi=6.0,
    rx_gain_dbi=6.0,
    frequency_hz=433e6,
)
DEFAULT_TRAJECTORIES = (Trajectory(Edge.LOWER), Trajectory(Edge.UPPER))

# Reference figures for the stock scenario: total average received power for
# one transmitter at the boundary optimum, the area centre and the left edge
# midpoint (two receivers, then one), and the pairwise dB gains.
REFERENCE_TOLERANCE_DB = 0.005
_REF_OPT_TWO = 25.5121
_REF_CENTRE_TWO = 16.7425
_REF_SIDE_TWO = 15.2233
_REF_OPT_ONE = 25.4152
_REF_SIDE_ONE = 12.2130
_REF_GAIN_CENTRE = 8.7696
_REF_GAIN_SIDE = 10.2888
_REF_GAIN_SIDE_ONE = 13.2022


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs: scenario, link budget, optional extras."""

    area: AreaConfig = DEFAULT_AREA
    rf: RfParams = DEFAULT_RF
    trajectories: tuple[Trajectory, ...] = DEFAULT_TRAJECTORIES
    placements: tuple[Placement, ...] | None = None
    resolution_m: float | None = None
    seed: int | None = None


_AREA_KEYS = ("side_length_m", "epsilon_m", "speed_mps")
_RF_KEYS = (
    "tx_power_w",
    "tx_gain_dbi",
    "rx_gain_dbi",
    "frequency_hz",
    "light_speed_mps",
    "efficiency",
)
_KNOWN_KEYS = (
    tuple(f"area.{k}" for k in _AREA_KEYS)
    + tuple(f"rf.{k}" for k in _RF_KEYS)
    + ("trajectories", "placements", "resolution_m", "seed")
)


def _parse_float(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {text!r}") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ConfigError(f"{key}: value must be finite, got {text!r}")
    return value


def _parse_edges(key: str, text: str) -> tuple[Trajectory, ...]:
    names = [token.strip().lower() for token in text.split(",") if token.strip()]
    if not names:
        raise ConfigError(f"{key}: expected a comma-separated list of edges")
    try:
        return tuple(Trajectory(Edge(name)) for name in names)
    except ValueError:
        raise ConfigError(
            f"{key}: edges must be 'lower' or 'upper', got {text!r}"
        ) from None


def parse_placement(text: str, key: str = "placements") -> Placement:
    """Parse one 'a,b' coordinate pair."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"{key}: expected 'a,b', got {text!r}")
    return Placement(_parse_float(key, parts[0].strip()), _parse_float(key, parts[1].strip()))


def _parse_placements(key: str, text: str) -> tuple[Placement, ...]:
    pairs = [chunk.strip() for chunk in text.split(";") if chunk.strip()]
    if not pairs:
        raise ConfigError(f"{key}: expected ';'-separated 'a,b' pairs, got {text!r}")
    return tuple(parse_placement(pair, key) for pair in pairs)


def load_config(text: str) -> RunConfig:
    """Parse config text; every key optional, unknown keys rejected."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value.strip()

    def group(prefix: str, names: tuple[str, ...], defaults) -> dict[str, float]:
        values = {}
        for name in names:
            key = f"{prefix}.{name}"
            values[name] = (
                _parse_float(key, raw.pop(key)) if key in raw else getattr(defaults, name)
            )
        return values

    try:
        area = AreaConfig(**group("area", _AREA_KEYS, DEFAULT_AREA))
    except ValueError as exc:
        raise ConfigError(f"area: {exc}") from None
    try:
        rf = RfParams(**group("rf", _RF_KEYS, DEFAULT_RF))
    except ValueError as exc:
        raise ConfigError(f"rf: {exc}") from None

    trajectories = (
        _parse_edges("trajectories", raw.pop("trajectories"))
        if "trajectories" in raw
        else DEFAULT_TRAJECTORIES
    )
    placements = (
        _parse_placements("placements", raw.pop("placements")) if "placements" in raw else None
    )
    resolution = _parse_float("resolution_m", raw.pop("resolution_m")) if "resolution_m" in raw else None
    seed = None
    if "seed" in raw:
        try:
            seed = int(raw.pop("seed"))
        except ValueError:
            raise ConfigError(f"seed: expected an integer, got {raw['seed']!r}") from None
    return RunConfig(
        area=area,
        rf=rf,
        trajectories=trajectories,
        placements=placements,
        resolution_m=resolution,
        seed=seed,
    )


def emit_config(config: RunConfig) -> str:
    """Serialize a config so that load_config round-trips it exactly."""
    lines = []
    for name in _AREA_KEYS:
        lines.append(f"area.{name} = {getattr(config.area, name)!r}")
    for name in _RF_KEYS:
        lines.append(f"rf.{name} = {getattr(config.rf, name)!r}")
    lines.append("trajectories = " + ",".join(t.edge.value for t in config.trajectories))
    if config.placements is not None:
        lines.append(
            "placements = "
            + "; ".join(f"{p.a_m!r},{p.b_m!r}" for p in config.placements)
        )
    if config.resolution_m is not None:
        lines.append(f"resolution_m = {config.resolution_m!r}")
    if config.seed is not None:
        lines.append(f"seed = {config.seed}")
    return "\n".join(lines) + "\n"


def read_config(path: str | None) -> RunConfig:
    """Load a config file, or the built-in defaults when path is None.

    The WPT_SEED environment variable, when set, overrides the seed.
    """
    if path is None:
        config = RunConfig()
    else:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from None
        config = load_config(text)
    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed is not None:
        try:
            config = _replace_seed(config, int(env_seed))
        except ValueError:
            raise ConfigError(f"{SEED_ENV_VAR}: expected an integer, got {env_seed!r}") from None
    return config


def _replace_seed(config: RunConfig, seed: int) -> RunConfig:
    kwargs = {f.name: getattr(config, f.name) for f in fields(config)}
    kwargs["seed"] = seed
    return RunConfig(**kwargs)


def _report_dict(rep: EnergyReport) -> dict:
    return {
        "per_ruav_energy_j": list(rep.per_ruav_energy_j),
        "total_energy_j": rep.total_energy_j,
        "per_ruav_avg_power_w": list(rep.per_ruav_avg_power_w),
        "per_ruav_avg_power_dbm": list(rep.per_ruav_avg_power_dbm),
        "total_avg_power_w": rep.total_avg_power_w,
        "total_avg_power_dbm": rep.total_avg_power_dbm,
        "fairness_ratio": rep.fairness_ratio,
    }


def _format_report(rep: EnergyReport, placements, trajectories) -> str:
    lines = [
        "trajectories:             " + ", ".join(t.edge.value for t in trajectories),
        "placements:               " + "; ".join(f"({p.a_m}, {p.b_m})" for p in placements),
        "per-rUAV energy [J]:      " + ", ".join(f"{e:.6g}" for e in rep.per_ruav_energy_j),
        "per-rUAV avg power [W]:   " + ", ".join(f"{w:.6g}" for w in rep.per_ruav_avg_power_w),
        "per-rUAV avg power [dBm]: " + ", ".join(f"{d:.4f}" for d in rep.per_ruav_avg_power_dbm),
        f"total energy [J]:         {rep.total_energy_j:.6g}",
        f"total avg power [W]:      {rep.total_avg_power_w:.6g}",
        f"total avg power [dBm]:    {rep.total_avg_power_dbm:.4f}",
        f"fairness ratio:           {rep.fairness_ratio:.6f}",
    ]
    return "\n".join(lines)


def _sweep_csv(grid: SweepGrid) -> str:
    lines = ["a_m,b_m,kernel,avg_power_w,avg_power_dbm"]
    for row in grid.rows:
        lines.append(f"{row.a_m!r},{row.b_m!r},{row.kernel!r},{row.avg_power_w!r},{row.avg_power_dbm!r}")
    return "\n".join(lines) + "\n"


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = read_config(args.config)
    if args.placement:
        placements = tuple(parse_placement(text, "--placement") for text in args.placement)
    else:
        placements = config.placements
    if not placements:
        raise ConfigError("at least one placement is required (config 'placements' or --placement)")
    rep = report(placements, config.trajectories, config.area, config.rf)
    if args.json:
        print(json.dumps(_report_dict(rep), indent=2, sort_keys=True))
    else:
        print(_format_report(rep, placements, config.trajectories))
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = read_config(args.config)
    resolution = args.resolution if args.resolution is not None else config.resolution_m
    if resolution is None:
        raise ConfigError("a sweep resolution is required (config 'resolution_m' or --resolution)")
    grid = grid_search(config.area, resolution, config.trajectories, config.rf)
    csv_text = _sweep_csv(grid)
    if args.out == "-":
        sys.stdout.write(csv_text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(csv_text)
    return 0


def _cmd_optimize(args: argparse.Namespace) -> int:
    config = read_config(args.config)
    policy = AllocationPolicy(args.policy)
    placements = allocate(args.tuavs, policy, config.area)
    rep = report(placements, config.trajectories, config.area, config.rf)
    if args.json:
        payload = {
            "placements": [[p.a_m, p.b_m] for p in placements],
            "policy": policy.value,
            "report": _report_dict(rep),
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"policy:                   {policy.value}")
        print(_format_report(rep, placements, config.trajectories))
    return 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    config = read_config(args.config)
    area, rf = config.area, config.rf
    l, eps = area.side_length_m, area.epsilon_m
    two = DEFAULT_TRAJECTORIES
    one = (Trajectory(Edge.LOWER),)
    optimum = Placement(l / 2, eps)
    centre = Placement(l / 2, l / 2)
    side = Placement(0.0, l / 2)

    def avg_dbm(trajectories, placement) -> float:
        return report([placement], trajectories, area, rf).total_avg_power_dbm

    rows = [
        ("avg power, two rUAVs, boundary optimum [dBm]", avg_dbm(two, optimum), _REF_OPT_TWO),
        ("avg power, two rUAVs, area centre [dBm]", avg_dbm(two, centre), _REF_CENTRE_TWO),
        ("avg power, two rUAVs, edge midpoint [dBm]", avg_dbm(two, side), _REF_SIDE_TWO),
        ("avg power, one rUAV, boundary optimum [dBm]", avg_dbm(one, optimum), _REF_OPT_ONE),
        ("avg power, one rUAV, edge midpoint [dBm]", avg_dbm(one, side), _REF_SIDE_ONE),
        (
            "gain, optimum vs centre, two rUAVs [dB]",
            compare_placements([optimum], [centre], two, area, rf),
            _REF_GAIN_CENTRE,
        ),
        (
            "gain, optimum vs edge midpoint, two rUAVs [dB]",
            compare_placements([optimum], [side], two, area, rf),
            _REF_GAIN_SIDE,
        ),
        (
            "gain, optimum vs edge midpoint, one rUAV [dB]",
            compare_placements([optimum], [side], one, area, rf),
            _REF_GAIN_SIDE_ONE,
        ),
    ]

    failures = []
    print(f"{'case':<48} {'reference':>10} {'computed':>10} {'|diff|':>8}  status")
    for name, computed, reference in rows:
        diff = abs(computed - reference)
        ok = diff <= REFERENCE_TOLERANCE_DB
        if not ok:
            failures.append(name)
        print(f"{name:<48} {reference:>10.4f} {computed:>10.4f} {diff:>8.4f}  {'PASS' if ok else 'FAIL'}")
    if failures:
        print(f"{len(failures)} of {len(rows)} rows outside ±{REFERENCE_TOLERANCE_DB} dB:")
        for name in failures:
            print(f"  FAIL {name}")
        return 3
    print(f"all {len(rows)} rows within ±{REFERENCE_TOLERANCE_DB} dB")
    return 0


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as ConfigError instead of exiting."""

    def error(self, message: str):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="wptplace",
        description="Evaluate and optimize airborne RF charger placements for cruising receiver UAVs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    evaluate = sub.add_parser("evaluate", help="energy report for configured placements")
    evaluate.add_argument("--config", help="config file (defaults to the stock scenario)")
    evaluate.add_argument(
        "--placement",
        action="append",
        metavar="A,B",
        help="transmitter coordinates; repeatable, overrides config placements",
    )
    evaluate.add_argument("--json", action="store_true", help="emit the report as JSON")
    evaluate.set_defaults(func=_cmd_evaluate)

    sweep = sub.add_parser("sweep", help="CSV raster of the kernel and average power")
    sweep.add_argument("--config", help="config file (defaults to the stock scenario)")
    sweep.add_argument("--resolution", type=float, help="lattice step in meters")
    sweep.add_argument("--out", required=True, help="output CSV path, or - for stdout")
    sweep.set_defaults(func=_cmd_sweep)

    optimize = sub.add_parser("optimize", help="allocate n transmitters and report")
    optimize.add_argument("--config", help="config file (defaults to the stock scenario)")
    optimize.add_argument("--tuavs", type=int, required=True, help="number of transmitters")
    optimize.add_argument(
        "--policy",
        choices=[p.value for p in AllocationPolicy],
        default=AllocationPolicy.MAX_TOTAL.value,
        help="max-total stacks the optima; fair equalizes the receivers",
    )
    optimize.add_argument("--json", action="store_true", help="emit placements and report as JSON")
    optimize.set_defaults(func=_cmd_optimize)

    reproduce = sub.add_parser(
        "reproduce", help="check computed figures against the built-in reference table"
    )
    reproduce.add_argument("--config", help="config file (defaults to the stock scenario)")
    reproduce.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except FeasibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
