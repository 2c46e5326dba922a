"""Command-line front end: configs in, CSV/JSON out.

Subcommands: `trial` runs one Monte Carlo draw and prints it as JSON,
`sweep` runs one parameter sweep to CSV plus a manifest, `figures` runs
the four canonical sweeps behind the standard figures, and `rerun`
replays a manifest to reproduce its outputs byte for byte.

All randomness is pinned by --seed; a sweep CSV is a pure function of
(config, seed, axis, values, trials). Output files are written atomically
and removed again if a later step of the same run fails.
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import fields, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .errors import ConfigError, SimulationError
from .experiment import METRICS, STATS, SweepTable, run_sweep, run_trial, trial_metrics
from .scenario import ScenarioConfig

WORKERS_ENV_VAR = "DMIMO_SIM_WORKERS"

# The canonical sweeps: node rates vs. cluster radius, access capacity and
# delivered bits vs. BS-UE distance, and capacity vs. node power for a
# single node. The distance sweep feeds two figures.
FIGURE_SWEEPS = {
    "fig3": {"axis": "radius", "values": [10, 25, 50, 75, 100, 150, 200], "overrides": {}},
    "fig4": {"axis": "d_bs_ue", "values": [200, 400, 600, 800, 1000], "overrides": {}},
    "fig5": {
        "axis": "p_node_dbm",
        "values": [12, 15, 18, 21, 24, 27, 30, 33, 36, 39],
        "overrides": {"u": 1},
    },
    "fig7": {"axis": "d_bs_ue", "values": [200, 400, 600, 800, 1000], "overrides": {}},
}

_INT_KEYS = {"u", "n_t_bs", "n_t_node", "n_r_node", "n_r_ue"}
_BOOL_KEYS = {"shadow_fading"}
_STR_KEYS = {"placement_mode", "phase1_policy", "zf_normalization", "nlos_rule"}


def parse_config(path: str | Path | None) -> ScenarioConfig:
    """Load a flat key-value YAML config; absent keys keep their defaults."""
    if path is None:
        return ScenarioConfig()
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config: no such file: {path}")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"config: malformed YAML in {path}: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"config: expected a flat key-value mapping in {path}")

    known = {f.name for f in fields(ScenarioConfig)}
    coerced = {}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(f"{key}: unknown config key")
        coerced[key] = _coerce(key, value)
    return ScenarioConfig(**coerced)


def _coerce(key: str, value):
    try:
        if key in _BOOL_KEYS:
            if isinstance(value, bool):
                return value
            raise ValueError("expected true or false")
        if key in _STR_KEYS:
            return str(value)
        if key in _INT_KEYS:
            as_float = float(value)
            if not as_float.is_integer():
                raise ValueError("expected an integer")
            return int(as_float)
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: cannot interpret {value!r} ({exc})") from exc


def resolve_workers(flag: int | None) -> int:
    if flag is not None:
        workers = flag
    else:
        env = os.environ.get(WORKERS_ENV_VAR)
        if env is None:
            return 1
        try:
            workers = int(env)
        except ValueError as exc:
            raise ConfigError(f"{WORKERS_ENV_VAR}: expected an integer, got {env!r}") from exc
    if workers < 1:
        raise ConfigError(f"workers: must be >= 1, got {workers}")
    return workers


# Output helpers -----------------------------------------------------------


def _write_atomic(path: Path, text: str, written: list[Path]):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
    written.append(path)


def _fmt(value) -> str:
    if isinstance(value, (bool, int, str)):
        return str(value)
    # repr of a Python float is the shortest string that parses back to
    # the same bits, so the CSV round-trips exactly.
    return repr(float(value))


def csv_text(table: SweepTable) -> str:
    header = ["axis", "axis_value", "n_trials"]
    header += [f"{name}_{stat}" for name in METRICS for stat in STATS]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in table.rows:
        writer.writerow([_fmt(row[col]) for col in header])
    return buf.getvalue()


def emit_csv(table: SweepTable, path: str | Path, written: list[Path] | None = None) -> Path:
    path = Path(path)
    _write_atomic(path, csv_text(table), written if written is not None else [])
    return path


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _neuter_nan(value: float) -> float | None:
    return None if not np.isfinite(value) else float(value)


def _manifest(command: str, cfg: ScenarioConfig, args, table_info: dict) -> dict:
    return {
        "tool": "dmimo-sim",
        "version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "master_seed": args.seed,
        "trials": args.trials,
        "config": cfg.as_dict(),
        **table_info,
    }


def _diag_list(table: SweepTable) -> list[dict]:
    return [
        {
            "axis_value": row["axis_value"],
            "trials": diag.trials,
            "resamples": diag.resamples,
            "clamped_links": diag.clamped_links,
        }
        for row, diag in zip(table.rows, table.diagnostics)
    ]


# Subcommands ---------------------------------------------------------------


def _cmd_trial(args, written: list[Path]) -> int:
    cfg = parse_config(args.config)
    record = run_trial(cfg, args.seed, args.index)
    payload = {
        "tool": "dmimo-sim",
        "version": __version__,
        "master_seed": record.master_seed,
        "trial_index": record.trial_index,
        "config": cfg.as_dict(),
        "phase1": None,
        "phase2": {
            "se_closed": record.phase2.se_closed,
            "se_logdet": record.phase2.se_logdet,
            "capacity_bps": record.phase2.capacity_bps,
            "n_layers": record.phase2.n_layers,
        },
        "timing": None,
        "baseline_bps": record.baseline_bps,
        "metrics": {
            name: _neuter_nan(value)
            for name, value in trial_metrics(cfg, record).items()
        },
        "diagnostics": {
            "resamples": record.resamples,
            "clamped_links": record.clamped_links,
        },
    }
    if record.phase1 is not None:
        payload["phase1"] = {
            "rates": [float(r) for r in record.phase1.rates],
            "policy": cfg.phase1_policy,
            "policy_rate": record.phase1.policy_rate,
            "capacity_bps": record.phase1.capacity_bps,
            "participating": list(record.phase1.participating),
        }
    if record.timing is not None:
        payload["timing"] = {
            "t1_s": cfg.t1_s,
            "t2_s": record.timing.t2_s,
            "total_time_s": record.timing.total_time_s,
            "dmimo_bits": record.timing.dmimo_bits,
            "baseline_bits": record.timing.baseline_bits,
            "gain_ratio": record.timing.gain_ratio,
        }

    text = _json_text(payload)
    if args.out is None:
        sys.stdout.write(text)
    else:
        _write_atomic(Path(args.out), text, written)
    return 0


def _parse_values(raw: str) -> list[float]:
    try:
        values = [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"values: expected comma-separated numbers, got {raw!r}") from exc
    if not values:
        raise ConfigError("values: sweep needs at least one value")
    return values


def _cmd_sweep(args, written: list[Path]) -> int:
    cfg = parse_config(args.config)
    workers = resolve_workers(args.workers)
    values = _parse_values(args.values)
    table = run_sweep(cfg, args.axis, values, args.trials, args.seed, workers)

    out = Path(args.out)
    emit_csv(table, out, written)
    manifest = _manifest(
        "sweep",
        cfg,
        args,
        {
            "axis": table.axis,
            "values": table.values,
            "outputs": [out.name],
            "diagnostics": _diag_list(table),
        },
    )
    _write_atomic(_manifest_path(out), _json_text(manifest), written)
    return 0


def _manifest_path(out: Path) -> Path:
    return out.with_name(out.stem + ".manifest.json")


def _cmd_figures(args, written: list[Path]) -> int:
    cfg = parse_config(args.config)
    workers = resolve_workers(args.workers)
    out_dir = Path(args.out_dir)

    # fig4 and fig7 read different columns of the same distance sweep, so
    # the sweep runs once.
    tables: dict[str, SweepTable] = {}
    figures = {}
    for fig_id, sweep in FIGURE_SWEEPS.items():
        fig_cfg = replace(cfg, **sweep["overrides"])
        key = (sweep["axis"], tuple(sweep["values"]), tuple(sorted(sweep["overrides"].items())))
        if key not in tables:
            tables[key] = run_sweep(
                fig_cfg, sweep["axis"], sweep["values"], args.trials, args.seed, workers
            )
        table = tables[key]
        out = out_dir / f"{fig_id}.csv"
        emit_csv(table, out, written)
        figures[fig_id] = {
            "axis": table.axis,
            "values": table.values,
            "overrides": sweep["overrides"],
            "output": out.name,
            "diagnostics": _diag_list(table),
        }

    manifest = _manifest("figures", cfg, args, {"figures": figures})
    _write_atomic(out_dir / "manifest.json", _json_text(manifest), written)
    return 0


def _cmd_rerun(args, written: list[Path]) -> int:
    manifest_path = Path(args.manifest)
    if not manifest_path.is_file():
        raise ConfigError(f"manifest: no such file: {manifest_path}")
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"manifest: malformed JSON in {manifest_path}: {exc}") from exc

    required = {"command", "config", "master_seed", "trials"}
    command = manifest.get("command")
    if command == "sweep":
        required |= {"axis", "values", "outputs"}
    elif command == "figures":
        required |= {"figures"}
    missing = sorted(required - manifest.keys())
    if missing:
        raise ConfigError(f"manifest: missing keys {missing}")
    try:
        cfg = ScenarioConfig(**manifest["config"])
    except TypeError as exc:
        raise ConfigError(f"manifest: bad config snapshot ({exc})") from exc
    workers = resolve_workers(args.workers)
    out_dir = Path(args.out_dir) if args.out_dir else manifest_path.parent
    seed = manifest["master_seed"]
    trials = manifest["trials"]

    if manifest["command"] == "sweep":
        table = run_sweep(
            cfg, manifest["axis"], manifest["values"], trials, seed, workers
        )
        for name in manifest["outputs"]:
            emit_csv(table, out_dir / name, written)
        return 0
    if manifest["command"] == "figures":
        tables = {}
        for fig in manifest["figures"].values():
            fig_cfg = replace(cfg, **fig["overrides"])
            key = (fig["axis"], tuple(fig["values"]), tuple(sorted(fig["overrides"].items())))
            if key not in tables:
                tables[key] = run_sweep(
                    fig_cfg, fig["axis"], fig["values"], trials, seed, workers
                )
            emit_csv(tables[key], out_dir / fig["output"], written)
        return 0
    raise ConfigError(f"manifest: cannot rerun command {manifest['command']!r}")


# Entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmimo-sim",
        description="Monte Carlo capacity simulator for two-phase mobile D-MIMO.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    trial = sub.add_parser("trial", help="run a single trial and emit JSON")
    trial.add_argument("--config", default=None, help="YAML config file")
    trial.add_argument("--seed", type=int, default=0, help="master seed")
    trial.add_argument("--index", type=int, default=0, help="trial index")
    trial.add_argument("--out", default=None, help="output JSON path (default stdout)")

    sweep = sub.add_parser("sweep", help="sweep one parameter and emit CSV")
    sweep.add_argument("--config", default=None)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--trials", type=int, default=10000, help="trials per point")
    sweep.add_argument("--axis", required=True, help="u | radius | d_bs_ue | p_node_dbm")
    sweep.add_argument("--values", required=True, help="comma-separated axis values")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--workers", type=int, default=None)

    figures = sub.add_parser("figures", help="run the four canonical sweeps")
    figures.add_argument("--config", default=None)
    figures.add_argument("--seed", type=int, default=0)
    figures.add_argument("--trials", type=int, default=10000)
    figures.add_argument("--out-dir", required=True)
    figures.add_argument("--workers", type=int, default=None)

    rerun = sub.add_parser("rerun", help="reproduce a manifest's outputs")
    rerun.add_argument("--manifest", required=True)
    rerun.add_argument("--out-dir", default=None, help="default: manifest's directory")
    rerun.add_argument("--workers", type=int, default=None)

    return parser


_COMMANDS = {
    "trial": _cmd_trial,
    "sweep": _cmd_sweep,
    "figures": _cmd_figures,
    "rerun": _cmd_rerun,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    written: list[Path] = []
    try:
        return _COMMANDS[args.command](args, written)
    except (SimulationError, OSError) as exc:
        for path in written:
            try:
                path.unlink()
            except OSError:
                pass
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
