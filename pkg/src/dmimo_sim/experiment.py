"""Monte Carlo trial runner and parameter-sweep engine.

A trial is a pure function of (config, master seed, trial index): node
placement, every channel draw, both capacity routes and the timing
comparison. Sweeps reuse the same trial indices at every point, so curves
across the sweep axis are paired realizations rather than independent
noise.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import repeat

import numpy as np

from .errors import ConfigError, DegenerateTrialError, SingularMatrixError
from .phase1 import Phase1Result, apply_policy, front_haul_rates
from .phase2 import Phase2Result, baseline_capacity, phase2_capacities
from .scenario import LinkSet, ScenarioConfig, TrialStreams, sample_nodes, build_links
from .timing import TimingResult, compare_to_baseline

MAX_RESAMPLES = 8

SWEEP_AXES = ("u", "radius", "d_bs_ue", "p_node_dbm")
AXIS_ALIASES = {"U": "u", "R": "radius", "p_node": "p_node_dbm"}

METRICS = (
    "c1_min",
    "c1_median",
    "c1_max",
    "c2_closed",
    "c2_logdet",
    "c_baseline",
    "t2",
    "gain_ratio",
    "dmimo_bits_hz",
    "baseline_bits_hz",
    "dmimo_throughput_hz",
)
STATS = ("mean", "se", "p05", "p50", "p95")


@dataclass
class TrialRecord:
    """Everything one trial produced, reproducible from its three inputs."""

    master_seed: int
    trial_index: int
    phase1: Phase1Result | None
    phase2: Phase2Result
    timing: TimingResult | None
    baseline_bps: float
    resamples: int
    clamped_links: int


@dataclass
class Diagnostics:
    trials: int = 0
    resamples: int = 0
    clamped_links: int = 0

    def absorb(self, record: TrialRecord):
        self.trials += 1
        self.resamples += record.resamples
        self.clamped_links += record.clamped_links


@dataclass
class SweepTable:
    """Per-point aggregate statistics of every metric along one axis."""

    axis: str
    values: list
    n_trials: int
    rows: list[dict] = field(default_factory=list)
    diagnostics: list[Diagnostics] = field(default_factory=list)


def run_trial(cfg: ScenarioConfig, master_seed: int, trial_index: int) -> TrialRecord:
    """One complete Monte Carlo draw.

    With zero nodes the trial reports the BS-only baseline: no phase 1, no
    relay timing, and the access phase reduces to the direct link. A
    rank-deficient fading draw (probability zero, but guarded) redraws the
    trial's fading and shadowing while keeping the node placement, up to
    MAX_RESAMPLES times.
    """
    streams = TrialStreams.derive(master_seed, trial_index)
    nodes = sample_nodes(cfg, streams.placement)

    resamples = 0
    while True:
        links = build_links(cfg, nodes, streams)
        try:
            phase1, phase2, timing, baseline_bps = _evaluate_links(cfg, links)
            return TrialRecord(
                master_seed=master_seed,
                trial_index=trial_index,
                phase1=phase1,
                phase2=phase2,
                timing=timing,
                baseline_bps=baseline_bps,
                resamples=resamples,
                clamped_links=links.clamped_links,
            )
        except SingularMatrixError as exc:
            resamples += 1
            if resamples > MAX_RESAMPLES:
                raise DegenerateTrialError(
                    f"trial {trial_index}: still rank-deficient after "
                    f"{MAX_RESAMPLES} resamples ({exc})"
                ) from exc


def _evaluate_links(cfg: ScenarioConfig, links: LinkSet):
    baseline_bps = baseline_capacity(cfg, links)

    if cfg.u == 0:
        return None, phase2_capacities(cfg, links, ()), None, baseline_bps

    rates = front_haul_rates(cfg, links)
    policy_rate, participating = apply_policy(rates, cfg.phase1_policy)
    phase1 = Phase1Result(rates, policy_rate, cfg.b1_hz * policy_rate, participating)
    phase2 = phase2_capacities(cfg, links, participating)
    timing = compare_to_baseline(
        phase1.capacity_bps, phase2.capacity_bps, baseline_bps, cfg.t1_s
    )
    return phase1, phase2, timing, baseline_bps


def trial_metrics(cfg: ScenarioConfig, record: TrialRecord) -> dict[str, float]:
    """Flatten one trial into the named metric set.

    Capacities are spectral efficiencies in b/s/Hz; the delivered-bits
    metrics are normalized by bandwidth times the phase-1 duration (the
    flat payload view) except dmimo_throughput_hz, which divides by the
    full two-phase duration. Phase-1 and timing metrics are NaN with zero
    nodes.
    """
    nan = float("nan")
    out = dict.fromkeys(METRICS, nan)
    out["c2_closed"] = record.phase2.se_closed
    out["c2_logdet"] = record.phase2.se_logdet
    out["c_baseline"] = record.baseline_bps / cfg.b2_hz

    if record.phase1 is not None:
        rates = record.phase1.rates
        out["c1_min"] = apply_policy(rates, "min")[0]
        out["c1_median"] = apply_policy(rates, "median")[0]
        out["c1_max"] = apply_policy(rates, "max")[0]

    if record.timing is not None:
        norm = cfg.b2_hz * cfg.t1_s
        out["t2"] = record.timing.t2_s
        out["gain_ratio"] = record.timing.gain_ratio
        out["dmimo_bits_hz"] = record.timing.dmimo_bits / norm
        out["baseline_bits_hz"] = record.timing.baseline_bits / norm
        out["dmimo_throughput_hz"] = record.timing.dmimo_bits / (
            cfg.b2_hz * record.timing.total_time_s
        )
    return out


def run_point(
    cfg: ScenarioConfig, master_seed: int, n_trials: int, workers: int = 1
) -> list[TrialRecord]:
    """All trials of one sweep point, ordered by trial index."""
    if n_trials < 1:
        raise ConfigError(f"trials: must be >= 1, got {n_trials}")
    if workers < 1:
        raise ConfigError(f"workers: must be >= 1, got {workers}")

    if workers == 1:
        return [run_trial(cfg, master_seed, i) for i in range(n_trials)]

    chunk = max(1, n_trials // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(
            pool.map(
                run_trial,
                repeat(cfg),
                repeat(master_seed),
                range(n_trials),
                chunksize=chunk,
            )
        )


def _summarize(values: np.ndarray) -> dict[str, float]:
    mean = float(np.mean(values))
    if values.size > 1:
        se = float(np.std(values, ddof=1) / np.sqrt(values.size))
    else:
        se = 0.0
    p05, p50, p95 = (float(p) for p in np.percentile(values, [5.0, 50.0, 95.0]))
    return {"mean": mean, "se": se, "p05": p05, "p50": p50, "p95": p95}


def resolve_axis(axis: str) -> str:
    canonical = AXIS_ALIASES.get(axis, axis)
    if canonical not in SWEEP_AXES:
        raise ConfigError(
            f"axis: expected one of {SWEEP_AXES} (aliases {tuple(AXIS_ALIASES)}), "
            f"got {axis!r}"
        )
    return canonical


def point_config(cfg: ScenarioConfig, axis: str, value) -> ScenarioConfig:
    if axis == "u":
        if isinstance(value, bool) or not float(value).is_integer():
            raise ConfigError(f"values: u must be integers, got {value!r}")
        value = int(value)
    else:
        value = float(value)
    return replace(cfg, **{axis: value})


def run_sweep(
    cfg: ScenarioConfig,
    axis: str,
    values: list,
    trials_per_point: int,
    master_seed: int,
    workers: int = 1,
) -> SweepTable:
    """Sweep one scenario parameter, aggregating every metric per point.

    Every point reuses trial indices 0..n-1 under the same master seed, so
    differences along the axis are driven by the parameter, not by fresh
    randomness (common random numbers).
    """
    axis = resolve_axis(axis)
    if not values:
        raise ConfigError("values: sweep needs at least one value")

    table = SweepTable(axis=axis, values=list(values), n_trials=trials_per_point)
    for value in values:
        cfg_point = point_config(cfg, axis, value)
        records = run_point(cfg_point, master_seed, trials_per_point, workers)

        diag = Diagnostics()
        samples = {name: np.empty(len(records)) for name in METRICS}
        for i, record in enumerate(records):
            diag.absorb(record)
            for name, metric in trial_metrics(cfg_point, record).items():
                samples[name][i] = metric

        row = {
            "axis": axis,
            "axis_value": getattr(cfg_point, axis),
            "n_trials": trials_per_point,
        }
        for name in METRICS:
            for stat, stat_value in _summarize(samples[name]).items():
                row[f"{name}_{stat}"] = stat_value
        table.rows.append(row)
        table.diagnostics.append(diag)
    return table
