"""Monte Carlo capacity simulator for two-phase wireless mobile D-MIMO.

Phase 1 front-hauls a payload from the BS to a cluster of mobile nodes;
phase 2 delivers it to the UE by coherent zero-forcing joint transmission
from the BS and the participating nodes, compared against a BS-only
baseline on equal air time.
"""

__version__ = "0.1.0"

from .channel import (
    ChannelRealization,
    LinkGeometry,
    linear_gain,
    sample_rayleigh,
    shadow_fading_db,
    umi_pathloss_db,
)
from .errors import (
    ConfigError,
    DegenerateTrialError,
    DimensionError,
    NumericalDomainError,
    SimulationError,
    SingularMatrixError,
)
from .experiment import (
    METRICS,
    STATS,
    Diagnostics,
    SweepTable,
    TrialRecord,
    run_sweep,
    run_trial,
    trial_metrics,
)
from .linalg import hermitian_gram, log_det_capacity, pseudo_inverse
from .phase1 import Phase1Result, apply_policy, front_haul_rates, node_rate, phase1_capacity
from .phase2 import (
    Phase2Result,
    PrecoderSet,
    baseline_capacity,
    phase2_capacities,
    phase2_capacity_closed,
    phase2_capacity_logdet,
    zf_precoders,
)
from .scenario import (
    LinkSet,
    NodePlacement,
    ScenarioConfig,
    TrialStreams,
    build_links,
    sample_nodes,
)
from .timing import TimingResult, compare_to_baseline, phase2_time

__all__ = [
    "__version__",
    "ChannelRealization",
    "ConfigError",
    "DegenerateTrialError",
    "Diagnostics",
    "DimensionError",
    "LinkGeometry",
    "LinkSet",
    "METRICS",
    "NodePlacement",
    "NumericalDomainError",
    "Phase1Result",
    "Phase2Result",
    "PrecoderSet",
    "STATS",
    "ScenarioConfig",
    "SimulationError",
    "SingularMatrixError",
    "SweepTable",
    "TimingResult",
    "TrialRecord",
    "TrialStreams",
    "apply_policy",
    "baseline_capacity",
    "build_links",
    "compare_to_baseline",
    "front_haul_rates",
    "hermitian_gram",
    "linear_gain",
    "log_det_capacity",
    "node_rate",
    "phase1_capacity",
    "phase2_capacities",
    "phase2_capacity_closed",
    "phase2_capacity_logdet",
    "phase2_time",
    "pseudo_inverse",
    "run_sweep",
    "run_trial",
    "sample_nodes",
    "sample_rayleigh",
    "shadow_fading_db",
    "trial_metrics",
    "umi_pathloss_db",
    "zf_precoders",
]
