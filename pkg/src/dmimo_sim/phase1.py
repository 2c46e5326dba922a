"""Front-haul phase: BS broadcasts to the cooperating nodes.

Every node decodes the same broadcast, so the phase-1 capacity is set by a
policy over the per-node link rates: the weakest participating node caps
"min", the lower median caps "median" (nodes at or above it participate),
and "max" keeps only the single best node.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import log_det_capacity
from .scenario import LinkSet, ScenarioConfig


def node_rate(h: np.ndarray, g: float, e_s: float, n_s: int, sigma2: float) -> float:
    """Spectral efficiency of one front-haul link in b/s/Hz.

    The BS splits its power e_s evenly over n_s spatial layers; g is the
    link's large-scale power gain and sigma2 the receiver noise power.
    """
    return log_det_capacity(h @ h.conj().T, e_s * g / (n_s * sigma2))


@dataclass
class Phase1Result:
    rates: np.ndarray
    policy_rate: float
    capacity_bps: float
    participating: tuple[int, ...]


def front_haul_rates(cfg: ScenarioConfig, links: LinkSet) -> np.ndarray:
    """Per-node front-haul spectral efficiencies, in node order."""
    return np.array(
        [
            node_rate(link.h, link.g, cfg.e_bs_mw, cfg.n_s, cfg.sigma2_node_mw)
            for link in links.phase1
        ]
    )


def apply_policy(rates: np.ndarray, policy: str) -> tuple[float, tuple[int, ...]]:
    """Policy rate and the participating node indices it implies.

    "min" keeps everyone, "median" keeps the nodes at or above the lower
    median (element ceil(u/2) - 1 of the ascending sort, so a strict
    majority decodes the broadcast), "max" keeps the single best node,
    first index on ties. Empty rates give NaN and no participants.
    """
    if rates.size == 0:
        return float("nan"), ()
    if policy == "min":
        return float(rates.min()), tuple(range(rates.size))
    if policy == "median":
        threshold = float(np.sort(rates)[(rates.size + 1) // 2 - 1])
        return threshold, tuple(int(i) for i in np.flatnonzero(rates >= threshold))
    if policy == "max":
        return float(rates.max()), (int(np.argmax(rates)),)
    raise ValueError(f"unknown phase-1 policy {policy!r}")


def phase1_capacity(cfg: ScenarioConfig, links: LinkSet) -> Phase1Result:
    """Apply the configured policy to the per-node front-haul rates.

    With no nodes there is no phase 1: the rate and capacity are NaN and
    nothing participates.
    """
    rates = front_haul_rates(cfg, links)
    policy_rate, participating = apply_policy(rates, cfg.phase1_policy)
    return Phase1Result(rates, policy_rate, cfg.b1_hz * policy_rate, participating)
