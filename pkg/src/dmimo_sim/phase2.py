"""Access phase: BS and participating nodes jointly beamform to the UE.

Each transmitter applies the pseudo-inverse of its own channel to the UE,
so the per-transmitter effective channels are identity matrices and their
amplitudes add coherently at the receiver. The capacity then has a closed
form; an explicit log-det evaluation of the combined effective channel is
kept as an independent route for cross-checking.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .linalg import log_det_capacity, pseudo_inverse
from .scenario import LinkSet, ScenarioConfig


def layer_count(cfg: ScenarioConfig, n_participants: int) -> int:
    """Spatial layers supported by every transmitter and the UE."""
    if n_participants > 0:
        return min(cfg.n_t_bs, cfg.n_t_node, cfg.n_r_ue)
    return min(cfg.n_t_bs, cfg.n_r_ue)


def _amplitude(e_mw: float, g: float, n_t: int) -> float:
    return float(np.sqrt(e_mw * g / n_t))


def _power_scale(f: np.ndarray, n_t: int) -> float:
    # Rescale so the precoded transmit power meets the budget exactly
    # instead of inheriting the pseudo-inverse's channel-dependent norm.
    return float(np.sqrt(n_t / np.real(np.trace(f @ f.conj().T))))


@dataclass
class PrecoderSet:
    """Per-transmitter precoders, ordered as (participating nodes..., BS)."""

    node_precoders: list[np.ndarray]
    bs_precoder: np.ndarray
    node_scales: list[float]
    bs_scale: float


@dataclass
class Phase2Result:
    se_closed: float
    se_logdet: float
    capacity_bps: float
    n_layers: int


def zf_precoders(
    cfg: ScenarioConfig, links: LinkSet, participating: tuple[int, ...]
) -> PrecoderSet:
    """Zero-forcing precoders for the BS and each participating node.

    In "unit-gain" mode the raw pseudo-inverses are used, which makes every
    effective channel exactly identity. "power-exact" rescales each precoder
    to its transmitter's power budget, trading received amplitude for an
    exact constraint.
    """
    n_layers = layer_count(cfg, len(participating))
    if cfg.n_r_ue > n_layers:
        raise DimensionError(
            f"zero-forcing needs at least {cfg.n_r_ue} transmit antennas per "
            f"transmitter to serve {cfg.n_r_ue} UE receive antennas"
        )
    exact = cfg.zf_normalization == "power-exact"

    node_precoders = []
    node_scales = []
    for idx in participating:
        f = pseudo_inverse(links.phase2_nodes[idx].h)
        node_precoders.append(f)
        node_scales.append(_power_scale(f, cfg.n_t_node) if exact else 1.0)

    f_bs = pseudo_inverse(links.phase2_bs.h)
    bs_scale = _power_scale(f_bs, cfg.n_t_bs) if exact else 1.0
    return PrecoderSet(node_precoders, f_bs, node_scales, bs_scale)


def phase2_capacity_closed(
    cfg: ScenarioConfig,
    links: LinkSet,
    participating: tuple[int, ...],
    precoders: PrecoderSet | None = None,
) -> float:
    """Closed-form joint spectral efficiency in b/s/Hz.

    The coherent sum of per-transmitter amplitudes sqrt(e * g / n_t) enters
    a single log, multiplied by the common layer count. With no
    participating nodes this reduces to the BS-only direct link. Precoder
    scales modify the amplitudes only in "power-exact" mode.
    """
    node_scales = precoders.node_scales if precoders else [1.0] * len(participating)
    bs_scale = precoders.bs_scale if precoders else 1.0

    amp = bs_scale * _amplitude(cfg.e_bs_mw, links.phase2_bs.g, cfg.n_t_bs)
    for idx, scale in zip(participating, node_scales):
        amp += scale * _amplitude(cfg.e_node_mw, links.phase2_nodes[idx].g, cfg.n_t_node)

    n_layers = layer_count(cfg, len(participating))
    return n_layers * float(np.log2(amp * amp / cfg.sigma2_ue_mw + 1.0))


def phase2_capacity_logdet(
    cfg: ScenarioConfig,
    links: LinkSet,
    precoders: PrecoderSet,
    participating: tuple[int, ...],
) -> float:
    """Log-det spectral efficiency of the combined effective channel.

    Builds sum_k a_k * H_k @ F_k explicitly instead of assuming the
    per-transmitter products are identity, so it independently verifies the
    closed form.
    """
    bs = links.phase2_bs
    h_eff = (
        precoders.bs_scale
        * _amplitude(cfg.e_bs_mw, bs.g, cfg.n_t_bs)
        * (bs.h @ precoders.bs_precoder)
    )
    for idx, f, scale in zip(participating, precoders.node_precoders, precoders.node_scales):
        link = links.phase2_nodes[idx]
        h_eff = h_eff + scale * _amplitude(cfg.e_node_mw, link.g, cfg.n_t_node) * (link.h @ f)

    return log_det_capacity(h_eff @ h_eff.conj().T, 1.0 / cfg.sigma2_ue_mw)


def phase2_capacities(
    cfg: ScenarioConfig, links: LinkSet, participating: tuple[int, ...]
) -> Phase2Result:
    """Both capacity routes for one trial's participant set."""
    precoders = zf_precoders(cfg, links, participating)
    se_closed = phase2_capacity_closed(cfg, links, participating, precoders)
    se_logdet = phase2_capacity_logdet(cfg, links, precoders, participating)
    return Phase2Result(
        se_closed=se_closed,
        se_logdet=se_logdet,
        capacity_bps=cfg.b2_hz * se_closed,
        n_layers=layer_count(cfg, len(participating)),
    )


def baseline_capacity(cfg: ScenarioConfig, links: LinkSet) -> float:
    """BS-only direct-link capacity in bit/s over the access bandwidth."""
    return cfg.b2_hz * phase2_capacity_closed(cfg, links, ())
