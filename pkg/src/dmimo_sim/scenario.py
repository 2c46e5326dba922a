"""Scenario configuration, node placement and per-trial link assembly.

The geometry puts the BS at the origin, the served UE on the +x axis at
distance d_bs_ue, and the cooperating nodes inside (disc mode) or on
(ring mode) a circle of the configured radius around the BS. One trial's
link set consists of the BS-to-node front-haul links and the node/BS-to-UE
access links, each carrying a fresh Rayleigh matrix and large-scale gain.
"""

from dataclasses import dataclass, field, fields

import numpy as np

from .channel import (
    ChannelRealization,
    LinkGeometry,
    linear_gain,
    sample_rayleigh,
    shadow_fading_db,
    umi_pathloss_db,
)
from .errors import ConfigError

THERMAL_NOISE_DBM_PER_HZ = -174.0

PLACEMENT_MODES = ("disc", "ring")
PHASE1_POLICIES = ("min", "median", "max")
ZF_NORMALIZATIONS = ("unit-gain", "power-exact")
NLOS_RULES = ("max", "simplified")

# Purpose tags for the per-trial random substreams. Each purpose gets an
# independent stream derived from (master seed, trial index, tag), so the
# BS-to-UE draw is unchanged when the node count changes.
PLACEMENT, PHASE1_FADING, PHASE2_FADING, SHADOWING = range(4)


def purpose_rng(master_seed: int, trial_index: int, purpose: int) -> np.random.Generator:
    """Independent, reproducible random stream for one purpose of one trial."""
    return np.random.default_rng(
        np.random.SeedSequence((master_seed, trial_index, purpose))
    )


@dataclass
class ScenarioConfig:
    """All scenario parameters with their simulation defaults.

    Transmit powers are in dBm, bandwidths in Hz, distances and heights in
    meters, carrier frequency in GHz. u = 0 is the BS-only baseline.
    """

    u: int = 10
    radius: float = 100.0
    node_height_min: float = 2.5
    node_height_max: float = 25.0
    bs_height: float = 20.0
    ue_height: float = 2.0
    d_bs_ue: float = 1000.0
    p_bs_dbm: float = 33.0
    p_node_dbm: float = 26.0
    n_t_bs: int = 4
    n_t_node: int = 2
    n_r_node: int = 2
    n_r_ue: int = 2
    b1_hz: float = 10e6
    b2_hz: float = 10e6
    fc_ghz: float = 3.5
    nf_db: float = 7.0
    shadow_fading: bool = True
    sigma_sf_db: float = 7.82
    placement_mode: str = "disc"
    phase1_policy: str = "min"
    zf_normalization: str = "unit-gain"
    nlos_rule: str = "max"
    t1_s: float = 1.0

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not isinstance(self.u, int) or isinstance(self.u, bool) or self.u < 0:
            raise ConfigError(f"u: node count must be an integer >= 0, got {self.u!r}")
        if self.radius < 0:
            raise ConfigError(f"radius: must be >= 0, got {self.radius}")
        if not self.d_bs_ue > 0:
            raise ConfigError(f"d_bs_ue: must be > 0, got {self.d_bs_ue}")
        for key in ("n_t_bs", "n_t_node", "n_r_node", "n_r_ue"):
            value = getattr(self, key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"{key}: antenna count must be an integer >= 1, got {value!r}")
        for key in ("p_bs_dbm", "p_node_dbm", "nf_db"):
            if not np.isfinite(getattr(self, key)):
                raise ConfigError(f"{key}: must be finite, got {getattr(self, key)}")
        for key in ("b1_hz", "b2_hz"):
            if not getattr(self, key) > 0:
                raise ConfigError(f"{key}: bandwidth must be > 0, got {getattr(self, key)}")
        for key in ("node_height_min", "node_height_max", "bs_height", "ue_height"):
            if not getattr(self, key) > 0:
                raise ConfigError(f"{key}: height must be > 0, got {getattr(self, key)}")
        if self.node_height_min > self.node_height_max:
            raise ConfigError(
                "node_height_min: must not exceed node_height_max, got "
                f"[{self.node_height_min}, {self.node_height_max}]"
            )
        if not 0.5 <= self.fc_ghz <= 100.0:
            raise ConfigError(f"fc_ghz: must be in [0.5, 100], got {self.fc_ghz}")
        if self.sigma_sf_db < 0:
            raise ConfigError(f"sigma_sf_db: must be >= 0, got {self.sigma_sf_db}")
        if self.placement_mode not in PLACEMENT_MODES:
            raise ConfigError(
                f"placement_mode: expected one of {PLACEMENT_MODES}, got {self.placement_mode!r}"
            )
        if self.phase1_policy not in PHASE1_POLICIES:
            raise ConfigError(
                f"phase1_policy: expected one of {PHASE1_POLICIES}, got {self.phase1_policy!r}"
            )
        if self.zf_normalization not in ZF_NORMALIZATIONS:
            raise ConfigError(
                f"zf_normalization: expected one of {ZF_NORMALIZATIONS}, "
                f"got {self.zf_normalization!r}"
            )
        if self.nlos_rule not in NLOS_RULES:
            raise ConfigError(
                f"nlos_rule: expected one of {NLOS_RULES}, got {self.nlos_rule!r}"
            )
        if not self.t1_s > 0:
            raise ConfigError(f"t1_s: must be > 0, got {self.t1_s}")

    # Derived quantities -------------------------------------------------

    @property
    def n_s(self) -> int:
        """Phase-1 layer count min(N_t at BS, N_r at node)."""
        return min(self.n_t_bs, self.n_r_node)

    @property
    def n_s_bar(self) -> int:
        """Phase-2 layer count, bounded by every participating entity."""
        if self.u >= 1:
            return min(self.n_t_bs, self.n_t_node, self.n_r_ue)
        return min(self.n_t_bs, self.n_r_ue)

    @property
    def e_bs_mw(self) -> float:
        return 10.0 ** (self.p_bs_dbm / 10.0)

    @property
    def e_node_mw(self) -> float:
        return 10.0 ** (self.p_node_dbm / 10.0)

    def noise_power_mw(self, bandwidth_hz: float) -> float:
        """Thermal noise power in mW over the given bandwidth, incl. noise figure."""
        noise_dbm = THERMAL_NOISE_DBM_PER_HZ + 10.0 * np.log10(bandwidth_hz) + self.nf_db
        return float(10.0 ** (noise_dbm / 10.0))

    @property
    def sigma2_node_mw(self) -> float:
        return self.noise_power_mw(self.b1_hz)

    @property
    def sigma2_ue_mw(self) -> float:
        return self.noise_power_mw(self.b2_hz)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class NodePlacement:
    """One node's position (meters, BS at the origin) and antenna height."""

    x: float
    y: float
    height: float

    @property
    def bs_distance(self) -> float:
        return float(np.hypot(self.x, self.y))


def sample_nodes(cfg: ScenarioConfig, rng: np.random.Generator) -> list[NodePlacement]:
    """Draw the node placements around the BS.

    Disc mode is uniform over the disc area (radius sampled as R*sqrt(u)),
    ring mode puts every node at radius R; angles are uniform and heights
    i.i.d. uniform over the configured range. Draws are made node by node
    so a longer node list extends a shorter one drawn from the same stream.
    """
    nodes = []
    for _ in range(cfg.u):
        if cfg.placement_mode == "disc":
            r = cfg.radius * np.sqrt(rng.random())
        else:
            r = cfg.radius
        theta = 2.0 * np.pi * rng.random()
        height = rng.uniform(cfg.node_height_min, cfg.node_height_max)
        nodes.append(NodePlacement(r * np.cos(theta), r * np.sin(theta), height))
    return nodes


@dataclass
class TrialStreams:
    """The four per-purpose random substreams of one trial."""

    placement: np.random.Generator
    phase1_fading: np.random.Generator
    phase2_fading: np.random.Generator
    shadowing: np.random.Generator

    @classmethod
    def derive(cls, master_seed: int, trial_index: int) -> "TrialStreams":
        return cls(
            placement=purpose_rng(master_seed, trial_index, PLACEMENT),
            phase1_fading=purpose_rng(master_seed, trial_index, PHASE1_FADING),
            phase2_fading=purpose_rng(master_seed, trial_index, PHASE2_FADING),
            shadowing=purpose_rng(master_seed, trial_index, SHADOWING),
        )


@dataclass
class LinkSet:
    """All channel realizations of one trial."""

    phase1: list[ChannelRealization] = field(default_factory=list)
    phase2_nodes: list[ChannelRealization] = field(default_factory=list)
    phase2_bs: ChannelRealization | None = None
    clamped_links: int = 0


def _realize(
    cfg: ScenarioConfig,
    geom: LinkGeometry,
    n_rx: int,
    n_tx: int,
    fading_rng: np.random.Generator,
    shadow_rng: np.random.Generator,
) -> tuple[ChannelRealization, bool]:
    h = sample_rayleigh(n_rx, n_tx, fading_rng)
    pl = umi_pathloss_db(geom, cfg.nlos_rule)
    sf = shadow_fading_db(shadow_rng, cfg.sigma_sf_db) if cfg.shadow_fading else 0.0
    return ChannelRealization(h=h, g=linear_gain(pl, sf)), geom.clamped


def build_links(
    cfg: ScenarioConfig,
    nodes: list[NodePlacement],
    streams: TrialStreams,
) -> LinkSet:
    """Assemble the full link set for one trial.

    The BS-to-UE link is drawn first from the phase-2 fading and shadowing
    streams, then each node's front-haul and access links in node order;
    this keeps the BS-to-UE realization identical across node counts at a
    fixed seed and makes a larger node set a superset of a smaller one.
    """
    links = LinkSet()

    bs_ue_geom = LinkGeometry(cfg.d_bs_ue, cfg.bs_height, cfg.ue_height, cfg.fc_ghz)
    links.phase2_bs, clamped = _realize(
        cfg, bs_ue_geom, cfg.n_r_ue, cfg.n_t_bs, streams.phase2_fading, streams.shadowing
    )
    links.clamped_links += clamped

    for node in nodes:
        p1_geom = LinkGeometry(node.bs_distance, cfg.bs_height, node.height, cfg.fc_ghz)
        p1_link, clamped = _realize(
            cfg, p1_geom, cfg.n_r_node, cfg.n_t_bs, streams.phase1_fading, streams.shadowing
        )
        links.phase1.append(p1_link)
        links.clamped_links += clamped

        ue_d2d = float(np.hypot(node.x - cfg.d_bs_ue, node.y))
        p2_geom = LinkGeometry(ue_d2d, node.height, cfg.ue_height, cfg.fc_ghz)
        p2_link, clamped = _realize(
            cfg, p2_geom, cfg.n_r_ue, cfg.n_t_node, streams.phase2_fading, streams.shadowing
        )
        links.phase2_nodes.append(p2_link)
        links.clamped_links += clamped

    return links
