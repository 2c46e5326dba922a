"""Small-scale Rayleigh fading and UMi large-scale gains.

Small-scale fading draws i.i.d. circularly-symmetric complex Gaussian
CN(0, 1) channel entries. Large-scale gain combines street-canyon Urban
Micro path loss (3GPP TR 38.901 Table 7.4.1-1, NLOS) with optional
lognormal shadow fading, and is applied as one scalar linear power gain
per link.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

# Propagation constant used by the breakpoint-distance formula (m/s).
SPEED_OF_LIGHT = 3.0e8

# The path-loss formulas are only specified down to 1 m; shorter links are
# clamped and the clamp is surfaced in trial diagnostics.
MIN_PATHLOSS_DISTANCE_M = 1.0


@dataclass(frozen=True)
class LinkGeometry:
    """Geometry of one transmitter-receiver link.

    d2d is the horizontal distance in meters, heights are in meters and
    fc_ghz is the carrier frequency in GHz (validity range 0.5-100 GHz).
    """

    d2d: float
    h_tx: float
    h_rx: float
    fc_ghz: float

    def __post_init__(self):
        if self.d2d < 0:
            raise ConfigError(f"d2d must be >= 0, got {self.d2d}")
        if self.h_tx <= 0 or self.h_rx <= 0:
            raise ConfigError(
                f"antenna heights must be > 0, got h_tx={self.h_tx}, h_rx={self.h_rx}"
            )
        if not 0.5 <= self.fc_ghz <= 100.0:
            raise ConfigError(
                f"carrier frequency must be in [0.5, 100] GHz, got {self.fc_ghz}"
            )

    @property
    def d3d(self) -> float:
        """Slant (3-D) distance between transmitter and receiver in meters."""
        return float(np.hypot(self.d2d, self.h_tx - self.h_rx))

    @property
    def clamped(self) -> bool:
        """True when the link is shorter than the path-loss validity floor."""
        return self.d3d < MIN_PATHLOSS_DISTANCE_M


@dataclass(frozen=True)
class ChannelRealization:
    """One link draw: complex channel matrix H plus scalar linear gain G."""

    h: np.ndarray
    g: float

    def __post_init__(self):
        # Zero is allowed: extreme path loss underflows to a dead link,
        # which the capacity formulas handle gracefully.
        if not (self.g >= 0 and np.isfinite(self.g)):
            raise ConfigError(f"large-scale gain must be >= 0 and finite, got {self.g}")


def sample_rayleigh(n_rx: int, n_tx: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an n_rx x n_tx matrix of i.i.d. CN(0, 1) entries.

    Real and imaginary parts are independent Gaussians with variance 1/2
    each, so entry magnitudes are Rayleigh with E|h|^2 = 1.
    """
    if n_rx < 1 or n_tx < 1:
        raise ConfigError(f"antenna counts must be >= 1, got ({n_rx}, {n_tx})")
    re = rng.standard_normal((n_rx, n_tx))
    im = rng.standard_normal((n_rx, n_tx))
    return (re + 1j * im) / np.sqrt(2.0)


def los_pathloss_db(geom: LinkGeometry) -> float:
    """Street-canyon UMi LOS path loss in dB (dual-slope form).

    The slope switches at the breakpoint distance
    d_bp = 4 (h_tx - 1)(h_rx - 1) fc / c, with effective antenna heights
    reduced by the 1 m environment height.
    """
    d3d = max(geom.d3d, MIN_PATHLOSS_DISTANCE_M)
    fc = geom.fc_ghz
    d_bp = 4.0 * (geom.h_tx - 1.0) * (geom.h_rx - 1.0) * fc * 1e9 / SPEED_OF_LIGHT
    if geom.d2d <= d_bp:
        return 32.4 + 21.0 * np.log10(d3d) + 20.0 * np.log10(fc)
    return (
        32.4
        + 40.0 * np.log10(d3d)
        + 20.0 * np.log10(fc)
        - 9.5 * np.log10(d_bp**2 + (geom.h_tx - geom.h_rx) ** 2)
    )


def nlos_prime_pathloss_db(geom: LinkGeometry) -> float:
    """Street-canyon UMi NLOS path loss in dB (the PL' branch)."""
    d3d = max(geom.d3d, MIN_PATHLOSS_DISTANCE_M)
    return (
        35.3 * np.log10(d3d)
        + 22.4
        + 21.3 * np.log10(geom.fc_ghz)
        - 0.3 * (geom.h_rx - 1.5)
    )


def simplified_nlos_pathloss_db(geom: LinkGeometry) -> float:
    """Optional simplified UMi NLOS path loss in dB."""
    d3d = max(geom.d3d, MIN_PATHLOSS_DISTANCE_M)
    return 32.4 + 20.0 * np.log10(geom.fc_ghz) + 31.9 * np.log10(d3d)


def umi_pathloss_db(geom: LinkGeometry, nlos_rule: str = "max") -> float:
    """UMi NLOS path loss in dB for one link.

    With the default "max" rule this is max(PL_LOS, PL'_NLOS) as the
    standard specifies; "simplified" selects the optional single-slope
    NLOS formula instead. Links below the 1 m validity floor are clamped
    (the caller surfaces the clamp via LinkGeometry.clamped).
    """
    if nlos_rule == "max":
        return float(max(los_pathloss_db(geom), nlos_prime_pathloss_db(geom)))
    if nlos_rule == "simplified":
        return float(simplified_nlos_pathloss_db(geom))
    raise ConfigError(f"unknown NLOS rule {nlos_rule!r} (expected 'max' or 'simplified')")


def shadow_fading_db(rng: np.random.Generator, sigma_sf: float) -> float:
    """Draw one zero-mean Gaussian shadow-fading sample in dB."""
    if sigma_sf < 0:
        raise ConfigError(f"sigma_sf must be >= 0, got {sigma_sf}")
    if sigma_sf == 0:
        return 0.0
    return float(rng.normal(0.0, sigma_sf))


def linear_gain(pl_db: float, sf_db: float) -> float:
    """Convert path loss plus shadowing in dB into a linear power gain."""
    return float(10.0 ** (-(pl_db + sf_db) / 10.0))
