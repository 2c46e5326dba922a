"""Two-phase timing and the time-corrected baseline comparison.

Phase 1 lasts t1 and delivers c1 * t1 bits to the nodes; phase 2 forwards
that same payload at rate c2, taking t2 = c1 * t1 / c2. A fair baseline
lets the BS-only link transmit for the whole t1 + t2 window, so the gain
ratio compares equal air time, not equal payload.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalDomainError


def phase2_time(c1_bps: float, c2_bps: float, t1_s: float) -> float:
    """Seconds needed to forward the phase-1 payload over the joint link."""
    if not np.isfinite(c1_bps) or c1_bps < 0:
        raise NumericalDomainError(f"c1_bps: must be finite and >= 0, got {c1_bps}")
    if not np.isfinite(c2_bps) or c2_bps <= 0:
        raise NumericalDomainError(f"c2_bps: must be finite and > 0, got {c2_bps}")
    if not t1_s > 0:
        raise NumericalDomainError(f"t1_s: must be > 0, got {t1_s}")
    return c1_bps * t1_s / c2_bps


@dataclass
class TimingResult:
    t2_s: float
    total_time_s: float
    dmimo_bits: float
    baseline_bits: float
    gain_ratio: float


def compare_to_baseline(
    c1_bps: float, c2_bps: float, cb_bps: float, t1_s: float
) -> TimingResult:
    """Delivered bits of the two-phase scheme vs. the BS-only link.

    Both schemes occupy the same t1 + t2 window; the baseline link runs at
    cb for all of it while the two-phase scheme is end-to-end limited by
    its phase-1 payload.
    """
    if not np.isfinite(cb_bps) or cb_bps <= 0:
        raise NumericalDomainError(f"cb_bps: must be finite and > 0, got {cb_bps}")
    t2 = phase2_time(c1_bps, c2_bps, t1_s)
    total = t1_s + t2
    dmimo_bits = c1_bps * t1_s
    baseline_bits = cb_bps * total
    return TimingResult(
        t2_s=t2,
        total_time_s=total,
        dmimo_bits=dmimo_bits,
        baseline_bits=baseline_bits,
        gain_ratio=dmimo_bits / baseline_bits,
    )
