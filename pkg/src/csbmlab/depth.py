"""Depth selection from the z-score bound curves.

Compares the per-depth bands [z_lower(n), z_upper(n)] against the raw-feature
score z(0) = (mu2-mu1)/(2 sigma) and brackets the break-even depth n0 and the
optimal depth n*.  The same 1/2 factor scales every curve and the threshold,
so branch outcomes do not depend on that convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .csbm import CsbmParams
from .theory import zscore_bounds

ALL_BELOW = "AllBelow"
UPPER_CROSS_ONLY = "UpperCrossOnly"
LOWER_CROSS_TOO = "LowerCrossToo"

HORIZON_EXHAUSTED = "horizon_exhausted"
NSTAR_LEFT_FALLBACK = "nstar_left_fallback"
NSTAR_RIGHT_FALLBACK = "nstar_right_fallback"


@dataclass(frozen=True)
class DepthPrediction:
    """Scenario tag plus interval bounds on the break-even depth n0 and the
    optimal depth n*; nstar_floor is the argmax of the z lower curve and is
    set only in the LowerCrossToo scenario."""

    scenario: str
    n0_interval: tuple[int, int]
    nstar_interval: tuple[int, int]
    nstar_floor: int | None
    horizon: int
    flags: tuple[str, ...]


def predict_depth(params: CsbmParams, horizon: int) -> DepthPrediction:
    """Bracket n0 and n* from the closed-form z-score bands over depths
    1..horizon.

    Scenarios:
      AllBelow        every z_upper(n) < z(0): convolution cannot help,
                      n0 = n* = 0.
      UpperCrossOnly  some z_upper(n) >= z(0) but z_lower stays below:
                      n0, n* in [0, nhat], nhat the first depth after which
                      the upper curve stays below z(0) through the horizon.
      LowerCrossToo   some z_lower(n) >= z(0): n* is additionally bracketed
                      around the argmax of z_lower by where z_upper drops
                      under that maximum; empty bracket sides fall back to
                      0 / horizon and are flagged.

    If z_upper is still >= z(0) at the horizon the intervals are right-capped
    there and flagged horizon_exhausted.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    z0 = params.mean_gap0 / (2.0 * math.sqrt(params.sigma2))
    z_lower = np.empty(horizon + 1)
    z_upper = np.empty(horizon + 1)
    for n in range(1, horizon + 1):
        z_lower[n], z_upper[n] = zscore_bounds(params, n)
    z_lower[0] = z_upper[0] = z0

    flags: list[str] = []
    upper_cross = z_upper[1:] >= z0
    if not upper_cross.any():
        return DepthPrediction(ALL_BELOW, (0, 0), (0, 0), None, horizon, ())

    # nhat = min{n : z_upper(m) <= z0 for all m in [n, horizon]}; a literal
    # first crossing would contradict the scenario premise when z_upper is
    # non-monotone at small n.
    below = z_upper[1:] <= z0
    suffix_ok = np.flip(np.logical_and.accumulate(np.flip(below)))
    candidates = np.flatnonzero(suffix_ok)
    if len(candidates):
        nhat = int(candidates[0]) + 1
    else:
        nhat = horizon
        flags.append(HORIZON_EXHAUSTED)
    n0_interval = (0, nhat)

    lower_cross = z_lower[1:] >= z0
    if not lower_cross.any():
        return DepthPrediction(UPPER_CROSS_ONLY, n0_interval, (0, nhat), None, horizon, tuple(flags))

    nstar_floor = int(np.argmax(z_lower[1:])) + 1
    threshold = z_lower[nstar_floor]
    left_set = [n for n in range(1, nstar_floor + 1) if z_upper[n] <= threshold]
    right_set = [n for n in range(nstar_floor, horizon + 1) if z_upper[n] <= threshold]
    if left_set:
        left = max(left_set)
    else:
        left = 0
        flags.append(NSTAR_LEFT_FALLBACK)
    if right_set:
        right = min(right_set)
    else:
        right = horizon
        flags.append(NSTAR_RIGHT_FALLBACK)
    return DepthPrediction(
        LOWER_CROSS_TOO, n0_interval, (left, right), nstar_floor, horizon, tuple(flags)
    )
