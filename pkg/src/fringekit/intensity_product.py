"""Pointwise K-th order intensity products.

Raising a fringe to the K-th power leaves peak locations and zeros where
they are and sharpens every peak; that is the entire trick quantified by
resolution_metrics.  Powers are evaluated as exp(K*ln v) with values below
1e-300 flushed to zero, so deep tails underflow cleanly instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ._search import golden_max, sample_values
from .errors import NormalizationError
from .sampling import SampledFringe

# Largest finite exp() argument for IEEE doubles.
_MAX_LOG = math.log(np.finfo(float).max)
_TINY = 1e-300


def _check_order(order: int) -> int:
    if not isinstance(order, (int, np.integer)) or isinstance(order, bool) or order < 1:
        raise ValueError("order must be an integer >= 1")
    return int(order)


def stable_power(values, order: int):
    """Elementwise v**order via exp(order*ln v); v <= 1e-300 maps to 0.

    Values must be non-negative.  Results too large for a double come back
    as inf rather than raising.
    """
    order = _check_order(order)
    v = np.asarray(values, dtype=float)
    if np.any(v < 0.0):
        raise ValueError("fringe values must be non-negative")
    if v.ndim == 0:
        x = float(v)
        if x <= _TINY:
            return 0.0
        log_val = order * math.log(x)
        if log_val > _MAX_LOG:
            return math.inf
        return math.exp(log_val)
    safe = np.maximum(v, _TINY)
    with np.errstate(over="ignore"):
        out = np.where(v > _TINY, np.exp(order * np.log(safe)), 0.0)
    return out


def kth_order_correlation(phi, input_intensity: float = 1.0, order: int = 1,
                          *, normalized: bool = False):
    """K-th order correlation of one split-port intensity with itself.

    The product of K identical copies of (1/2)**K (I0/2)(1 + cos phi); the
    normalized form drops the prefactor and returns ((1 + cos phi)/2)**K
    with unit peaks.  Raw values beyond double range raise OverflowError
    (the normalized value never can).
    """
    order = _check_order(order)
    if not input_intensity > 0.0:
        raise ValueError("input_intensity must be positive")
    base = 0.5 * (1.0 + np.cos(phi))
    if normalized:
        return stable_power(base, order)
    # prefactor of one split-port raised to the K-th power: (I0 / 2**K)**K
    log_pref = order * (math.log(input_intensity) - order * math.log(2.0))
    if log_pref > _MAX_LOG:
        raise OverflowError(
            "raw correlation exceeds double range; use normalized=True")
    scaled = stable_power(base, order) * math.exp(log_pref)
    if np.any(np.isinf(scaled)):
        raise OverflowError(
            "raw correlation exceeds double range; use normalized=True")
    return scaled


Fringe = Union[Callable[[float], float], SampledFringe]


@dataclass(frozen=True)
class KPowerFringe:
    """A base fringe raised to an integer power, optionally peak-normalized.

    base_peak is the divisor applied to base values before powering; it is
    1 unless normalize was requested, in which case it is the base maximum
    over the analysis window so the powered peak sits exactly at 1.
    """

    base: Fringe
    order: int
    normalized: bool = False
    base_peak: float = 1.0

    def __post_init__(self):
        _check_order(self.order)
        if not self.base_peak > 0.0:
            raise ValueError("base_peak must be positive")

    def __call__(self, phase):
        if isinstance(self.base, SampledFringe):
            raise TypeError("sampled base fringe is not callable; use .samples")
        return stable_power(np.asarray(self.base(phase), dtype=float) / self.base_peak,
                            self.order)

    @property
    def samples(self) -> SampledFringe:
        if not isinstance(self.base, SampledFringe):
            raise TypeError("base fringe is an evaluator; call it instead")
        vals = stable_power(self.base.values / self.base_peak, self.order)
        return SampledFringe(self.base.start, self.base.step, vals)


def kth_power(fringe: Fringe, order: int, *, normalize: bool = False,
              window=None, grid_points: int = 4096) -> KPowerFringe:
    """Raise a fringe to the K-th power.

    fringe may be an evaluator or a SampledFringe.  With normalize=True the
    result's maximum over the analysis window is 1; an evaluator then needs
    an explicit window, a SampledFringe uses its own grid.  A fringe that is
    zero everywhere cannot be normalized.
    """
    order = _check_order(order)
    if not normalize:
        return KPowerFringe(fringe, order, normalized=False, base_peak=1.0)
    if isinstance(fringe, SampledFringe):
        peak = float(np.max(fringe.values))
        if peak <= 0.0:
            raise NormalizationError("all-zero fringe cannot be normalized")
        return KPowerFringe(fringe, order, normalized=True, base_peak=peak)
    if window is None:
        raise ValueError("normalizing an evaluator requires an analysis window")
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError("window must satisfy lo < hi")
    xs = np.linspace(lo, hi, grid_points)
    ys = sample_values(fringe, xs)
    i = int(np.argmax(ys))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, grid_points - 1)]
    _, peak = golden_max(fringe, a, b, tol=1e-13)
    peak = max(peak, float(ys[i]))
    if peak <= 0.0:
        raise NormalizationError("fringe has no positive maximum on the window")
    return KPowerFringe(fringe, order, normalized=True, base_peak=peak)
