"""Uniformly sampled fringe data shared by the analysis modules."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._search import sample_values


@dataclass(frozen=True, eq=False)
class SampledFringe:
    """Fringe intensities on a uniform phase grid.

    start : phase of the first sample
    step  : grid spacing, > 0
    values: non-negative intensities, at least 3 samples
    """

    start: float
    step: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if vals.size < 3:
            raise ValueError("need at least 3 samples")
        if not self.step > 0.0:
            raise ValueError("step must be positive")
        if not np.isfinite(self.start) or not np.isfinite(self.step):
            raise ValueError("grid must be finite")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        if np.any(vals < 0.0):
            raise ValueError("values must be non-negative")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.values.size

    @property
    def positions(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.values.size)

    def phase_at(self, index: int) -> float:
        return self.start + self.step * index

    @property
    def window(self) -> tuple[float, float]:
        return self.start, self.phase_at(self.values.size - 1)


def sample_fringe(fringe, window, count: int = 1001) -> SampledFringe:
    """Sample an evaluator on ``count`` equally spaced points over window."""
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError("window must satisfy lo < hi")
    if count < 3:
        raise ValueError("need at least 3 samples")
    xs = np.linspace(lo, hi, count)
    return SampledFringe(start=lo, step=(hi - lo) / (count - 1), values=sample_values(fringe, xs))
