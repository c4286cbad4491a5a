"""Uniform-grid fringe container."""

import math

import numpy as np
import pytest

from fringekit.sampling import SampledFringe, sample_fringe


class TestSampledFringe:
    def test_grid_accessors(self):
        fringe = SampledFringe(-1.0, 0.5, np.array([0.0, 1.0, 0.0]))
        assert len(fringe) == 3
        assert fringe.phase_at(2) == 0.0
        assert fringe.window == (-1.0, 0.0)
        assert fringe.positions == pytest.approx([-1.0, -0.5, 0.0])

    def test_values_are_frozen_copies(self):
        src = np.array([0.1, 0.2, 0.3])
        fringe = SampledFringe(0.0, 1.0, src)
        src[0] = 99.0
        assert fringe.values[0] == 0.1
        with pytest.raises(ValueError):
            fringe.values[0] = 5.0

    @pytest.mark.parametrize("kwargs", [
        {"start": 0.0, "step": 0.1, "values": np.zeros((2, 2))},
        {"start": 0.0, "step": 0.1, "values": np.array([1.0, 2.0])},
        {"start": 0.0, "step": 0.0, "values": np.ones(4)},
        {"start": 0.0, "step": -0.1, "values": np.ones(4)},
        {"start": math.inf, "step": 0.1, "values": np.ones(4)},
        {"start": 0.0, "step": 0.1, "values": np.array([1.0, math.nan, 2.0])},
        {"start": 0.0, "step": 0.1, "values": np.array([1.0, -0.5, 2.0])},
    ])
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            SampledFringe(**kwargs)


class TestSampleFringe:
    def test_samples_evaluator(self):
        fringe = sample_fringe(math.cos, (0.0, math.pi / 2), count=5)
        assert fringe.start == 0.0
        assert fringe.step == pytest.approx(math.pi / 8)
        assert fringe.values[0] == pytest.approx(1.0)
        assert fringe.values[2] == pytest.approx(math.sqrt(0.5))

    def test_window_validation(self):
        with pytest.raises(ValueError):
            sample_fringe(math.cos, (1.0, 1.0))
        with pytest.raises(ValueError):
            sample_fringe(math.cos, (0.0, 1.0), count=2)
