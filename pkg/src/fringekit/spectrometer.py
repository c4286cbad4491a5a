"""Multi-line spectral scenes on an N-slit grating and their resolvability.

A line at frequency f illuminating the grating produces principal maxima
where its own phase is a multiple of pi.  Working in the reference phase
alpha (defined for the reference frequency f0), the order-p peak of the
line sits at alpha = p*pi*(f0/f), so frequency offsets read off directly
as phase detunings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._search import golden_max
from .errors import NumericalError
from .fringe_models import grating_factor
from .intensity_product import stable_power
from .resolution_metrics import (RAYLEIGH_DIP, fwhm, rayleigh_resolvable)


@dataclass(frozen=True)
class SpectralScene:
    """Equal-strength spectral lines observed through one grating.

    lines are frequency ratios f/f0 of the reference frequency; the scene
    is analysed around diffraction order p (non-zero) with the per-line
    fringes raised to the product order K before they are summed.
    """

    lines: tuple[float, ...]
    reference_frequency: float = 1.0
    grating_order: int = -1
    slit_count: int = 1000
    product_order: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(float(x) for x in self.lines))
        if any(not x > 0.0 for x in self.lines):
            raise ValueError("line ratios must be positive")
        if not self.reference_frequency > 0.0:
            raise ValueError("reference_frequency must be positive")
        if self.grating_order == 0 or not isinstance(self.grating_order, int):
            raise ValueError("grating_order must be a non-zero integer")
        if not isinstance(self.slit_count, int) or self.slit_count < 2:
            raise ValueError("slit_count must be an integer >= 2")
        if not isinstance(self.product_order, int) or self.product_order < 1:
            raise ValueError("product_order must be an integer >= 1")

    @property
    def frequencies(self) -> tuple[float, ...]:
        return tuple(r * self.reference_frequency for r in self.lines)


def line_peak_phase(frequency: float, reference_frequency: float = 1.0,
                    order: int = -1) -> float:
    """Reference phase of a line's order-p principal maximum: p*pi*(f0/f)."""
    if not frequency > 0.0 or not reference_frequency > 0.0:
        raise ValueError("frequencies must be positive")
    if order == 0:
        raise ValueError("order must be non-zero")
    return order * math.pi * (reference_frequency / frequency)


def line_detuning(frequency: float, reference_frequency: float = 1.0,
                  order: int = -1) -> float:
    """Phase offset from the reference peak: p*pi*(f0/f - 1); 0 at f = f0."""
    if not frequency > 0.0 or not reference_frequency > 0.0:
        raise ValueError("frequencies must be positive")
    if order == 0:
        raise ValueError("order must be non-zero")
    return order * math.pi * (reference_frequency / frequency - 1.0)


def frequency_from_detuning(detuning: float, reference_frequency: float = 1.0,
                            order: int = -1) -> float:
    """Invert line_detuning: f = f0 * p*pi / (p*pi + detuning)."""
    if not reference_frequency > 0.0:
        raise ValueError("reference_frequency must be positive")
    if order == 0:
        raise ValueError("order must be non-zero")
    denom = order * math.pi + detuning
    if denom == 0.0:
        raise ValueError("detuning cancels the diffraction order")
    return reference_frequency * order * math.pi / denom


def _raw_composite(alpha, scene: SpectralScene):
    """Sum of unit-peak, K-powered per-line grating factors."""
    a = np.asarray(alpha, dtype=float)
    total = np.zeros_like(a)
    for ratio in scene.lines:
        term = grating_factor(a * ratio, scene.slit_count, normalized=True)
        total = total + stable_power(term, scene.product_order)
    if total.ndim == 0:
        return float(total)
    return total


@lru_cache(maxsize=128)
def _composite_peak(scene: SpectralScene) -> float:
    """Tallest maximum of the raw composite near the analysed order."""
    positions = sorted({line_peak_phase(f, scene.reference_frequency, scene.grating_order)
                        for f in scene.frequencies})
    quarter = 0.25 * math.pi / max(scene.lines)
    best = max(float(_raw_composite(p, scene)) for p in positions)
    brackets = []
    for i, p in enumerate(positions):
        h = quarter
        if i > 0:
            h = min(h, 0.5 * (p - positions[i - 1]))
        if i + 1 < len(positions):
            h = min(h, 0.5 * (positions[i + 1] - p))
        brackets.append((p - h, p + h))
    for i in range(len(positions) - 1):
        brackets.append((positions[i], positions[i + 1]))
    for lo, hi in brackets:
        if hi > lo:
            _, v = golden_max(lambda x: _raw_composite(x, scene), lo, hi, tol=1e-12)
            best = max(best, v)
    return best


def scene_intensity(alpha, scene: SpectralScene):
    """Composite scene fringe, normalized so the tallest peak is 1."""
    if not scene.lines:
        raise ValueError("scene has no lines")
    peak = _composite_peak(scene)
    if peak <= 0.0:
        raise NumericalError("scene composite has no positive maximum")
    return _raw_composite(alpha, scene) / peak


@dataclass(frozen=True)
class PairVerdict:
    """Resolvability of one pair of scene lines (indices into scene.lines)."""

    first: int
    second: int
    separation: float
    dip: float
    resolvable: bool


@dataclass(frozen=True)
class ResolvingReport:
    """Per-line peak positions and pairwise Rayleigh verdicts for a scene."""

    scene: SpectralScene
    peak_phases: tuple[float, ...]
    detunings: tuple[float, ...]
    verdicts: tuple[PairVerdict, ...]
    line_fwhm: float
    dip_threshold: float

    def verdict_for(self, first: int, second: int) -> PairVerdict:
        for v in self.verdicts:
            if (v.first, v.second) in ((first, second), (second, first)):
                return v
        raise KeyError(f"no verdict for line pair ({first}, {second})")


def single_line_fwhm(slit_count: int, product_order: int = 1, *,
                     tol: float = 1e-10) -> float:
    """FWHM of one line's K-powered grating peak, in its own phase."""
    fringe = lambda a: stable_power(
        grating_factor(a, slit_count, normalized=True), product_order)
    return fwhm(fringe, (-0.5 * math.pi, 0.5 * math.pi), tol=tol).width


def resolve_scene(scene: SpectralScene, *, dip_threshold: float = RAYLEIGH_DIP,
                  tol: float = 1e-12) -> ResolvingReport:
    """Work every line pair through the Rayleigh criterion.

    Each pair is judged on the composite of just those two lines, so a
    third line sitting between them cannot mask their own saddle.  Lines at
    identical frequencies come back unresolvable with dip 1.0.
    """
    if len(scene.lines) < 2:
        raise ValueError("resolving needs at least two lines")
    f0, p = scene.reference_frequency, scene.grating_order
    peaks = tuple(line_peak_phase(f, f0, p) for f in scene.frequencies)
    detunings = tuple(line_detuning(f, f0, p) for f in scene.frequencies)
    verdicts = []
    for i in range(len(scene.lines)):
        for j in range(i + 1, len(scene.lines)):
            pair = SpectralScene(
                lines=(scene.lines[i], scene.lines[j]),
                reference_frequency=f0, grating_order=p,
                slit_count=scene.slit_count, product_order=scene.product_order)
            p_i, p_j = peaks[i], peaks[j]
            sep = abs(p_j - p_i)
            if sep == 0.0:
                verdicts.append(PairVerdict(i, j, 0.0, 1.0, False))
                continue
            lo, hi = min(p_i, p_j) - sep, max(p_i, p_j) + sep
            res = rayleigh_resolvable(lambda a: _raw_composite(a, pair),
                                      (p_i, p_j), (lo, hi),
                                      dip_threshold=dip_threshold, tol=tol)
            verdicts.append(PairVerdict(i, j, sep, res.dip, res.resolvable))
    return ResolvingReport(
        scene=scene,
        peak_phases=peaks,
        detunings=detunings,
        verdicts=tuple(verdicts),
        line_fwhm=single_line_fwhm(scene.slit_count, scene.product_order),
        dip_threshold=dip_threshold,
    )
