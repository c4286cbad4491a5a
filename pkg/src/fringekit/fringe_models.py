"""Closed-form fringe models.

Every evaluator is a pure function of phase and accepts scalars or numpy
arrays.  Intensities are non-negative; nothing here normalizes, that is the
caller's job (see intensity_product.kth_power).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Below this |sin(alpha)| the N-slit grating factor switches to its
# removable-singularity limit N**2.
_SINGULAR_SIN = 1e-9


@dataclass(frozen=True)
class MziSpec:
    """Two-port interferometer with input intensity I0 and output port A or B."""

    input_intensity: float = 1.0
    port: str = "A"

    def __post_init__(self):
        if not self.input_intensity > 0.0:
            raise ValueError("input_intensity must be positive")
        if self.port not in ("A", "B"):
            raise ValueError("port must be 'A' or 'B'")


@dataclass(frozen=True)
class SplitPortSpec:
    """One output of a chain of K balanced splitters fed by port A."""

    input_intensity: float = 1.0
    splits: int = 1

    def __post_init__(self):
        if not self.input_intensity > 0.0:
            raise ValueError("input_intensity must be positive")
        if not isinstance(self.splits, int) or self.splits < 0:
            raise ValueError("splits must be an integer >= 0")


@dataclass(frozen=True)
class NSlitSpec:
    """N-slit aperture: slit count N, separation a, width b, wavelength lam.

    Lengths share one unit; only ratios enter the fringe.  b = 0 drops the
    envelope and leaves the pure grating factor.
    """

    slit_count: int
    slit_separation: float = 3.0
    slit_width: float = 1.0
    wavelength: float = 1.0

    def __post_init__(self):
        if not isinstance(self.slit_count, int) or self.slit_count < 2:
            raise ValueError("slit_count must be an integer >= 2")
        if not self.slit_separation > 0.0:
            raise ValueError("slit_separation must be positive")
        if self.slit_width < 0.0 or self.slit_width >= self.slit_separation:
            raise ValueError("slit_width must satisfy 0 <= b < a")
        if not self.wavelength > 0.0:
            raise ValueError("wavelength must be positive")

    @classmethod
    def grating(cls, slit_count: int, wavelength: float = 1.0) -> "NSlitSpec":
        """Zero-width slits: envelope-free grating factor only."""
        return cls(slit_count, slit_separation=1.0, slit_width=0.0, wavelength=wavelength)

    @classmethod
    def from_ratio(cls, slit_count: int, separation_over_width: float = 3.0,
                   wavelength: float = 1.0) -> "NSlitSpec":
        """Slit geometry fixed by the a/b ratio (default 3)."""
        if not separation_over_width > 1.0:
            raise ValueError("separation/width ratio must exceed 1")
        return cls(slit_count, slit_separation=separation_over_width,
                   slit_width=1.0, wavelength=wavelength)

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength


@dataclass(frozen=True)
class FpiSpec:
    """Lossless two-mirror etalon with amplitude reflectivity r."""

    reflectivity: float

    def __post_init__(self):
        if not 0.0 < self.reflectivity < 1.0:
            raise ValueError("reflectivity must lie strictly between 0 and 1")

    @property
    def coefficient_of_finesse(self) -> float:
        r = self.reflectivity
        return (2.0 * r / (1.0 - r * r)) ** 2


@dataclass(frozen=True)
class SuperresolutionSpec:
    """Reference fringe whose phase is compressed N-fold."""

    slit_count: int = 1

    def __post_init__(self):
        if not isinstance(self.slit_count, int) or self.slit_count < 1:
            raise ValueError("slit_count must be an integer >= 1")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.slit_count


@dataclass(frozen=True)
class ProfileSpec:
    """Peak profile for resolution studies: 'gaussian' (scale = sigma) or
    'linear' (scale = half-width of the triangular peak)."""

    kind: str
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("gaussian", "linear"):
            raise ValueError("kind must be 'gaussian' or 'linear'")
        if not self.scale > 0.0:
            raise ValueError("scale must be positive")

    @classmethod
    def gaussian(cls, sigma: float = 1.0) -> "ProfileSpec":
        return cls("gaussian", sigma)

    @classmethod
    def linear(cls, half_width: float = 1.0) -> "ProfileSpec":
        return cls("linear", half_width)


def mzi_intensity(phi, spec: MziSpec = MziSpec()):
    """Port intensity (I0/2)(1 +/- cos phi); '+' on port A, '-' on port B."""
    c = np.cos(phi)
    if spec.port == "A":
        return 0.5 * spec.input_intensity * (1.0 + c)
    return 0.5 * spec.input_intensity * (1.0 - c)


def split_port_intensity(phi, spec: SplitPortSpec = SplitPortSpec()):
    """Intensity on one leaf of K balanced splits of port A.

    Each split halves the intensity, the phase dependence survives intact:
    (1/2)**K * (I0/2) * (1 + cos phi).
    """
    return (0.5 ** spec.splits) * 0.5 * spec.input_intensity * (1.0 + np.cos(phi))


def _sinc(x):
    # sin(x)/x with the removable singularity filled in.
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-12
    safe = np.where(small, 1.0, x)
    out = np.where(small, 1.0, np.sin(safe) / safe)
    if out.ndim == 0:
        return float(out)
    return out


def grating_factor(alpha, slit_count: int, *, normalized: bool = False):
    """(sin(N alpha)/sin(alpha))**2 with its limit N**2 at alpha = p*pi.

    With normalized=True the principal peaks are scaled to 1.
    """
    if slit_count < 2:
        raise ValueError("slit_count must be >= 2")
    a = np.asarray(alpha, dtype=float)
    sa = np.sin(a)
    near = np.abs(sa) < _SINGULAR_SIN
    safe = np.where(near, 1.0, sa)
    ratio = np.sin(slit_count * a) / safe
    out = np.where(near, float(slit_count) ** 2, ratio * ratio)
    if normalized:
        out = out / float(slit_count) ** 2
    if out.ndim == 0:
        return float(out)
    return out


def nslit_intensity(alpha, beta, spec: NSlitSpec):
    """Fraunhofer N-slit pattern sinc^2(beta) * grating_factor(alpha).

    alpha and beta are the half phase differences of adjacent slits and of a
    single slit's edges; the envelope drops out for beta = 0 (b = 0).
    """
    env = _sinc(beta)
    return env * env * grating_factor(alpha, spec.slit_count)


def grating_phases(theta, spec: NSlitSpec):
    """(alpha, beta) at diffraction angle theta: alpha = k a sin(theta)/2."""
    s = np.sin(theta)
    half_k = 0.5 * spec.wavenumber
    return half_k * spec.slit_separation * s, half_k * spec.slit_width * s


def nslit_intensity_at_angle(theta, spec: NSlitSpec):
    """N-slit pattern against physical angle; |theta| <= pi/2."""
    t = np.asarray(theta, dtype=float)
    if np.any(np.abs(t) > 0.5 * math.pi):
        raise ValueError("theta must lie within [-pi/2, pi/2]")
    alpha, beta = grating_phases(t, spec)
    return nslit_intensity(alpha, beta, spec)


def fpi_transmission(delta, spec: FpiSpec):
    """Airy transmission 1 / (1 + F sin^2 delta), unit peaks at delta = p*pi."""
    s = np.sin(delta)
    return 1.0 / (1.0 + spec.coefficient_of_finesse * s * s)


def superresolution_fringe(phi, spec: SuperresolutionSpec):
    """(1 + cos(N phi)) / 2: the unit-peak fringe with an N-fold shrunk period."""
    return 0.5 * (1.0 + np.cos(spec.slit_count * phi))


def profile_value(x, spec: ProfileSpec):
    """Unit-peak profile centred at 0: Gaussian or triangular."""
    x = np.asarray(x, dtype=float)
    if spec.kind == "gaussian":
        out = np.exp(-(x * x) / (2.0 * spec.scale * spec.scale))
    else:
        out = np.maximum(0.0, 1.0 - np.abs(x) / spec.scale)
    if out.ndim == 0:
        return float(out)
    return out
