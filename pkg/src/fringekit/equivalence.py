"""Matching etalon reflectivity to slit count by equal fringe width.

An N-slit grating factor and an Airy transmission peak are interchangeable
for resolution purposes once their FWHMs agree; this module computes the
reflectivity doing that for a given N.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import BracketError
from .fringe_models import grating_factor
from .resolution_metrics import fwhm

_HALF_PERIOD = 0.5 * math.pi


def fpi_fwhm(r: float) -> float:
    """Closed-form Airy peak width 2*arcsin((1 - r^2)/(2r)).

    Below r = sqrt(2) - 1 the transmission never falls to one half, the
    peak is degenerate and the full period pi is returned with a warning.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("reflectivity must lie strictly between 0 and 1")
    s = (1.0 - r * r) / (2.0 * r)
    if s >= 1.0:
        warnings.warn(
            f"reflectivity {r} is below the half-maximum finesse; "
            "width degenerates to the full period pi", RuntimeWarning,
            stacklevel=2)
        return math.pi
    return 2.0 * math.asin(s)


def grating_fwhm(slit_count: int, *, tol: float = 1e-10) -> float:
    """Measured FWHM of the pure N-slit grating factor's principal peak."""
    return fwhm(lambda a: grating_factor(a, slit_count, normalized=True),
                (-_HALF_PERIOD, _HALF_PERIOD), tol=tol).width


@dataclass(frozen=True)
class EquivalenceResult:
    """Reflectivity matched to a slit count, with the residual mismatch."""

    slit_count: int
    reflectivity: float
    fpi_width: float
    nslit_width: float

    @property
    def relative_mismatch(self) -> float:
        return abs(self.fpi_width - self.nslit_width) / self.nslit_width


def equivalent_reflectivity(slit_count: int, *, rel_tol: float = 1e-9,
                            bracket: tuple[float, float] = (0.01, 1.0 - 1e-12),
                            max_iter: int = 300) -> EquivalenceResult:
    """Solve fpi_fwhm(r) = grating FWHM(N) for r by bisection.

    The Airy width falls monotonically with r, so the root is unique; the
    iteration stops once the widths agree to rel_tol relative.
    """
    if slit_count < 2:
        raise ValueError("slit_count must be >= 2")
    target = grating_fwhm(slit_count)
    lo, hi = bracket
    if not 0.0 < lo < hi < 1.0:
        raise ValueError("bracket must satisfy 0 < lo < hi < 1")
    with warnings.catch_warnings():
        # The low-reflectivity end of the bracket is degenerate by design.
        warnings.simplefilter("ignore", RuntimeWarning)
        w_lo = fpi_fwhm(lo)
        w_hi = fpi_fwhm(hi)
        if not w_hi <= target <= w_lo:
            raise BracketError(
                f"target width {target} not bracketed by r in ({lo}, {hi})")
        r = best_r = 0.5 * (lo + hi)
        best_err = math.inf
        for _ in range(max_iter):
            r = 0.5 * (lo + hi)
            if r == lo or r == hi:
                break
            w = fpi_fwhm(r)
            err = abs(w - target)
            if err < best_err:
                best_err, best_r = err, r
            if err <= rel_tol * target:
                break
            if w > target:
                lo = r
            else:
                hi = r
    if best_err > rel_tol * target:
        raise BracketError(
            f"bisection stalled at relative mismatch {best_err / target:.3e}")
    return EquivalenceResult(slit_count, best_r, fpi_fwhm(best_r), target)
