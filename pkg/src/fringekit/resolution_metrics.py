"""Peak widths, resolution ratios and the Rayleigh criterion.

The FWHM solver is the workhorse: a coarse grid scan locates the principal
maximum, golden-section refines it, and bisection pins each half-maximum
crossing down to |f(x) - peak/2| <= peak * 1e-9.  Widths of K-th power
fringes divided by their first-order width are what the sensitivity
references 1/sqrt(K) and 1/N are compared against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from ._search import golden_max, golden_min, sample_values
from .errors import FlatFringeError, HalfCrossingError, NumericalError
from .intensity_product import kth_power
from .sampling import SampledFringe, sample_fringe

__all__ = [
    "RAYLEIGH_DIP",
    "FwhmResult",
    "RayleighResult",
    "ResolutionCurve",
    "SampledFringe",
    "find_principal_peak",
    "fwhm",
    "hl_reference",
    "order_sweep",
    "rayleigh_resolvable",
    "resolution_curve",
    "sample_fringe",
    "slit_sweep",
    "snl_reference",
]

# Saddle-to-peak ratio of two unit sinc^2 peaks at the classic just-resolved
# separation; the default decision level for resolvability.
RAYLEIGH_DIP = 8.0 / math.pi ** 2

# Relative slack on the dip comparison so the exact boundary case lands on
# the resolvable side despite solver rounding.
_DIP_SLACK = 1e-9

# Golden-section positions scatter by O(sqrt(machine eps)) on a flat summit,
# so two candidates refined onto the same peak can land ~1e-8 apart; gaps
# below this are one peak, not two.
_MERGE_EPS = 1e-7

_DEFAULT_GRID = 10_000


@dataclass(frozen=True)
class FwhmResult:
    """Principal peak location/height and its half-maximum crossings."""

    peak_position: float
    peak_value: float
    left_half: float
    right_half: float

    @property
    def width(self) -> float:
        return self.right_half - self.left_half


def snl_reference(order: int) -> float:
    """Shot-noise scaling 1/sqrt(K) for K averaged/multiplied intensities."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return 1.0 / math.sqrt(order)


def hl_reference(slit_count: int) -> float:
    """Heisenberg scaling 1/N for an N-resource interferometer."""
    if slit_count < 1:
        raise ValueError("slit_count must be >= 1")
    return 1.0 / slit_count


def _validate_window(window) -> tuple[float, float]:
    lo, hi = float(window[0]), float(window[1])
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("window must be finite")
    if not lo < hi:
        raise ValueError("window must satisfy lo < hi")
    return lo, hi


def find_principal_peak(fringe, window=None, *, grid_points: int = _DEFAULT_GRID,
                        tol: float = 1e-12) -> tuple[float, float]:
    """Locate the global maximum of a fringe over the window.

    Returns (position, value).  Evaluators get a grid_points scan plus
    golden-section refinement of the best bracket; sampled fringes return
    their best sample.  A fringe with no variation at all over the window
    has no unique peak and raises FlatFringeError.
    """
    if isinstance(fringe, SampledFringe):
        vals = fringe.values
        if float(vals.max()) == float(vals.min()):
            raise FlatFringeError("fringe is constant over its grid")
        i = int(np.argmax(vals))
        return fringe.phase_at(i), float(vals[i])
    lo, hi = _validate_window(window)
    if grid_points < 3:
        raise ValueError("grid_points must be >= 3")
    xs = np.linspace(lo, hi, grid_points)
    ys = sample_values(fringe, xs)
    if not np.all(np.isfinite(ys)):
        raise NumericalError("fringe produced non-finite values on the window")
    if float(ys.max()) == float(ys.min()):
        raise FlatFringeError("fringe is constant over the window")
    i = int(np.argmax(ys))
    x, v = golden_max(fringe, xs[max(i - 1, 0)], xs[min(i + 1, grid_points - 1)], tol=tol)
    # A corner peak can beat the golden-section midpoint; keep the best seen.
    if float(ys[i]) > v:
        return float(xs[i]), float(ys[i])
    return float(x), float(v)


def _half_crossing(fringe, peak_pos: float, peak_value: float, edge: float,
                   tol: float, side: str) -> float:
    half = 0.5 * peak_value
    value_tol = 1e-9 * peak_value
    f_edge = float(fringe(edge))
    if f_edge > half:
        raise HalfCrossingError(
            f"fringe stays above half maximum out to the {side} window edge",
            side=side)
    if f_edge == half:
        return edge
    inner, outer = peak_pos, edge
    for _ in range(400):
        mid = 0.5 * (inner + outer)
        if mid == inner or mid == outer:
            break
        v = float(fringe(mid))
        if v >= half:
            inner = mid
        else:
            outer = mid
        if abs(outer - inner) <= tol and abs(v - half) <= value_tol:
            return mid
    mid = 0.5 * (inner + outer)
    if abs(float(fringe(mid)) - half) <= value_tol:
        return mid
    raise NumericalError(
        f"half-maximum refinement stalled on the {side} side")


def _fwhm_sampled(fringe: SampledFringe) -> FwhmResult:
    # Linear interpolation between the bracketing samples on each side.
    vals = fringe.values
    pos, peak = find_principal_peak(fringe)
    i = int(np.argmax(vals))
    half = 0.5 * peak

    def interp(j_in, j_out):
        x_in, x_out = fringe.phase_at(j_in), fringe.phase_at(j_out)
        v_in, v_out = float(vals[j_in]), float(vals[j_out])
        if v_in == v_out:
            return x_out
        return x_in + (half - v_in) * (x_out - x_in) / (v_out - v_in)

    left = None
    for j in range(i, -1, -1):
        if float(vals[j]) < half:
            left = interp(j + 1, j)
            break
    if left is None:
        raise HalfCrossingError(
            "fringe stays above half maximum out to the left grid edge", side="left")
    right = None
    for j in range(i, len(vals)):
        if float(vals[j]) < half:
            right = interp(j - 1, j)
            break
    if right is None:
        raise HalfCrossingError(
            "fringe stays above half maximum out to the right grid edge", side="right")
    return FwhmResult(pos, peak, left, right)


def fwhm(fringe, window=None, *, tol: float = 1e-10,
         grid_points: int = _DEFAULT_GRID) -> FwhmResult:
    """Full width at half maximum of the principal peak.

    Evaluators need a window bracketing the peak and both crossings and are
    solved by bisection; the returned crossings satisfy
    |fringe(x) - peak/2| <= peak * 1e-9.  SampledFringe input is measured on
    its own grid with linear interpolation between bracketing samples.
    """
    if isinstance(fringe, SampledFringe):
        return _fwhm_sampled(fringe)
    lo, hi = _validate_window(window)
    pos, peak = find_principal_peak(fringe, (lo, hi), grid_points=grid_points)
    if peak <= 0.0:
        raise NumericalError("peak value must be positive to take a half maximum")
    left = _half_crossing(fringe, pos, peak, lo, tol, "left")
    right = _half_crossing(fringe, pos, peak, hi, tol, "right")
    return FwhmResult(pos, peak, left, right)


@dataclass(frozen=True)
class ResolutionCurve:
    """FWHM against a swept parameter, as ratios to a baseline case.

    references maps a label such as 'snl' or 'hl' to the corresponding
    limit curve rescaled to pass through 1 at the baseline value.
    """

    axis: str
    values: tuple[int, ...]
    widths: tuple[float, ...]
    ratios: tuple[float, ...]
    baseline: int
    baseline_width: float
    references: Mapping[str, tuple[float, ...]] = field(default_factory=dict)


_REFERENCES: dict[str, Callable[[int], float]] = {
    "snl": snl_reference,
    "hl": hl_reference,
}


def resolution_curve(fringe_factory: Callable[[int], Callable], sweep: Sequence[int],
                     *, baseline: int, window, axis: str = "order",
                     references: Sequence[str] = (), tol: float = 1e-10,
                     grid_points: int = _DEFAULT_GRID) -> ResolutionCurve:
    """Measure FWHM across a parameter sweep and form baseline ratios.

    fringe_factory(value) must return an evaluator for that sweep value.
    The baseline value is prepended when missing; values are reported in
    ascending order.  FWHM failures carry the sweep value that caused them.
    """
    values = sorted(set(int(v) for v in sweep) | {int(baseline)})
    lo, hi = _validate_window(window)
    widths = {}
    for v in values:
        try:
            widths[v] = fwhm(fringe_factory(v), (lo, hi), tol=tol,
                             grid_points=grid_points).width
        except NumericalError as exc:
            raise type(exc)(f"sweep value {v}: {exc}") from exc
    base_width = widths[int(baseline)]
    refs = {}
    for name in references:
        try:
            ref = _REFERENCES[name]
        except KeyError:
            raise ValueError(f"unknown reference '{name}'") from None
        scale = ref(int(baseline))
        refs[name] = tuple(ref(v) / scale for v in values)
    return ResolutionCurve(
        axis=axis,
        values=tuple(values),
        widths=tuple(widths[v] for v in values),
        ratios=tuple(widths[v] / base_width for v in values),
        baseline=int(baseline),
        baseline_width=base_width,
        references=refs,
    )


def order_sweep(base_fringe, orders: Sequence[int], *, window, baseline: int = 1,
                references: Sequence[str] = ("snl",), tol: float = 1e-10,
                grid_points: int = _DEFAULT_GRID) -> ResolutionCurve:
    """Sweep the intensity-product order K over a fixed base fringe."""
    return resolution_curve(
        lambda k: kth_power(base_fringe, k), orders, baseline=baseline,
        window=window, axis="order", references=references, tol=tol,
        grid_points=grid_points)


def slit_sweep(slit_counts: Sequence[int], *, order: int = 1, baseline: int = 2,
               window=(-0.5 * math.pi, 0.5 * math.pi),
               references: Sequence[str] = ("hl",), tol: float = 1e-10,
               grid_points: int = _DEFAULT_GRID) -> ResolutionCurve:
    """Sweep the slit count N of the pure grating factor at fixed order K."""
    from .fringe_models import grating_factor

    def factory(n):
        return kth_power(lambda a, n=n: grating_factor(a, n, normalized=True), order)

    return resolution_curve(factory, slit_counts, baseline=baseline,
                            window=window, axis="slit_count",
                            references=references, tol=tol, grid_points=grid_points)


@dataclass(frozen=True)
class RayleighResult:
    """Outcome of a two-peak resolvability test."""

    resolvable: bool
    dip: float
    saddle_phase: float | None
    peak_phases: tuple[float, float]
    peak_values: tuple[float, float]
    threshold: float


def rayleigh_resolvable(fringe, peaks, window, *, dip_threshold: float = RAYLEIGH_DIP,
                        tol: float = 1e-12) -> RayleighResult:
    """Decide whether two peaks of a composite fringe are resolved.

    peaks are approximate positions of the two candidate maxima.  Each is
    refined within its own half of the separation, then the saddle between
    the refined maxima is located; resolvable means
    saddle <= dip_threshold * min(peak values) within solver slack.  Peaks
    that merge into one summit are reported unresolvable with dip 1.0.
    """
    if not 0.0 < dip_threshold <= 1.0:
        raise ValueError("dip_threshold must lie in (0, 1]")
    lo, hi = _validate_window(window)
    p1, p2 = sorted(float(p) for p in peaks)
    if not (lo <= p1 and p2 <= hi):
        raise ValueError("candidate peaks must lie inside the window")
    if p1 == p2:
        v = float(fringe(p1))
        return RayleighResult(False, 1.0, None, (p1, p2), (v, v), dip_threshold)
    h = 0.5 * (p2 - p1)
    m1, v1 = golden_max(fringe, max(lo, p1 - h), p1 + h, tol=tol)
    m2, v2 = golden_max(fringe, p2 - h, min(hi, p2 + h), tol=tol)
    merge_gap = max(tol, _MERGE_EPS * max(1.0, abs(m1), abs(m2)))
    if m2 - m1 <= merge_gap or min(v1, v2) <= 0.0:
        return RayleighResult(False, 1.0, None, (m1, m2), (v1, v2), dip_threshold)
    sx, sv = golden_min(fringe, m1, m2, tol=tol)
    dip = min(1.0, sv / min(v1, v2))
    resolvable = dip <= dip_threshold * (1.0 + _DIP_SLACK)
    return RayleighResult(resolvable, dip, sx, (m1, m2), (v1, v2), dip_threshold)
