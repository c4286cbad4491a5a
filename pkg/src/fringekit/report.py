"""Figure pipelines and artifact emission.

Each pipeline assembles a FigureBundle of labelled (x, y) series plus
summary scalars.  emit() serialises a bundle to CSV (one flat table with a
parameter header), JSON (exact round-trip) or SVG (a static matplotlib
rendering of the series); the CLI additionally drops the rendering next to
every delimited file so a run leaves both the numbers and the picture.

CSV floats use 12 significant digits with scientific notation below 1e-4,
so identical runs emit identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from ._search import sample_values
from .equivalence import equivalent_reflectivity
from .fringe_models import (FpiSpec, MziSpec, ProfileSpec, SuperresolutionSpec,
                            fpi_transmission, grating_factor, mzi_intensity,
                            profile_value, superresolution_fringe)
from .intensity_product import kth_power
from .resolution_metrics import (RAYLEIGH_DIP, fwhm, order_sweep, slit_sweep,
                                 snl_reference)
from .spectrometer import SpectralScene, resolve_scene, scene_intensity

FIGURE_IDS = (2, 3, 4, 5, 6, 7)

_PI = math.pi


@dataclass
class RunConfig:
    """Knobs shared by the CLI subcommands, all with working defaults.

    Values found in a config file override these defaults and explicit
    command-line flags override both.
    """

    n_slits: int = 10
    order_k: int = 1
    reflectivity: float = 0.9
    slit_ratio: float = 3.0
    wavelength: float = 1.0
    scale: float = 1.0
    window: tuple[float, float] | None = None
    tol: float = 1e-10
    grid_points: int = 10_000
    dip_threshold: float = RAYLEIGH_DIP
    grating_order: int = -1
    lines: tuple[float, ...] = (1.0, 0.999, 0.9995)
    sweep_values: tuple[int, ...] | None = None
    out_format: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if self.out_format not in ("csv", "json", "svg"):
            raise ValueError("format must be csv, json or svg")
        if self.window is not None:
            lo, hi = self.window
            if not lo < hi:
                raise ValueError("window must satisfy lo < hi")


@dataclass(frozen=True)
class Series:
    """One labelled curve; params records the model behind it."""

    label: str
    x: tuple[float, ...]
    y: tuple[float, ...]
    params: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have equal length")
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "y", tuple(float(v) for v in self.y))
        object.__setattr__(self, "params", dict(self.params))


@dataclass(frozen=True)
class FigureBundle:
    """Everything one figure pipeline produced."""

    figure_id: int
    series: tuple[Series, ...]
    summary: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        object.__setattr__(self, "summary", dict(self.summary))

    def series_by_label(self, label: str) -> Series:
        for s in self.series:
            if s.label == label:
                return s
        raise KeyError(f"no series labelled {label!r}")


def _grid(lo: float, hi: float, count: int) -> np.ndarray:
    return np.linspace(lo, hi, count)


def _curve(fringe, xs: np.ndarray) -> tuple[tuple[float, ...], tuple[float, ...]]:
    return tuple(float(v) for v in xs), tuple(float(v) for v in sample_values(fringe, xs))


def _mzi_unit(phi):
    return mzi_intensity(phi, MziSpec(1.0, "A"))


def default_window(model: str, *, slit_count: int = 2, scale: float = 1.0):
    """One full period (or full support) centred on the principal peak."""
    if model == "mzi":
        return (-_PI, _PI)
    if model in ("nslit", "fpi"):
        return (-0.5 * _PI, 0.5 * _PI)
    if model == "superres":
        return (-_PI / slit_count, _PI / slit_count)
    if model == "gaussian":
        return (-6.0 * scale, 6.0 * scale)
    if model == "linear":
        return (-scale, scale)
    raise ValueError(f"unknown model '{model}'")


def _fig2(config: RunConfig) -> FigureBundle:
    orders = (1, 2, 3, 4, 8, 50, 100)
    xs = _grid(-_PI, _PI, 801)
    series = []
    for k in orders:
        x, y = _curve(kth_power(_mzi_unit, k), xs)
        series.append(Series(f"K={k}", x, y,
                             {"model": "mzi", "order": k, "panel": "fringes"}))
    curve = order_sweep(_mzi_unit, orders, window=(-_PI, _PI), baseline=1,
                        references=("snl",), tol=config.tol,
                        grid_points=config.grid_points)
    kx = tuple(float(v) for v in curve.values)
    series.append(Series("FWHM ratio", kx, curve.ratios,
                         {"model": "mzi", "panel": "ratio"}))
    series.append(Series("1/sqrt(K)", kx, curve.references["snl"],
                         {"reference": "snl", "panel": "ratio"}))
    summary = {
        "baseline_fwhm": curve.baseline_width,
        "fwhm_ratio_k100": curve.ratios[-1],
        "snl_k100": snl_reference(100),
    }
    return FigureBundle(2, tuple(series), summary)


def _fig3(config: RunConfig) -> FigureBundle:
    shown = (1, 2, 4, 10, 25, 100)
    xs = _grid(-4.0, 4.0, 801)
    series = []
    for kind in ("gaussian", "linear"):
        spec = ProfileSpec(kind, 1.0)
        base = lambda x, s=spec: profile_value(x, s)
        for k in shown:
            x, y = _curve(kth_power(base, k), xs)
            series.append(Series(f"{kind} K={k}", x, y,
                                 {"model": kind, "scale": 1.0, "order": k,
                                  "panel": kind}))
    orders = tuple(range(1, 101))
    curves = {}
    for kind in ("gaussian", "linear"):
        spec = ProfileSpec(kind, 1.0)
        base = lambda x, s=spec: profile_value(x, s)
        curves[kind] = order_sweep(base, orders,
                                   window=default_window(kind, scale=1.0),
                                   baseline=1, references=("snl", "hl"),
                                   tol=config.tol, grid_points=config.grid_points)
    kx = tuple(float(v) for v in curves["gaussian"].values)
    series.append(Series("gaussian", kx, curves["gaussian"].ratios,
                         {"model": "gaussian", "panel": "ratio"}))
    series.append(Series("linear", kx, curves["linear"].ratios,
                         {"model": "linear", "panel": "ratio"}))
    series.append(Series("HL", kx, curves["gaussian"].references["hl"],
                         {"reference": "hl", "panel": "ratio"}))
    summary = {
        "gaussian_ratio_k100": curves["gaussian"].ratios[-1],
        "linear_ratio_k100": curves["linear"].ratios[-1],
        "hl_k100": 0.01,
    }
    return FigureBundle(3, tuple(series), summary)


def _fig4(config: RunConfig) -> FigureBundle:
    ratio = config.slit_ratio
    xs = _grid(-_PI, _PI, 1601)
    series = []
    for n in (2, 10, 40):
        def fringe(alpha, n=n):
            beta = np.asarray(alpha, dtype=float) / ratio
            env = np.sinc(beta / _PI) ** 2
            return env * grating_factor(alpha, n, normalized=True)
        x, y = _curve(fringe, xs)
        series.append(Series(f"N={n}", x, y,
                             {"model": "nslit", "slit_count": n,
                              "separation_over_width": ratio, "panel": "fringes"}))
    counts = tuple(range(2, 41))
    curve = slit_sweep(counts, order=1, baseline=2, tol=config.tol,
                       grid_points=config.grid_points)
    nx = tuple(float(v) for v in curve.values)
    series.append(Series("FWHM", nx, curve.widths,
                         {"model": "nslit", "order": 1, "panel": "widths"}))
    series.append(Series("pi/N", nx, tuple(_PI / n for n in curve.values),
                         {"reference": "pi/N", "panel": "widths"}))
    summary = {
        "fwhm_n2": curve.widths[0],
        "fwhm_n40": curve.widths[-1],
        "n_fwhm_n40": curve.values[-1] * curve.widths[-1],
    }
    return FigureBundle(4, tuple(series), summary)


def _fig5(config: RunConfig) -> FigureBundle:
    order = 40
    series = []
    xs = _grid(-0.5 * _PI, 0.5 * _PI, 1601)
    for n in (2, 20, 200):
        base = lambda a, n=n: grating_factor(a, n, normalized=True)
        x, y = _curve(kth_power(base, order), xs)
        series.append(Series(f"N={n} K={order}", x, y,
                             {"model": "nslit", "slit_count": n, "order": order,
                              "panel": "fringes"}))
    counts = tuple(range(2, 201))
    width_curve = slit_sweep(counts, order=order, baseline=2, tol=config.tol,
                             grid_points=config.grid_points)
    nx = tuple(float(v) for v in width_curve.values)
    series.append(Series(f"FWHM K={order}", nx, width_curve.widths,
                         {"model": "nslit", "order": order, "panel": "widths"}))
    base100 = lambda a: grating_factor(a, 100, normalized=True)
    ratio_curve = order_sweep(base100, tuple(range(1, 41)),
                              window=(-0.5 * _PI, 0.5 * _PI), baseline=1,
                              references=("snl",), tol=config.tol,
                              grid_points=config.grid_points)
    kx = tuple(float(v) for v in ratio_curve.values)
    series.append(Series("FWHM ratio N=100", kx, ratio_curve.ratios,
                         {"model": "nslit", "slit_count": 100, "panel": "ratio"}))
    series.append(Series("1/sqrt(K)", kx, ratio_curve.references["snl"],
                         {"reference": "snl", "panel": "ratio"}))
    summary = {
        "ratio_n100_k40": ratio_curve.ratios[-1],
        "snl_k40": snl_reference(40),
        "width_n100_k1": ratio_curve.baseline_width,
    }
    return FigureBundle(5, tuple(series), summary)


def _fig6(config: RunConfig) -> FigureBundle:
    slit_count = 1000
    p = -1
    lines = (1.0, 0.999, 0.9995)

    def scene(line_subset, k):
        return SpectralScene(lines=line_subset, reference_frequency=1.0,
                             grating_order=p, slit_count=slit_count,
                             product_order=k)

    peaks = [p * _PI / r for r in lines]
    margin = 0.008
    xs = _grid(min(peaks) - margin, max(peaks) + margin, 2001)
    plotted = (
        ("f0 & f' K=1", (1.0, 0.999), 1),
        ("f0 & f'' K=1", (1.0, 0.9995), 1),
        ("f0 & f'' K=100", (1.0, 0.9995), 100),
        ("all lines K=100", lines, 100),
    )
    series = []
    for label, subset, k in plotted:
        sc = scene(subset, k)
        x, y = _curve(lambda a, sc=sc: scene_intensity(a, sc), xs)
        series.append(Series(label, x, y,
                             {"model": "scene", "slit_count": slit_count,
                              "order": k, "lines": "/".join(str(r) for r in subset),
                              "panel": "fringes"}))
    rep1 = resolve_scene(scene(lines, 1), dip_threshold=config.dip_threshold)
    rep100 = resolve_scene(scene(lines, 100), dip_threshold=config.dip_threshold)
    v_prime_1 = rep1.verdict_for(0, 1)
    v_second_1 = rep1.verdict_for(0, 2)
    v_second_100 = rep100.verdict_for(0, 2)
    summary = {
        "f_prime_peak_phase": rep1.peak_phases[1],
        "f_prime_detuning": rep1.detunings[1],
        "f_second_detuning": rep1.detunings[2],
        "f_prime_resolvable_k1": v_prime_1.resolvable,
        "f_prime_dip_k1": v_prime_1.dip,
        "f_second_resolvable_k1": v_second_1.resolvable,
        "f_second_dip_k1": v_second_1.dip,
        "f_second_resolvable_k100": v_second_100.resolvable,
        "f_second_dip_k100": v_second_100.dip,
        "line_fwhm_k1": rep1.line_fwhm,
        "line_fwhm_k100": rep100.line_fwhm,
    }
    return FigureBundle(6, tuple(series), summary)


def _fig7(config: RunConfig) -> FigureBundle:
    series = []
    summary = {}
    for n in (1000, 10_000):
        eq = equivalent_reflectivity(n)
        w = eq.nslit_width
        xs = _grid(-3.0 * w, 3.0 * w, 801)
        spec = FpiSpec(eq.reflectivity)
        pairs = (
            (f"FPI (N={n})", lambda d: fpi_transmission(d, spec),
             {"model": "fpi", "reflectivity": eq.reflectivity}),
            (f"N-slit (N={n})", lambda a: grating_factor(a, n, normalized=True),
             {"model": "nslit", "slit_count": n}),
            (f"superresolution (N={n})",
             lambda ph: superresolution_fringe(ph, SuperresolutionSpec(n)),
             {"model": "superres", "slit_count": n}),
        )
        for label, fn, params in pairs:
            x, y = _curve(fn, xs)
            series.append(Series(label, x, y, {**params, "panel": f"N={n}"}))
        superres_width = fwhm(
            lambda ph: superresolution_fringe(ph, SuperresolutionSpec(n)),
            default_window("superres", slit_count=n), tol=config.tol).width
        summary[f"r_n{n}"] = eq.reflectivity
        summary[f"fpi_fwhm_n{n}"] = eq.fpi_width
        summary[f"nslit_fwhm_n{n}"] = eq.nslit_width
        summary[f"mismatch_n{n}"] = eq.relative_mismatch
        summary[f"one_minus_r_times_n{n}"] = (1.0 - eq.reflectivity) * n
        summary[f"superres_fwhm_n{n}"] = superres_width
    return FigureBundle(7, tuple(series), summary)


_PIPELINES = {2: _fig2, 3: _fig3, 4: _fig4, 5: _fig5, 6: _fig6, 7: _fig7}


def run_figure(figure_id: int, config: RunConfig | None = None) -> FigureBundle:
    """Build the bundle for one numbered figure pipeline.

    Model parameters are pinned per figure; the config contributes solver
    tolerances, grid density and the Rayleigh dip threshold.
    """
    if figure_id not in _PIPELINES:
        raise ValueError(f"figure_id must be one of {sorted(_PIPELINES)}")
    return _PIPELINES[figure_id](config or RunConfig())


def format_float(v: float) -> str:
    """12 significant digits; scientific notation below 1e-4."""
    if v != v:
        return "nan"
    if v == 0.0:
        return "0"
    if abs(v) < 1e-4:
        return f"{v:.11e}"
    return f"{v:.12g}"


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def bundle_to_csv(bundle: FigureBundle) -> str:
    """Flat series_label,x,y table preceded by a parameter comment block."""
    buf = io.StringIO()
    buf.write(f"# figure = {bundle.figure_id}\n")
    for s in bundle.series:
        desc = ", ".join(f"{k}={_format_value(v)}" for k, v in s.params.items())
        tail = f": {desc}" if desc else ""
        buf.write(f"# series {s.label}{tail}\n")
    for k, v in bundle.summary.items():
        buf.write(f"# {k} = {_format_value(v)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["series_label", "x", "y"])
    for s in bundle.series:
        for x, y in zip(s.x, s.y):
            writer.writerow([s.label, format_float(x), format_float(y)])
    return buf.getvalue()


def bundle_to_dict(bundle: FigureBundle) -> dict:
    return {
        "figure": bundle.figure_id,
        "series": [
            {"label": s.label, "params": dict(s.params),
             "x": list(s.x), "y": list(s.y)}
            for s in bundle.series
        ],
        "summary": dict(bundle.summary),
    }


def bundle_from_dict(data: Mapping) -> FigureBundle:
    series = tuple(
        Series(item["label"], tuple(item["x"]), tuple(item["y"]),
               dict(item.get("params", {})))
        for item in data.get("series", ()))
    return FigureBundle(int(data["figure"]), series, dict(data.get("summary", {})))


def load_bundle(path) -> FigureBundle:
    """Read back a bundle emitted as JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        return bundle_from_dict(json.load(fh))


def render_figure(bundle: FigureBundle, path) -> Path:
    """Draw every series as labelled polylines with matplotlib and save.

    Series sharing a 'panel' param land on the same axes.  SVG output is
    kept reproducible by pinning the hash salt and dropping the date.
    """
    import matplotlib
    from matplotlib.figure import Figure

    path = Path(path)
    panels: dict[str, list[Series]] = {}
    for s in bundle.series:
        panels.setdefault(str(s.params.get("panel", "main")), []).append(s)
    names = list(panels) or ["main"]
    fig = Figure(figsize=(5.0 * len(names), 4.0))
    axes = fig.subplots(1, len(names))
    if len(names) == 1:
        axes = [axes]
    for ax, name in zip(axes, names):
        for s in panels.get(name, ()):
            ax.plot(s.x, s.y, label=s.label, linewidth=1.0)
        ax.set_title(name)
        ax.set_xlabel("phase")
        ax.set_ylabel("intensity")
        if 0 < len(panels.get(name, ())) <= 10:
            ax.legend(fontsize="small")
    fig.suptitle(f"figure {bundle.figure_id}")
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix.lower() == ".svg":
        with matplotlib.rc_context({"svg.hashsalt": "fringekit"}):
            fig.savefig(path, metadata={"Date": None})
    else:
        fig.savefig(path)
    return path


def emit(bundle: FigureBundle, out_format: str, path) -> Path:
    """Write a bundle as csv, json or svg and return the written path."""
    path = Path(path)
    if out_format not in ("csv", "json", "svg"):
        raise ValueError("format must be csv, json or svg")
    if path.suffix.lower() != f".{out_format}":
        path = path.with_name(path.name + f".{out_format}")
    if out_format == "svg":
        return render_figure(bundle, path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if out_format == "csv":
        text = bundle_to_csv(bundle)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            json.dump(bundle_to_dict(bundle), fh, indent=1)
            fh.write("\n")
    return path


def curve_bundle(curve, *, figure_id: int = 0, label: str = "FWHM ratio") -> FigureBundle:
    """Wrap a ResolutionCurve so it can be emitted like a figure."""
    xs = tuple(float(v) for v in curve.values)
    series = [Series(label, xs, curve.ratios,
                     {"axis": curve.axis, "baseline": curve.baseline, "panel": "ratio"})]
    series.append(Series("FWHM", xs, curve.widths,
                         {"axis": curve.axis, "panel": "widths"}))
    for name, vals in curve.references.items():
        series.append(Series(name, xs, vals, {"reference": name, "panel": "ratio"}))
    summary = {"baseline": curve.baseline, "baseline_fwhm": curve.baseline_width}
    return FigureBundle(figure_id, tuple(series), summary)
