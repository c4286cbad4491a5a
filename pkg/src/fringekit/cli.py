"""Command-line front end.

Subcommands: figure, fwhm, sweep, spectrometer, equivalence.  Every model
knob has a flag, a config-file key and a default; explicit flags win over
the config file, which wins over defaults.  Exit codes: 0 success, 1 usage
error, 2 numerical failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields, replace
from pathlib import Path

import numpy as np

from .equivalence import equivalent_reflectivity
from .errors import NumericalError
from .fringe_models import (FpiSpec, ProfileSpec, SuperresolutionSpec,
                            fpi_transmission, grating_factor,
                            profile_value, superresolution_fringe)
from .intensity_product import kth_power
from .report import (FIGURE_IDS, FigureBundle, RunConfig, Series, curve_bundle,
                     default_window, emit, format_float, render_figure,
                     run_figure)
from .report import _curve, _grid  # shared grid helpers
from .resolution_metrics import fwhm, order_sweep, slit_sweep
from .spectrometer import SpectralScene, resolve_scene, scene_intensity

_MODELS = ("mzi", "nslit", "fpi", "superres", "gaussian", "linear")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse normally exits 2 on bad flags; route through _UsageError so
    # main() can map usage problems to exit code 1 instead.
    def error(self, message):
        raise _UsageError(message)


def _parse_window(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(part) for part in text.split(":"))
    except ValueError:
        raise _UsageError(f"window must look like 'lo:hi', got {text!r}") from None
    return lo, hi


def _parse_lines(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise _UsageError(f"lines must be comma-separated ratios, got {text!r}") from None


def _parse_values(text: str) -> tuple[int, ...]:
    out: list[int] = []
    try:
        for token in text.split(","):
            token = token.strip()
            if not token:
                continue
            if ":" in token:
                a, b = (int(p) for p in token.split(":"))
                out.extend(range(a, b + 1))
            else:
                out.append(int(token))
    except ValueError:
        raise _UsageError(
            f"values must be ints or a:b ranges, got {text!r}") from None
    if not out:
        raise _UsageError("no sweep values given")
    return tuple(out)


_CONFIG_PARSERS = {
    "n_slits": int,
    "order_k": int,
    "reflectivity": float,
    "slit_ratio": float,
    "wavelength": float,
    "scale": float,
    "window": _parse_window,
    "tol": float,
    "grid_points": int,
    "dip_threshold": float,
    "grating_order": int,
    "lines": _parse_lines,
    "sweep_values": _parse_values,
    "out_format": str,
    "out": str,
}


def read_config_file(path) -> dict:
    """Parse 'key = value' lines; '#' starts a comment, blanks are skipped."""
    values = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if key == "format":
            key = "out_format"
        if key not in _CONFIG_PARSERS:
            raise _UsageError(f"{path}:{lineno}: unknown key '{key}'")
        try:
            values[key] = _CONFIG_PARSERS[key](val.strip())
        except (_UsageError, ValueError) as exc:
            raise _UsageError(f"{path}:{lineno}: {exc}") from None
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, config file and explicit flags into a RunConfig."""
    merged = {}
    if getattr(args, "config", None):
        merged.update(read_config_file(args.config))
    for f in fields(RunConfig):
        cli_val = getattr(args, f.name, None)
        if cli_val is not None:
            merged[f.name] = cli_val
    try:
        return RunConfig(**merged)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--n-slits", dest="n_slits", type=int, default=None,
                        help="slit count N (default 10)")
    parser.add_argument("--order-k", dest="order_k", type=int, default=None,
                        help="intensity product order K (default 1)")
    parser.add_argument("--reflectivity", type=float, default=None,
                        help="etalon amplitude reflectivity (default 0.9)")
    parser.add_argument("--slit-ratio", dest="slit_ratio", type=float, default=None,
                        help="slit separation over width a/b (default 3)")
    parser.add_argument("--scale", type=float, default=None,
                        help="profile scale: sigma or half-width (default 1)")
    parser.add_argument("--window", type=_parse_window, default=None,
                        metavar="LO:HI", help="analysis window (default per model)")
    parser.add_argument("--tol", type=float, default=None,
                        help="half-maximum bisection tolerance (default 1e-10)")
    parser.add_argument("--grid-points", dest="grid_points", type=int, default=None,
                        help="coarse peak-scan density (default 10000)")
    parser.add_argument("--dip-threshold", dest="dip_threshold", type=float,
                        default=None,
                        help="Rayleigh saddle/peak decision level (default 8/pi^2)")
    parser.add_argument("--grating-order", dest="grating_order", type=int,
                        default=None, help="diffraction order p (default -1)")
    parser.add_argument("--lines", type=_parse_lines, default=None,
                        help="comma-separated line ratios f/f0")
    parser.add_argument("--format", dest="out_format",
                        choices=("csv", "json", "svg"), default=None,
                        help="output format (default csv)")
    parser.add_argument("--out", default=None, help="output path stem")
    parser.add_argument("--config", default=None, help="key = value config file")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fringekit",
                     description="Interferometer fringes, K-th order intensity "
                                 "products and resolution metrics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fig = sub.add_parser("figure", help="run a figure pipeline")
    p_fig.add_argument("figure_id", type=int, choices=FIGURE_IDS,
                       metavar="{2..7}")
    _add_common(p_fig)

    p_fwhm = sub.add_parser("fwhm", help="measure a principal-peak FWHM")
    p_fwhm.add_argument("--model", choices=_MODELS, default="mzi")
    _add_common(p_fwhm)

    p_sweep = sub.add_parser("sweep", help="FWHM ratios across K or N")
    p_sweep.add_argument("--model", choices=_MODELS, default="mzi")
    p_sweep.add_argument("--axis", choices=("order", "slits"), default="order")
    p_sweep.add_argument("--values", dest="sweep_values", type=_parse_values,
                         default=None, help="e.g. 1,2,4 or 1:100")
    _add_common(p_sweep)

    p_spec = sub.add_parser("spectrometer", help="resolve a multi-line scene")
    _add_common(p_spec)

    p_eq = sub.add_parser("equivalence",
                          help="match etalon reflectivity to a slit count")
    _add_common(p_eq)

    return parser


def _model_fringe(model: str, config: RunConfig):
    """Evaluator for one model at order K plus its default window."""
    k = config.order_k
    if model == "mzi":
        base = lambda phi: 0.5 * (1.0 + np.cos(phi))
        window = default_window("mzi")
    elif model == "nslit":
        n = config.n_slits
        base = lambda a: grating_factor(a, n, normalized=True)
        window = default_window("nslit")
    elif model == "fpi":
        spec = FpiSpec(config.reflectivity)
        base = lambda d: fpi_transmission(d, spec)
        window = default_window("fpi")
    elif model == "superres":
        spec = SuperresolutionSpec(config.n_slits)
        base = lambda ph: superresolution_fringe(ph, spec)
        window = default_window("superres", slit_count=config.n_slits)
    elif model in ("gaussian", "linear"):
        spec = ProfileSpec(model, config.scale)
        base = lambda x: profile_value(x, spec)
        window = default_window(model, scale=config.scale)
    else:
        raise _UsageError(f"unknown model '{model}'")
    fringe = kth_power(base, k) if k > 1 else base
    return fringe, (config.window or window)


def _emit_with_render(bundle: FigureBundle, config: RunConfig, stem: str):
    out = config.out or stem
    if config.out_format == "svg":
        path = emit(bundle, "svg", out)
        print(f"wrote {path}")
        return
    path = emit(bundle, config.out_format, out)
    print(f"wrote {path}")
    svg = render_figure(bundle, path.with_suffix(".svg"))
    print(f"wrote {svg}")


def _cmd_figure(args) -> int:
    config = build_config(args)
    bundle = run_figure(args.figure_id, config)
    for key, val in bundle.summary.items():
        print(f"{key} = {val}")
    _emit_with_render(bundle, config, f"figure{args.figure_id}")
    return 0


def _cmd_fwhm(args) -> int:
    config = build_config(args)
    fringe, window = _model_fringe(args.model, config)
    result = fwhm(fringe, window, tol=config.tol, grid_points=config.grid_points)
    print(f"model = {args.model}  K = {config.order_k}")
    print(f"peak_position = {format_float(result.peak_position)}")
    print(f"peak_value = {format_float(result.peak_value)}")
    print(f"left_half = {format_float(result.left_half)}")
    print(f"right_half = {format_float(result.right_half)}")
    print(f"width = {format_float(result.width)}")
    return 0


def _cmd_sweep(args) -> int:
    config = build_config(args)
    if args.axis == "order":
        values = config.sweep_values or (1, 2, 3, 4, 8, 50, 100)
        # order sweeps raise the base model fringe to K, so build it at K = 1
        base, window = _model_fringe(args.model, replace(config, order_k=1))
        curve = order_sweep(base, values, window=window,
                            references=("snl", "hl"), tol=config.tol,
                            grid_points=config.grid_points)
    else:
        values = config.sweep_values or tuple(range(2, 41))
        curve = slit_sweep(values, order=config.order_k,
                           references=("hl",), tol=config.tol,
                           grid_points=config.grid_points)
    print(f"axis = {curve.axis}  baseline = {curve.baseline} "
          f"(width {format_float(curve.baseline_width)})")
    for v, w, rat in zip(curve.values, curve.widths, curve.ratios):
        print(f"{v:6d}  width {format_float(w):>18}  ratio {format_float(rat)}")
    if config.out:
        _emit_with_render(curve_bundle(curve), config, config.out)
    return 0


def _cmd_spectrometer(args) -> int:
    config = build_config(args)
    scene = SpectralScene(lines=config.lines,
                          grating_order=config.grating_order,
                          slit_count=config.n_slits,
                          product_order=config.order_k)
    report = resolve_scene(scene, dip_threshold=config.dip_threshold)
    print(f"N = {scene.slit_count}  K = {scene.product_order}  "
          f"p = {scene.grating_order}")
    print(f"line_fwhm = {format_float(report.line_fwhm)}")
    for idx, (ratio, peak, det) in enumerate(
            zip(scene.lines, report.peak_phases, report.detunings)):
        print(f"line[{idx}] f/f0 = {ratio}  peak = {format_float(peak)}  "
              f"detuning = {format_float(det)}")
    for v in report.verdicts:
        state = "resolvable" if v.resolvable else "unresolvable"
        print(f"pair ({v.first},{v.second})  separation "
              f"{format_float(v.separation)}  dip {format_float(v.dip)}  {state}")
    if config.out:
        peaks = report.peak_phases
        margin = 8.0 * report.line_fwhm
        xs = _grid(min(peaks) - margin, max(peaks) + margin, 2001)
        x, y = _curve(lambda a: scene_intensity(a, scene), xs)
        series = Series("scene", x, y,
                        {"model": "scene", "slit_count": scene.slit_count,
                         "order": scene.product_order})
        summary = {"line_fwhm": report.line_fwhm}
        for v in report.verdicts:
            summary[f"pair_{v.first}_{v.second}_dip"] = v.dip
            summary[f"pair_{v.first}_{v.second}_resolvable"] = v.resolvable
        _emit_with_render(FigureBundle(0, (series,), summary), config, config.out)
    return 0


def _cmd_equivalence(args) -> int:
    config = build_config(args)
    result = equivalent_reflectivity(config.n_slits, rel_tol=1e-9)
    print(f"N = {result.slit_count}")
    print(f"reflectivity = {format_float(result.reflectivity)}")
    print(f"fpi_fwhm = {format_float(result.fpi_width)}")
    print(f"nslit_fwhm = {format_float(result.nslit_width)}")
    print(f"relative_mismatch = {format_float(result.relative_mismatch)}")
    print(f"(1-r)*N = {format_float((1 - result.reflectivity) * result.slit_count)}")
    return 0


_COMMANDS = {
    "figure": _cmd_figure,
    "fwhm": _cmd_fwhm,
    "sweep": _cmd_sweep,
    "spectrometer": _cmd_spectrometer,
    "equivalence": _cmd_equivalence,
}


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
