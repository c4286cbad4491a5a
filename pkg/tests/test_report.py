"""Figure pipelines, delimited output and rendering."""

import json
import math

import pytest

from fringekit.report import (FIGURE_IDS, FigureBundle, RunConfig, Series,
                              bundle_from_dict, bundle_to_csv, bundle_to_dict,
                              curve_bundle, default_window, emit, format_float,
                              load_bundle, render_figure, run_figure)
from fringekit.resolution_metrics import order_sweep

PI = math.pi


def unit_mzi(phi):
    import numpy as np
    return 0.5 * (1.0 + np.cos(phi))


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.out_format == "csv"
        assert config.order_k == 1

    def test_bad_format(self):
        with pytest.raises(ValueError):
            RunConfig(out_format="xml")

    def test_bad_window(self):
        with pytest.raises(ValueError):
            RunConfig(window=(1.0, -1.0))


class TestSeries:
    def test_coercion(self):
        s = Series("a", (0, 1), (2, 3))
        assert s.x == (0.0, 1.0)
        assert isinstance(s.y[0], float)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            Series("a", (0.0,), (1.0, 2.0))

    def test_lookup(self):
        bundle = FigureBundle(2, (Series("a", (0.0,), (1.0,)),))
        assert bundle.series_by_label("a").y == (1.0,)
        with pytest.raises(KeyError):
            bundle.series_by_label("b")


class TestDefaultWindow:
    def test_windows(self):
        assert default_window("mzi") == (-PI, PI)
        assert default_window("nslit") == (-PI / 2, PI / 2)
        assert default_window("superres", slit_count=10) == (-PI / 10, PI / 10)
        assert default_window("gaussian", scale=2.0) == (-12.0, 12.0)
        assert default_window("linear", scale=1.5) == (-1.5, 1.5)

    def test_unknown(self):
        with pytest.raises(ValueError):
            default_window("prism")


class TestFigurePipelines:
    def test_id_validation(self):
        for bad in (0, 1, 8):
            with pytest.raises(ValueError):
                run_figure(bad)

    def test_interference_orders_bundle(self):
        bundle = run_figure(2)
        assert bundle.figure_id == 2
        assert len(bundle.series) == 9
        labels = [s.label for s in bundle.series]
        assert labels[:7] == ["K=1", "K=2", "K=3", "K=4", "K=8", "K=50", "K=100"]
        assert "FWHM ratio" in labels and "1/sqrt(K)" in labels
        ratio = bundle.series_by_label("FWHM ratio")
        for k, r in zip(ratio.x, ratio.y):
            expected = 4.0 * math.acos(2.0 ** (-1.0 / (2.0 * k))) / PI
            assert r == pytest.approx(expected, abs=1e-8)
        snl = bundle.series_by_label("1/sqrt(K)")
        for k, v in zip(snl.x, snl.y):
            assert v == pytest.approx(1.0 / math.sqrt(k), rel=1e-12)
        assert bundle.summary["fwhm_ratio_k100"] == pytest.approx(
            0.10594292563587814, abs=1e-8)

    def test_profile_orders_bundle(self):
        bundle = run_figure(3)
        gauss = bundle.series_by_label("gaussian")
        for k, r in zip(gauss.x, gauss.y):
            assert r == pytest.approx(1.0 / math.sqrt(k), abs=1e-9)
        lin = bundle.series_by_label("linear")
        for k, r in zip(lin.x, lin.y):
            assert r == pytest.approx(2.0 * (1.0 - 2.0 ** (-1.0 / k)), abs=1e-9)
        assert bundle.summary["gaussian_ratio_k100"] == pytest.approx(0.1, abs=1e-9)

    def test_slit_count_bundle(self):
        bundle = run_figure(4)
        assert bundle.summary["fwhm_n2"] == pytest.approx(PI / 2, rel=1e-9)
        assert bundle.summary["fwhm_n40"] == pytest.approx(
            0.06959664252451887, rel=1e-9)
        widths = bundle.series_by_label("FWHM")
        assert all(a > b for a, b in zip(widths.y, widths.y[1:]))
        cap = bundle.series_by_label("pi/N")
        for w, bound in zip(widths.y, cap.y):
            assert w <= bound * (1 + 1e-12)

    def test_spectrometer_bundle(self):
        bundle = run_figure(6)
        s = bundle.summary
        assert s["f_prime_peak_phase"] == pytest.approx(
            -3.144737390980774, rel=1e-12)
        assert s["f_prime_resolvable_k1"] is True
        assert s["f_prime_dip_k1"] == pytest.approx(0.8097588880801392, rel=1e-6)
        assert s["f_second_resolvable_k1"] is False
        assert s["f_second_dip_k1"] == 1.0
        assert s["f_second_resolvable_k100"] is True
        assert s["f_second_dip_k100"] < 1e-6
        assert s["line_fwhm_k1"] == pytest.approx(0.0027831159575349915, rel=1e-9)
        assert s["line_fwhm_k100"] == pytest.approx(
            0.00028830555687151373, rel=1e-6)

    def test_equivalence_bundle(self):
        bundle = run_figure(7)
        s = bundle.summary
        assert s["r_n1000"] == pytest.approx(0.9986094106860529, rel=1e-7)
        assert s["r_n10000"] == pytest.approx(0.9998608539441832, rel=1e-7)
        assert s["mismatch_n1000"] <= 1e-9
        assert s["mismatch_n10000"] <= 1e-9
        assert s["superres_fwhm_n1000"] == pytest.approx(PI / 1000, rel=1e-9)
        assert s["superres_fwhm_n10000"] == pytest.approx(PI / 10000, rel=1e-9)
        assert s["one_minus_r_times_n10000"] == pytest.approx(1.39, rel=0.05)


class TestFormatting:
    @pytest.mark.parametrize("value, text", [
        (0.0, "0"),
        (math.pi, "3.14159265359"),
        (1e-5, "1.00000000000e-05"),
        (-1e-5, "-1.00000000000e-05"),
        (0.1, "0.1"),
        (123456.0, "123456"),
        (float("nan"), "nan"),
    ])
    def test_format_float(self, value, text):
        assert format_float(value) == text

    def test_csv_layout(self):
        bundle = FigureBundle(
            2, (Series("a", (0.0, 1.0), (1.0, 0.5), {"order": 3}),),
            {"note": 1.5, "flag": True})
        text = bundle_to_csv(bundle)
        lines = text.splitlines()
        assert lines[0] == "# figure = 2"
        assert lines[1] == "# series a: order=3"
        assert lines[2] == "# note = 1.5"
        assert lines[3] == "# flag = true"
        assert lines[4] == "series_label,x,y"
        assert lines[5] == "a,0,1"
        assert lines[6] == "a,1,0.5"
        assert text.endswith("\n")

    def test_empty_bundle_csv(self):
        text = bundle_to_csv(FigureBundle(2, ()))
        assert text == "# figure = 2\nseries_label,x,y\n"

    def test_csv_deterministic(self):
        a = bundle_to_csv(run_figure(2))
        b = bundle_to_csv(run_figure(2))
        assert a == b


class TestEmit(object):
    @pytest.fixture
    def bundle(self):
        return FigureBundle(
            4, (Series("w", (2.0, 3.0), (1.0, 0.5), {"model": "nslit"}),),
            {"fwhm_n2": PI / 2, "resolvable": False})

    def test_csv_suffix_appended(self, tmp_path, bundle):
        out = emit(bundle, "csv", tmp_path / "result")
        assert out.name == "result.csv"
        assert out.read_text().startswith("# figure = 4\n")

    def test_json_round_trip(self, tmp_path, bundle):
        out = emit(bundle, "json", tmp_path / "result.json")
        loaded = load_bundle(out)
        assert loaded == bundle
        raw = json.loads(out.read_text())
        assert raw["summary"]["resolvable"] is False

    def test_json_round_trip_full_pipeline(self, tmp_path):
        bundle = run_figure(4)
        loaded = load_bundle(emit(bundle, "json", tmp_path / "fig4.json"))
        assert loaded == bundle

    def test_svg_output(self, tmp_path, bundle):
        out = emit(bundle, "svg", tmp_path / "plot.svg")
        head = out.read_text()[:300]
        assert "<?xml" in head and "svg" in head

    def test_svg_deterministic(self, tmp_path, bundle):
        a = render_figure(bundle, tmp_path / "a.svg").read_bytes()
        b = render_figure(bundle, tmp_path / "b.svg").read_bytes()
        assert a == b

    def test_bad_format(self, tmp_path, bundle):
        with pytest.raises(ValueError):
            emit(bundle, "xml", tmp_path / "x")

    def test_creates_parent_dirs(self, tmp_path, bundle):
        out = emit(bundle, "csv", tmp_path / "deep" / "nested" / "out.csv")
        assert out.exists()


class TestBundleDict:
    def test_minimal_dict(self):
        bundle = bundle_from_dict({"figure": 3})
        assert bundle.figure_id == 3
        assert bundle.series == ()
        assert bundle.summary == {}

    def test_round_trip_in_memory(self):
        bundle = FigureBundle(
            5, (Series("s", (1.0,), (2.0,), {"order": 2}),), {"k": 0.25})
        assert bundle_from_dict(bundle_to_dict(bundle)) == bundle


class TestCurveBundle:
    def test_wraps_resolution_curve(self):
        curve = order_sweep(unit_mzi, [1, 4], window=(-PI, PI))
        bundle = curve_bundle(curve)
        assert bundle.figure_id == 0
        labels = {s.label for s in bundle.series}
        assert labels == {"FWHM ratio", "FWHM", "snl"}
        assert bundle.summary["baseline"] == 1
        ratio = bundle.series_by_label("FWHM ratio")
        assert ratio.x == (1.0, 4.0)
        assert ratio.y[1] == pytest.approx(0.5224011056269231, abs=1e-8)


def test_all_figure_ids_run():
    for fid in FIGURE_IDS:
        bundle = run_figure(fid)
        assert bundle.figure_id == fid
        assert bundle.series
