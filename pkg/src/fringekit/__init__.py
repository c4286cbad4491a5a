"""fringekit: interferometer fringes, intensity products and resolution.

The package simulates closed-form interference fringes (two-port, N-slit,
etalon, phase-compressed reference), raises them to K-th order intensity
products and quantifies the resulting peak sharpening against the
1/sqrt(K) and 1/N sensitivity references.
"""

from .equivalence import (EquivalenceResult, equivalent_reflectivity, fpi_fwhm,
                          grating_fwhm)
from .errors import (BracketError, FlatFringeError, HalfCrossingError,
                     NormalizationError, NumericalError)
from .fringe_models import (FpiSpec, MziSpec, NSlitSpec, ProfileSpec,
                            SplitPortSpec, SuperresolutionSpec, fpi_transmission,
                            grating_factor, grating_phases, mzi_intensity,
                            nslit_intensity, nslit_intensity_at_angle,
                            profile_value, split_port_intensity,
                            superresolution_fringe)
from .intensity_product import (KPowerFringe, kth_order_correlation, kth_power,
                                stable_power)
from .report import (FigureBundle, RunConfig, Series, bundle_to_csv, emit,
                     format_float, load_bundle, render_figure, run_figure)
from .resolution_metrics import (RAYLEIGH_DIP, FwhmResult, RayleighResult,
                                 ResolutionCurve, SampledFringe,
                                 find_principal_peak, fwhm, hl_reference,
                                 order_sweep, rayleigh_resolvable,
                                 resolution_curve, sample_fringe, slit_sweep,
                                 snl_reference)
from .spectrometer import (PairVerdict, ResolvingReport, SpectralScene,
                           frequency_from_detuning, line_detuning,
                           line_peak_phase, resolve_scene, scene_intensity,
                           single_line_fwhm)

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "EquivalenceResult",
    "FigureBundle",
    "FlatFringeError",
    "FpiSpec",
    "FwhmResult",
    "HalfCrossingError",
    "KPowerFringe",
    "MziSpec",
    "NSlitSpec",
    "NormalizationError",
    "NumericalError",
    "PairVerdict",
    "ProfileSpec",
    "RAYLEIGH_DIP",
    "RayleighResult",
    "ResolutionCurve",
    "ResolvingReport",
    "RunConfig",
    "SampledFringe",
    "Series",
    "SpectralScene",
    "SplitPortSpec",
    "SuperresolutionSpec",
    "bundle_to_csv",
    "emit",
    "equivalent_reflectivity",
    "find_principal_peak",
    "format_float",
    "fpi_fwhm",
    "fpi_transmission",
    "frequency_from_detuning",
    "fwhm",
    "grating_factor",
    "grating_fwhm",
    "grating_phases",
    "hl_reference",
    "kth_order_correlation",
    "kth_power",
    "line_detuning",
    "line_peak_phase",
    "load_bundle",
    "mzi_intensity",
    "nslit_intensity",
    "nslit_intensity_at_angle",
    "order_sweep",
    "profile_value",
    "rayleigh_resolvable",
    "render_figure",
    "resolution_curve",
    "resolve_scene",
    "run_figure",
    "sample_fringe",
    "scene_intensity",
    "single_line_fwhm",
    "slit_sweep",
    "snl_reference",
    "split_port_intensity",
    "stable_power",
    "superresolution_fringe",
]
