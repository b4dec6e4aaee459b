"""Mandelbrot sets of z**2 + q with the orbit seed moved off the critical point,
and raster measures of how their connectivity breaks."""
from .connectivity import (
    ComponentStats,
    ConnectivityRecord,
    LabelField,
    component_stats,
    disconnectivity_rate,
    label_components,
)
from .dynamics import OrbitResult, classify_orbit, critical_point, escape_radius, quad_step
from .raster import DEFAULT_VIEWPORT, EscapeField, Viewport, pixel_to_plane, render
from .sweep import (
    InsufficientDataError,
    Journey,
    SeedPath,
    SweepError,
    SweepReport,
    Trend,
    detect_split,
    journey_presets,
    run_sweep,
    trend_statistic,
)

__version__ = "0.1.0"
