"""Seed journeys: one frame and one connectivity record per step along a seed segment."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from .connectivity import ConnectivityRecord, disconnectivity_rate, label_components
from .dynamics import as_complex, critical_point
from .raster import DEFAULT_VIEWPORT, EscapeField, Viewport, render


class InsufficientDataError(ValueError):
    pass


class SweepError(RuntimeError):
    def __init__(self, step: int, cause: BaseException):
        super().__init__(f"frame sink failed at step {step}: {cause}")
        self.step = step
        self.cause = cause


def _lerp(a: float, b: float, k: int, n: int) -> float:
    # exact rational interpolation between the shortest decimal reprs, rounded once,
    # so grid points like 0.6 or 1.05 come out as the same floats as the literals
    if k == 0:
        return a
    if k == n:
        return b
    fa, fb = Fraction(repr(a)), Fraction(repr(b))
    return float(fa + (fb - fa) * Fraction(k, n))


@dataclass(frozen=True)
class SeedPath:
    start: complex
    end: complex
    steps: int

    def __post_init__(self):
        object.__setattr__(self, "start", as_complex(self.start, "start"))
        object.__setattr__(self, "end", as_complex(self.end, "end"))
        if int(self.steps) < 2:
            raise ValueError("a seed path needs at least 2 steps")
        object.__setattr__(self, "steps", int(self.steps))

    def seed(self, k: int) -> complex:
        if not 0 <= k < self.steps:
            raise IndexError(k)
        n = self.steps - 1
        return complex(
            _lerp(self.start.real, self.end.real, k, n),
            _lerp(self.start.imag, self.end.imag, k, n),
        )

    def seeds(self) -> list[complex]:
        return [self.seed(k) for k in range(self.steps)]


@dataclass(frozen=True)
class SweepReport:
    path: SeedPath
    viewport: Viewport
    max_iter: int
    connectivity_kind: int
    records: tuple[ConnectivityRecord, ...]
    # False when per-step viewports differ, so metric curves are not comparable
    comparable: bool = True

    def __len__(self):
        return len(self.records)


class Journey(NamedTuple):
    path: SeedPath
    viewport: Viewport
    max_iter: int


def journey_presets() -> dict[str, Journey]:
    """The two seed journeys: down the imaginary axis and along the real axis.

    Both use 0.05 spacing, which puts every captioned seed value on the grid.
    """
    c = critical_point()
    return {
        "imaginary": Journey(SeedPath(c, complex(0.0, -1.6), 33), DEFAULT_VIEWPORT, 256),
        "real": Journey(SeedPath(c, complex(1.6, 0.0), 33), DEFAULT_VIEWPORT, 256),
    }


def frame_record(field_: EscapeField, connectivity_kind: int = 8, min_size: int = 0) -> ConnectivityRecord:
    labels = label_components(field_.mask, connectivity_kind, min_size=min_size)
    return disconnectivity_rate(labels, field_.seed)


def run_sweep(
    path: SeedPath,
    viewport: Viewport,
    max_iter: int,
    connectivity_kind: int = 8,
    frame_sink: Optional[Callable[[int, EscapeField], None]] = None,
    threads: int | None = None,
    viewports: Sequence[Viewport] | None = None,
) -> SweepReport:
    """Render, label and score every step of *path*.

    *frame_sink*, if given, receives ``(step, field)`` in step order. A sink
    exception aborts the sweep with :class:`SweepError`. *viewports* overrides
    the viewport per step.
    """
    if viewports is not None and len(viewports) != path.steps:
        raise ValueError("need one viewport per step")
    records = []
    for k, seed in enumerate(path.seeds()):
        vp = viewport if viewports is None else viewports[k]
        frame = render(seed, vp, max_iter, threads=threads)
        records.append(frame_record(frame, connectivity_kind))
        if frame_sink is not None:
            try:
                frame_sink(k, frame)
            except Exception as exc:
                raise SweepError(k, exc) from exc
    comparable = viewports is None or all(v == viewport for v in viewports)
    return SweepReport(path, viewport, int(max_iter), connectivity_kind, tuple(records), comparable)


def detect_split(report: SweepReport, count_threshold: int = 2, fraction_below: float = 0.95) -> Optional[int]:
    """First step where the main body breaks: several components and no dominant one.

    Requiring both keeps peripheral pixel dust from counting as a split.
    """
    if count_threshold < 2:
        raise ValueError("count_threshold must be >= 2")
    for k, rec in enumerate(report.records):
        if rec.component_count >= count_threshold and rec.largest_fraction < fraction_below:
            return k
    return None


class Trend(NamedTuple):
    spearman_rho: float
    first_value: float
    last_value: float


def spearman(x, y) -> float:
    """Spearman rank correlation with average ranks for ties; 0 if either side is constant."""
    rx = rankdata(x)
    ry = rankdata(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    denom = np.sqrt((dx * dx).sum() * (dy * dy).sum())
    if denom == 0:
        return 0.0
    return float(np.clip((dx * dy).sum() / denom, -1.0, 1.0))


def trend_statistic(report: SweepReport | Sequence[ConnectivityRecord], stop: int | None = None) -> Trend:
    """Rank correlation of disconnectivity against step index over non-empty records.

    *stop* limits the analysis to steps ``0..stop`` inclusive.
    """
    records = report.records if isinstance(report, SweepReport) else tuple(report)
    if stop is not None:
        records = records[: stop + 1]
    pts = [(k, r.disconnectivity) for k, r in enumerate(records) if not r.empty]
    if len(pts) < 3:
        raise InsufficientDataError(f"need at least 3 non-empty records, have {len(pts)}")
    steps, values = zip(*pts)
    return Trend(spearman(steps, values), values[0], values[-1])
