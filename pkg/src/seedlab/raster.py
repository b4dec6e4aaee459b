"""Rasterize the seed-perturbed Mandelbrot set over a rectangle of the q-plane."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np

from .dynamics import as_complex

THREADS_ENV = "SEEDLAB_THREADS"


@dataclass(frozen=True)
class Viewport:
    """Pixel grid laid over a q-plane rectangle. Row 0 is the top (largest imaginary part)."""

    center: complex
    width: float
    height: float
    cols: int
    rows: int

    def __post_init__(self):
        object.__setattr__(self, "center", as_complex(self.center, "center"))
        if not (self.width > 0 and self.height > 0):
            raise ValueError("viewport width and height must be positive")
        if int(self.cols) < 1 or int(self.rows) < 1:
            raise ValueError("viewport must have at least one row and one column")
        object.__setattr__(self, "cols", int(self.cols))
        object.__setattr__(self, "rows", int(self.rows))

    @property
    def pixel_width(self) -> float:
        return self.width / self.cols

    @property
    def pixel_height(self) -> float:
        return self.height / self.rows

    @property
    def pixel_area(self) -> float:
        return self.pixel_width * self.pixel_height

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column_coords(self) -> np.ndarray:
        # (2c + 1 - cols) * half-pixel keeps mirror-image columns exact negatives
        k = 2 * np.arange(self.cols, dtype=np.float64) + (1 - self.cols)
        return self.center.real + k * (self.width / (2 * self.cols))

    def row_coords(self) -> np.ndarray:
        k = (self.rows - 1) - 2 * np.arange(self.rows, dtype=np.float64)
        return self.center.imag + k * (self.height / (2 * self.rows))


DEFAULT_VIEWPORT = Viewport(center=-0.25 + 0j, width=3.2, height=3.2, cols=512, rows=512)


def pixel_to_plane(viewport: Viewport, col: int, row: int) -> complex:
    """q at the center of pixel (col, row)."""
    if not (0 <= col < viewport.cols and 0 <= row < viewport.rows):
        raise IndexError(f"pixel ({col}, {row}) outside {viewport.cols}x{viewport.rows} grid")
    kre = 2 * col + 1 - viewport.cols
    kim = viewport.rows - 1 - 2 * row
    return complex(
        viewport.center.real + float(kre) * (viewport.width / (2 * viewport.cols)),
        viewport.center.imag + float(kim) * (viewport.height / (2 * viewport.rows)),
    )


@dataclass(frozen=True, eq=False)
class EscapeField:
    viewport: Viewport
    seed: complex
    max_iter: int
    iterations: np.ndarray
    mask: np.ndarray
    # finite max_iter over-approximates the bounded set
    metadata: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, EscapeField):
            return NotImplemented
        return (
            self.viewport == other.viewport
            and self.seed == other.seed
            and self.max_iter == other.max_iter
            and np.array_equal(self.iterations, other.iterations)
            and np.array_equal(self.mask, other.mask)
        )

    @property
    def member_pixels(self) -> int:
        return int(np.count_nonzero(self.mask))


@numba.njit(nogil=True, cache=True)
def _render_band(seed_re, seed_im, re_axis, im_axis, row0, row1, max_iter, iters, mask):
    cols = re_axis.shape[0]
    for r in range(row0, row1):
        qim = im_axis[r]
        for c in range(cols):
            qre = re_axis[c]
            r2 = max(4.0, qre * qre + qim * qim)
            x = seed_re
            y = seed_im
            n = 0
            escaped = False
            while True:
                if x * x + y * y > r2:
                    escaped = True
                    break
                if n == max_iter:
                    break
                x, y = x * x - y * y + qre, 2.0 * x * y + qim
                n += 1
            iters[r, c] = n
            mask[r, c] = not escaped


def resolve_threads(threads: int | None = None) -> int:
    """Thread count: explicit argument, then ``SEEDLAB_THREADS``, then CPU count."""
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        if env:
            threads = int(env)
    if threads is None:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    return threads


def _bands(rows: int, nbands: int) -> list[tuple[int, int]]:
    edges = np.linspace(0, rows, nbands + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def render(seed: complex, viewport: Viewport, max_iter: int, threads: int | None = None) -> EscapeField:
    """Classify every pixel of *viewport* as a q-parameter with orbit seed *seed*.

    Work is split into horizontal row bands across *threads* workers; each
    pixel is computed independently so the output does not depend on the split.
    """
    seed = as_complex(seed, "seed")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    nthreads = resolve_threads(threads)
    try:
        iters = np.empty(viewport.shape, dtype=np.int32 if max_iter < 2**31 else np.int64)
        mask = np.empty(viewport.shape, dtype=np.bool_)
    except (MemoryError, ValueError) as exc:
        raise MemoryError(
            f"cannot allocate a {viewport.cols}x{viewport.rows} escape field"
        ) from exc
    re_axis = viewport.column_coords()
    im_axis = viewport.row_coords()
    # several bands per worker evens out the cost of member-heavy rows
    bands = _bands(viewport.rows, min(viewport.rows, 4 * nthreads))

    def work(band):
        _render_band(seed.real, seed.imag, re_axis, im_axis, band[0], band[1], max_iter, iters, mask)

    if nthreads == 1:
        for band in bands:
            work(band)
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            list(pool.map(work, bands))
    iters.setflags(write=False)
    mask.setflags(write=False)
    return EscapeField(
        viewport=viewport,
        seed=seed,
        max_iter=int(max_iter),
        iterations=iters,
        mask=mask,
        metadata={"membership": "not escaped within max_iter"},
    )
