"""Quadratic iterator f(z) = z**2 + q with an arbitrary seed.

Points are plain Python ``complex`` values. The escape test compares squared
moduli (``re*re + im*im > max(4, |q|**2)``) so that the scalar kernel here and
the compiled raster kernel agree bit for bit.
"""
from __future__ import annotations

import math
from typing import NamedTuple


class OrbitResult(NamedTuple):
    escaped: bool
    iterations: int
    final_modulus: float


def as_complex(value, name: str = "value") -> complex:
    """Coerce *value* to ``complex`` and reject NaN or infinite components."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


def quad_step(z: complex, q: complex) -> complex:
    re, im = z.real, z.imag
    return complex(re * re - im * im + q.real, 2.0 * re * im + q.imag)


def critical_point() -> complex:
    return 0j


def escape_radius(q: complex) -> float:
    """Bailout radius max(2, |q|).

    Beyond it ``|f(z)| >= |z| (|z| - 1) > |z|`` so the orbit diverges.
    """
    q = as_complex(q, "q")
    return max(2.0, math.hypot(q.real, q.imag))


def escape_radius_sq(q: complex) -> float:
    return max(4.0, q.real * q.real + q.imag * q.imag)


def classify_orbit(z0: complex, q: complex, max_iter: int) -> OrbitResult:
    """Iterate from *z0* until the orbit leaves the bailout disk or *max_iter* steps.

    The radius is tested before every application of f, so a seed that starts
    outside reports ``iterations == 0``.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    z0 = as_complex(z0, "z0")
    q = as_complex(q, "q")
    qre, qim = q.real, q.imag
    r2 = escape_radius_sq(q)
    re, im = z0.real, z0.imag
    n = 0
    while n < max_iter:
        if re * re + im * im > r2:
            return OrbitResult(True, n, math.hypot(re, im))
        re, im = re * re - im * im + qre, 2.0 * re * im + qim
        n += 1
    if re * re + im * im > r2:
        # escaped on the final application; still counts as a verdict at max_iter
        return OrbitResult(True, n, math.hypot(re, im))
    return OrbitResult(False, n, math.hypot(re, im))
