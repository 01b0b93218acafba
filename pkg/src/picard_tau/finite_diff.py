"""Five-point central differences, pointwise (with Richardson) and on grids.

Residual evaluators take jets (f, f', f'') from the caller; these helpers
build them when no closed-form derivative is available.
"""

from __future__ import annotations

import numpy as np

from .errors import StencilTooCoarse

# Second differences amplify roundoff by ~1/h^2, so they use a wider step
# and one more Richardson level (steps h, 2h, 4h; error O(h^8)).
STEP_FIRST = 3e-5
STEP_SECOND = 5e-3


def _d1(f, t, h):
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h)


def _d2(f, t, h, f0):
    return (-f(t - 2 * h) + 16 * f(t - h) - 30 * f0 + 16 * f(t + h) - f(t + 2 * h)) / (12 * h * h)


def derivative(f, t: float, order: int = 1, step: float | None = None, f0=None):
    """Derivative of a scalar function of t from Richardson-extrapolated 5-point stencils."""
    scale = max(1.0, abs(t))
    if order == 1:
        h = (STEP_FIRST if step is None else step) * scale
        return (16 * _d1(f, t, h) - _d1(f, t, 2 * h)) / 15
    if order == 2:
        h = (STEP_SECOND if step is None else step) * scale
        f0 = f(t) if f0 is None else f0
        d_h, d_2h, d_4h = (_d2(f, t, k * h, f0) for k in (1, 2, 4))
        coarse, fine = (16 * d_2h - d_4h) / 15, (16 * d_h - d_2h) / 15
        return (64 * fine - coarse) / 63
    raise ValueError(f"order must be 1 or 2, got {order!r}")


def jet(f, t: float):
    """(f(t), f'(t), f''(t)) by finite differences."""
    f0 = f(t)
    return f0, derivative(f, t, 1), derivative(f, t, 2, f0=f0)


def grid_derivative(values, spacing: float, order: int = 1, stride: int = 1) -> np.ndarray:
    """5-point central derivative on a uniform grid.

    The stencil spans ``stride`` grid cells per tap, so the result covers
    ``values[2*stride : -2*stride]``.
    """
    y = np.asarray(values)
    s = int(stride)
    n = y.shape[0]
    if s < 1:
        raise ValueError(f"stride must be positive, got {stride!r}")
    if n < max(7, 4 * s + 3):
        raise StencilTooCoarse(f"need at least {max(7, 4 * s + 3)} grid points for stride {s}, got {n}")
    a, b, c, d, e = y[: n - 4 * s], y[s : n - 3 * s], y[2 * s : n - 2 * s], y[3 * s : n - s], y[4 * s :]
    h = s * spacing
    if order == 1:
        return (a - 8 * b + 8 * d - e) / (12 * h)
    if order == 2:
        return (-a + 16 * b - 30 * c + 16 * d - e) / (12 * h * h)
    raise ValueError(f"order must be 1 or 2, got {order!r}")
