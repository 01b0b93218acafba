"""Jacobi theta functions in the Whittaker-Watson convention.

Quasi-periods are pi and pi*tau, theta_1 is odd, and the nome is
q = exp(i*pi*tau)::

    theta_1(v) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)v)
    theta_2(v) = 2 sum_{n>=0}        q^{(n+1/2)^2} cos((2n+1)v)
    theta_3(v) = 1 + 2 sum_{n>=1}        q^{n^2} cos(2nv)
    theta_4(v) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2nv)

Arguments are first reduced into the fundamental cell so that the series
terms decay monotonically; the quasi-periodicity multiplier is reapplied
afterwards, together with its contribution to v- and tau-derivatives.
"""

from __future__ import annotations

import cmath
import math
from math import comb

from .elliptic_core import EllipticContext
from .errors import ConvergenceFailure, QuadratureFailure

MAX_TERMS = 200
REL_TRUNCATION = 1e-17

# sign picked up under v -> v + pi and v -> v + pi*tau
_SIGN_PI = {1: -1, 2: -1, 3: 1, 4: 1}
_SIGN_TAU = {1: -1, 2: 1, 3: 1, 4: -1}


def _check_index(i: int) -> None:
    if i not in (1, 2, 3, 4):
        raise ValueError(f"theta index must be 1, 2, 3 or 4, got {i!r}")


def _series(i: int, v: complex, tau: complex, order: int) -> tuple[list[complex], complex]:
    """Unreduced series: v-derivatives 0..order and the tau-derivative."""
    half = i in (1, 2)
    odd = i == 1
    alternating = i in (1, 4)
    derivs = [0j] * (order + 1)
    dtau = 0j
    if not half:
        derivs[0] = 1 + 0j
    im_tau = tau.imag
    abs_im_v = abs(v.imag)
    # tau-derivative brings a factor ~ freq^2, bounded like a second v-derivative
    bound_order = max(order, 2)
    accumulated = 0.0 if half else 1.0
    for n in range(0 if half else 1, MAX_TERMS + 1):
        e = (n + 0.5) ** 2 if half else float(n * n)
        freq = 2 * n + 1 if half else 2 * n
        log_bound = -math.pi * im_tau * e + freq * abs_im_v
        bound = 2.0 * math.exp(log_bound) * freq**bound_order
        if n > 1 and bound < REL_TRUNCATION * accumulated:
            return derivs, dtau
        accumulated += bound
        coeff = 2.0 * cmath.exp(1j * math.pi * tau * e)
        if alternating and n % 2:
            coeff = -coeff
        arg = freq * v
        s, c = cmath.sin(arg), cmath.cos(arg)
        # successive derivatives cycle sin -> cos -> -sin -> -cos (cos -> -sin -> -cos -> sin)
        cycle = (s, c, -s, -c) if odd else (c, -s, -c, s)
        for d in range(order + 1):
            derivs[d] += coeff * freq**d * cycle[d % 4]
        dtau += 1j * math.pi * e * coeff * cycle[0]
    raise ConvergenceFailure(f"theta_{i} series did not converge in {MAX_TERMS} terms (v={v}, tau={tau})")


def theta_all(i: int, v: complex, ctx: EllipticContext, order: int = 0) -> tuple[list[complex], complex]:
    """Return ([theta_i, theta_i', ..., theta_i^(order)], d theta_i / d tau) at v."""
    _check_index(i)
    v = complex(v)
    tau = ctx.tau
    n = round(v.imag / (math.pi * tau.imag))
    v1 = v - n * math.pi * tau
    m = round(v1.real / math.pi)
    v0 = v1 - m * math.pi
    if order < 1 and n:
        order_needed = 1
    else:
        order_needed = order
    raw, raw_dtau = _series(i, v0, tau, order_needed)
    if n == 0 and m == 0:
        return raw[: order + 1], raw_dtau
    sign = _SIGN_TAU[i] ** (n % 2) * _SIGN_PI[i] ** (m % 2)
    factor = sign * cmath.exp(-1j * math.pi * tau * n * n - 2j * n * v0)
    slope = -2j * n
    out = []
    for d in range(order + 1):
        out.append(factor * sum(comb(d, j) * slope ** (d - j) * raw[j] for j in range(d + 1)))
    dtau = factor * (1j * math.pi * n * n * raw[0] + raw_dtau - n * math.pi * raw[1]) if n else factor * raw_dtau
    return out, dtau


def theta(i: int, v: complex, ctx: EllipticContext) -> complex:
    return theta_all(i, v, ctx, 0)[0][0]


def theta_dv(i: int, v: complex, ctx: EllipticContext, order: int = 1) -> complex:
    """Derivative of theta_i with respect to its argument (order 1 or 2)."""
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    return theta_all(i, v, ctx, order)[0][order]


def theta_dtau(i: int, v: complex, ctx: EllipticContext) -> complex:
    """Partial derivative in tau at fixed v, by term-wise differentiation."""
    return theta_all(i, v, ctx, 0)[1]


def heat_residual(i: int, v: complex, ctx: EllipticContext) -> complex:
    """(4 / (i pi)) d_tau theta + d_v^2 theta; zero for all four functions."""
    derivs, dtau = theta_all(i, v, ctx, 2)
    return 4.0 / (1j * math.pi) * dtau + derivs[2]


def theta4_integral_rep(x: complex, ctx: EllipticContext) -> complex:
    """theta_4(x) rebuilt from theta_4(0) and the integral of the second-kind function.

    The integral runs along the straight segment from 0 to 2xK/pi.
    """
    from scipy.integrate import quad

    from .jacobi_functions import second_kind_E

    x = complex(x)
    upper = 2.0 * x * ctx.K / math.pi
    if upper == 0:
        return theta(4, 0.0, ctx)

    def part(s, which):
        val = second_kind_E(s * upper, ctx) * upper
        return val.real if which == 0 else val.imag

    total = 0j
    for which in (0, 1):
        val, err = quad(part, 0.0, 1.0, args=(which,), epsabs=1e-14, epsrel=1e-13, limit=200)
        if not math.isfinite(val) or err > 1e-10:
            raise QuadratureFailure(f"integral of the second-kind function to {upper} failed (err={err:.3g})")
        total += val if which == 0 else 1j * val
    exponent = -2.0 * x * x / math.pi**2 * ctx.E * ctx.K + total
    return theta(4, 0.0, ctx) * cmath.exp(exponent)


def theta4_expansion_check(x: float, ctx: EllipticContext) -> float:
    """Defect of the fourth-order expansion of theta_4 about x = 0.

    The truncated expansion is correct through x^4, so the defect is O(x^6).
    """
    s = x * ctx.K / math.pi
    approx = theta(4, 0.0, ctx) * math.exp(-2.0 * x * x * ctx.E * ctx.K / math.pi**2) * (
        1.0 + 2.0 * s**2 + 2.0 * (3.0 - 2.0 * ctx.t) / 3.0 * s**4
    )
    return (theta(4, x, ctx) - approx).real
