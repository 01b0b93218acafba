"""Jacobi elliptic functions as theta quotients, the second-kind integral
and the derivatives of sn, cn, dn with respect to the parameter t.
"""

from __future__ import annotations

import math

from scipy.integrate import quad

from .elliptic_core import EllipticContext
from .errors import PoleProximity, QuadratureFailure
from .theta_functions import theta, theta_all

POLE_GUARD = 1e-10


def _theta_argument(u: complex, ctx: EllipticContext) -> complex:
    return math.pi * complex(u) / (2.0 * ctx.K)


def _theta4_checked(v: complex, ctx: EllipticContext, order: int = 0) -> list[complex]:
    derivs = theta_all(4, v, ctx, order)[0]
    if abs(derivs[0]) < POLE_GUARD:
        raise PoleProximity(f"|theta_4(v)| < {POLE_GUARD:g} at v={v}: pole of sn, cn, dn")
    return derivs


def jacobi_sn_cn_dn(u: complex, ctx: EllipticContext) -> tuple[complex, complex, complex]:
    v = _theta_argument(u, ctx)
    th4 = _theta4_checked(v, ctx)[0]
    sqrt_k = math.sqrt(ctx.k)
    sqrt_kp = math.sqrt(ctx.k_prime)
    sn = theta(1, v, ctx) / (sqrt_k * th4)
    cn = sqrt_kp / sqrt_k * theta(2, v, ctx) / th4
    dn = sqrt_kp * theta(3, v, ctx) / th4
    return sn, cn, dn


def second_kind_E(u: complex, ctx: EllipticContext) -> complex:
    """Integral of dn^2 from 0 to u, in closed form via the log-derivative of theta_4."""
    v = _theta_argument(u, ctx)
    th4, th4p = _theta4_checked(v, ctx, 1)
    return complex(u) * ctx.E / ctx.K + math.pi / (2.0 * ctx.K) * th4p / th4


def incomplete_F(s: float, ctx: EllipticContext) -> float:
    """First-kind integral from 0 to s; the inverse of sn on [0, K)."""
    if not 0.0 <= s < 1.0:
        raise ValueError(f"incomplete_F requires 0 <= s < 1, got {s!r}")
    # x = sin(phi) removes the endpoint singularity at s -> 1
    t = ctx.t
    val, err = quad(lambda phi: 1.0 / math.sqrt(1.0 - t * math.sin(phi) ** 2), 0.0, math.asin(s),
                    epsabs=1e-13, epsrel=1e-13, limit=200)
    if err > 1e-10:
        raise QuadratureFailure(f"incomplete_F({s}) quadrature error estimate {err:.3g}")
    return val


def jacobi_dt(u: complex, ctx: EllipticContext) -> tuple[complex, complex, complex]:
    """(d sn/dt, d cn/dt, d dn/dt) at fixed u."""
    t = ctx.t
    sn, cn, dn = jacobi_sn_cn_dn(u, ctx)
    bracket = complex(u) * (t - 1.0) + second_kind_E(u, ctx)
    d_sn = -sn * cn**2 / (2.0 * (t - 1.0)) + cn * dn / (2.0 * t * (t - 1.0)) * bracket
    d_cn = sn**2 * cn / (2.0 * (t - 1.0)) - sn * dn / (2.0 * t * (t - 1.0)) * bracket
    d_dn = sn**2 * dn / (2.0 * (t - 1.0)) - sn * cn / (2.0 * (t - 1.0)) * bracket
    return d_sn, d_cn, d_dn
