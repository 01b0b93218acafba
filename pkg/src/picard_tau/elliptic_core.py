"""Complete elliptic integrals, modular parameter and nome for a real t = k^2.

Everything downstream is parameterised by an :class:`EllipticContext`, which
bundles the modulus-level quantities computed once per value of t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, NonPositiveInput

DEFAULT_MARGIN = 1e-8
_AGM_MAX_ITER = 64


def _converged(a: float, b: float) -> bool:
    # a relative gap of 1e-16 is below one ulp in [1, 2); a few ulps is the floor
    return abs(a - b) < max(1e-16 * a, 4 * math.ulp(a))


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive reals."""
    if not (a > 0 and b > 0):
        raise NonPositiveInput(f"agm requires positive inputs, got a={a!r}, b={b!r}")
    for _ in range(_AGM_MAX_ITER):
        if _converged(a, b):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return a


def _complete_integrals(t: float) -> tuple[float, float]:
    """Return (K(t), E(t)) from the AGM and its companion sum.

    E = K * (1 - sum_n 2^(n-1) c_n^2) with c_0 = k, c_{n+1} = (a_n - b_n)/2.
    """
    a, b = 1.0, math.sqrt(1.0 - t)
    c2_sum = 0.5 * t
    weight = 0.5
    for _ in range(_AGM_MAX_ITER):
        if _converged(a, b):
            break
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        weight *= 2.0
        c2_sum += weight * c * c
    K = math.pi / (2.0 * a)
    return K, K * (1.0 - c2_sum)


@dataclass(frozen=True)
class EllipticContext:
    t: float
    k: float
    k_prime: float
    K: float
    K_prime: float
    E: float
    E_prime: float
    tau: complex
    nome: complex
    omega1: complex
    omega2: complex


def make_context(t: float, margin: float = DEFAULT_MARGIN) -> EllipticContext:
    """Build the context for parameter ``t`` in (margin, 1 - margin)."""
    t = float(t)
    if not (margin < t < 1.0 - margin) or not math.isfinite(t):
        raise DomainError(f"t={t!r} outside the open interval ({margin}, {1.0 - margin})")
    return _context(t)


@lru_cache(maxsize=8192)
def _context(t: float) -> EllipticContext:
    K, E = _complete_integrals(t)
    Kp, Ep = _complete_integrals(1.0 - t)
    tau = 1j * Kp / K
    return EllipticContext(
        t=t,
        k=math.sqrt(t),
        k_prime=math.sqrt(1.0 - t),
        K=K,
        K_prime=Kp,
        E=E,
        E_prime=Ep,
        tau=tau,
        nome=cmath.exp(1j * math.pi * tau),
        omega1=complex(K),
        omega2=1j * Kp,
    )


def dK_dt(ctx: EllipticContext) -> float:
    t = ctx.t
    return ctx.E / (2.0 * t * (1.0 - t)) - ctx.K / (2.0 * t)


def dE_dt(ctx: EllipticContext) -> float:
    return (ctx.E - ctx.K) / (2.0 * ctx.t)


def legendre_defect(ctx: EllipticContext) -> float:
    """E K' + E' K - K K' - pi/2, which vanishes identically."""
    return ctx.E * ctx.K_prime + ctx.E_prime * ctx.K - ctx.K * ctx.K_prime - math.pi / 2


def dtau_dt(ctx: EllipticContext) -> complex:
    t = ctx.t
    return 1j * math.pi / (4.0 * t * (t - 1.0) * ctx.K**2)
