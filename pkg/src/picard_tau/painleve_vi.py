"""Painleve VI: parameters, residuals, Hamiltonians, Okamoto shifts and the
Picard solution q0 = t cn^2(z)/dn^2(z) with its Hamiltonians H0 and H1.

Jets (f, f', f'') fed to the residual evaluators come from the caller; see
:mod:`picard_tau.finite_diff` for the finite-difference builder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .elliptic_core import EllipticContext, make_context
from .errors import CrossCheckFailure, DegenerateShift, PoleProximity, SingularConfiguration
from .finite_diff import derivative, jet
from .jacobi_functions import POLE_GUARD, jacobi_sn_cn_dn
from .theta_functions import theta_all

SINGULAR_GUARD = 1e-8
SHIFT_GUARD = 1e-10

PICARD_B = (0.0, 0.0, -0.5, -0.5)


def picard_b(m: int) -> tuple[float, float, float, float]:
    """Parameters of the m-th member of the Picard chain, b3 shifted by m."""
    b1, b2, b3, b4 = PICARD_B
    return (b1, b2, b3 + m, b4)


@dataclass(frozen=True)
class PainleveParams:
    alpha: float
    beta: float
    gamma: float
    delta: float
    kappa0: float
    kappa1: float
    kappa_inf: float
    theta: float
    b: tuple[float, float, float, float]
    kappa: float


def params_from_b(b: Sequence[float]) -> PainleveParams:
    b1, b2, b3, b4 = (float(v) for v in b)
    kappa0, kappa1 = b1 + b2, b1 - b2
    kappa_inf, theta = b3 - b4, b3 + b4 + 1.0
    return PainleveParams(
        alpha=0.5 * kappa_inf**2,
        beta=-0.5 * kappa0**2,
        gamma=0.5 * kappa1**2,
        delta=0.5 * (1.0 - theta**2),
        kappa0=kappa0,
        kappa1=kappa1,
        kappa_inf=kappa_inf,
        theta=theta,
        b=(b1, b2, b3, b4),
        kappa=0.25 * (kappa0 + kappa1 + theta - 1.0) ** 2 - 0.25 * kappa_inf**2,
    )


@dataclass(frozen=True)
class PicardParams:
    """Labels of a Picard solution; c1 = 2x/pi + 1 and c2 = 2y/pi + 1."""

    x: complex
    y: complex
    c1: complex = field(init=False)
    c2: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))
        object.__setattr__(self, "c1", 2.0 * self.x / math.pi + 1.0)
        object.__setattr__(self, "c2", 2.0 * self.y / math.pi + 1.0)

    @classmethod
    def from_c(cls, c1: complex, c2: complex) -> "PicardParams":
        return cls(x=(complex(c1) - 1.0) * math.pi / 2.0, y=(complex(c2) - 1.0) * math.pi / 2.0)

    def shifted(self, dx: complex, dy: complex) -> "PicardParams":
        return PicardParams(self.x + dx, self.y + dy)

    def theta_argument(self, ctx: EllipticContext) -> complex:
        """x + tau y."""
        return self.x + ctx.tau * self.y

    def z(self, ctx: EllipticContext) -> complex:
        return 2.0 * ctx.K / math.pi * self.theta_argument(ctx)


def _check_q(t, q):
    for label, dist in (("q = 0", q), ("q = 1", q - 1.0), ("q = t", q - t)):
        if abs(dist) < SINGULAR_GUARD:
            raise SingularConfiguration(f"{label} locus (|distance| = {abs(dist):.3g}) at t={t}")


def pvi_residual(t: float, q: complex, q1: complex, q2: complex, p: PainleveParams) -> complex:
    """q'' minus the right-hand side of Painleve VI at the jet (q, q', q'')."""
    _check_q(t, q)
    velocity = 0.5 * (1.0 / q + 1.0 / (q - 1.0) + 1.0 / (q - t)) * q1**2 - (
        1.0 / t + 1.0 / (t - 1.0) + 1.0 / (q - t)
    ) * q1
    potential = q * (q - 1.0) * (q - t) / (t**2 * (t - 1.0) ** 2) * (
        p.alpha
        + p.beta * t / q**2
        + p.gamma * (t - 1.0) / (q - 1.0) ** 2
        + p.delta * t * (t - 1.0) / (q - t) ** 2
    )
    return q2 - velocity - potential


def _linear_coefficient(t, q, p):
    return p.kappa0 * (q - 1.0) * (q - t) + p.kappa1 * q * (q - t) + (p.theta - 1.0) * q * (q - 1.0)


def hamiltonian_H(t: float, q: complex, p_mom: complex, p: PainleveParams) -> complex:
    if abs(t) < SINGULAR_GUARD or abs(t - 1.0) < SINGULAR_GUARD:
        raise SingularConfiguration(f"Hamiltonian is singular at t={t}")
    quad = q * (q - 1.0) * (q - t) * p_mom**2
    return (quad - _linear_coefficient(t, q, p) * p_mom + p.kappa * (q - t)) / (t * (t - 1.0))


def momentum_from_qprime(t: float, q: complex, q1: complex, p: PainleveParams) -> complex:
    """Solve dq/dt = dH/dp (linear in p) for the momentum."""
    _check_q(t, q)
    return (t * (t - 1.0) * q1 + _linear_coefficient(t, q, p)) / (2.0 * q * (q - 1.0) * (q - t))


def _e2(values):
    values = list(values)
    return sum(values[i] * values[j] for i in range(len(values)) for j in range(i + 1, len(values)))


def auxiliary_h(t: float, H: complex, b: Sequence[float]) -> complex:
    b1, b2, b3, b4 = b
    return t * (t - 1.0) * H + _e2((b1, b3, b4)) * t - 0.5 * _e2((b1, b2, b3, b4))


def hamiltonian_from_h(t: float, h: complex, b: Sequence[float]) -> complex:
    """Inverse of :func:`auxiliary_h`."""
    b1, b2, b3, b4 = b
    return (h - _e2((b1, b3, b4)) * t + 0.5 * _e2((b1, b2, b3, b4))) / (t * (t - 1.0))


def evi_residual(t: float, h: complex, h1: complex, h2: complex, b: Sequence[float]) -> complex:
    """LHS minus RHS of the sigma-form (E_VI) equation for h."""
    b1, b2, b3, b4 = b
    lhs = h1 * (t * (1.0 - t) * h2) ** 2 + (h1 * (2.0 * h - (2.0 * t - 1.0) * h1) + b1 * b2 * b3 * b4) ** 2
    rhs = (h1 + b1**2) * (h1 + b2**2) * (h1 + b3**2) * (h1 + b4**2)
    return lhs - rhs


def okamoto_shift_h(t: float, h: complex, h1: complex, h2: complex, b: Sequence[float], direction: str = "up") -> complex:
    """Shift b3 by one unit at the level of h.

    ``up`` maps the jet of h (parameters b) to h+ (parameters b3 + 1);
    ``down`` maps the jet of h+ back to h, where ``b`` still names the lower
    parameters.
    """
    b1, b2, b3, b4 = b
    if direction == "up":
        denom = 2.0 * (h1 + b3**2)
        num = t * (t - 1.0) * h2 + 2.0 * h * (b3 * (b3 + 1.0) + h1) + b3 * (1.0 - 2.0 * t) * h1 - b1 * b2 * b4
    elif direction == "down":
        denom = 2.0 * (h1 + (b3 + 1.0) ** 2)
        num = t * (t - 1.0) * h2 + 2.0 * h * (b3 * (b3 + 1.0) + h1) - (b3 + 1.0) * (1.0 - 2.0 * t) * h1 + b1 * b2 * b4
    else:
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    if abs(denom) < SHIFT_GUARD:
        raise DegenerateShift(f"Okamoto {direction}-shift denominator {abs(denom):.3g} at t={t}")
    return num / denom


def okamoto_plus_from_qp(h: complex, q: complex, p_mom: complex, b: Sequence[float]) -> complex:
    """h+ from h and the canonical pair (q, p)."""
    b1, b2, b3, b4 = b
    return h - q * (q - 1.0) * p_mom + (b1 + b4) * q - 0.5 * (b1 + b2 + b4)


def weierstrass_invariants(t: float) -> tuple[float, float, float]:
    s = (t + 1.0) / 3.0
    return 1.0 - s, t - s, -s


def weierstrass_p(u: complex, t: float) -> complex:
    """Weierstrass function with half-periods K(t), iK(1-t).

    Uses p(u) = e3 + (e1 - e3) / sn^2(u sqrt(e1 - e3)) with e1 - e3 = 1.
    """
    ctx = make_context(t)
    e1, e2, e3 = weierstrass_invariants(t)
    sn = jacobi_sn_cn_dn(u, ctx)[0]
    if abs(sn) < POLE_GUARD:
        raise PoleProximity(f"u={u} is a lattice point of the Weierstrass function")
    return e3 + (e1 - e3) / sn**2


def _close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def log_theta_dx(i: int, t: float, pp: PicardParams) -> complex:
    """d/dx log theta_i(x + tau y | tau)."""
    ctx = make_context(t)
    th, th_p = theta_all(i, pp.theta_argument(ctx), ctx, 1)[0]
    if abs(th) < POLE_GUARD:
        raise PoleProximity(f"theta_{i}(x + tau y) vanishes (|value| < {POLE_GUARD:g}) at t={t}, x={pp.x}, y={pp.y}")
    return th_p / th


def _picard_jacobi(t: float, pp: PicardParams):
    ctx = make_context(t)
    return ctx, jacobi_sn_cn_dn(pp.z(ctx), ctx)


def picard_q0(t: float, pp: PicardParams, cross_check: bool = False) -> complex:
    """Picard solution q0 = t cn^2(z,t) / dn^2(z,t), z = (2K/pi)(x + tau y)."""
    ctx, (sn, cn, dn) = _picard_jacobi(t, pp)
    if abs(dn) < POLE_GUARD:
        raise PoleProximity(f"dn(z) vanishes at t={t}, x={pp.x}, y={pp.y}: q0 has a pole")
    q0 = t * cn**2 / dn**2
    if cross_check:
        alt = picard_q0_sn_form(t, pp)
        if not _close(q0, alt, 1e-10):
            raise CrossCheckFailure(f"cn/dn form {q0} != 1/sn^2 form {alt} at t={t}")
    return q0


def picard_q0_sn_form(t: float, pp: PicardParams) -> complex:
    """q0 = 1 / sn^2(c1 K + i c2 K', t)."""
    ctx = make_context(t)
    sn = jacobi_sn_cn_dn(pp.c1 * ctx.K + 1j * pp.c2 * ctx.K_prime, ctx)[0]
    if abs(sn) < POLE_GUARD:
        raise PoleProximity(f"sn(c1 K + i c2 K') vanishes at t={t}")
    return 1.0 / sn**2


def picard_q0_weierstrass(t: float, pp: PicardParams) -> complex:
    ctx = make_context(t)
    return weierstrass_p(pp.c1 * ctx.omega1 + pp.c2 * ctx.omega2, t) + (t + 1.0) / 3.0


def picard_q0_dt(t: float, pp: PicardParams) -> complex:
    ctx, (sn, cn, dn) = _picard_jacobi(t, pp)
    if abs(dn) < POLE_GUARD:
        raise PoleProximity(f"dn(z) vanishes at t={t}, x={pp.x}, y={pp.y}")
    bracket = math.pi / (2.0 * ctx.K) * log_theta_dx(2, t, pp) + 1j * pp.y / ctx.K
    return 1.0 / dn**2 + sn * cn / dn**3 * bracket


def script_E(t: float, pp: PicardParams) -> complex:
    """(pi/2K) d/dx log theta_1(x + tau y) + i y / K."""
    ctx = make_context(t)
    return math.pi / (2.0 * ctx.K) * log_theta_dx(1, t, pp) + 1j * pp.y / ctx.K


def picard_H0(t: float, pp: PicardParams, cross_check: bool = False) -> complex:
    ctx, (sn, cn, dn) = _picard_jacobi(t, pp)
    if abs(sn) < POLE_GUARD:
        raise PoleProximity(f"sn(z) vanishes at t={t}, x={pp.x}, y={pp.y}")
    d = 4.0 * t * (t - 1.0)
    H0 = -1.0 / (4.0 * (t - 1.0)) - cn**2 / (d * sn**2) + script_E(t, pp) ** 2 / d
    if cross_check:
        alt = picard_H0_from_q(t, pp)
        if not _close(H0, alt, 1e-8):
            raise CrossCheckFailure(f"theta form {H0} != q0 form {alt} at t={t}")
    return H0


def picard_H0_from_q(t: float, pp: PicardParams) -> complex:
    """H0 in terms of q0 and q0' (Hamilton's equations at the Picard point)."""
    q = picard_q0(t, pp)
    q1 = picard_q0_dt(t, pp)
    _check_q(t, q)
    return (t * t + (1.0 - 2.0 * t) * q) / (4.0 * t * (t - 1.0) * (q - t)) + t * (t - 1.0) * q1**2 / (
        4.0 * q * (q - 1.0) * (q - t)
    )


def picard_H1(t: float, pp: PicardParams) -> complex:
    """Hamiltonian of the first Okamoto image, parameters (0, 0, 1/2, -1/2)."""
    ctx, (sn, cn, dn) = _picard_jacobi(t, pp)
    if abs(dn) < POLE_GUARD:
        raise PoleProximity(f"dn(z) vanishes at t={t}, x={pp.x}, y={pp.y}")
    inner = math.pi / (2.0 * ctx.K) * log_theta_dx(4, t, pp) + 1j * pp.y / ctx.K - t * sn * cn / dn
    return -(sn**2) / (4.0 * dn**2) + inner**2 / (4.0 * t * (t - 1.0))


def picard_h(t: float, pp: PicardParams, m: int = 0) -> complex:
    """Auxiliary Hamiltonian h_m of the Picard chain.

    m = 0, 1 use the closed forms; other members are reached by repeated
    Okamoto shifts of finite-difference jets, so accuracy degrades quickly
    beyond |m - 1/2| = 3/2.
    """
    if m == 0:
        return auxiliary_h(t, picard_H0(t, pp), picard_b(0))
    if m == 1:
        return auxiliary_h(t, picard_H1(t, pp), picard_b(1))
    if m > 1:
        h, h1, h2 = jet(lambda s: picard_h(s, pp, m - 1), t)
        return okamoto_shift_h(t, h, h1, h2, picard_b(m - 1), "up")
    h, h1, h2 = jet(lambda s: picard_h(s, pp, m + 1), t)
    return okamoto_shift_h(t, h, h1, h2, picard_b(m), "down")


def picard_H(t: float, pp: PicardParams, m: int = 0) -> complex:
    """Hamiltonian H_m of the Picard chain (closed form for m = 0, 1)."""
    if m == 0:
        return picard_H0(t, pp)
    if m == 1:
        return picard_H1(t, pp)
    return hamiltonian_from_h(t, picard_h(t, pp, m), picard_b(m))


def picard_q0_jet(t: float, pp: PicardParams) -> tuple[complex, complex, complex]:
    """(q0, q0', q0'') with q0' in closed form and q0'' by differencing it."""
    return picard_q0(t, pp), picard_q0_dt(t, pp), derivative(lambda s: picard_q0_dt(s, pp), t, 1)


def picard_h_plus_from_qp(t: float, pp: PicardParams) -> complex:
    """h+ of the Picard point from (q0, p0); needs no t-derivative of h0."""
    params = params_from_b(PICARD_B)
    q = picard_q0(t, pp)
    p_mom = momentum_from_qprime(t, q, picard_q0_dt(t, pp), params)
    return okamoto_plus_from_qp(picard_h(t, pp, 0), q, p_mom, PICARD_B)
