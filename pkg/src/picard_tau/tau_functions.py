"""Tau-functions of the Picard chain.

T0 and T1 are closed-form theta quotients; further members come from the
Toda-type recurrence

    d/dt[t(t-1) d/dt log T_m] + (b1+b3+m)(b3+b4+m) = c(m) T_{m+1} T_{m-1} / T_m^2

evaluated on a uniform t-grid. Everything is carried as log T with the
imaginary part unwrapped along the grid.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy.integrate import cumulative_simpson

from .elliptic_core import make_context
from .errors import NonPositiveArgument, PoleProximity, StencilTooCoarse
from .finite_diff import grid_derivative
from .jacobi_functions import POLE_GUARD
from .painleve_vi import PICARD_B, PicardParams
from .theta_functions import theta

STENCIL_POINTS = 7
ZERO_GUARD = 1e-12
# Effective stencil step for the recurrence. The bracket is a second
# derivative that is then differenced again, so roundoff grows like 1/h^3;
# ~2.5e-3 balances that against O(h^4) truncation.
TODA_STEP = 2.5e-3


def _prefactor_log(t, pp, ctx):
    # log of q^{y^2/pi^2} = i tau y^2 / pi
    return 1j * ctx.tau * pp.y**2 / math.pi


def _theta_log(i, t, pp):
    ctx = make_context(t)
    value = theta(i, pp.theta_argument(ctx), ctx)
    if abs(value) < POLE_GUARD:
        raise PoleProximity(
            f"theta_{i}(x + tau y) vanishes (|value| < {POLE_GUARD:g}) at t={t}, x={pp.x}, y={pp.y}"
        )
    return ctx, cmath.log(value) - cmath.log(theta(4, 0.0, ctx))


def log_tau0(t: float, pp: PicardParams) -> complex:
    """Principal-branch log of T0 (normalisation constant set to 1)."""
    ctx, log_ratio = _theta_log(1, t, pp)
    return _prefactor_log(t, pp, ctx) - 0.25 * math.log(t) + log_ratio


def log_tau1(t: float, pp: PicardParams) -> complex:
    ctx, log_ratio = _theta_log(3, t, pp)
    return _prefactor_log(t, pp, ctx) + 0.25 * math.log(1.0 - t) + log_ratio


def tau0(t: float, pp: PicardParams) -> complex:
    """q^{y^2/pi^2} t^{-1/4} theta_1(x + tau y) / theta_4(0)."""
    return cmath.exp(log_tau0(t, pp))


def tau1(t: float, pp: PicardParams) -> complex:
    """q^{y^2/pi^2} (1 - t)^{1/4} theta_3(x + tau y) / theta_4(0)."""
    return cmath.exp(log_tau1(t, pp))


def tau0_sn_form(t: float, pp: PicardParams) -> complex:
    """Equivalent form q^{y^2/pi^2} sn(z) theta_4(x + tau y) / theta_4(0)."""
    from .jacobi_functions import jacobi_sn_cn_dn

    ctx = make_context(t)
    sn = jacobi_sn_cn_dn(pp.z(ctx), ctx)[0]
    w = pp.theta_argument(ctx)
    return cmath.exp(_prefactor_log(t, pp, ctx)) * sn * theta(4, w, ctx) / theta(4, 0.0, ctx)


_CLOSED_FORMS = {0: log_tau0, 1: log_tau1}


def unwrap_log(values) -> np.ndarray:
    """Make the imaginary part of a sampled complex log continuous."""
    values = np.asarray(values, dtype=complex)
    return values.real + 1j * np.unwrap(values.imag)


@dataclass(frozen=True)
class TauGrid:
    """log T_m sampled on a uniform t-grid.

    ``t_start``, ``t_end`` and ``n_points`` describe the base grid;
    ``eroded_margin`` points per edge have been consumed by recurrence
    stencils, and every stored member covers the remaining interior.
    """

    t_start: float
    t_end: float
    n_points: int
    x: complex
    y: complex
    log_tau: dict[int, np.ndarray] = field(default_factory=dict)
    b_base: tuple[float, float, float, float] = PICARD_B
    c_convention: float = 1.0
    eroded_margin: int = 0

    @property
    def base_t_values(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_points)

    @property
    def t_values(self) -> np.ndarray:
        e = self.eroded_margin
        return self.base_t_values[e : self.n_points - e]

    @property
    def spacing(self) -> float:
        return (self.t_end - self.t_start) / (self.n_points - 1)

    @property
    def members(self) -> list[int]:
        return sorted(self.log_tau)

    def b(self, m: int) -> tuple[float, float, float, float]:
        b1, b2, b3, b4 = self.b_base
        return (b1, b2, b3 + m, b4)

    def picard_params(self) -> PicardParams:
        return PicardParams(self.x, self.y)

    def default_stride(self) -> int:
        """Stencil stride giving an effective step close to TODA_STEP."""
        n = len(self.t_values)
        return max(1, min(round(TODA_STEP / self.spacing), (n - 3) // 4))

    def d_log_tau(self, m: int, stride: int | None = None) -> np.ndarray:
        """d/dt log T_m on t_values[2*stride : -2*stride]."""
        stride = self.default_stride() if stride is None else stride
        return grid_derivative(self.log_tau[m], self.spacing, 1, stride)

    def interior(self, stride: int | None = None) -> np.ndarray:
        """t-values matching the output of stride-``stride`` stencils."""
        stride = self.default_stride() if stride is None else stride
        return self.t_values[2 * stride : len(self.t_values) - 2 * stride]

    def to_json(self) -> str:
        return json.dumps(
            {
                "t_start": self.t_start,
                "t_end": self.t_end,
                "n_points": self.n_points,
                "x": _encode_number(self.x),
                "y": _encode_number(self.y),
                "c_convention": self.c_convention,
                "b_base": list(self.b_base),
                "members": {
                    str(m): [[float(z.real), float(z.imag)] for z in self.log_tau[m]] for m in self.members
                },
                "eroded_margin": self.eroded_margin,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "TauGrid":
        doc = json.loads(text)
        members = {
            int(m): np.array([complex(re, im) for re, im in pairs], dtype=complex)
            for m, pairs in doc["members"].items()
        }
        return cls(
            t_start=doc["t_start"],
            t_end=doc["t_end"],
            n_points=doc["n_points"],
            x=_decode_number(doc["x"]),
            y=_decode_number(doc["y"]),
            log_tau=members,
            b_base=tuple(doc.get("b_base", PICARD_B)),
            c_convention=doc["c_convention"],
            eroded_margin=doc["eroded_margin"],
        )


def _encode_number(z: complex):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def _decode_number(v) -> complex:
    if isinstance(v, list):
        return complex(v[0], v[1])
    return complex(v)


def build_tau_grid(
    pp: PicardParams,
    t_start: float,
    t_end: float,
    n_points: int,
    members: Sequence[int] = (0, 1),
    c_convention: float = 1.0,
) -> TauGrid:
    """Sample the closed-form log T0 and/or log T1 on a uniform grid."""
    if not t_start < t_end:
        raise ValueError(f"need t_start < t_end, got {t_start}, {t_end}")
    if n_points < 2:
        raise StencilTooCoarse(f"grid needs at least 2 points, got {n_points}")
    ts = np.linspace(t_start, t_end, n_points)
    log_tau = {}
    for m in members:
        if m not in _CLOSED_FORMS:
            raise ValueError(f"closed forms exist only for m = 0, 1; got {m}")
        log_tau[m] = unwrap_log([_CLOSED_FORMS[m](float(t), pp) for t in ts])
    return TauGrid(t_start, t_end, n_points, pp.x, pp.y, log_tau, PICARD_B, c_convention)


def toda_constant(b_base: Sequence[float], m: int) -> float:
    b1, b2, b3, b4 = b_base
    return (b1 + b3 + m) * (b3 + b4 + m)


def toda_bracket(grid: TauGrid, m: int, stride: int | None = None) -> np.ndarray:
    """d/dt[t(t-1) d/dt log T_m] + (b1+b3+m)(b3+b4+m) on ``grid.interior(stride)``."""
    stride = grid.default_stride() if stride is None else stride
    L = grid.log_tau[m]
    if len(L) < max(STENCIL_POINTS, 4 * stride + 3):
        raise StencilTooCoarse(
            f"recurrence needs at least {max(STENCIL_POINTS, 4 * stride + 3)} grid points, got {len(L)}"
        )
    t = grid.interior(stride)
    d1 = grid_derivative(L, grid.spacing, 1, stride)
    d2 = grid_derivative(L, grid.spacing, 2, stride)
    return t * (t - 1.0) * d2 + (2.0 * t - 1.0) * d1 + toda_constant(grid.b_base, m)


def _log_bracket(bracket: np.ndarray, t: np.ndarray, m: int) -> np.ndarray:
    scale = np.max(np.abs(bracket))
    small = np.abs(bracket) <= ZERO_GUARD * max(scale, 1.0)
    if np.any(small):
        i = int(np.argmax(small))
        raise NonPositiveArgument(f"Toda bracket vanishes at m={m}, t={t[i]:.17g}", m=m, t=float(t[i]))
    if np.all(np.abs(bracket.imag) <= ZERO_GUARD * np.abs(bracket)):
        sign_change = np.nonzero(np.diff(np.sign(bracket.real)))[0]
        if sign_change.size:
            i = int(sign_change[0])
            raise NonPositiveArgument(f"Toda bracket changes sign at m={m}, t={t[i]:.17g}", m=m, t=float(t[i]))
    jumps = np.abs(np.diff(np.angle(bracket)))
    jumps = np.minimum(jumps, 2 * np.pi - jumps)
    if np.any(jumps > np.pi / 2):
        i = int(np.argmax(jumps > np.pi / 2))
        raise NonPositiveArgument(f"Toda bracket passes near zero at m={m}, t={t[i]:.17g}", m=m, t=float(t[i]))
    return unwrap_log(np.log(bracket.astype(complex)))


def _trimmed(grid: TauGrid, new_m: int, new_values: np.ndarray, stride: int) -> TauGrid:
    k = 2 * stride
    log_tau = {m: v[k : len(v) - k].copy() for m, v in grid.log_tau.items()}
    log_tau[new_m] = new_values
    return replace(grid, log_tau=log_tau, eroded_margin=grid.eroded_margin + k)


def _step(grid: TauGrid, up: bool, stride: int | None) -> TauGrid:
    members = grid.members
    m = members[-1] if up else members[0]
    other = m - 1 if up else m + 1
    if other not in grid.log_tau:
        raise ValueError(f"recurrence from m={m} needs member {other} as well; have {members}")
    stride = grid.default_stride() if stride is None else stride
    bracket = toda_bracket(grid, m, stride)
    t = grid.interior(stride)
    k = 2 * stride
    n = len(t) + 2 * k
    new = (
        _log_bracket(bracket, t, m)
        + 2.0 * grid.log_tau[m][k : n - k]
        - grid.log_tau[other][k : n - k]
        - math.log(grid.c_convention)
    )
    return _trimmed(grid, m + 1 if up else m - 1, new, stride)


def toda_extend(grid: TauGrid, target_m: int, stride: int | None = None) -> TauGrid:
    """Extend the sequence until it contains ``target_m``.

    Every step consumes ``2 * stride`` grid points per edge from all members
    (recorded in ``eroded_margin``); the input grid is left untouched.
    """
    while target_m > grid.members[-1]:
        grid = _step(grid, True, stride)
    while target_m < grid.members[0]:
        grid = _step(grid, False, stride)
    return grid


def implied_log_c(grid: TauGrid, m: int, stride: int | None = None) -> np.ndarray:
    """log c(m) implied by members m-1, m, m+1 on ``grid.interior(stride)``.

    Constant in t exactly when the three members are consistent.
    """
    stride = grid.default_stride() if stride is None else stride
    bracket = toda_bracket(grid, m, stride)
    t = grid.interior(stride)
    k = 2 * stride
    n = len(t) + 2 * k
    return (
        _log_bracket(bracket, t, m)
        + 2.0 * grid.log_tau[m][k : n - k]
        - grid.log_tau[m + 1][k : n - k]
        - grid.log_tau[m - 1][k : n - k]
    )


def log_tau_from_hamiltonian(t_values, H_values) -> np.ndarray:
    """log T = integral of H dt on a uniform grid, zero at the first point."""
    t_values = np.asarray(t_values, dtype=float)
    H_values = np.asarray(H_values, dtype=complex)
    re = cumulative_simpson(H_values.real, x=t_values, initial=0.0)
    im = cumulative_simpson(H_values.imag, x=t_values, initial=0.0)
    return re + 1j * im


def with_member(grid: TauGrid, m: int, values) -> TauGrid:
    """Copy of ``grid`` with member ``m`` replaced or added."""
    values = np.asarray(values, dtype=complex)
    if values.shape != grid.t_values.shape:
        raise ValueError(f"member length {values.shape[0]} != grid length {grid.t_values.shape[0]}")
    log_tau = dict(grid.log_tau)
    log_tau[m] = values
    return replace(grid, log_tau=log_tau)
