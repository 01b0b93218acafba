"""Invariant suites behind ``picard-tau verify``.

Every check returns the maximum residual over its grid; a check passes when
that residual is below its tolerance. Default tolerances live in
:class:`Tolerances` and are scaled uniformly by ``--tol-scale``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, fields, replace
from itertools import product

import numpy as np
from scipy.integrate import quad

from . import elliptic_core as ec
from . import painleve_vi as pv
from . import tau_functions as tf
from . import theta_functions as th
from .finite_diff import derivative, jet
from .jacobi_functions import incomplete_F, jacobi_dt, jacobi_sn_cn_dn, second_kind_E


@dataclass(frozen=True)
class Tolerances:
    legendre: float = 1e-12
    modulus: float = 1e-14
    agm_symmetry: float = 1e-14
    derivative_rel: float = 1e-7
    quasi_periodicity: float = 1e-10
    heat: float = 1e-9
    theta_dtau_fd: float = 1e-7
    null_modulus: float = 1e-12
    integral_rep: float = 1e-9
    expansion_ratio: float = 0.2
    pythagorean: float = 1e-11
    sn_du: float = 1e-8
    second_kind: float = 1e-9
    jacobi_dt_rel: float = 1e-6
    small_t: float = 1e-5
    roundtrip_F: float = 1e-9
    params: float = 1e-14
    pvi: float = 1e-6
    pvi_algebraic: float = 1e-12
    evi: float = 1e-6
    evi_linear: float = 1e-13
    dual_q0: float = 1e-10
    weierstrass: float = 1e-9
    dual_H0: float = 1e-8
    theta_ratio: float = 1e-10
    hamiltonian_route: float = 1e-9
    okamoto_routes: float = 1e-7
    okamoto_roundtrip: float = 1e-8
    okamoto_h1: float = 1e-7
    symmetry: float = 1e-9
    log_derivative: float = 1e-7
    tau_sn_form: float = 1e-8
    normalization: float = 1e-10
    toda_h2: float = 1e-5
    toda_c: float = 1e-6

    def scaled(self, factor: float) -> "Tolerances":
        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})


@dataclass(frozen=True)
class CheckResult:
    name: str
    points: int
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.max_residual) and self.max_residual <= self.tolerance


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def _scaled(a, b):
    return abs(a - b) / max(1.0, abs(b))


def _result(name, residuals, tol):
    residuals = [float(r) for r in residuals]
    return CheckResult(name, len(residuals), max(residuals) if residuals else float("nan"), tol)


def picard_grid(density: int = 4):
    """(t, x, y) points of the Picard checks: density x density in (t, x), y in {0, 0.2}."""
    ts = np.linspace(0.2, 0.8, density)
    xs = np.linspace(0.3, 1.2, density)
    return [(float(t), float(x), y) for t, x, y in product(ts, xs, (0.0, 0.2))]


# -- elliptic ----------------------------------------------------------------

def _elliptic(density, tol):
    ts = np.linspace(0.05, 0.95, max(19, 4 * density + 3))
    ctxs = [ec.make_context(t) for t in ts]
    out = [
        _result("elliptic.legendre", [abs(ec.legendre_defect(c)) for c in ctxs], tol.legendre),
        _result(
            "elliptic.modulus",
            [max(abs(c.k**2 + c.k_prime**2 - 1), abs(c.K_prime - ec.make_context(1 - c.t).K)) for c in ctxs],
            tol.modulus,
        ),
    ]
    fd_ts = np.linspace(0.1, 0.9, max(5, density + 1))
    for name, exact, attr in (("dK_dt", ec.dK_dt, "K"), ("dE_dt", ec.dE_dt, "E")):
        res = [_rel(exact(ec.make_context(t)), derivative(lambda s: getattr(ec.make_context(s), attr), t)) for t in fd_ts]
        out.append(_result(f"elliptic.{name}", res, tol.derivative_rel))
    res = [_rel(ec.dtau_dt(ec.make_context(t)), derivative(lambda s: ec.make_context(s).tau, t)) for t in fd_ts]
    out.append(_result("elliptic.dtau_dt", res, tol.derivative_rel))
    pairs = [(a, b) for a in (0.3, 1.0, 2.5) for b in (0.1, 1.7, 40.0)]
    res = []
    for a, b in pairs:
        g = ec.agm(a, b)
        res.append(_rel(ec.agm(b, a), g))
        res.append(_rel(ec.agm(3.5 * a, 3.5 * b), 3.5 * g))
    out.append(_result("elliptic.agm_symmetry", res, tol.agm_symmetry))
    return out


# -- theta -------------------------------------------------------------------

def _complex_grid(n=5):
    return [complex(a, b) for a in np.linspace(-1.4, 1.9, n) for b in np.linspace(-0.7, 0.9, n)]


def _theta(density, tol):
    ctxs = [ec.make_context(t) for t in (0.2, 0.5, 0.8)]
    vs = _complex_grid(max(5, density + 1))
    quasi, heat = [], []
    multiplier = {1: -1, 2: 1, 3: 1, 4: -1}
    for c, i, v in product(ctxs, (1, 2, 3, 4), vs):
        base = th.theta(i, v, c)
        shift_pi = th.theta(i, v + math.pi, c)
        sign_pi = -1 if i in (1, 2) else 1
        quasi.append(_scaled(shift_pi, sign_pi * base))
        factor = multiplier[i] * cmath.exp(-1j * math.pi * c.tau - 2j * v)
        quasi.append(_scaled(th.theta(i, v + math.pi * c.tau, c), factor * base))
        heat.append(abs(th.heat_residual(i, v, c)) / max(1.0, abs(th.theta_dv(i, v, c, 2))))
    out = [
        _result("theta.quasi_periodicity", quasi, tol.quasi_periodicity),
        _result("theta.heat_equation", heat, tol.heat),
    ]
    nulls = []
    for c in ctxs + [ec.make_context(0.3)]:
        t2, t3, t4 = (th.theta(i, 0.0, c) for i in (2, 3, 4))
        nulls += [abs(t2**2 / t3**2 - c.k), abs(t4**2 / t3**2 - c.k_prime)]
    out.append(_result("theta.null_modulus", nulls, tol.null_modulus))
    rep = [
        _scaled(th.theta4_integral_rep(x, c), th.theta(4, x, c))
        for c, x in product(ctxs, (-1.0, -0.5, 0.25, 1.0))
    ]
    out.append(_result("theta.integral_rep", rep, tol.integral_rep))
    ratio = []
    for c in ctxs:
        ratio.append(abs(th.theta4_expansion_check(0.05, c) / th.theta4_expansion_check(0.025, c) / 64.0 - 1.0))
    out.append(_result("theta.expansion_order", ratio, tol.expansion_ratio))
    fd = []
    for t, i, v in product((0.3, 0.5, 0.7), (1, 2, 3, 4), (0.3, 0.2 + 0.1j)):
        c = ec.make_context(t)
        numeric = derivative(lambda s: th.theta(i, v, ec.make_context(s)), t) / ec.dtau_dt(c)
        fd.append(_scaled(th.theta_dtau(i, v, c), numeric))
    out.append(_result("theta.dtau_fd", fd, tol.theta_dtau_fd))
    return out


# -- jacobi ------------------------------------------------------------------

def _jacobi(density, tol):
    out = []
    pyth, du = [], []
    for t, u in product((0.2, 0.35, 0.6, 0.85), _complex_grid(max(4, density))):
        c = ec.make_context(t)
        sn, cn, dn = jacobi_sn_cn_dn(u, c)
        pyth += [abs(sn**2 + cn**2 - 1), abs(dn**2 + t * sn**2 - 1)]
        num = derivative(lambda s: jacobi_sn_cn_dn(s, c)[0], u)
        du.append(_scaled(num, cn * dn))
    out.append(_result("jacobi.pythagorean", pyth, tol.pythagorean))
    out.append(_result("jacobi.sn_du", du, tol.sn_du))
    quad_res = []
    for t in (0.2, 0.45, 0.8):
        c = ec.make_context(t)
        for u in np.linspace(0.0, 2 * c.K, max(5, density + 1)):
            ref = quad(lambda s: jacobi_sn_cn_dn(s, c)[2].real ** 2, 0.0, u, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
            quad_res.append(_scaled(second_kind_E(u, c), ref))
    out.append(_result("jacobi.second_kind_quadrature", quad_res, tol.second_kind))
    dt_res = []
    for u, t in product((0.5, 1.1, 0.7 + 0.3j), (0.3, 0.5, 0.7)):
        exact = jacobi_dt(u, ec.make_context(t))
        for j in range(3):
            num = derivative(lambda s: jacobi_sn_cn_dn(u, ec.make_context(s))[j], t)
            dt_res.append(_rel(exact[j], num))
    out.append(_result("jacobi.dt_identities", dt_res, tol.jacobi_dt_rel))
    c = ec.make_context(1e-6)
    out.append(
        _result(
            "jacobi.small_t_limit",
            [abs(jacobi_sn_cn_dn(u, c)[0] - math.sin(u)) for u in np.linspace(0.1, 3.0, 7)],
            tol.small_t,
        )
    )
    rt = []
    for t, s in product((0.3, 0.7), (0.1, 0.6, 0.95)):
        c = ec.make_context(t)
        rt.append(abs(jacobi_sn_cn_dn(incomplete_F(s, c), c)[0] - s))
    out.append(_result("jacobi.incomplete_F_roundtrip", rt, tol.roundtrip_F))
    return out


# -- painleve ----------------------------------------------------------------

def _params_residual(b):
    p = pv.params_from_b(b)
    return max(
        abs(p.alpha - p.kappa_inf**2 / 2),
        abs(p.beta + p.kappa0**2 / 2),
        abs(p.gamma - p.kappa1**2 / 2),
        abs(p.delta - (1 - p.theta**2) / 2),
        abs(p.kappa0 - (b[0] + b[1])),
        abs(p.kappa1 - (b[0] - b[1])),
        abs(p.kappa_inf - (b[2] - b[3])),
        abs(p.theta - (b[2] + b[3] + 1)),
    )


def _painleve(density, tol):
    grid = picard_grid(density)
    pars = pv.params_from_b(pv.PICARD_B)
    b0, b1 = pv.picard_b(0), pv.picard_b(1)
    res = {k: [] for k in (
        "pvi", "evi0", "evi1", "dual_q0", "weier", "dual_H0", "theta_ratio", "ham", "qp_route", "h1", "round", "sym_h", "sym_H",
    )}
    for t, x, y in grid:
        pp = pv.PicardParams(x, y)
        ctx = ec.make_context(t)
        res["pvi"].append(abs(pv.pvi_residual(t, *pv.picard_q0_jet(t, pp), pars)))
        h0 = jet(lambda s: pv.picard_h(s, pp, 0), t)
        h1 = jet(lambda s: pv.picard_h(s, pp, 1), t)
        res["evi0"].append(abs(pv.evi_residual(t, *h0, b0)))
        res["evi1"].append(abs(pv.evi_residual(t, *h1, b1)))
        q0 = pv.picard_q0(t, pp)
        res["dual_q0"].append(_scaled(q0, pv.picard_q0_sn_form(t, pp)))
        res["weier"].append(_scaled(q0, pv.picard_q0_weierstrass(t, pp)))
        H0 = pv.picard_H0(t, pp)
        res["dual_H0"].append(_scaled(H0, pv.picard_H0_from_q(t, pp)))
        sn, cn, dn = jacobi_sn_cn_dn(pp.z(ctx), ctx)
        rhs = pv.log_theta_dx(4, t, pp) + 2 * ctx.K / math.pi * cn * dn / sn
        res["theta_ratio"].append(_scaled(pv.log_theta_dx(1, t, pp), rhs))
        p_mom = pv.momentum_from_qprime(t, q0, pv.picard_q0_dt(t, pp), pars)
        res["ham"].append(_scaled(pv.hamiltonian_H(t, q0, p_mom, pars), H0))
        up = pv.okamoto_shift_h(t, *h0, b0, "up")
        res["qp_route"].append(abs(up - pv.picard_h_plus_from_qp(t, pp)))
        res["h1"].append(abs(up - h1[0]))
        plus = jet(lambda s: pv.picard_h_plus_from_qp(s, pp), t)
        res["round"].append(abs(pv.okamoto_shift_h(t, *plus, b0, "down") - h0[0]))
        shifted = pp.shifted(math.pi / 2, math.pi / 2)
        res["sym_h"].append(abs(h1[0] - pv.picard_h(t, shifted, 0)))
        res["sym_H"].append(
            abs(pv.picard_H1(t, pp) - (pv.picard_H0(t, shifted) + 1 / (4 * t) + 1 / (4 * (t - 1))))
        )
    sqrt_res = []
    for t in np.linspace(0.1, 0.9, 2 * density + 1):
        s = math.sqrt(t)
        sqrt_res.append(abs(pv.pvi_residual(t, s, 1 / (2 * s), -1 / (4 * t**1.5), pars)))
    linear = [
        abs(pv.evi_residual(t, a * t + 0.125, a, 0.0, b0))
        for t in (0.2, 0.5, 0.7)
        for a in (-1.3, -0.25, 0.0, 0.4, 2.0)
    ]
    presets = [pv.PICARD_B, pv.picard_b(1), (0, 0, 0, 0), (0.3, -1.2, 0.7, 2.5)]
    names = {
        "pvi": ("painleve.pvi_picard", tol.pvi),
        "evi0": ("painleve.evi_h0", tol.evi),
        "evi1": ("painleve.evi_h1", tol.evi),
        "dual_q0": ("painleve.q0_dual_formula", tol.dual_q0),
        "weier": ("painleve.q0_weierstrass", tol.weierstrass),
        "dual_H0": ("painleve.H0_dual_route", tol.dual_H0),
        "theta_ratio": ("painleve.log_theta1_theta4_identity", tol.theta_ratio),
        "ham": ("painleve.hamiltonian_momentum_route", tol.hamiltonian_route),
        "qp_route": ("painleve.okamoto_qp_vs_jet", tol.okamoto_routes),
        "h1": ("painleve.okamoto_h0_to_h1", tol.okamoto_h1),
        "round": ("painleve.okamoto_roundtrip", tol.okamoto_roundtrip),
        "sym_h": ("painleve.symmetry_h", tol.symmetry),
        "sym_H": ("painleve.symmetry_H", tol.symmetry),
    }
    out = [_result(names[k][0], v, names[k][1]) for k, v in res.items()]
    out.append(_result("painleve.pvi_sqrt_t", sqrt_res, tol.pvi_algebraic))
    out.append(_result("painleve.evi_linear_family", linear, tol.evi_linear))
    out.append(_result("painleve.params_consistency", [_params_residual(b) for b in presets], tol.params))
    return out


# -- tau ---------------------------------------------------------------------

def _log_derivative(f, t):
    return derivative(f, t) / f(t)


def _tau(density, tol):
    d0, d1, sn_form = [], [], []
    for t, x, y in picard_grid(density):
        pp = pv.PicardParams(x, y)
        d0.append(abs(_log_derivative(lambda s: tf.tau0(s, pp), t) - pv.picard_H0(t, pp)))
        d1.append(abs(_log_derivative(lambda s: tf.tau1(s, pp), t) - pv.picard_H1(t, pp)))
        sn_form.append(
            abs(_log_derivative(lambda s: tf.tau0_sn_form(s, pp), t) - _log_derivative(lambda s: tf.tau0(s, pp), t))
        )
    out = [
        _result("tau.log_derivative_T0", d0, tol.log_derivative),
        _result("tau.log_derivative_T1", d1, tol.log_derivative),
        _result("tau.t0_sn_form", sn_form, tol.tau_sn_form),
    ]
    pp = pv.PicardParams(0.3, 0.1)
    grid = tf.build_tau_grid(pp, 0.2, 0.8, 500 * density + 1)
    shifted = tf.with_member(grid, 0, grid.log_tau[0] + (0.7 - 2.1j))
    out.append(
        _result("tau.normalization_invariance", np.abs(shifted.d_log_tau(0) - grid.d_log_tau(0)), tol.normalization)
    )
    up = tf.toda_extend(grid, 2)
    t_int = up.interior()
    step = max(1, len(t_int) // 60)
    idx = range(0, len(t_int), step)
    d2 = up.d_log_tau(2)
    out.append(
        _result("tau.toda_T2_vs_okamoto", [abs(d2[i] - pv.picard_H(float(t_int[i]), pp, 2)) for i in idx], tol.toda_h2)
    )
    down = tf.toda_extend(grid, -1)
    t_dn = down.interior()
    dm = down.d_log_tau(-1)
    idx = range(0, len(t_dn), max(1, len(t_dn) // 60))
    out.append(
        _result("tau.toda_Tm1_vs_okamoto", [abs(dm[i] - pv.picard_H(float(t_dn[i]), pp, -1)) for i in idx], tol.toda_h2)
    )
    H2 = [pv.picard_H(float(t), pp, 2) for t in grid.t_values]
    with_t2 = tf.with_member(grid, 2, tf.log_tau_from_hamiltonian(grid.t_values, H2))
    log_c = tf.implied_log_c(with_t2, 1)
    out.append(_result("tau.toda_c1_constant", [abs(v - log_c[len(log_c) // 2]) for v in log_c], tol.toda_c))
    return out


SUITES = {
    "elliptic": _elliptic,
    "theta": _theta,
    "jacobi": _jacobi,
    "painleve": _painleve,
    "tau": _tau,
}


def run_suite(name: str, density: int = 4, tol_scale: float = 1.0) -> list[CheckResult]:
    tol = Tolerances().scaled(tol_scale)
    names = list(SUITES) if name == "all" else [name]
    results = []
    for n in names:
        results.extend(SUITES[n](density, tol))
    return sorted(results, key=lambda r: r.name)


def format_table(results: list[CheckResult]) -> str:
    width = max(len("check"), *(len(r.name) for r in results))
    lines = [f"{'check':<{width}}  {'points':>6}  {'max_residual':>12}  {'tolerance':>9}  status"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<{width}}  {r.points:>6d}  {r.max_residual:>12.3e}  {r.tolerance:>9.1e}  {status}")
    return "\n".join(lines)
