"""Acceptance criteria, one test each.

Every test prints ``PASS``/``FAIL`` with its worst residual and tolerance;
the lines are repeated in the terminal summary.
"""

import json
import math
from itertools import product

import numpy as np
import pytest

from picard_tau import elliptic_core as ec
from picard_tau import painleve_vi as pv
from picard_tau import tau_functions as tf
from picard_tau import theta_functions as th
from picard_tau.cli import main
from picard_tau.finite_diff import derivative, jet
from picard_tau.jacobi_functions import jacobi_dt, jacobi_sn_cn_dn
from picard_tau.verify import picard_grid

from conftest import ACCEPTANCE_LINES


def report(number, title, residual, tolerance):
    ok = bool(np.isfinite(residual) and residual < tolerance)
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}  {title}: max {residual:.3e} (tol {tolerance:.0e})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def rel(a, b):
    return abs(a - b) / abs(b)


GRID = picard_grid(4)
B0, B1 = pv.picard_b(0), pv.picard_b(1)
PICARD = pv.params_from_b(pv.PICARD_B)


def test_criterion_01_legendre():
    res = [abs(ec.legendre_defect(ec.make_context(t))) for t in np.linspace(0.05, 0.95, 19)]
    report(1, "Legendre relation, 19 t-values", max(res), 1e-12)


def test_criterion_02_derivative_identities():
    res = []
    for t in (0.25, 0.5, 0.75):
        ctx = ec.make_context(t)
        res.append(rel(ec.dK_dt(ctx), derivative(lambda s: ec.make_context(s).K, t)))
        res.append(rel(ec.dE_dt(ctx), derivative(lambda s: ec.make_context(s).E, t)))
        res.append(rel(ec.dtau_dt(ctx), derivative(lambda s: ec.make_context(s).tau, t)))
    for u, t in product((0.4, 1.1, 0.7 + 0.3j), (0.25, 0.5, 0.75)):
        exact = jacobi_dt(u, ec.make_context(t))
        for j in range(3):
            res.append(rel(exact[j], derivative(lambda s: jacobi_sn_cn_dn(u, ec.make_context(s))[j], t)))
    report(2, "parameter derivatives vs 5-point differences (relative)", max(res), 1e-6)


def test_criterion_03_theta_layer():
    ctxs = [ec.make_context(t) for t in (0.2, 0.5, 0.8)]
    vs = [complex(a, b) for a in np.linspace(-1.4, 1.9, 5) for b in np.linspace(-0.7, 0.9, 5)]
    heat = max(abs(th.heat_residual(i, v, c)) for c, i, v in product(ctxs, (1, 2, 3, 4), vs))
    rep = max(abs(th.theta4_integral_rep(x, c) - th.theta(4, x, c)) for c, x in product(ctxs, np.linspace(-1, 1, 9)))
    ratio = max(
        abs(th.theta4_expansion_check(0.05, c) / th.theta4_expansion_check(0.025, c) / 64 - 1) for c in ctxs
    )
    ok = heat < 1e-9 and rep < 1e-9 and ratio < 0.2
    line = (
        f"{'PASS' if ok else 'FAIL'}  criterion  3  theta layer: heat {heat:.3e} (tol 1e-09), "
        f"integral rep {rep:.3e} (tol 1e-09), x^6 ratio deviation {ratio:.3f} (tol 0.2)"
    )
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_04_picard_solves_pvi():
    jet_res = max(abs(pv.pvi_residual(t, *pv.picard_q0_jet(t, pv.PicardParams(x, y)), PICARD)) for t, x, y in GRID)
    sqrt_res = max(
        abs(pv.pvi_residual(t, math.sqrt(t), 0.5 / math.sqrt(t), -0.25 * t**-1.5, PICARD))
        for t in np.linspace(0.1, 0.9, 9)
    )
    report(4, "P_VI residual of the q0 jet, 4x4 (t,x) grid, y in {0, 0.2}", jet_res, 1e-6)
    report(4, "P_VI residual of q = sqrt(t)", sqrt_res, 1e-12)


def test_criterion_05_evi():
    res = []
    for t, x, y in GRID:
        pp = pv.PicardParams(x, y)
        res.append(abs(pv.evi_residual(t, *jet(lambda s: pv.picard_h(s, pp, 0), t), B0)))
        res.append(abs(pv.evi_residual(t, *jet(lambda s: pv.picard_h(s, pp, 1), t), B1)))
    linear = max(
        abs(pv.evi_residual(t, a * t + 0.125, a, 0.0, B0)) for t in (0.2, 0.5, 0.7) for a in (-1.3, 0.0, 0.4, 2.0)
    )
    report(5, "E_VI residual of the h0 and h1 jets", max(res), 1e-6)
    report(5, "E_VI residual of h = a t + 1/8", linear, 1e-13)


def test_criterion_06_log_derivatives_of_tau():
    res0, res1 = [], []
    for t, x, y in GRID:
        pp = pv.PicardParams(x, y)
        res0.append(abs(derivative(lambda s: tf.tau0(s, pp), t) / tf.tau0(t, pp) - pv.picard_H0(t, pp)))
        res1.append(abs(derivative(lambda s: tf.tau1(s, pp), t) / tf.tau1(t, pp) - pv.picard_H1(t, pp)))
    report(6, "d/dt log T0 = H0", max(res0), 1e-7)
    report(6, "d/dt log T1 = H1", max(res1), 1e-7)


def test_criterion_07_okamoto():
    routes, round_trip, to_h1 = [], [], []
    for t, x, y in GRID:
        pp = pv.PicardParams(x, y)
        h0 = jet(lambda s: pv.picard_h(s, pp, 0), t)
        up = pv.okamoto_shift_h(t, *h0, B0, "up")
        routes.append(abs(up - pv.picard_h_plus_from_qp(t, pp)))
        to_h1.append(abs(up - pv.picard_h(t, pp, 1)))
        plus = jet(lambda s: pv.picard_h_plus_from_qp(s, pp), t)
        round_trip.append(abs(pv.okamoto_shift_h(t, *plus, B0, "down") - h0[0]))
    report(7, "h+ from (q, p) vs h+ from the h jet", max(routes), 1e-7)
    report(7, "down-shift after up-shift is the identity", max(round_trip), 1e-8)
    report(7, "up-shift of h0 equals h1", max(to_h1), 1e-7)


def test_criterion_08_half_period_symmetry():
    res = []
    for t, x, y in GRID:
        pp = pv.PicardParams(x, y)
        shifted = pp.shifted(math.pi / 2, math.pi / 2)
        res.append(abs(pv.picard_h(t, pp, 1) - pv.picard_h(t, shifted, 0)))
        res.append(abs(pv.picard_H1(t, pp) - pv.picard_H0(t, shifted) - 1 / (4 * t) - 1 / (4 * (t - 1))))
    report(8, "h1, H1 vs half-period shifted h0, H0", max(res), 1e-9)


def test_criterion_09_toda_cascade(base_grid, toda_pp):
    up = tf.toda_extend(base_grid, 2)
    t = up.interior()
    d = up.d_log_tau(2)
    err = max(abs(d[i] - pv.picard_H(float(t[i]), toda_pp, 2)) for i in range(0, len(t), 10))
    H2 = [pv.picard_H(float(s), toda_pp, 2) for s in base_grid.t_values]
    with_t2 = tf.with_member(base_grid, 2, tf.log_tau_from_hamiltonian(base_grid.t_values, H2))
    log_c = tf.implied_log_c(with_t2, 1)
    spread = float(np.max(np.abs(log_c - log_c[len(log_c) // 2])))
    report(9, "d/dt log T2 from the recurrence vs H2, 2001-point grid", err, 1e-5)
    report(9, "implied c(1) constant in t", spread, 1e-6)


def test_criterion_10_cli(capsys, tmp_path):
    code = main(["verify", "--suite", "all"])
    table = capsys.readouterr().out
    path = tmp_path / "seq.json"
    seq_code = main(
        ["sequence", "--x", "0.3", "--y", "0.1", "--t-range", "0.2:0.8:401", "--m-max", "2", "--out", str(path)]
    )
    capsys.readouterr()
    text = path.read_text()
    grid = tf.TauGrid.from_json(text)
    same = json.loads(grid.to_json()) == json.loads(text) and grid.members == [0, 1, 2]
    ok = code == 0 and seq_code == 0 and same
    line = (
        f"{'PASS' if ok else 'FAIL'}  criterion 10  CLI: verify --suite all exit {code}, "
        f"sequence exit {seq_code}, JSON round trip {'exact' if same else 'differs'}"
    )
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line + "\n" + table


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
