import json
import math

import numpy as np
import pytest

from picard_tau import painleve_vi as pv
from picard_tau import tau_functions as tf
from picard_tau.errors import NonPositiveArgument, StencilTooCoarse
from picard_tau.finite_diff import derivative
from picard_tau.painleve_vi import PICARD_B, PicardParams

# T0(0.5) at x=0.3, y=0, 30-digit theta series
T0_HALF = 0.349043325674527186681635465881


def log_derivative(f, t):
    return derivative(f, t) / f(t)


@pytest.mark.parametrize("t,x,y", [(0.2, 0.3, 0.0), (0.5, 0.9, 0.2), (0.8, 1.2, 0.2), (0.35, 0.6, -0.15)])
def test_log_derivatives_are_hamiltonians(t, x, y):
    pp = PicardParams(x, y)
    assert abs(log_derivative(lambda s: tf.tau0(s, pp), t) - pv.picard_H0(t, pp)) < 1e-7
    assert abs(log_derivative(lambda s: tf.tau1(s, pp), t) - pv.picard_H1(t, pp)) < 1e-7


def test_sn_form_agrees_up_to_constant():
    pp = PicardParams(0.7, 0.2)
    for t in (0.3, 0.6):
        a = log_derivative(lambda s: tf.tau0_sn_form(s, pp), t)
        b = log_derivative(lambda s: tf.tau0(s, pp), t)
        assert abs(a - b) < 1e-8


def test_real_family_is_real_and_positive():
    pp = PicardParams(0.3, 0.0)
    value = tf.tau0(0.5, pp)
    assert abs(value.imag) < 1e-15
    assert value.real == pytest.approx(T0_HALF, rel=1e-13)
    assert complex(np.exp(tf.log_tau0(0.5, pp))) == pytest.approx(value, rel=1e-14)


def test_tau1_nonzero_on_grid():
    pp = PicardParams(0.3, 0.1)
    assert min(abs(tf.tau1(t, pp)) for t in np.linspace(0.2, 0.8, 13)) > 1e-3


def test_unwrap_log_is_continuous():
    phase = np.linspace(0, 12, 200)
    wrapped = np.log(np.exp(1j * phase))
    assert np.allclose(tf.unwrap_log(wrapped).imag, phase)


# -- grid and Toda recurrence ------------------------------------------------

def test_grid_bookkeeping(base_grid):
    assert base_grid.members == [0, 1]
    assert base_grid.spacing == pytest.approx(3e-4)
    assert base_grid.default_stride() == 8
    assert base_grid.b(0) == PICARD_B
    assert base_grid.b(2) == (0, 0, 1.5, -0.5)
    assert len(base_grid.t_values) == 2001


def test_toda_constant_vanishes_at_m1():
    assert tf.toda_constant(PICARD_B, 0) == pytest.approx(0.5)
    assert tf.toda_constant(PICARD_B, 1) == 0
    assert tf.toda_constant(PICARD_B, 2) == pytest.approx(1.5)


def test_T2_matches_okamoto_route(base_grid, toda_pp):
    up = tf.toda_extend(base_grid, 2)
    assert up.members == [0, 1, 2]
    assert up.eroded_margin == 2 * base_grid.default_stride()
    t = up.interior()
    d = up.d_log_tau(2)
    idx = range(0, len(t), 25)
    err = max(abs(d[i] - pv.picard_H(float(t[i]), toda_pp, 2)) for i in idx)
    assert err < 1e-5


def test_Tm1_matches_okamoto_route(base_grid, toda_pp):
    down = tf.toda_extend(base_grid, -1)
    assert down.members == [-1, 0, 1]
    t = down.interior()
    d = down.d_log_tau(-1)
    err = max(abs(d[i] - pv.picard_H(float(t[i]), toda_pp, -1)) for i in range(0, len(t), 25))
    assert err < 1e-5


def test_implied_c1_constant(base_grid, toda_pp):
    H2 = [pv.picard_H(float(t), toda_pp, 2) for t in base_grid.t_values]
    grid = tf.with_member(base_grid, 2, tf.log_tau_from_hamiltonian(base_grid.t_values, H2))
    log_c = tf.implied_log_c(grid, 1)
    assert np.ptp(log_c.real) < 1e-6
    assert np.ptp(log_c.imag) < 1e-6


def test_normalization_invariance(base_grid):
    shifted = tf.with_member(base_grid, 0, base_grid.log_tau[0] + (0.7 - 2.1j))
    assert np.max(np.abs(shifted.d_log_tau(0) - base_grid.d_log_tau(0))) < 1e-10


def test_c_convention_shifts_new_member(toda_pp):
    a = tf.toda_extend(tf.build_tau_grid(toda_pp, 0.3, 0.7, 201), 2)
    b = tf.toda_extend(tf.build_tau_grid(toda_pp, 0.3, 0.7, 201, c_convention=2.0), 2)
    assert np.allclose(a.log_tau[2] - b.log_tau[2], math.log(2.0))


def test_input_grid_not_mutated(base_grid):
    before = {m: v.copy() for m, v in base_grid.log_tau.items()}
    tf.toda_extend(base_grid, 3)
    assert base_grid.members == [0, 1]
    assert base_grid.eroded_margin == 0
    for m, v in before.items():
        assert np.array_equal(base_grid.log_tau[m], v)


def test_erosion_accumulates(toda_pp):
    grid = tf.build_tau_grid(toda_pp, 0.3, 0.7, 101)
    out = tf.toda_extend(grid, 3, stride=1)
    assert out.eroded_margin == 4
    assert all(len(v) == 101 - 8 for v in out.log_tau.values())


def test_stencil_too_coarse(toda_pp):
    grid = tf.build_tau_grid(toda_pp, 0.3, 0.7, 5)
    with pytest.raises(StencilTooCoarse):
        tf.toda_extend(grid, 2, stride=1)


def test_missing_neighbour_member(toda_pp):
    grid = tf.build_tau_grid(toda_pp, 0.3, 0.7, 101, members=(0,))
    with pytest.raises(ValueError):
        tf.toda_extend(grid, 1)


def test_bracket_zero_reported(toda_pp):
    grid = tf.build_tau_grid(toda_pp, 0.3, 0.7, 101)
    zero = tf.with_member(grid, 1, np.zeros(101, dtype=complex))
    # log T1 = 0 makes the bracket equal to the m=1 constant, which is zero
    with pytest.raises(NonPositiveArgument) as info:
        tf.toda_extend(zero, 2, stride=1)
    assert info.value.m == 1
    assert 0.3 <= info.value.t <= 0.7


def test_bracket_sign_change_reported(toda_pp):
    grid = tf.build_tau_grid(toda_pp, 0.3, 0.7, 101)
    t = grid.t_values
    # t(t-1) L' = (t - 1/2)^2 / 2, so the bracket is t - 1/2
    L = (t / 2 + (np.log(1 - t) - np.log(t)) / 8).astype(complex)
    with pytest.raises(NonPositiveArgument) as info:
        tf.toda_extend(tf.with_member(grid, 1, L), 2, stride=1)
    assert info.value.t == pytest.approx(0.5, abs=0.01)


def test_json_round_trip():
    grid = tf.toda_extend(tf.build_tau_grid(PicardParams(0.3, 0.1), 0.2, 0.8, 201), 2)
    back = tf.TauGrid.from_json(grid.to_json())
    assert back.members == grid.members
    assert back.eroded_margin == grid.eroded_margin
    assert back.x == grid.x and back.y == grid.y
    for m in grid.members:
        assert np.array_equal(back.log_tau[m], grid.log_tau[m])
    doc = json.loads(grid.to_json())
    assert set(doc) >= {"t_start", "t_end", "n_points", "x", "y", "c_convention", "members", "eroded_margin"}
    assert doc["x"] == 0.3


def test_complex_labels_serialise():
    grid = tf.build_tau_grid(PicardParams(0.3 + 0.1j, 0.1), 0.3, 0.7, 11)
    doc = json.loads(grid.to_json())
    assert doc["x"] == [0.3, 0.1]
    assert tf.TauGrid.from_json(grid.to_json()).x == 0.3 + 0.1j


def test_bad_grid_arguments(toda_pp):
    with pytest.raises(ValueError):
        tf.build_tau_grid(toda_pp, 0.7, 0.3, 11)
    with pytest.raises(ValueError):
        tf.build_tau_grid(toda_pp, 0.3, 0.7, 11, members=(2,))
