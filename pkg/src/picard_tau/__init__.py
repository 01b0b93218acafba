"""Picard solution of Painleve VI, its tau-functions and the Toda chain."""

from .elliptic_core import EllipticContext, agm, dE_dt, dK_dt, dtau_dt, legendre_defect, make_context
from .errors import (
    ConvergenceFailure,
    CrossCheckFailure,
    DegenerateShift,
    DomainError,
    NonPositiveArgument,
    NonPositiveInput,
    PicardTauError,
    PoleProximity,
    QuadratureFailure,
    SingularConfiguration,
    StencilTooCoarse,
)
from .jacobi_functions import incomplete_F, jacobi_dt, jacobi_sn_cn_dn, second_kind_E
from .painleve_vi import (
    PICARD_B,
    PainleveParams,
    PicardParams,
    auxiliary_h,
    evi_residual,
    hamiltonian_H,
    momentum_from_qprime,
    okamoto_shift_h,
    params_from_b,
    picard_b,
    picard_H,
    picard_H0,
    picard_H1,
    picard_h,
    picard_q0,
    picard_q0_dt,
    pvi_residual,
    script_E,
    weierstrass_invariants,
)
from .tau_functions import TauGrid, build_tau_grid, implied_log_c, tau0, tau1, toda_extend
from .theta_functions import theta, theta4_expansion_check, theta4_integral_rep, theta_dtau, theta_dv

__version__ = "0.1.0"
