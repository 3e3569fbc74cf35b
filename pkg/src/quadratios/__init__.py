"""quadratios: numerical verification of shifted-ratio asymptotics for
quadratic Dirichlet L-functions."""

from .arith import (
    FactorSieve,
    enumerate_fundamental_discriminants,
    is_fundamental_discriminant,
    kronecker,
    mobius,
    squarefree_kernel,
)
from .empirical import SweepConfig, compare, empirical_thm1, empirical_thm2, empirical_thm3, empirical_thm4
from .eulerprod import EulerProductSpec, P_D, P_D2, P_big
from .gauss import G_quadratic, Psi8, QuadChar, tau_bruteforce
from .lfunc import l_afe, l_hurwitz, log_derivative
from .predict import (
    M_exponent,
    N_exponent,
    N_r,
    Prediction,
    Shifts,
    predict_thm1,
    predict_thm2,
    predict_thm3,
    predict_thm4,
)
from .special import WeightSpec, gamma_e, gamma_o, hurwitz_zeta, zeta

__version__ = "0.1.0"

__all__ = [
    "FactorSieve",
    "enumerate_fundamental_discriminants",
    "is_fundamental_discriminant",
    "kronecker",
    "mobius",
    "squarefree_kernel",
    "SweepConfig",
    "compare",
    "empirical_thm1",
    "empirical_thm2",
    "empirical_thm3",
    "empirical_thm4",
    "EulerProductSpec",
    "P_D",
    "P_D2",
    "P_big",
    "G_quadratic",
    "Psi8",
    "QuadChar",
    "tau_bruteforce",
    "l_afe",
    "l_hurwitz",
    "log_derivative",
    "M_exponent",
    "N_exponent",
    "N_r",
    "Prediction",
    "Shifts",
    "predict_thm1",
    "predict_thm2",
    "predict_thm3",
    "predict_thm4",
    "WeightSpec",
    "gamma_e",
    "gamma_o",
    "hurwitz_zeta",
    "zeta",
    "__version__",
]
