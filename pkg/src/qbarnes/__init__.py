"""Barnes multiple zeta functions, their q-analogues and the q-gamma function."""

from ._core import (
    BranchError,
    CapacityError,
    ConfigError,
    DomainError,
    EvalResult,
    PoleError,
    QBarnesError,
    TruncationPolicy,
)
from .classical import EMConfig, barnes_zeta, em_remainder, hurwitz_direct, hurwitz_em
from .limits import SweepSpec, conjecture_probe, dterm_limit_check, limit_sweep
from .qgamma import QGammaContext, c_q, gamma_q_euler, log_qgamma, qgamma
from .qnum import bernoulli_number, q_binomial_exact, q_number
from .qzeta import (
    ContinuationParams,
    qzeta1_em,
    qzeta_binomial_ac,
    qzeta_direct,
    qzeta_ladder,
    qzeta_nu,
    qzeta_special_value,
)
from .special import gamma

__version__ = "0.1.0"
