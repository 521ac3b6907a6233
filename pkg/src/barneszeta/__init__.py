"""Barnes multiple zeta functions, generalized Bernoulli polynomials and real zeros."""

from .errors import DomainError, NumericalError, PoleError
from .kernel import BarnesParams, find_t0, kernel_full, kernel_subtracted
from .multibern import GenBernoulliTable, eval_bernoulli, f_wn, gen_bernoulli_table
from .quad import QuadConfig, QuadResult
from .zeros import (ZeroReport, beta_curve, bernoulli_criterion, find_zero_12, hurwitz_beta,
                    report_12, scan_negative_interval, zero_exists_12)
from .zeta import EvalResult, hurwitz, zeta2_strip, zeta_general, zeta_series, zeta_special_value

__all__ = [
    "BarnesParams", "DomainError", "EvalResult", "GenBernoulliTable", "NumericalError", "PoleError",
    "QuadConfig", "QuadResult", "ZeroReport", "bernoulli_criterion", "beta_curve", "eval_bernoulli",
    "f_wn", "find_t0", "find_zero_12", "gen_bernoulli_table", "hurwitz", "hurwitz_beta", "kernel_full",
    "kernel_subtracted", "report_12", "scan_negative_interval", "zero_exists_12", "zeta2_strip",
    "zeta_general", "zeta_series", "zeta_special_value",
]
