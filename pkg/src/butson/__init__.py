"""Exact and asymptotic counting of partial Butson matrices."""

from .asymptotics import (
    AsymptoticEstimate,
    UnsupportedFormula,
    diagonal_return_asymptotics,
    exact_counterpart,
    log_gamma,
    multinomial_power_sum_estimate,
    p2_asymptotic,
    p3_asymptotic,
    pm_asymptotic_dll,
)
from .census import (
    UnsupportedFamily,
    check_two_prime_structure,
    closed_form_census,
    count_m3_prime,
    count_prime_power_m2,
    count_q2,
    count_two_prime_m2,
    multinomial,
    multinomial_power_sum,
)
from .cyclotomic import (
    CycleDecomposition,
    MultiplicityVector,
    admissible_length,
    cycle_decomposition,
    cyclotomic_polynomial,
    is_vanishing_sum,
)
from .matrices import (
    BudgetExceeded,
    CensusRecord,
    ExponentMatrix,
    brute_force_census,
    dephase,
    is_partial_butson,
    standard_form,
)
from .tristochastic import TristochasticMatrix, count_tristochastic, enumerate_tristochastic, is_tristochastic
from .walks import exact_diagonal_return, mc_return_estimate, mc_return_probability, walk_distribution

__version__ = "0.1.0"
