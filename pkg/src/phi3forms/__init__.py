"""Same-form factorizations of the third cyclotomic polynomial.

Classifies identities phi3(x) = phi3(a_1) ... phi3(a_n) with every phi3(a_i)
prime through factorization in the Eisenstein integers, cross-checks the
classification against brute force, and searches for threat configurations.
"""
from .eisenstein import EisensteinInt, conj, mul, norm, recognize, unit
from .families import (Classification, Solution, classify, compute_x, expand_product,
                       four_factor_family, ones_tuples, sporadics, three_factor_family,
                       two_factor_family)
from .kernels import BACKEND
from .oracle import completeness_check, enumerate_solutions
from .primality import factor, inv_phi3, is_prime, phi3
from .threats import (is_n_threat, min_prime_factor_scan, no_double_triple_threats,
                      search_odd_quadruple_threats, search_quadruple_threats, verify_fixture)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Classification", "EisensteinInt", "Solution", "classify", "completeness_check",
    "compute_x", "conj", "enumerate_solutions", "expand_product", "factor",
    "four_factor_family", "inv_phi3", "is_n_threat", "is_prime", "min_prime_factor_scan",
    "mul", "no_double_triple_threats", "norm", "ones_tuples", "phi3", "recognize",
    "search_odd_quadruple_threats", "search_quadruple_threats", "sporadics",
    "three_factor_family", "two_factor_family", "unit", "verify_fixture",
]
