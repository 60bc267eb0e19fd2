"""Chromatic symmetric functions of natural unit interval graphs.

Exact expansions through f-tableaux and Jacobi-Trudi, plus an executable
audit of the sign-reversing injections behind h-positivity for bounce
number at most three.
"""

from .order import HessenbergFunction, bounce_data, enumerate_hessenberg, make_hessenberg, parse_hessenberg
from .symfunc import SymExpansion, brute_chromatic, chromatic_e_expansion, coefficients_in_h
from .tableaux import count_d, enumerate_tableaux, gasharov_expansion, is_f_tableau
from .coefficients import all_coefficients, case_diagram, coefficient_c
from .injections import match_coefficient
from .verifier import oracle_crosscheck, verify_function, verify_range

__all__ = [
    "HessenbergFunction",
    "SymExpansion",
    "all_coefficients",
    "bounce_data",
    "brute_chromatic",
    "case_diagram",
    "chromatic_e_expansion",
    "coefficient_c",
    "coefficients_in_h",
    "count_d",
    "enumerate_hessenberg",
    "enumerate_tableaux",
    "gasharov_expansion",
    "is_f_tableau",
    "make_hessenberg",
    "match_coefficient",
    "oracle_crosscheck",
    "parse_hessenberg",
    "verify_function",
    "verify_range",
]
