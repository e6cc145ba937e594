"""Exact finite hypergeometric sums over finite fields.

The package computes H_q(alpha, beta | t) in exact arithmetic -- Gauss
and Jacobi sums live in cyclotomic fields with rational coefficients --
and verifies the identities tying those values to brute-force point
counts on explicit varieties and their toric completions.
"""

from .cyclo import CycloNum, root_of_unity
from .errors import HqcountError
from .field import FieldTable, build_field, omega_log, trace_exponent
from .gauss import (GaussTable, gauss_inverse, gauss_sum,
                    hasse_davenport_defect, jacobi_sum, stickelberger_sigma,
                    table_for)
from .hyper import (CyclotomicData, HGParams, HValue, Provenance,
                    cyclotomic_from_params, greene_value, h_general, h_over_q,
                    hyp_exponential_sum, landau_bound, params_from_cyclotomic,
                    s_multiplicity, s_sum)
from .report import CountReport, report_serialize
from .toric import (Cell, cell_gcd, cell_sum_identity, counting_number,
                    enumerate_cells, p_rs)
from .variety import (AltVarietySpec, alt_variety_count, completed_count,
                      component_count, curve_counts, main_theorem_check,
                      surface_count, torus_count)

__version__ = "0.1.0"

__all__ = [
    "AltVarietySpec", "Cell", "CountReport", "CycloNum", "CyclotomicData",
    "FieldTable", "GaussTable", "HGParams", "HValue", "HqcountError",
    "Provenance", "alt_variety_count", "build_field", "cell_gcd",
    "cell_sum_identity", "completed_count", "component_count",
    "counting_number", "curve_counts", "cyclotomic_from_params",
    "enumerate_cells", "gauss_inverse", "gauss_sum", "greene_value",
    "h_general", "h_over_q", "hasse_davenport_defect", "hyp_exponential_sum",
    "jacobi_sum", "landau_bound", "main_theorem_check", "omega_log", "p_rs",
    "params_from_cyclotomic", "report_serialize", "root_of_unity",
    "s_multiplicity", "s_sum", "stickelberger_sigma", "surface_count",
    "table_for", "torus_count", "trace_exponent",
]
