"""Exact genus expansions for lens spaces, ribbon-graph weight systems,
and rooted-map asymptotics."""

from .bernoulli import bernoulli, modified_bernoulli
from .errors import ConsistencyError, GraphParseError, UnsupportedSymbolError
from .lens import (FreeEnergyTable, LensSpace, casson_invariant, dedekind_sum,
                   free_energy_genus, free_energy_table, gevrey_estimate,
                   sln_specialization_residual)
from .numeric import const_eval, map_count_limit, stokes_reference
from .polylog import (f_aux_closed, f_aux_series, f_series, polylog_exp_expansion,
                      polylog_rational)
from .ribbon import (RibbonGraph, SurfaceClass, classify_marking,
                     count_rooted_maps, enumerate_trivalent, parse_graph,
                     weight_bounds_report, weight_gln)
from .scalars import ConstElem, format_rational, parse_rational
from .series import TruncSeries, series_op
from .asympt import (ExpGradedSeries, a_seq, estimate_stokes, k_estimate,
                     map_constants, mu_seq, painleve_residual, richardson,
                     tg_asymptotic_check, transseries_residual)

__version__ = "0.1.0"

__all__ = [
    "ConstElem", "ConsistencyError", "ExpGradedSeries", "FreeEnergyTable",
    "GraphParseError", "LensSpace", "RibbonGraph", "SurfaceClass",
    "TruncSeries", "UnsupportedSymbolError", "a_seq", "bernoulli",
    "casson_invariant", "classify_marking", "const_eval", "count_rooted_maps",
    "dedekind_sum", "enumerate_trivalent", "estimate_stokes", "f_aux_closed",
    "f_aux_series", "f_series", "format_rational", "free_energy_genus",
    "free_energy_table", "gevrey_estimate", "k_estimate", "map_constants",
    "map_count_limit", "modified_bernoulli", "mu_seq", "painleve_residual",
    "parse_graph", "parse_rational", "polylog_exp_expansion",
    "polylog_rational", "richardson", "series_op",
    "sln_specialization_residual", "stokes_reference", "tg_asymptotic_check",
    "transseries_residual", "weight_bounds_report", "weight_gln",
]
