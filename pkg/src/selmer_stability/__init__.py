"""Omega-prime sieves, level censuses and local beta bounds for a mod-p residual representation.

Modules: ``gl2_density`` (Chebotarev check in GL2(F_p)), ``frobenius`` (a_ell
sources), ``omega`` (the Omega prime set), ``levels`` (Carayol admissibility),
``census`` (squarefree Omega-smooth counts), ``local_cohomology`` (beta_ell
bounds over Z/p^N), ``stability`` (Selmer bookkeeping and certificates),
``report``/``cli`` (reproducible runs).
"""

from .census import count_squarefree_smooth, enumerate_squarefree_smooth, census_ratios, nf_lower_bound
from .frobenius import CurveSpec, TraceTable, count_points, trace_of_frobenius, load_trace_table
from .gl2_density import is_omega_class, omega_density_bruteforce, omega_density_closed_form
from .levels import carayol_check, enumerate_admissible
from .local_cohomology import LocalRepData, beta_upper_bound, inertia_invariants, smith_normal_form
from .omega import ResidualRepSpec, classify_prime, empirical_density, sieve_omega
from .stability import LedgerInput, selmer_dim_bounds, stability_certificate, wiles_ledger

CURVE_11A1 = CurveSpec(0, -1, 1, -10, -20, conductor=11)

__all__ = [
    "CURVE_11A1",
    "CurveSpec",
    "LedgerInput",
    "LocalRepData",
    "ResidualRepSpec",
    "TraceTable",
    "beta_upper_bound",
    "carayol_check",
    "census_ratios",
    "classify_prime",
    "count_points",
    "count_squarefree_smooth",
    "empirical_density",
    "enumerate_admissible",
    "enumerate_squarefree_smooth",
    "inertia_invariants",
    "is_omega_class",
    "load_trace_table",
    "nf_lower_bound",
    "omega_density_bruteforce",
    "omega_density_closed_form",
    "selmer_dim_bounds",
    "sieve_omega",
    "smith_normal_form",
    "stability_certificate",
    "trace_of_frobenius",
    "wiles_ledger",
]
