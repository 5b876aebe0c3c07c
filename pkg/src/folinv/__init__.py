"""Exact local invariants of plane-curve and foliation germs at the origin.

Layers: :mod:`folinv.ring` (sparse bivariate polynomials over the rationals
with the local degree-then-y order), :mod:`folinv.stdbasis` (Mora standard
bases, normal forms, colengths, ideal membership), :mod:`folinv.invariants`
(k-th Milnor/Tjurina numbers, intersection numbers, GSV index, polar
intersection numbers, and the identity checks relating them),
:mod:`folinv.scenarios` (a registry of frozen reproduction values with a
batch runner), and :mod:`folinv.cli` (the ``folinv`` command).
"""

from .ring import (
    Monomial,
    Poly,
    X,
    Y,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_quotient,
    multiplicity,
    order_key,
    total_degree,
)
from .stdbasis import (
    INFINITE,
    Ideal,
    StandardBasis,
    colength,
    contains,
    ideal_product,
    ideal_sum,
    is_finite,
    leading_ideal,
    maximal_ideal_power,
    mora_normal_form,
    standard_basis,
)
from .invariants import (
    CurveGerm,
    Foliation,
    InvariantReport,
    PreconditionError,
    ReducedSingularityKind,
    WeightData,
    check_conjecture1,
    curve,
    dim_mk_plus_f_closed,
    ell_k,
    foliation_milnor_k,
    foliation_tjurina_k,
    gsv_index,
    gsv_theorem_check,
    hamiltonian,
    intersection_number,
    is_invariant,
    is_quasihomogeneous_foliation,
    jacobian_ideal,
    milnor_bound_check,
    milnor_k,
    milnor_k_closed,
    milnor_report,
    polar_gsv_check,
    polar_intersection_k,
    quasihomogeneous_identity_check,
    ratio_check,
    reduced_singularity_invariants,
    second_type_milnor_check,
    teissier_k_check,
    tjurina_k,
    weighted_homogeneous_weights,
)
from .scenarios import (
    RegistryError,
    RunReport,
    Scenario,
    load_registry,
    parse_registry,
    run_all,
    run_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "Monomial",
    "Poly",
    "X",
    "Y",
    "monomial_divides",
    "monomial_lcm",
    "monomial_mul",
    "monomial_quotient",
    "multiplicity",
    "order_key",
    "total_degree",
    "INFINITE",
    "Ideal",
    "StandardBasis",
    "colength",
    "contains",
    "ideal_product",
    "ideal_sum",
    "is_finite",
    "leading_ideal",
    "maximal_ideal_power",
    "mora_normal_form",
    "standard_basis",
    "CurveGerm",
    "Foliation",
    "InvariantReport",
    "PreconditionError",
    "ReducedSingularityKind",
    "WeightData",
    "check_conjecture1",
    "curve",
    "dim_mk_plus_f_closed",
    "ell_k",
    "foliation_milnor_k",
    "foliation_tjurina_k",
    "gsv_index",
    "gsv_theorem_check",
    "hamiltonian",
    "intersection_number",
    "is_invariant",
    "is_quasihomogeneous_foliation",
    "jacobian_ideal",
    "milnor_bound_check",
    "milnor_k",
    "milnor_k_closed",
    "milnor_report",
    "polar_gsv_check",
    "polar_intersection_k",
    "quasihomogeneous_identity_check",
    "ratio_check",
    "reduced_singularity_invariants",
    "second_type_milnor_check",
    "teissier_k_check",
    "tjurina_k",
    "weighted_homogeneous_weights",
    "RegistryError",
    "RunReport",
    "Scenario",
    "load_registry",
    "parse_registry",
    "run_all",
    "run_scenario",
    "__version__",
]
