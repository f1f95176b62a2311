"""Exact Fine-interior geometry of lattice polytopes in dimension 3 (and 4).

Everything is computed over the integers and rationals; there is no
floating point anywhere in the package.
"""

from .classify import (
    ClassificationRecord,
    HollowRecord,
    analyze_hollow,
    classify,
    pi1_order,
    polygon_type,
)
from .cone import Cone, Fan, fan_hilbert_union, hilbert_basis, normal_fan
from .ehrhart import EhrhartProfile, ehrhart_profile, reflexive_by_count
from .fine_interior import (
    analyze,
    canonical_hull,
    fine_interior,
    is_almost_reflexive,
    reflexive_hull,
    support,
    tau,
    tau_chain,
)
from .io import BatchReport, PolytopeInput, emit_report, parse_polytope_file, run_batch
from .lattice import smith_normal_form
from .polytope import (
    HalfSpace,
    LatticePolytope,
    RationalPolytope,
    dual_polytope,
    hull,
    integral_dual_hull,
    is_reflexive,
    lattice_width,
    vertices_from_halfspaces,
)

__version__ = "0.1.0"

__all__ = [
    "BatchReport",
    "ClassificationRecord",
    "Cone",
    "EhrhartProfile",
    "Fan",
    "HalfSpace",
    "HollowRecord",
    "LatticePolytope",
    "PolytopeInput",
    "RationalPolytope",
    "analyze",
    "analyze_hollow",
    "canonical_hull",
    "classify",
    "dual_polytope",
    "ehrhart_profile",
    "emit_report",
    "fan_hilbert_union",
    "fine_interior",
    "hilbert_basis",
    "hull",
    "integral_dual_hull",
    "is_almost_reflexive",
    "is_reflexive",
    "lattice_width",
    "normal_fan",
    "parse_polytope_file",
    "pi1_order",
    "polygon_type",
    "reflexive_by_count",
    "reflexive_hull",
    "run_batch",
    "smith_normal_form",
    "support",
    "tau",
    "tau_chain",
    "vertices_from_halfspaces",
]
