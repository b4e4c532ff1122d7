"""Exact computations with decorated polytopes and the toric stacks they classify."""

from .abelian import FgAbelianGroup, cokernel, hnf, snf
from .decorated import Classification, DecoratedPolytope, Kind, classify, face_isotropy, lt_labels, validate
from .deformation import DeformationFamily, rationalize, to_orbifold_pipeline, validate_family
from .delzant import compile_data, sample_level_set, verify_vertex_lattices
from .document import dumps, load, loads
from .isomorphism import are_isomorphic, verify_witness
from .polytope import HPolytope
from .quasilattice import Quasilattice
from .scalar import QQ, FieldElement, RealAlgebraicField

__all__ = [
    "QQ",
    "Classification",
    "DecoratedPolytope",
    "DeformationFamily",
    "FgAbelianGroup",
    "FieldElement",
    "HPolytope",
    "Kind",
    "Quasilattice",
    "RealAlgebraicField",
    "are_isomorphic",
    "classify",
    "cokernel",
    "compile_data",
    "dumps",
    "face_isotropy",
    "hnf",
    "load",
    "loads",
    "lt_labels",
    "rationalize",
    "sample_level_set",
    "snf",
    "to_orbifold_pipeline",
    "validate",
    "validate_family",
    "verify_vertex_lattices",
    "verify_witness",
]
