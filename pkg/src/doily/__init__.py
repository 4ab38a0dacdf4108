"""Exact engine for the generalized quadrangle of order two ("the doily"),
its Veldkamp space, and the two-qubit Pauli-operator correspondence."""

from .gf2 import (
    GF2Vector,
    ProjectiveSpace,
    projective_points,
    quadratic_form_q42,
    span_closure,
    symplectic_form,
)
from .geometry import (
    CapacityError,
    GQReport,
    Hyperplane,
    PointLineGeometry,
    TriadReport,
    mask_of,
    points_of,
)
from .w2 import (
    ConstructionError,
    automorphism_count,
    build_q42,
    build_w2_symplectic,
    fano_plane_at,
    find_isomorphism,
    projective_geometry,
)
from .veldkamp import (
    LINE_TYPES,
    ClassificationError,
    IsomorphismError,
    VeldkampLine,
    VeldkampSpace,
    build_veldkamp_space,
    classify_core,
    pentad_center,
    pg42_functional_map,
    third_member_mask,
    veldkamp_line_through,
)
from .pauli import (
    CorrespondenceError,
    HyperplaneInterpretation,
    MerminSquare,
    PauliCorrespondence,
    PauliOperator,
    SquareStructureError,
    build_bijection,
    commutes,
    interpret_hyperplane,
    mermin_square,
    pauli_from_label,
)

__version__ = "0.1.0"

__all__ = [
    "GF2Vector",
    "ProjectiveSpace",
    "projective_points",
    "quadratic_form_q42",
    "span_closure",
    "symplectic_form",
    "CapacityError",
    "GQReport",
    "Hyperplane",
    "PointLineGeometry",
    "TriadReport",
    "mask_of",
    "points_of",
    "ConstructionError",
    "automorphism_count",
    "build_q42",
    "build_w2_symplectic",
    "fano_plane_at",
    "find_isomorphism",
    "projective_geometry",
    "LINE_TYPES",
    "ClassificationError",
    "IsomorphismError",
    "VeldkampLine",
    "VeldkampSpace",
    "build_veldkamp_space",
    "classify_core",
    "pentad_center",
    "pg42_functional_map",
    "third_member_mask",
    "veldkamp_line_through",
    "CorrespondenceError",
    "HyperplaneInterpretation",
    "MerminSquare",
    "PauliCorrespondence",
    "PauliOperator",
    "SquareStructureError",
    "build_bijection",
    "commutes",
    "interpret_hyperplane",
    "mermin_square",
    "pauli_from_label",
]
