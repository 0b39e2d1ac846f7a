"""Exact-arithmetic toolkit for locally nilpotent derivations on
finitely presented algebras, with slices, exponentials, graded
decompositions, Demazure roots, trinomial varieties, and type A/B/C
classification of cylinders Y x A^1.
"""

from .classify import (
    JiCertificate,
    VarietyDossier,
    classify,
    combined_image_ideal,
    conjectured_hdstar_member,
    fixed_locus,
    ji_lower_bound_check,
    test_type_a,
)
from .derivations import (
    Derivation,
    NilpotencyVerdict,
    PresentedAlgebra,
    cylinder,
    lift,
)
from .grading import GradedDerivationPart, decompose, extreme_parts
from .groebner import (
    GREVLEX,
    LEX,
    GroebnerBasis,
    Ideal,
    MonomialOrder,
    contains_one,
    groebner,
    jacobian_rank_at_point,
    normal_form,
)
from .poly import Polynomial, parse_poly
from .report import ClassificationReport, Evidence
from .toric import (
    Cone,
    DemazureRoot,
    classify_toric,
    detect_line_factor,
    dual_membership,
    enumerate_roots,
    phi_degree,
)
from .trinomial import (
    RigidityVerdict,
    TrinomialData,
    build_relations,
    classify_trinomial,
    is_rigid,
    suspension_lnd,
    type1_lnd,
)

__all__ = [
    "ClassificationReport",
    "Cone",
    "DemazureRoot",
    "Derivation",
    "Evidence",
    "GradedDerivationPart",
    "GroebnerBasis",
    "GREVLEX",
    "Ideal",
    "JiCertificate",
    "LEX",
    "MonomialOrder",
    "NilpotencyVerdict",
    "Polynomial",
    "PresentedAlgebra",
    "RigidityVerdict",
    "TrinomialData",
    "VarietyDossier",
    "build_relations",
    "classify",
    "classify_toric",
    "classify_trinomial",
    "combined_image_ideal",
    "conjectured_hdstar_member",
    "contains_one",
    "cylinder",
    "decompose",
    "detect_line_factor",
    "dual_membership",
    "enumerate_roots",
    "extreme_parts",
    "fixed_locus",
    "groebner",
    "is_rigid",
    "jacobian_rank_at_point",
    "ji_lower_bound_check",
    "lift",
    "normal_form",
    "parse_poly",
    "phi_degree",
    "suspension_lnd",
    "test_type_a",
    "type1_lnd",
]
