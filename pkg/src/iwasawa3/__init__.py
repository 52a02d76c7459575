"""Exact arithmetic and criteria for lambda >= 2 in the cyclotomic Z3-extension
of imaginary quadratic fields Q(sqrt(-d)), 3 not dividing d."""

from .criteria import (
    CaseTag,
    LambdaReport,
    Verdict,
    analyze,
    analyze_inert,
    analyze_split,
    classify,
    h_minus_witness_pi9,
    kummer_rank1_witness,
)
from .errors import (
    HypothesisError,
    IntegralityError,
    LogicError,
    NoSquareRootError,
    PrecisionError,
)
from .padic3 import (
    DEFAULT_PRECISION,
    PiPrecision,
    RamQuadLocal,
    Z3Approx,
    Zeta9Local,
    congruent_mod_pi,
    cube_residues_mod_pi9,
    embed_split_eps,
    hensel_sqrt,
    is_cube_mod_pi9,
    iwasawa_log_q3,
    iwasawa_log_ramquad,
    unit_normal_form,
    log_eps_ratio,
    log_ratio_mod9,
    pi_valuation,
)
from .quadfield import (
    BqForm,
    FormClassGroup,
    IdealRep,
    K1Elem,
    QuadElem,
    class_group,
    dirichlet_h_imag,
    field_discriminant,
    fundamental_unit,
    ideal_power_generator,
    is_cube,
    kronecker,
    prime_above_3_split,
    squarefree_core,
    verify_unit_relations,
)

__version__ = "0.1.0"

__all__ = [
    "CaseTag",
    "LambdaReport",
    "Verdict",
    "analyze",
    "analyze_inert",
    "analyze_split",
    "classify",
    "h_minus_witness_pi9",
    "kummer_rank1_witness",
    "HypothesisError",
    "IntegralityError",
    "LogicError",
    "NoSquareRootError",
    "PrecisionError",
    "DEFAULT_PRECISION",
    "PiPrecision",
    "RamQuadLocal",
    "Z3Approx",
    "Zeta9Local",
    "congruent_mod_pi",
    "cube_residues_mod_pi9",
    "embed_split_eps",
    "hensel_sqrt",
    "is_cube_mod_pi9",
    "iwasawa_log_q3",
    "iwasawa_log_ramquad",
    "unit_normal_form",
    "log_eps_ratio",
    "log_ratio_mod9",
    "pi_valuation",
    "BqForm",
    "FormClassGroup",
    "IdealRep",
    "K1Elem",
    "QuadElem",
    "class_group",
    "dirichlet_h_imag",
    "field_discriminant",
    "fundamental_unit",
    "ideal_power_generator",
    "is_cube",
    "kronecker",
    "prime_above_3_split",
    "squarefree_core",
    "verify_unit_relations",
]
