"""Alphabetic presentations of graded superdivision algebras."""
from .words import (
    LETTERS,
    SignedWord,
    commutation,
    commutes,
    format_word,
    grade_add,
    letter_mul,
    parse_word,
    structural_predicates,
    word_grade,
    word_inverse,
    word_mul,
    word_square_sign,
    word_to_matrix,
)
from .algebra import (
    CliffordSignature,
    Presentation,
    Series,
    StructureConstants,
    emit_table,
    parse_presentation,
    schur_commutant_check,
    structure_constants,
    verify_clifford,
    verify_division,
    verify_grading,
    verify_superdivision,
)
from .catalog import ClassId, catalog, lookup
from .classify import (
    classify,
    enumerate_presentations,
    equivalent,
    fingerprint,
    fusion_table,
    identify,
    subalgebra_projections,
)

__version__ = "0.1.0"
