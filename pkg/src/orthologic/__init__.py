"""Finite quantum-logic algebras.

Orthomodular lattices and their Sasaki-arrow twin, the bounded
quasi-implication algebras, with quantifiers, orthoframes,
bi-orthogonal completions, exhaustive small-structure enumeration, a
text format, and a CLI.
"""
from .errors import (
    ConversionInconsistency,
    DuplicateElement,
    InconsistentCharacterizations,
    KindMismatch,
    MissingSection,
    NoSuchElement,
    NotALattice,
    NotOrthomodular,
    OrthologicError,
    ParseError,
    SizeMismatch,
    TooLarge,
    UnknownElement,
    ValidationFailed,
)
from .lattice import (
    FiniteOrtholattice,
    SublatticeWitness,
    check_ortholattice,
    check_orthomodular,
    find_benzene_sublattice,
    find_isomorphism,
    implication_polynomial,
    sasaki,
)
from .qia import (
    BoundedQIA,
    FiniteMagma,
    as_bqia,
    bqia_to_oml,
    check_bounded_qia,
    check_qia,
    induced_order,
    oml_to_bqia,
)
from .monadic import (
    HomCandidate,
    MonadicQIA,
    QuantumMonadicAlgebra,
    UnaryOp,
    as_mqia,
    as_qma,
    check_homomorphism,
    check_mqia,
    check_quantifier,
    forall_dual,
    forall_op,
    hom_correspondence,
    identity_op,
    is_mqia_homomorphism,
    is_qma_homomorphism,
    mqia_to_qma,
    qma_to_mqia,
    simple_quantifier,
)
from .frames import (
    BiorthoLattice,
    MonadicOrthoFrame,
    OrthoFrame,
    bi_ortho_lattice,
    check_monadic_orthoframe,
    check_orthoframe,
    embedding,
    enumerate_proper_filters,
    exists_r,
    exists_r_quantifier,
    goldblatt_frame,
    maclaren_frame,
    monadic_goldblatt_frame,
    monadic_maclaren_frame,
    perp_of,
    rel_image,
    with_exists_r,
)
from .enumeration import (
    EnumerationResult,
    enumerate_bqia,
    enumerate_oml,
    enumerate_quantifiers,
    oracle_filter_count,
)
from .report import CheckReport, Violation
from .textio import (
    AlgebraDocument,
    build_structure,
    document_checks,
    document_from_structure,
    parse_algebra,
    serialize_algebra,
    serialize_structure,
)
from .dot import emit_dot

__version__ = "0.1.0"
