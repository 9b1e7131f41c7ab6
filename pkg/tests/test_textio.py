"""Parser/serializer round-trips and error reporting."""
from __future__ import annotations

import pytest

from orthologic import (
    BoundedQIA,
    DuplicateElement,
    FiniteOrtholattice,
    MissingSection,
    MonadicOrthoFrame,
    OrthoFrame,
    ParseError,
    QuantumMonadicAlgebra,
    UnknownElement,
    build_structure,
    check_ortholattice,
    document_checks,
    document_from_structure,
    oml_to_bqia,
    parse_algebra,
    serialize_algebra,
    serialize_structure,
)
from orthologic.corpus import CORPUS_NAMES, corpus_document, corpus_text


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_round_trips_exactly(name):
    text = corpus_text(name)
    assert serialize_algebra(parse_algebra(text)) == text


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_validates(name):
    _, reports = document_checks(corpus_document(name))
    assert all(r.passed for r in reports)


def test_parse_tolerates_comments_and_blank_lines():
    text = corpus_text("two")
    noisy = "# a comment\n\n" + text.replace("kind oml", "kind oml   # trailing comment")
    doc = parse_algebra(noisy)
    assert doc.kind == "oml"
    assert serialize_algebra(doc) == text


def test_parse_accepts_generating_pairs():
    # redundant, non-cover pairs; closure recovers the same lattice
    text = (
        "algebra two_redundant\nkind oml\nelements 0 1\n"
        "order 0<1 0<0 1<1 0<1\nocomp 0:1\n"
    )
    structure = build_structure(parse_algebra(text))
    assert structure.le(0, 1)
    assert check_ortholattice(structure).passed


def test_self_complement_parses_but_fails_checks():
    text = (
        "algebra chain\nkind oml\nelements 0 a 1\n"
        "order 0<a a<1\nocomp 0:1 a:a\n"
    )
    doc = parse_algebra(text)
    _, reports = document_checks(doc)
    assert not reports[0].passed
    assert reports[0].rules_failed() == ("complement-law",)
    assert len(reports) == 1  # the orthomodularity check is not reached


def test_unknown_element_with_position():
    text = "algebra t\nkind oml\nelements 0 1\norder 0<zz\nocomp 0:1\n"
    with pytest.raises(UnknownElement) as exc:
        parse_algebra(text)
    assert exc.value.line == 4


def test_duplicate_element():
    with pytest.raises(DuplicateElement):
        parse_algebra("algebra t\nkind oml\nelements 0 0\nocomp 0:0\n")


def test_missing_sections():
    with pytest.raises(MissingSection):
        parse_algebra("algebra t\nkind oml\nelements 0 1\norder 0<1\n")  # no ocomp
    with pytest.raises(MissingSection):
        parse_algebra("algebra t\nkind bqia\nelements 0 1\ntable\nrow 0 : 1 1\nrow 1 : 0 1\n")
    with pytest.raises(MissingSection):
        parse_algebra("algebra t\n")


def test_unpaired_ocomp_rejected():
    text = "algebra t\nkind oml\nelements 0 a b 1\norder 0<a 0<b a<1 b<1\nocomp 0:1\n"
    with pytest.raises(ParseError) as exc:
        parse_algebra(text)
    assert "unpaired" in str(exc.value)


def test_conflicting_ocomp_rejected():
    text = "algebra t\nkind oml\nelements 0 a b 1\norder 0<a 0<b a<1 b<1\nocomp 0:1 a:b a:a\n"
    with pytest.raises(DuplicateElement):
        parse_algebra(text)


def test_sections_out_of_order_rejected():
    text = "algebra t\nkind oml\nelements 0 1\nocomp 0:1\norder 0<1\n"
    with pytest.raises(ParseError) as exc:
        parse_algebra(text)
    assert "out of order" in str(exc.value)


def test_bad_row_shapes():
    base = "algebra t\nkind bqia\nelements 0 1\nzero 0\ntable\n"
    with pytest.raises(ParseError):
        parse_algebra(base + "row 0 : 1\nrow 1 : 0 1\n")  # short row
    with pytest.raises(DuplicateElement):
        parse_algebra(base + "row 0 : 1 1\nrow 0 : 1 1\n")
    with pytest.raises(MissingSection):
        parse_algebra(base + "row 0 : 1 1\n")  # no row for element 1


def test_reserved_characters_in_names_rejected():
    with pytest.raises(ParseError):
        parse_algebra("algebra t\nkind oml\nelements a:b c\nocomp a:b:c\n")


def test_frame_documents(mo2_bqia):
    from orthologic import maclaren_frame

    frame = maclaren_frame(mo2_bqia)
    text = serialize_structure(frame, "m", "frame")
    doc = parse_algebra(text)
    rebuilt = build_structure(doc)
    assert rebuilt == frame  # perp lines are undirected and symmetrize


def test_empty_frame_document():
    text = "algebra empty\nkind frame\npoints\n"
    frame = build_structure(parse_algebra(text))
    assert frame.m == 0
    assert serialize_algebra(parse_algebra(text)) == text


def test_monadic_frame_document(corpus_structures):
    from orthologic import monadic_maclaren_frame

    mf = monadic_maclaren_frame(corpus_structures["mo2_mqia_identity"])
    text = serialize_structure(mf, "mm", "mframe")
    doc = parse_algebra(text)
    assert build_structure(doc) == mf
    assert serialize_algebra(doc) == text


def test_provenance_comment_round_trip(mo2):
    text = serialize_structure(oml_to_bqia(mo2), "mo2_bqia", "bqia", ("mo2", "oml_to_bqia"))
    assert text.startswith("# derived-from: mo2 via oml_to_bqia\n")
    doc = parse_algebra(text)
    assert doc.provenance == ("mo2", "oml_to_bqia")
    assert serialize_algebra(doc) == text


def test_converted_document_revalidates(mo2):
    text = serialize_structure(oml_to_bqia(mo2), "mo2_bqia", "bqia")
    _, reports = document_checks(parse_algebra(text))
    assert all(r.passed for r in reports)


def test_degenerate_document_has_one_row():
    text = corpus_text("degenerate")
    assert "kind bqia" in text
    assert text.count("row") == 1


def test_document_from_structure_infers_kinds(mo2, mo2_bqia, corpus_structures):
    assert document_from_structure(mo2, "m").kind == "oml"
    assert document_from_structure(mo2_bqia, "m").kind == "bqia"
    assert document_from_structure(corpus_structures["mo2_qma_simple"], "m").kind == "qma"
