"""Shared fixtures: corpus structures and frequently used algebras."""
from __future__ import annotations

import pytest

from orthologic import (
    FiniteOrtholattice,
    as_qma,
    document_checks,
    oml_to_bqia,
    qma_to_mqia,
)
from orthologic.corpus import (
    CORPUS_NAMES,
    MQIA_NAMES,
    OML_NAMES,
    QMA_NAMES,
    corpus_document,
    corpus_text,
)


def load_structure(name):
    doc = corpus_document(name)
    structure, reports = document_checks(doc)
    assert all(r.passed for r in reports), f"{name}: {[r.summary() for r in reports]}"
    return structure


@pytest.fixture(scope="session")
def corpus_structures():
    return {name: load_structure(name) for name in CORPUS_NAMES}


@pytest.fixture(scope="session")
def corpus_omls(corpus_structures):
    return {name: corpus_structures[name] for name in OML_NAMES}


@pytest.fixture(scope="session")
def corpus_bqias(corpus_structures):
    """Every bounded QIA the corpus gives rise to (including the degenerate one)."""
    out = {name: oml_to_bqia(corpus_structures[name]) for name in OML_NAMES}
    out["degenerate"] = corpus_structures["degenerate"]
    return out


@pytest.fixture(scope="session")
def corpus_qmas(corpus_structures):
    return {name: corpus_structures[name] for name in QMA_NAMES}


@pytest.fixture(scope="session")
def corpus_mqias(corpus_structures):
    return {name: corpus_structures[name] for name in MQIA_NAMES}


@pytest.fixture(scope="session")
def mo2(corpus_structures):
    return corpus_structures["mo2"]


@pytest.fixture(scope="session")
def benzene(corpus_structures):
    return corpus_structures["benzene"]


@pytest.fixture(scope="session")
def two(corpus_structures):
    return corpus_structures["two"]


@pytest.fixture(scope="session")
def b4(corpus_structures):
    return corpus_structures["b4"]


@pytest.fixture(scope="session")
def mo2_bqia(mo2):
    return oml_to_bqia(mo2)


def el(structure, name: str) -> int:
    """Index of a named element, for any structure kind used in tests."""
    return structure.names.index(name)
