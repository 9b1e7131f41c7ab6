"""Bundled algebra documents used by the tests and handy as CLI input.

The corpus covers every hypothesis the library's theorems need: a
degenerate one-element algebra, Boolean algebras of sizes 2, 4, and 8,
MO2 and MO3, the benzene ring as a non-orthomodular control, and
MO2-based quantum monadic / monadic quasi-implication documents with
the identity and the simple quantifier.
"""
from __future__ import annotations

from importlib import resources

from .errors import NoSuchElement
from .textio import AlgebraDocument, parse_algebra

CORPUS_NAMES = (
    "degenerate",
    "two",
    "b4",
    "b8",
    "mo2",
    "mo3",
    "benzene",
    "mo2_qma_identity",
    "mo2_qma_simple",
    "mo2_mqia_identity",
    "mo2_mqia_simple",
)

# orthomodular lattice documents (the benzene control is merely "ol")
OML_NAMES = ("two", "b4", "b8", "mo2", "mo3")
QMA_NAMES = ("mo2_qma_identity", "mo2_qma_simple")
MQIA_NAMES = ("mo2_mqia_identity", "mo2_mqia_simple")


def corpus_path(name: str):
    """Filesystem path of a bundled document (usable as a CLI argument)."""
    if name not in CORPUS_NAMES:
        raise NoSuchElement(f"no corpus document named {name!r}; have {', '.join(CORPUS_NAMES)}")
    return resources.files(__package__) / "corpus" / f"{name}.alg"


def corpus_text(name: str) -> str:
    return corpus_path(name).read_text()


def corpus_document(name: str) -> AlgebraDocument:
    return parse_algebra(corpus_text(name))
