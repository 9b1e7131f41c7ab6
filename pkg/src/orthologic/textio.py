"""The algebra/frame text format: parser, serializer, kind dispatch.

A document is line-oriented: ``#`` starts a comment, tokens are
whitespace-separated, and each line belongs to the section named by its
first token.  Sections appear in a fixed order per kind::

    algebra NAME
    kind {ol|oml|qia|bqia|mqia|qma|frame|mframe}
    elements e1 ... en            (lattice and magma kinds)
    order a<b ...                 (lattice kinds; any generating pairs)
    ocomp a:b ...                 (lattice kinds; involutive closure applied)
    exists a:b ...                (qma)
    zero e                        (bqia, mqia)
    table                         (magma kinds)
    row e : v1 ... vn
    diamond a:b ...               (mqia)
    points p1 ... pm              (frame kinds)
    perp a b                      (frame kinds; one pair per line)
    rel a b                       (mframe)

Serialization is canonical: derived cover pairs for ``order``, one
normalized pair list per unary section, declaration order throughout,
single-space separation, trailing newline.  A converted document opens
with a ``# derived-from: NAME via OP`` comment, which the parser reads
back as provenance.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DuplicateElement,
    MissingSection,
    ParseError,
    UnknownElement,
)
from .frames import MonadicOrthoFrame, OrthoFrame, check_monadic_orthoframe, check_orthoframe
from .lattice import (
    FiniteOrtholattice,
    bits,
    check_ortholattice,
    check_orthomodular,
)
from .monadic import (
    MonadicQIA,
    QuantumMonadicAlgebra,
    UnaryOp,
    check_mqia,
    check_quantifier,
)
from .qia import BoundedQIA, FiniteMagma, check_bounded_qia, check_qia
from .report import CheckReport

KINDS = ("ol", "oml", "qia", "bqia", "mqia", "qma", "frame", "mframe")
LATTICE_KINDS = ("ol", "oml", "qma")
MAGMA_KINDS = ("qia", "bqia", "mqia")
FRAME_KINDS = ("frame", "mframe")

_SECTION_ORDER = {
    "ol": ("algebra", "kind", "elements", "order", "ocomp"),
    "oml": ("algebra", "kind", "elements", "order", "ocomp"),
    "qma": ("algebra", "kind", "elements", "order", "ocomp", "exists"),
    "qia": ("algebra", "kind", "elements", "table", "row"),
    "bqia": ("algebra", "kind", "elements", "zero", "table", "row"),
    "mqia": ("algebra", "kind", "elements", "zero", "table", "row", "diamond"),
    "frame": ("algebra", "kind", "points", "perp"),
    "mframe": ("algebra", "kind", "points", "perp", "rel"),
}

_DERIVED_RE = re.compile(r"#\s*derived-from:\s*(\S+)\s+via\s+(\S+)\s*$")

_BAD_NAME_CHARS = set("<:#")


@dataclass(frozen=True)
class AlgebraDocument:
    """One parsed (or canonicalized) algebra/frame document."""

    name: str
    kind: str
    names: tuple[str, ...]
    order_pairs: tuple[tuple[int, int], ...] = ()
    ocomp: tuple[int, ...] | None = None
    exists_map: tuple[int, ...] | None = None
    zero: int | None = None
    table: tuple[tuple[int, ...], ...] | None = None
    diamond_map: tuple[int, ...] | None = None
    perp_pairs: tuple[tuple[int, int], ...] = ()
    rel_pairs: tuple[tuple[int, int], ...] = ()
    provenance: tuple[str, str] | None = None


def _tokenize(line: str) -> list[tuple[str, int]]:
    return [(piece.group(), piece.start() + 1) for piece in re.finditer(r"\S+", line)]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.names: list[str] = []
        self.index: dict[str, int] = {}

    def error(self, cls, message, line, col=0):
        raise cls(message, line=line, column=col)

    def lookup(self, token: str, line: int, col: int) -> int:
        if token not in self.index:
            self.error(UnknownElement, f"unknown element or point {token!r}", line, col)
        return self.index[token]

    def declare(self, token: str, line: int, col: int) -> None:
        if any(ch in _BAD_NAME_CHARS for ch in token):
            self.error(ParseError, f"name {token!r} contains a reserved character", line, col)
        if token in self.index:
            self.error(DuplicateElement, f"duplicate name {token!r}", line, col)
        self.index[token] = len(self.names)
        self.names.append(token)


def parse_algebra(text: str) -> AlgebraDocument:
    """Parse a document; errors carry line and column information."""
    p = _Parser(text)
    provenance: tuple[str, str] | None = None

    name: str | None = None
    kind: str | None = None
    order_pairs: list[tuple[int, int]] = []
    ocomp_map: dict[int, int] = {}
    exists_raw: dict[int, int] = {}
    diamond_raw: dict[int, int] = {}
    zero: int | None = None
    rows: dict[int, tuple[int, ...]] = {}
    perp_pairs: list[tuple[int, int]] = []
    rel_pairs: list[tuple[int, int]] = []
    saw: set[str] = set()
    section_rank = -1
    sequence: tuple[str, ...] | None = None

    def split_pair(token: str, sep: str, lineno: int, col: int) -> tuple[int, int]:
        parts = token.split(sep)
        if len(parts) != 2 or not parts[0] or not parts[1]:
            p.error(ParseError, f"malformed pair {token!r} (expected NAME{sep}NAME)", lineno, col)
        return p.lookup(parts[0], lineno, col), p.lookup(parts[1], lineno, col)

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        if "#" in raw_line:
            head = raw_line[: raw_line.index("#")]
            comment = raw_line[raw_line.index("#"):]
            if not head.strip():
                m = _DERIVED_RE.match(comment.strip())
                if m and provenance is None and name is None:
                    provenance = (m.group(1), m.group(2))
        else:
            head = raw_line
        tokens = _tokenize(head)
        if not tokens:
            continue
        key, key_col = tokens[0]
        args = tokens[1:]

        if name is None:
            if key != "algebra":
                p.error(ParseError, f"expected 'algebra', found {key!r}", lineno, key_col)
            if len(args) != 1:
                p.error(ParseError, "'algebra' takes exactly one name", lineno, key_col)
            name = args[0][0]
            continue
        if kind is None:
            if key != "kind":
                p.error(ParseError, f"expected 'kind', found {key!r}", lineno, key_col)
            if len(args) != 1 or args[0][0] not in KINDS:
                p.error(ParseError, f"kind must be one of {', '.join(KINDS)}", lineno, key_col)
            kind = args[0][0]
            sequence = _SECTION_ORDER[kind]
            continue

        if key not in sequence:
            p.error(ParseError, f"section {key!r} not allowed in a {kind} document", lineno, key_col)
        rank = sequence.index(key)
        if rank < section_rank:
            p.error(ParseError, f"section {key!r} out of order", lineno, key_col)
        section_rank = rank
        saw.add(key)

        if key in ("elements", "points"):
            if p.names:
                p.error(DuplicateElement, f"second {key!r} section", lineno, key_col)
            for tok, col in args:
                p.declare(tok, lineno, col)
            if key == "elements" and not p.names:
                p.error(ParseError, "at least one element is required", lineno, key_col)
        elif key == "order":
            for tok, col in args:
                order_pairs.append(split_pair(tok, "<", lineno, col))
        elif key == "ocomp":
            for tok, col in args:
                a, b = split_pair(tok, ":", lineno, col)
                for x, y in ((a, b), (b, a)):
                    if x in ocomp_map and ocomp_map[x] != y:
                        p.error(DuplicateElement, f"conflicting ocomp for {p.names[x]!r}", lineno, col)
                    ocomp_map[x] = y
        elif key in ("exists", "diamond"):
            target = exists_raw if key == "exists" else diamond_raw
            for tok, col in args:
                a, b = split_pair(tok, ":", lineno, col)
                if a in target:
                    p.error(DuplicateElement, f"duplicate {key} entry for {p.names[a]!r}", lineno, col)
                target[a] = b
        elif key == "zero":
            if len(args) != 1:
                p.error(ParseError, "'zero' takes exactly one element", lineno, key_col)
            if zero is not None:
                p.error(DuplicateElement, "second 'zero' section", lineno, key_col)
            zero = p.lookup(args[0][0], lineno, args[0][1])
        elif key == "table":
            if args:
                p.error(ParseError, "'table' takes no arguments", lineno, key_col)
        elif key == "row":
            if "table" not in saw:
                p.error(ParseError, "'row' before 'table'", lineno, key_col)
            if len(args) < 2 or args[1][0] != ":":
                p.error(ParseError, "row syntax is: row NAME : v1 ... vn", lineno, key_col)
            e = p.lookup(args[0][0], lineno, args[0][1])
            if e in rows:
                p.error(DuplicateElement, f"duplicate row for {p.names[e]!r}", lineno, args[0][1])
            values = args[2:]
            if len(values) != len(p.names):
                p.error(ParseError, f"row needs {len(p.names)} entries, found {len(values)}", lineno, key_col)
            rows[e] = tuple(p.lookup(tok, lineno, col) for tok, col in values)
        elif key in ("perp", "rel"):
            if len(args) != 2:
                p.error(ParseError, f"'{key}' takes exactly two points", lineno, key_col)
            a = p.lookup(args[0][0], lineno, args[0][1])
            b = p.lookup(args[1][0], lineno, args[1][1])
            (perp_pairs if key == "perp" else rel_pairs).append((a, b))

    if name is None:
        raise MissingSection("missing 'algebra' section", line=0)
    if kind is None:
        raise MissingSection("missing 'kind' section", line=0)

    carrier_section = "points" if kind in FRAME_KINDS else "elements"
    if carrier_section not in saw:
        raise MissingSection(f"missing {carrier_section!r} section", line=0)

    n = len(p.names)
    ocomp: tuple[int, ...] | None = None
    exists_map: tuple[int, ...] | None = None
    diamond_map: tuple[int, ...] | None = None
    table: tuple[tuple[int, ...], ...] | None = None

    if kind in LATTICE_KINDS:
        if "ocomp" not in saw:
            raise MissingSection("missing 'ocomp' section", line=0)
        missing = [p.names[e] for e in range(n) if e not in ocomp_map]
        if missing:
            raise ParseError(
                "ocomp leaves elements unpaired: " + ", ".join(missing), line=0
            )
        ocomp = tuple(ocomp_map[e] for e in range(n))
    if kind == "qma":
        if "exists" not in saw:
            raise MissingSection("missing 'exists' section", line=0)
        missing = [p.names[e] for e in range(n) if e not in exists_raw]
        if missing:
            raise ParseError("exists leaves elements unmapped: " + ", ".join(missing), line=0)
        exists_map = tuple(exists_raw[e] for e in range(n))
    if kind in MAGMA_KINDS:
        if "table" not in saw:
            raise MissingSection("missing 'table' section", line=0)
        missing = [p.names[e] for e in range(n) if e not in rows]
        if missing:
            raise MissingSection("missing table rows for: " + ", ".join(missing), line=0)
        table = tuple(rows[e] for e in range(n))
    if kind in ("bqia", "mqia"):
        if zero is None:
            raise MissingSection("missing 'zero' section", line=0)
    if kind == "mqia":
        if "diamond" not in saw:
            raise MissingSection("missing 'diamond' section", line=0)
        missing = [p.names[e] for e in range(n) if e not in diamond_raw]
        if missing:
            raise ParseError("diamond leaves elements unmapped: " + ", ".join(missing), line=0)
        diamond_map = tuple(diamond_raw[e] for e in range(n))

    return AlgebraDocument(
        name=name,
        kind=kind,
        names=tuple(p.names),
        order_pairs=tuple(order_pairs),
        ocomp=ocomp,
        exists_map=exists_map,
        zero=zero,
        table=table,
        diamond_map=diamond_map,
        perp_pairs=tuple(perp_pairs),
        rel_pairs=tuple(rel_pairs),
        provenance=provenance,
    )


def build_structure(doc: AlgebraDocument):
    """Instantiate the structure a document describes (no axiom checks)."""
    if doc.kind in ("ol", "oml"):
        return FiniteOrtholattice.from_order(doc.names, doc.order_pairs, doc.ocomp)
    if doc.kind == "qma":
        lat = FiniteOrtholattice.from_order(doc.names, doc.order_pairs, doc.ocomp)
        return QuantumMonadicAlgebra(lat=lat, exists=UnaryOp(doc.exists_map))
    if doc.kind == "qia":
        return FiniteMagma(len(doc.names), doc.names, doc.table)
    if doc.kind in ("bqia", "mqia"):
        magma = FiniteMagma(len(doc.names), doc.names, doc.table)
        bq = BoundedQIA(magma=magma, zero=doc.zero, one=magma.table[0][0])
        if doc.kind == "bqia":
            return bq
        return MonadicQIA(qia=bq, diamond=UnaryOp(doc.diamond_map))
    if doc.kind in ("frame", "mframe"):
        m = len(doc.names)
        perp = [0] * m
        for a, b in doc.perp_pairs:
            # perp lines are undirected; orthogonality is symmetric by intent
            perp[a] |= 1 << b
            perp[b] |= 1 << a
        frame = OrthoFrame(m=m, labels=doc.names, perp=tuple(perp))
        if doc.kind == "frame":
            return frame
        rel = [0] * m
        for a, b in doc.rel_pairs:
            rel[a] |= 1 << b
        return MonadicOrthoFrame(frame=frame, rel=tuple(rel))
    raise ParseError(f"unknown kind {doc.kind!r}")


def document_checks(doc: AlgebraDocument, all_witnesses: bool = False):
    """Build the structure and run its kind's checks, in dependency order.

    Later checks assume earlier ones, so checking stops after the first
    failing report.  Returns (structure, reports).
    """
    structure = build_structure(doc)
    reports: list[CheckReport] = []

    def run(fn) -> bool:
        report = fn()
        reports.append(report)
        return report.passed

    if doc.kind in ("ol", "oml"):
        if run(lambda: check_ortholattice(structure, all_witnesses)) and doc.kind == "oml":
            run(lambda: check_orthomodular(structure, all_witnesses))
    elif doc.kind == "qma":
        if run(lambda: check_ortholattice(structure.lat, all_witnesses)):
            if run(lambda: check_orthomodular(structure.lat, all_witnesses)):
                run(lambda: check_quantifier(structure.lat, structure.exists, "qma", all_witnesses))
    elif doc.kind == "qia":
        run(lambda: check_qia(structure, all_witnesses))
    elif doc.kind == "bqia":
        if run(lambda: check_qia(structure.magma, all_witnesses)):
            run(lambda: check_bounded_qia(structure.magma, structure.zero, all_witnesses))
    elif doc.kind == "mqia":
        if run(lambda: check_qia(structure.qia.magma, all_witnesses)):
            if run(lambda: check_bounded_qia(structure.qia.magma, structure.qia.zero, all_witnesses)):
                run(lambda: check_mqia(structure.qia, structure.diamond, all_witnesses))
    elif doc.kind == "frame":
        run(lambda: check_orthoframe(structure, all_witnesses))
    elif doc.kind == "mframe":
        run(lambda: check_monadic_orthoframe(structure, all_witnesses))
    return structure, reports


def infer_kind(structure) -> str:
    if isinstance(structure, FiniteOrtholattice):
        return "oml"
    if isinstance(structure, QuantumMonadicAlgebra):
        return "qma"
    if isinstance(structure, MonadicQIA):
        return "mqia"
    if isinstance(structure, BoundedQIA):
        return "bqia"
    if isinstance(structure, FiniteMagma):
        return "qia"
    if isinstance(structure, MonadicOrthoFrame):
        return "mframe"
    if isinstance(structure, OrthoFrame):
        return "frame"
    raise ParseError(f"cannot serialize a {type(structure).__name__}")


def _pairs_of_involution(ocomp: tuple[int, ...]) -> list[tuple[int, int]]:
    done = set()
    pairs = []
    for a, b in enumerate(ocomp):
        if a in done:
            continue
        pairs.append((a, b))
        done.add(a)
        done.add(b)
    return pairs


def document_from_structure(
    structure,
    name: str,
    kind: str | None = None,
    provenance: tuple[str, str] | None = None,
) -> AlgebraDocument:
    """Canonical document for a structure (cover pairs, fixed layouts)."""
    kind = kind or infer_kind(structure)
    if kind in ("ol", "oml", "qma"):
        lat = structure.lat if kind == "qma" else structure
        return AlgebraDocument(
            name=name,
            kind=kind,
            names=lat.names,
            order_pairs=tuple(lat.covers()),
            ocomp=lat.ocomp,
            exists_map=structure.exists.map if kind == "qma" else None,
            provenance=provenance,
        )
    if kind in ("qia", "bqia", "mqia"):
        if kind == "qia":
            magma, zero, diamond = structure, None, None
        elif kind == "bqia":
            magma, zero, diamond = structure.magma, structure.zero, None
        else:
            magma, zero, diamond = structure.qia.magma, structure.qia.zero, structure.diamond.map
        return AlgebraDocument(
            name=name,
            kind=kind,
            names=magma.names,
            zero=zero,
            table=magma.table,
            diamond_map=diamond,
            provenance=provenance,
        )
    if kind in ("frame", "mframe"):
        frame = structure.frame if kind == "mframe" else structure
        perp_pairs = []
        for a in range(frame.m):
            for b in bits(frame.perp[a]):
                if a < b:
                    perp_pairs.append((a, b))
        rel_pairs = []
        if kind == "mframe":
            for a in range(structure.m):
                for b in bits(structure.rel[a]):
                    rel_pairs.append((a, b))
        return AlgebraDocument(
            name=name,
            kind=kind,
            names=frame.labels,
            perp_pairs=tuple(perp_pairs),
            rel_pairs=tuple(rel_pairs),
            provenance=provenance,
        )
    raise ParseError(f"unknown kind {kind!r}")


def _canonicalize(doc: AlgebraDocument) -> AlgebraDocument:
    structure = build_structure(doc)
    return document_from_structure(structure, doc.name, doc.kind, doc.provenance)


def serialize_algebra(doc: AlgebraDocument) -> str:
    """Canonical text for a document (re-canonicalized if needed)."""
    doc = _canonicalize(doc)
    names = doc.names
    lines = []
    if doc.provenance:
        lines.append(f"# derived-from: {doc.provenance[0]} via {doc.provenance[1]}")
    lines.append(f"algebra {doc.name}")
    lines.append(f"kind {doc.kind}")
    carrier = "points" if doc.kind in FRAME_KINDS else "elements"
    lines.append((f"{carrier} " + " ".join(names)).rstrip())
    if doc.kind in LATTICE_KINDS:
        if doc.order_pairs:
            lines.append("order " + " ".join(f"{names[a]}<{names[b]}" for a, b in doc.order_pairs))
        lines.append(
            "ocomp " + " ".join(f"{names[a]}:{names[b]}" for a, b in _pairs_of_involution(doc.ocomp))
        )
        if doc.kind == "qma":
            lines.append(
                "exists " + " ".join(f"{names[a]}:{names[b]}" for a, b in enumerate(doc.exists_map))
            )
    if doc.kind in MAGMA_KINDS:
        if doc.zero is not None:
            lines.append(f"zero {names[doc.zero]}")
        lines.append("table")
        for e, row in enumerate(doc.table):
            lines.append(f"row {names[e]} : " + " ".join(names[v] for v in row))
        if doc.kind == "mqia":
            lines.append(
                "diamond " + " ".join(f"{names[a]}:{names[b]}" for a, b in enumerate(doc.diamond_map))
            )
    if doc.kind in FRAME_KINDS:
        for a, b in doc.perp_pairs:
            lines.append(f"perp {names[a]} {names[b]}")
        for a, b in doc.rel_pairs:
            lines.append(f"rel {names[a]} {names[b]}")
    return "\n".join(lines) + "\n"


def serialize_structure(
    structure,
    name: str,
    kind: str | None = None,
    provenance: tuple[str, str] | None = None,
) -> str:
    return serialize_algebra(document_from_structure(structure, name, kind, provenance))
