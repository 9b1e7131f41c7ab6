"""Command-line interface.

Commands: check, convert, frame, complete, enumerate, hom.  Exit codes:
0 all checks passed, 1 a validated check failed, 2 usage or parse
error, 3 a size cap was exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dot import emit_dot
from .enumeration import (
    enumerate_bqia,
    enumerate_oml,
    enumerate_quantifiers,
)
from .errors import (
    ConversionInconsistency,
    InconsistentCharacterizations,
    KindMismatch,
    NoSuchElement,
    NotALattice,
    NotOrthomodular,
    ParseError,
    SizeMismatch,
    TooLarge,
    ValidationFailed,
)
from .frames import (
    bi_ortho_lattice,
    embedding,
    goldblatt_frame,
    maclaren_frame,
    monadic_goldblatt_frame,
    monadic_maclaren_frame,
)
from .lattice import FiniteOrtholattice, check_orthomodular, find_isomorphism
from .monadic import (
    HomCandidate,
    MonadicQIA,
    QuantumMonadicAlgebra,
    check_homomorphism,
    hom_correspondence,
    mqia_to_qma,
    qma_to_mqia,
)
from .qia import BoundedQIA, bqia_to_oml, oml_to_bqia
from .report import CheckReport, render_report
from .textio import (
    AlgebraDocument,
    document_checks,
    parse_algebra,
    serialize_structure,
)

_CHECK_FAILED = 1
_USAGE = 2
_TOO_LARGE = 3


class _Output:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def emit(self, text: str = "") -> None:
        if not self.quiet:
            print(text)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "dot", "tsv"), default="text")
    common.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(
        prog="orthologic",
        description="Check, convert, and complete finite quantum-logic algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", parents=[common], help="validate a document")
    p_check.add_argument("file")
    p_check.add_argument("--all-witnesses", action="store_true")

    p_convert = sub.add_parser("convert", parents=[common], help="convert between structure kinds")
    p_convert.add_argument("file")
    p_convert.add_argument("--to", required=True, choices=("oml", "bqia", "qma", "mqia"))

    p_frame = sub.add_parser("frame", parents=[common], help="build an orthoframe")
    p_frame.add_argument("file")
    p_frame.add_argument("--construction", required=True, choices=("maclaren", "goldblatt"))
    p_frame.add_argument("--monadic", action="store_true")

    p_complete = sub.add_parser(
        "complete", parents=[common], help="bi-orthogonal completion and embedding report"
    )
    p_complete.add_argument("file")
    p_complete.add_argument("--construction", required=True, choices=("maclaren", "goldblatt"))
    p_complete.add_argument("--monadic", action="store_true")

    p_enum = sub.add_parser("enumerate", parents=[common], help="enumerate small structures")
    p_enum.add_argument("--kind", required=True, choices=("oml", "bqia", "quantifier"))
    p_enum.add_argument("--size", type=int)
    p_enum.add_argument("--algebra")

    p_hom = sub.add_parser("hom", parents=[common], help="check homomorphisms")
    p_hom.add_argument("src")
    p_hom.add_argument("dst")
    p_hom.add_argument("--all", action="store_true")
    p_hom.add_argument("--map", dest="map_spec")
    p_hom.add_argument("--kind", choices=("qma", "mqia", "both"), default="both")

    return parser


def _load(path: str, all_witnesses: bool = False):
    text = Path(path).read_text()
    doc = parse_algebra(text)
    structure, reports = document_checks(doc, all_witnesses)
    return doc, structure, reports


def _print_reports(out: _Output, fmt: str, doc_name: str, reports, names) -> None:
    for report in reports:
        if fmt == "tsv":
            out.emit(f"report\t{doc_name}\t{report.title}\t{'pass' if report.passed else 'fail'}")
            for v in report.violations:
                shown = ",".join(names[i] if 0 <= i < len(names) else str(i) for i in v.witness)
                out.emit(f"violation\t{doc_name}\t{report.title}\t{v.rule}\t{shown}")
            for key, value in report.metrics:
                out.emit(f"metric\t{doc_name}\t{report.title}\t{key}\t{value}")
        else:
            for line in render_report(report, names):
                out.emit(f"{doc_name}: {line}")


def _structure_names(doc: AlgebraDocument) -> tuple[str, ...]:
    return doc.names


def _require_valid(out, fmt, doc, reports) -> bool:
    if all(r.passed for r in reports):
        return True
    _print_reports(out, fmt, doc.name, reports, _structure_names(doc))
    return False


def _cmd_check(args, out: _Output) -> int:
    if args.format == "dot":
        print("check does not support --format dot", file=sys.stderr)
        return _USAGE
    doc, structure, reports = _load(args.file, args.all_witnesses)
    _print_reports(out, args.format, doc.name, reports, _structure_names(doc))
    passed = all(r.passed for r in reports)
    if doc.kind == "ol" and passed:
        om = check_orthomodular(structure)
        if args.format == "tsv":
            out.emit(f"info\t{doc.name}\torthomodular\t{'yes' if om.passed else 'no'}")
        else:
            out.emit(f"{doc.name}: info: orthomodular = {'yes' if om.passed else 'no'}")
    return 0 if passed else _CHECK_FAILED


_CONVERSIONS = {
    ("ol", "bqia"): ("oml_to_bqia", lambda s: oml_to_bqia(s)),
    ("oml", "bqia"): ("oml_to_bqia", lambda s: oml_to_bqia(s)),
    ("bqia", "oml"): ("bqia_to_oml", lambda s: bqia_to_oml(s)),
    ("qma", "mqia"): ("qma_to_mqia", lambda s: qma_to_mqia(s)),
    ("mqia", "qma"): ("mqia_to_qma", lambda s: mqia_to_qma(s)),
}


def _cmd_convert(args, out: _Output) -> int:
    doc, structure, reports = _load(args.file)
    if not _require_valid(out, args.format, doc, reports):
        return _CHECK_FAILED
    key = (doc.kind, args.to)
    if key not in _CONVERSIONS:
        print(f"cannot convert a {doc.kind} document to {args.to}", file=sys.stderr)
        return _USAGE
    op_name, op = _CONVERSIONS[key]
    result = op(structure)
    if args.format == "dot":
        if isinstance(result, BoundedQIA):
            print("--format dot needs a lattice-like result", file=sys.stderr)
            return _USAGE
        target = result.lat if isinstance(result, QuantumMonadicAlgebra) else result
        out.emit(emit_dot(target, doc.name).rstrip("\n"))
        return 0
    if args.format == "tsv":
        print("convert does not support --format tsv", file=sys.stderr)
        return _USAGE
    text = serialize_structure(
        result, f"{doc.name}_{args.to}", args.to, provenance=(doc.name, op_name)
    )
    out.emit(text.rstrip("\n"))
    return 0


def _algebra_view(doc, structure, monadic: bool):
    """The (monadic) bounded QIA a frame construction starts from."""
    if monadic:
        if doc.kind == "mqia":
            return structure
        if doc.kind == "qma":
            return qma_to_mqia(structure)
        raise KindMismatch(f"--monadic needs a qma or mqia document, got {doc.kind}")
    if doc.kind in ("ol", "oml"):
        return oml_to_bqia(structure)
    if doc.kind == "bqia":
        return structure
    if doc.kind == "qma":
        return oml_to_bqia(structure.lat)
    if doc.kind == "mqia":
        return structure.qia
    raise KindMismatch(f"cannot build frames from a {doc.kind} document")


def _cmd_frame(args, out: _Output) -> int:
    doc, structure, reports = _load(args.file)
    if not _require_valid(out, args.format, doc, reports):
        return _CHECK_FAILED
    algebra = _algebra_view(doc, structure, args.monadic)
    if args.monadic:
        build = monadic_maclaren_frame if args.construction == "maclaren" else monadic_goldblatt_frame
        op_name = f"monadic_{args.construction}_frame"
        kind = "mframe"
    else:
        build = maclaren_frame if args.construction == "maclaren" else goldblatt_frame
        op_name = f"{args.construction}_frame"
        kind = "frame"
    frame = build(algebra)
    if args.format == "dot":
        out.emit(emit_dot(frame, doc.name).rstrip("\n"))
        return 0
    if args.format == "tsv":
        print("frame does not support --format tsv", file=sys.stderr)
        return _USAGE
    text = serialize_structure(frame, f"{doc.name}_{args.construction}", kind, (doc.name, op_name))
    out.emit(text.rstrip("\n"))
    return 0


def _cmd_complete(args, out: _Output) -> int:
    if args.format == "dot":
        print("complete does not support --format dot", file=sys.stderr)
        return _USAGE
    doc, structure, reports = _load(args.file)
    if not _require_valid(out, args.format, doc, reports):
        return _CHECK_FAILED
    algebra = _algebra_view(doc, structure, args.monadic)
    images, report = embedding(algebra, args.construction)
    base = algebra.qia if args.monadic else algebra
    if args.monadic:
        frame = (
            monadic_maclaren_frame(algebra)
            if args.construction == "maclaren"
            else monadic_goldblatt_frame(algebra)
        ).frame
    else:
        frame = maclaren_frame(base) if args.construction == "maclaren" else goldblatt_frame(base)
    bl = bi_ortho_lattice(frame)
    om = check_orthomodular(bl.lattice)
    iso = find_isomorphism(bqia_to_oml(base), bl.lattice)

    _print_reports(out, args.format, doc.name, [report], base.names)
    if args.format == "tsv":
        out.emit(f"info\t{doc.name}\tclosed-sets\t{len(bl.closed)}")
        out.emit(f"info\t{doc.name}\tbiortho-orthomodular\t{'yes' if om.passed else 'no'}")
        out.emit(f"info\t{doc.name}\tisomorphic\t{'yes' if iso is not None else 'no'}")
    else:
        out.emit(f"{doc.name}: closed sets: {len(bl.closed)}")
        out.emit(f"{doc.name}: closed-set lattice orthomodular: {'yes' if om.passed else 'no'}")
        verdict = "isomorphic to the source via the embedding" if report.passed else "NOT isomorphic"
        out.emit(f"{doc.name}: {verdict}")
        if args.monadic and report.passed:
            out.emit(f"{doc.name}: exists_r commutes with diamond")
    return 0 if report.passed else _CHECK_FAILED


def _cmd_enumerate(args, out: _Output) -> int:
    if args.format == "dot":
        print("enumerate does not support --format dot", file=sys.stderr)
        return _USAGE
    if args.kind in ("oml", "bqia"):
        if args.size is None:
            print("--size is required for oml/bqia enumeration", file=sys.stderr)
            return _USAGE
        result = enumerate_oml(args.size) if args.kind == "oml" else enumerate_bqia(args.size)
        if args.format == "tsv":
            out.emit(
                f"enumeration\t{args.kind}\t{args.size}\t{len(result.representatives)}"
                f"\t{result.total_labeled}"
            )
            return 0
        out.emit(
            f"{args.kind} size {args.size}: {len(result.representatives)} up to isomorphism "
            f"({result.total_labeled} labeled)"
        )
        for i, rep in enumerate(result.representatives):
            out.emit("")
            out.emit(serialize_structure(rep, f"{args.kind}{args.size}_{i}", args.kind).rstrip("\n"))
        return 0
    if not args.algebra:
        print("--algebra FILE is required for quantifier enumeration", file=sys.stderr)
        return _USAGE
    doc, structure, reports = _load(args.algebra)
    if not _require_valid(out, args.format, doc, reports):
        return _CHECK_FAILED
    if doc.kind not in ("ol", "oml"):
        print("quantifier enumeration needs an ol/oml document", file=sys.stderr)
        return _USAGE
    om = check_orthomodular(structure)
    if not om.passed:
        _print_reports(out, args.format, doc.name, [om], doc.names)
        return _CHECK_FAILED
    ops = enumerate_quantifiers(structure)
    if args.format == "tsv":
        out.emit(f"enumeration\tquantifier\t{doc.name}\t{len(ops)}")
        for op in ops:
            out.emit("quantifier\t" + ",".join(f"{doc.names[a]}:{doc.names[b]}" for a, b in enumerate(op.map)))
        return 0
    out.emit(f"{doc.name}: {len(ops)} quantifiers")
    for op in ops:
        out.emit("exists " + " ".join(f"{doc.names[a]}:{doc.names[b]}" for a, b in enumerate(op.map)))
    return 0


def _as_qma_view(doc, structure) -> QuantumMonadicAlgebra:
    if doc.kind == "qma":
        return structure
    if doc.kind == "mqia":
        return mqia_to_qma(structure)
    raise KindMismatch(f"hom needs qma or mqia documents, got {doc.kind}")


def _parse_map(spec: str, src_names, dst_names) -> tuple[int, ...]:
    assignment: dict[int, int] = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise ParseError(f"malformed map entry {item!r} (expected SRC:DST)")
        a, b = item.split(":", 1)
        if a not in src_names:
            raise ParseError(f"unknown source element {a!r}")
        if b not in dst_names:
            raise ParseError(f"unknown target element {b!r}")
        ia = src_names.index(a)
        if ia in assignment:
            raise ParseError(f"duplicate map entry for {a!r}")
        assignment[ia] = dst_names.index(b)
    missing = [src_names[i] for i in range(len(src_names)) if i not in assignment]
    if missing:
        raise ParseError("map leaves source elements unassigned: " + ", ".join(missing))
    return tuple(assignment[i] for i in range(len(src_names)))


def _cmd_hom(args, out: _Output) -> int:
    if args.format == "dot":
        print("hom does not support --format dot", file=sys.stderr)
        return _USAGE
    if bool(args.all) == bool(args.map_spec):
        print("hom needs exactly one of --all or --map", file=sys.stderr)
        return _USAGE
    src_doc, src_structure, src_reports = _load(args.src)
    if not _require_valid(out, args.format, src_doc, src_reports):
        return _CHECK_FAILED
    dst_doc, dst_structure, dst_reports = _load(args.dst)
    if not _require_valid(out, args.format, dst_doc, dst_reports):
        return _CHECK_FAILED
    src_q = _as_qma_view(src_doc, src_structure)
    dst_q = _as_qma_view(dst_doc, dst_structure)
    label = f"{src_doc.name}->{dst_doc.name}"

    if args.map_spec:
        fmap = _parse_map(args.map_spec, src_doc.names, dst_doc.names)
        reports: list[CheckReport] = []
        if args.kind in ("qma", "both"):
            reports.append(check_homomorphism(HomCandidate(src_q, dst_q, fmap), "qma"))
        if args.kind in ("mqia", "both"):
            reports.append(
                check_homomorphism(
                    HomCandidate(qma_to_mqia(src_q), qma_to_mqia(dst_q), fmap), "mqia"
                )
            )
        _print_reports(out, args.format, label, reports, src_doc.names)
        if args.kind == "both":
            agree = reports[0].passed == reports[1].passed
            out.emit(
                f"{label}: verdicts {'agree' if agree else 'DISAGREE'}"
                if args.format != "tsv"
                else f"info\t{label}\tagreement\t{'yes' if agree else 'no'}"
            )
            if not agree:
                return _CHECK_FAILED
        return 0 if all(r.passed for r in reports) else _CHECK_FAILED

    if args.kind == "both":
        report = hom_correspondence(src_q, dst_q)
        _print_reports(out, args.format, label, [report], dst_doc.names)
        return 0 if report.passed else _CHECK_FAILED
    src_m = qma_to_mqia(src_q)
    dst_m = qma_to_mqia(dst_q)
    import itertools

    from .monadic import is_mqia_homomorphism, is_qma_homomorphism

    total = dst_q.n**src_q.n
    if total > 10**8:
        raise TooLarge(f"{dst_q.n}^{src_q.n} maps exceed the scan cap")
    homs = []
    for fmap in itertools.product(range(dst_q.n), repeat=src_q.n):
        ok = (
            is_qma_homomorphism(src_q, dst_q, fmap)
            if args.kind == "qma"
            else is_mqia_homomorphism(src_m, dst_m, fmap)
        )
        if ok:
            homs.append(fmap)
    if args.format == "tsv":
        out.emit(f"homs\t{label}\t{args.kind}\t{len(homs)}\t{total}")
    else:
        out.emit(f"{label}: {len(homs)} {args.kind} homomorphisms among {total} maps")
    for fmap in homs:
        line = " ".join(
            f"{src_doc.names[a]}:{dst_doc.names[b]}" for a, b in enumerate(fmap)
        )
        out.emit(("hom\t" + line) if args.format == "tsv" else ("hom " + line))
    return 0


_HANDLERS = {
    "check": _cmd_check,
    "convert": _cmd_convert,
    "frame": _cmd_frame,
    "complete": _cmd_complete,
    "enumerate": _cmd_enumerate,
    "hom": _cmd_hom,
}


def run_cli(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else _USAGE
    out = _Output(args.quiet)
    try:
        return _HANDLERS[args.command](args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return _USAGE
    except TooLarge as exc:
        print(f"size cap exceeded: {exc}", file=sys.stderr)
        return _TOO_LARGE
    except KindMismatch as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return _USAGE
    except (NotALattice, SizeMismatch, NoSuchElement, NotOrthomodular, ValidationFailed) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return _CHECK_FAILED
    except (ConversionInconsistency, InconsistentCharacterizations) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return _CHECK_FAILED
    except FileNotFoundError as exc:
        print(f"cannot read file: {exc}", file=sys.stderr)
        return _USAGE


def main(argv=None) -> int:
    return run_cli(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
