"""Quantifiers on orthomodular lattices and their quasi-implication twins.

A quantifier is a closure operator whose closed elements form a
sub-ortholattice; pairing one with an orthomodular lattice gives a
quantum monadic algebra (QMA).  The same data transported through the
Sasaki correspondence is a monadic quasi-implication algebra (MQIA):
a bounded quasi-implication algebra with a diamond operator.  The two
conversions here are mutually inverse and carry homomorphisms back and
forth, which :func:`hom_correspondence` verifies map by map.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    ConversionInconsistency,
    InconsistentCharacterizations,
    KindMismatch,
    SizeMismatch,
    TooLarge,
    ValidationFailed,
)
from .lattice import FiniteOrtholattice, bits, check_orthomodular
from .qia import BoundedQIA, bqia_to_oml, induced_order, oml_to_bqia
from .report import CheckReport, ReportBuilder

MAX_HOM_MAPS = 10**8


@dataclass(frozen=True)
class UnaryOp:
    """A total self-map of the carrier, stored as an image tuple."""

    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    def __len__(self) -> int:
        return len(self.map)


def identity_op(n: int) -> UnaryOp:
    return UnaryOp(tuple(range(n)))


def simple_quantifier(lat: FiniteOrtholattice) -> UnaryOp:
    """The quantifier sending bottom to bottom and everything else to top."""
    return UnaryOp(tuple(lat.bot if a == lat.bot else lat.top for a in range(lat.n)))


@dataclass(frozen=True)
class QuantumMonadicAlgebra:
    """An orthomodular lattice with a quantifier; build via :func:`as_qma`."""

    lat: FiniteOrtholattice
    exists: UnaryOp

    @property
    def n(self) -> int:
        return self.lat.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.lat.names


@dataclass(frozen=True)
class MonadicQIA:
    """A bounded quasi-implication algebra with a diamond; see :func:`as_mqia`."""

    qia: BoundedQIA
    diamond: UnaryOp

    @property
    def n(self) -> int:
        return self.qia.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.qia.names


def _check_op_shape(op: UnaryOp, n: int, what: str) -> None:
    if len(op.map) != n:
        raise SizeMismatch(f"{what} has {len(op.map)} entries for {n} elements")
    if any(not (0 <= v < n) for v in op.map):
        raise SizeMismatch(f"{what} entry out of range")


QUANTIFIER_KINDS = ("qma", "mol")


def check_quantifier(
    lat: FiniteOrtholattice,
    e: UnaryOp,
    kind: str = "qma",
    all_witnesses: bool = False,
) -> CheckReport:
    """Check the five quantifier axioms for ``e`` on ``lat``.

    ``kind`` only selects the report title: "qma" when the carrier is
    orthomodular (quantum monadic algebra), "mol" for a plain monadic
    ortholattice.  All five axioms are always evaluated so the report
    carries per-axiom witnesses.  The fixed elements of a passing
    quantifier must form a sub-ortholattice; that derived fact is
    re-checked and a failure with passing axioms raises
    ``InconsistentCharacterizations``.
    """
    if kind not in QUANTIFIER_KINDS:
        raise KindMismatch(f"unknown quantifier kind {kind!r}")
    n = lat.n
    _check_op_shape(e, n, "quantifier")
    title = "quantifier (quantum monadic)" if kind == "qma" else "quantifier (monadic ortholattice)"
    b = ReportBuilder(title, all_witnesses)
    if n == 1:
        b.flag("degenerate")

    if e(lat.bot) != lat.bot:
        b.hit("normalized", (lat.bot,))
    for a in range(n):
        if not lat.le(a, e(a)):
            b.hit("increasing", (a,))
    for a in range(n):
        for c in range(n):
            if e(lat.join[a][c]) != lat.join[e(a)][e(c)]:
                b.hit("additive", (a, c))
    for a in range(n):
        if e(e(a)) != e(a):
            b.hit("idempotent", (a,))
    for a in range(n):
        ca = lat.ocomp[e(a)]
        if e(ca) != ca:
            b.hit("closed-complement", (a,))

    if not b.failed():
        closed = [a for a in range(n) if e(a) == a]
        closed_set = set(closed)
        ok = lat.bot in closed_set and lat.top in closed_set
        for a in closed:
            if lat.ocomp[a] not in closed_set:
                ok = False
            for c in closed:
                if lat.meet[a][c] not in closed_set or lat.join[a][c] not in closed_set:
                    ok = False
        if not ok:
            raise InconsistentCharacterizations(
                "quantifier axioms hold but the fixed elements do not form a sub-ortholattice"
            )
        b.metric("closed-elements", len(closed))

    return b.done()


def check_mqia(a: BoundedQIA, d: UnaryOp, all_witnesses: bool = False) -> CheckReport:
    """Check the diamond axioms for ``d`` on a validated BoundedQIA.

    Beyond the three defining axioms, idempotence and monotonicity of
    the diamond are evaluated as derived consequences; their failure
    while the axioms pass raises ``InconsistentCharacterizations``.
    """
    n, t, z, one = a.n, a.table, a.zero, a.one
    _check_op_shape(d, n, "diamond")
    b = ReportBuilder("monadic-quasi-implication", all_witnesses)
    if n == 1:
        b.flag("degenerate")

    for x in range(n):
        if t[x][d(x)] != one:
            b.hit("increasing", (x,))
    for x in range(n):
        if t[d(d(x))][d(x)] != one:
            b.hit("double-diamond", (x,))
    for x in range(n):
        c = t[d(x)][z]
        if d(c) != c:
            b.hit("fixed-complement", (x,))
    if d(z) != z:
        b.hit("normalized", (z,))
    for x in range(n):
        for y in range(n):
            lhs = d(t[t[t[x][z]][t[y][z]]][x])
            rhs = t[t[t[d(x)][z]][t[d(y)][z]]][d(x)]
            if lhs != rhs:
                b.hit("additive", (x, y))

    if not b.failed():
        derived = ReportBuilder("derived", all_witnesses)
        for x in range(n):
            if d(d(x)) != d(x):
                derived.hit("idempotent", (x,))
        for x in range(n):
            for y in range(n):
                if t[x][y] == one and t[d(x)][d(y)] != one:
                    derived.hit("monotone", (x, y))
        if derived.failed():
            raise InconsistentCharacterizations(
                "diamond axioms hold but a derived property fails: "
                + ", ".join(derived.done().rules_failed())
            )

    return b.done()


def as_qma(lat: FiniteOrtholattice, e: UnaryOp) -> QuantumMonadicAlgebra:
    """Validate quantifier axioms (and orthomodularity) and wrap."""
    om = check_orthomodular(lat)
    if not om.passed:
        raise ValidationFailed(om)
    report = check_quantifier(lat, e, "qma")
    if not report.passed:
        raise ValidationFailed(report)
    return QuantumMonadicAlgebra(lat=lat, exists=e)


def as_mqia(a: BoundedQIA, d: UnaryOp) -> MonadicQIA:
    report = check_mqia(a, d)
    if not report.passed:
        raise ValidationFailed(report)
    return MonadicQIA(qia=a, diamond=d)


def qma_to_mqia(q: QuantumMonadicAlgebra) -> MonadicQIA:
    """Transport a quantum monadic algebra along the Sasaki correspondence.

    The carrier and quantifier are reused unchanged; the magma is the
    Sasaki table.  The instance identity ``x . 0 = x'`` and the diamond
    axioms are verified on the output (``ConversionInconsistency`` on
    failure -- both are theorems for validated input).
    """
    qia = oml_to_bqia(q.lat)
    for x in range(q.n):
        if qia.table[x][qia.zero] != q.lat.ocomp[x]:
            raise ConversionInconsistency(
                f"x . 0 differs from the complement at {q.names[x]}"
            )
    report = check_mqia(qia, q.exists)
    if not report.passed:
        raise ConversionInconsistency(
            f"quantifier fails the diamond axioms after conversion: {report.summary()}"
        )
    return MonadicQIA(qia=qia, diamond=q.exists)


def mqia_to_qma(m: MonadicQIA) -> QuantumMonadicAlgebra:
    """Transport a monadic quasi-implication algebra back to a QMA."""
    lat = bqia_to_oml(m.qia)
    report = check_quantifier(lat, m.diamond, "qma")
    if not report.passed:
        raise ConversionInconsistency(
            f"diamond fails the quantifier axioms after conversion: {report.summary()}"
        )
    return QuantumMonadicAlgebra(lat=lat, exists=m.diamond)


def forall_dual(q: QuantumMonadicAlgebra, a: int) -> int:
    """The dual universal quantifier: (exists(a'))'."""
    lat = q.lat
    return lat.ocomp[q.exists(lat.ocomp[a])]


def forall_op(q: QuantumMonadicAlgebra) -> UnaryOp:
    return UnaryOp(tuple(forall_dual(q, a) for a in range(q.n)))


@dataclass(frozen=True)
class HomCandidate:
    """A total map between two structures of the same kind."""

    src: object
    dst: object
    map: tuple[int, ...]


def is_qma_homomorphism(
    src: QuantumMonadicAlgebra, dst: QuantumMonadicAlgebra, h: tuple[int, ...]
) -> bool:
    """Fast predicate: bounded-lattice hom preserving complement and exists."""
    sl, dl = src.lat, dst.lat
    n = sl.n
    if h[sl.bot] != dl.bot or h[sl.top] != dl.top:
        return False
    for a in range(n):
        ha = h[a]
        if h[sl.ocomp[a]] != dl.ocomp[ha]:
            return False
        if h[src.exists(a)] != dst.exists(ha):
            return False
        for c in range(n):
            if h[sl.meet[a][c]] != dl.meet[ha][h[c]]:
                return False
            if h[sl.join[a][c]] != dl.join[ha][h[c]]:
                return False
    return True


def is_mqia_homomorphism(src: MonadicQIA, dst: MonadicQIA, h: tuple[int, ...]) -> bool:
    """Fast predicate: preserves the product, zero, and diamond."""
    sq, dq = src.qia, dst.qia
    n = sq.n
    if h[sq.zero] != dq.zero:
        return False
    for a in range(n):
        ha = h[a]
        if h[src.diamond(a)] != dst.diamond(ha):
            return False
        for c in range(n):
            if h[sq.table[a][c]] != dq.table[ha][h[c]]:
                return False
    return True


def check_homomorphism(h: HomCandidate, kind: str, all_witnesses: bool = False) -> CheckReport:
    """Check a map for homomorphism-hood in QMA or MQIA mode.

    qma mode checks bounds, meet, join, complement, and exists; mqia
    mode checks the product, zero, and diamond, with preservation of
    one evaluated as a derived consequence (its failure while the
    defining conditions pass raises ``InconsistentCharacterizations``).
    """
    if kind == "qma":
        if not isinstance(h.src, QuantumMonadicAlgebra) or not isinstance(
            h.dst, QuantumMonadicAlgebra
        ):
            raise KindMismatch("qma homomorphism check needs QuantumMonadicAlgebra endpoints")
        src, dst = h.src, h.dst
        n = src.n
        if len(h.map) != n or any(not (0 <= v < dst.n) for v in h.map):
            raise SizeMismatch("homomorphism candidate map has wrong shape")
        f = h.map
        sl, dl = src.lat, dst.lat
        b = ReportBuilder("homomorphism (qma)", all_witnesses)
        if f[sl.bot] != dl.bot:
            b.hit("bottom", (sl.bot,))
        if f[sl.top] != dl.top:
            b.hit("top", (sl.top,))
        for a in range(n):
            for c in range(n):
                if f[sl.meet[a][c]] != dl.meet[f[a]][f[c]]:
                    b.hit("meet", (a, c))
                if f[sl.join[a][c]] != dl.join[f[a]][f[c]]:
                    b.hit("join", (a, c))
        for a in range(n):
            if f[sl.ocomp[a]] != dl.ocomp[f[a]]:
                b.hit("complement", (a,))
            if f[src.exists(a)] != dst.exists(f[a]):
                b.hit("exists", (a,))
        return b.done()

    if kind == "mqia":
        if not isinstance(h.src, MonadicQIA) or not isinstance(h.dst, MonadicQIA):
            raise KindMismatch("mqia homomorphism check needs MonadicQIA endpoints")
        src, dst = h.src, h.dst
        n = src.n
        if len(h.map) != n or any(not (0 <= v < dst.n) for v in h.map):
            raise SizeMismatch("homomorphism candidate map has wrong shape")
        f = h.map
        sq, dq = src.qia, dst.qia
        b = ReportBuilder("homomorphism (mqia)", all_witnesses)
        for a in range(n):
            for c in range(n):
                if f[sq.table[a][c]] != dq.table[f[a]][f[c]]:
                    b.hit("operation", (a, c))
        if f[sq.zero] != dq.zero:
            b.hit("zero", (sq.zero,))
        for a in range(n):
            if f[src.diamond(a)] != dst.diamond(f[a]):
                b.hit("diamond", (a,))
        if not b.failed() and f[sq.one] != dq.one:
            raise InconsistentCharacterizations(
                "operation/zero/diamond preserved but the top element is not"
            )
        return b.done()

    raise KindMismatch(f"unknown homomorphism kind {kind!r}")


def hom_correspondence(
    srcQ: QuantumMonadicAlgebra,
    dstQ: QuantumMonadicAlgebra,
    candidates=None,
    cap: int = MAX_HOM_MAPS,
) -> CheckReport:
    """Verify that qma-homs and mqia-homs are the same maps.

    Enumerates every set map (or the supplied candidates) and checks
    the biconditional: the map is a QMA homomorphism iff it is an MQIA
    homomorphism between the converted structures.  The report lists
    any discrepancies (there must be none) and carries the number of
    maps scanned and of homomorphisms found as metrics.
    """
    n1, n2 = srcQ.n, dstQ.n
    if candidates is None:
        total = n2**n1
        if total > cap:
            raise TooLarge(f"{n2}^{n1} = {total} maps exceeds the cap of {cap}")
        candidates = itertools.product(range(n2), repeat=n1)
    srcM = qma_to_mqia(srcQ)
    dstM = qma_to_mqia(dstQ)
    b = ReportBuilder("homomorphism correspondence", all_witnesses=True)
    maps = 0
    homs = 0
    for f in candidates:
        maps += 1
        lattice_side = is_qma_homomorphism(srcQ, dstQ, f)
        arrow_side = is_mqia_homomorphism(srcM, dstM, f)
        if lattice_side != arrow_side:
            b.hit("correspondence", tuple(f))
        if lattice_side:
            homs += 1
    b.metric("maps", maps)
    b.metric("homomorphisms", homs)
    return b.done()
