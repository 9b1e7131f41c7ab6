"""Magmas and bounded quasi-implication algebras.

A quasi-implication algebra is a magma satisfying contraction,
exchange, and quasi-commutativity; designating a least element ``0``
with ``0 . x = 1`` makes it bounded and puts it in one-to-one
correspondence with an orthomodular lattice via the Sasaki arrow
(``x . y = x' v (x ^ y)`` one way, ``x' = x . 0`` with the derived
join/meet polynomials the other way).
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import (
    ConversionInconsistency,
    InconsistentCharacterizations,
    NoSuchElement,
    NotOrthomodular,
    SizeMismatch,
    TooLarge,
    ValidationFailed,
)
from .lattice import MAX_ELEMENTS, FiniteOrtholattice, check_ortholattice, check_orthomodular, sasaki
from .report import CheckReport, ReportBuilder


@dataclass(frozen=True)
class FiniteMagma:
    """A finite set with a closed binary operation given as a Cayley table."""

    n: int
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    provenance: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise SizeMismatch("empty carrier")
        if self.n > MAX_ELEMENTS:
            raise TooLarge(f"carrier of {self.n} elements exceeds the cap of {MAX_ELEMENTS}")
        if len(self.names) != self.n or len(set(self.names)) != self.n:
            raise SizeMismatch("names missing or not distinct")
        if len(self.table) != self.n:
            raise SizeMismatch("Cayley table has wrong row count")
        for row in self.table:
            if len(row) != self.n or any(not (0 <= v < self.n) for v in row):
                raise SizeMismatch("Cayley table entry out of range (not closed)")

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise NoSuchElement(f"no element named {name!r}") from None

    def content_hash(self) -> str:
        blob = repr((self.names, self.table)).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def check_qia(m: FiniteMagma, all_witnesses: bool = False) -> CheckReport:
    """Check the three quasi-implication axioms on a magma.

    Scanning is fail-fast by default: the O(n^3) exchange scan is
    skipped when contraction already failed (pass ``all_witnesses`` to
    force a full scan and collect every witness).  When the axioms
    pass, two derived identities (x.(x.y) = x.y and constancy of the
    diagonal) are evaluated as sanity cross-checks; axioms passing with
    a derived identity failing raises ``InconsistentCharacterizations``
    since that cannot happen for a correct implementation.
    """
    n, t = m.n, m.table
    b = ReportBuilder("quasi-implication", all_witnesses)
    if n == 1:
        b.flag("degenerate")

    for x in range(n):
        for y in range(n):
            if t[t[x][y]][x] != x:
                b.hit("contraction", (x, y))

    if not b.failed() or all_witnesses:
        for x in range(n):
            tx = t[x]
            for y in range(n):
                ty = t[y]
                txy = t[tx[y]]
                tyx = t[ty[x]]
                for z in range(n):
                    if txy[tx[z]] != tyx[ty[z]]:
                        b.hit("exchange", (x, y, z))

    if not b.failed() or all_witnesses:
        for x in range(n):
            for y in range(n):
                if t[t[t[x][y]][t[y][x]]][x] != t[t[t[y][x]][t[x][y]]][y]:
                    b.hit("quasi-commutativity", (x, y))

    axioms_ok = not b.failed()
    if axioms_ok or all_witnesses:
        derived = ReportBuilder("derived", all_witnesses)
        for x in range(n):
            for y in range(n):
                if t[x][t[x][y]] != t[x][y]:
                    derived.hit("self-absorption", (x, y))
        one = t[0][0]
        for x in range(1, n):
            if t[x][x] != one:
                derived.hit("uniform-diagonal", (0, x))
        if derived.failed():
            if axioms_ok:
                raise InconsistentCharacterizations(
                    "quasi-implication axioms hold but a derived identity fails: "
                    + ", ".join(derived.done().rules_failed())
                )
            for v in derived.done().violations:
                b.hit(v.rule, v.witness)

    return b.done()


def check_bounded_qia(m: FiniteMagma, zero: int, all_witnesses: bool = False) -> CheckReport:
    """Check the bound axiom ``zero . a = one`` for every ``a``.

    Assumes :func:`check_qia` already passed.  ``one`` is read off the
    diagonal (``table[0][0]``) rather than trusted, which the
    uniform-diagonal cross-check in :func:`check_qia` justifies.  The
    bound axiom simultaneously says ``zero`` is least in the induced
    order; antisymmetry and transitivity of that order are evaluated
    here as derived cross-checks so that :func:`induced_order` never
    needs to re-verify them.
    """
    n, t = m.n, m.table
    if not (0 <= zero < n):
        raise NoSuchElement(f"zero index {zero} out of range for {n} elements")
    b = ReportBuilder("bounded-quasi-implication", all_witnesses)
    if n == 1:
        b.flag("degenerate")

    one = t[0][0]
    for a in range(n):
        if t[zero][a] != one:
            b.hit("zero-row", (a,))

    for x in range(n):
        for y in range(n):
            if x != y and t[x][y] == one and t[y][x] == one:
                if x < y:
                    b.hit("order-antisymmetry", (x, y))
    for x in range(n):
        for y in range(n):
            if t[x][y] != one:
                continue
            for z in range(n):
                if t[y][z] == one and t[x][z] != one:
                    b.hit("order-transitivity", (x, y, z))

    return b.done()


@dataclass(frozen=True)
class BoundedQIA:
    """A bounded quasi-implication algebra; build via :func:`as_bqia`."""

    magma: FiniteMagma
    zero: int
    one: int

    @property
    def n(self) -> int:
        return self.magma.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.magma.names

    @property
    def table(self) -> tuple[tuple[int, ...], ...]:
        return self.magma.table

    def op(self, a: int, b: int) -> int:
        return self.magma.table[a][b]

    def le(self, a: int, b: int) -> bool:
        return self.magma.table[a][b] == self.one

    def star(self, a: int) -> int:
        """Complement: a . 0."""
        return self.magma.table[a][self.zero]

    def oplus(self, a: int, b: int) -> int:
        """Join polynomial ((a.b).(b.a)).a."""
        t = self.magma.table
        return t[t[t[a][b]][t[b][a]]][a]

    def odot(self, a: int, b: int) -> int:
        """Meet polynomial (a* (+) b*)*."""
        return self.star(self.oplus(self.star(a), self.star(b)))

    def index(self, name: str) -> int:
        return self.magma.index(name)

    def content_hash(self) -> str:
        blob = repr((self.magma.names, self.magma.table, self.zero)).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    @property
    def degenerate(self) -> bool:
        return self.n == 1


def as_bqia(m: FiniteMagma, zero: int) -> BoundedQIA:
    """Validate and wrap a magma with designated zero as a BoundedQIA.

    Raises ``ValidationFailed`` with the offending report when an axiom
    check fails, and ``InconsistentCharacterizations`` when the axioms
    pass but the induced relation is not a partial order (impossible
    for a correct implementation).
    """
    qia_report = check_qia(m)
    if not qia_report.passed:
        raise ValidationFailed(qia_report)
    bounded_report = check_bounded_qia(m, zero)
    if not bounded_report.passed:
        failed = bounded_report.rules_failed()
        if "zero-row" not in failed:
            raise InconsistentCharacterizations(
                "axioms hold but the induced relation is not a partial order: "
                + ", ".join(failed)
            )
        raise ValidationFailed(bounded_report)
    return BoundedQIA(magma=m, zero=zero, one=m.table[0][0])


def induced_order(a: BoundedQIA) -> tuple[int, ...]:
    """Order bitmasks of the relation x <= y iff x . y = one."""
    t, one, n = a.table, a.one, a.n
    rows = []
    for x in range(n):
        mask = 0
        for y in range(n):
            if t[x][y] == one:
                mask |= 1 << y
        rows.append(mask)
    return tuple(rows)


def bqia_to_oml(a: BoundedQIA) -> FiniteOrtholattice:
    """Convert to the orthomodular lattice on the same carrier.

    The complement is ``x . 0``, join and meet come from the standard
    polynomials, and the order is the induced one.  The output is
    re-validated (ortholattice + orthomodularity checks, agreement of
    the meet table with the shortcut polynomial ((x.y).(x.0)).0);
    any failure raises ``ConversionInconsistency``.
    """
    n = a.n
    t = a.table
    leq = induced_order(a)
    ocomp = tuple(a.star(x) for x in range(n))
    join = tuple(tuple(a.oplus(x, y) for y in range(n)) for x in range(n))
    meet = tuple(tuple(a.odot(x, y) for y in range(n)) for x in range(n))
    lat = FiniteOrtholattice(
        n=n,
        names=a.names,
        leq=leq,
        meet=meet,
        join=join,
        ocomp=ocomp,
        bot=a.zero,
        top=a.one,
        provenance=f"bqia_to_oml({a.content_hash()})",
    )
    report = check_ortholattice(lat)
    if not report.passed:
        raise ConversionInconsistency(
            f"bqia_to_oml output fails ortholattice check: {report.summary()}"
        )
    om = check_orthomodular(lat)
    if not om.passed:
        raise ConversionInconsistency(
            f"bqia_to_oml output is not orthomodular: {om.summary()}"
        )
    z = a.zero
    for x in range(n):
        for y in range(n):
            if meet[x][y] != t[t[t[x][y]][t[x][z]]][z]:
                raise ConversionInconsistency(
                    "meet shortcut ((x.y).(x.0)).0 disagrees with (x* (+) y*)* "
                    f"at ({a.names[x]}, {a.names[y]})"
                )
    return lat


def oml_to_bqia(lat: FiniteOrtholattice) -> BoundedQIA:
    """Convert an orthomodular lattice to its Sasaki-arrow algebra.

    Rejects lattices that are not orthomodular (``NotOrthomodular``
    with a witness); the Sasaki arrow on a merely ortholattice need
    not satisfy the quasi-implication axioms, so such inputs are not
    given a meaning here.  The output is re-validated.
    """
    om = check_orthomodular(lat)
    if not om.passed:
        witness = om.violations[0].witness if om.violations else ()
        shown = ", ".join(lat.names[i] for i in witness if 0 <= i < lat.n)
        raise NotOrthomodular(
            f"lattice is not orthomodular ({om.rules_failed()[0]} fails at {shown})",
            witness=witness,
        )
    n = lat.n
    table = tuple(tuple(sasaki(lat, x, y) for y in range(n)) for x in range(n))
    magma = FiniteMagma(
        n=n,
        names=lat.names,
        table=table,
        provenance=f"oml_to_bqia({lat.content_hash()})",
    )
    try:
        out = as_bqia(magma, lat.bot)
    except ValidationFailed as exc:
        raise ConversionInconsistency(
            f"Sasaki table of a validated OML fails QIA checks: {exc.report.summary()}"
        ) from exc
    if out.one != lat.top:
        raise ConversionInconsistency("derived one disagrees with the lattice top")
    return out
