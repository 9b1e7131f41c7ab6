"""Orthoframes, bi-orthogonal closure, and the frame constructions.

Point sets are plain int bitmasks.  ``perp_of`` is the polarity
operator; sets fixed by its square are the bi-orthogonally closed ones
and always form a complete ortholattice.  The four frame constructions
(MacLaren / Goldblatt, plain and monadic) build orthoframes out of
bounded quasi-implication algebras, either from the nonzero elements
or from the proper filters; on finite input the closed-set lattice
reproduces the source algebra, which :func:`embedding` verifies.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConversionInconsistency, InconsistentCharacterizations, SizeMismatch, TooLarge
from .lattice import FiniteOrtholattice, bits, check_ortholattice
from .monadic import MonadicQIA, UnaryOp
from .qia import BoundedQIA, induced_order
from .report import CheckReport, ReportBuilder

MAX_SCAN_POINTS = 20
MAX_POINTS = 64
MAX_CLOSED_SETS = 4096
MAX_FILTERS = 4096


@dataclass(frozen=True)
class OrthoFrame:
    """A point set with an orthogonality relation, one bitmask row per point."""

    m: int
    labels: tuple[str, ...]
    perp: tuple[int, ...]

    def __post_init__(self):
        if self.m > MAX_POINTS:
            raise TooLarge(f"{self.m} points exceeds the cap of {MAX_POINTS}")
        if len(self.labels) != self.m or len(self.perp) != self.m:
            raise SizeMismatch("labels/perp length disagrees with the point count")
        full = (1 << self.m) - 1
        if any(row & ~full for row in self.perp):
            raise SizeMismatch("perp row mentions points out of range")

    @property
    def full(self) -> int:
        return (1 << self.m) - 1


@dataclass(frozen=True)
class MonadicOrthoFrame:
    """An orthoframe with an accessibility relation R (bitmask rows)."""

    frame: OrthoFrame
    rel: tuple[int, ...]

    def __post_init__(self):
        if len(self.rel) != self.frame.m:
            raise SizeMismatch("rel length disagrees with the point count")
        if any(row & ~self.frame.full for row in self.rel):
            raise SizeMismatch("rel row mentions points out of range")

    @property
    def m(self) -> int:
        return self.frame.m

    @property
    def labels(self) -> tuple[str, ...]:
        return self.frame.labels


def check_orthoframe(f: OrthoFrame, all_witnesses: bool = False) -> CheckReport:
    """Irreflexivity and symmetry of the orthogonality relation."""
    b = ReportBuilder("orthoframe", all_witnesses)
    if f.m == 0:
        b.flag("empty")
    for p in range(f.m):
        if f.perp[p] >> p & 1:
            b.hit("irreflexive", (p,))
    for p in range(f.m):
        for q in bits(f.perp[p]):
            if not f.perp[q] >> p & 1:
                b.hit("symmetric", (p, q))
    return b.done()


def perp_of(f: OrthoFrame, u: int) -> int:
    """All points orthogonal to every member of ``u`` (all of X for empty u)."""
    if u & ~f.full:
        raise SizeMismatch("point set out of range")
    acc = f.full
    for p in bits(u):
        acc &= f.perp[p]
    return acc


def rel_image(mf: MonadicOrthoFrame, u: int) -> int:
    """R[u]: everything reachable from a member of ``u``."""
    if u & ~mf.frame.full:
        raise SizeMismatch("point set out of range")
    acc = 0
    for p in bits(u):
        acc |= mf.rel[p]
    return acc


def is_biortho_closed(f: OrthoFrame, u: int) -> bool:
    return perp_of(f, perp_of(f, u)) == u


def check_monadic_orthoframe(mf: MonadicOrthoFrame, all_witnesses: bool = False) -> CheckReport:
    """Orthoframe axioms plus reflexivity, transitivity, and R-closure.

    The R-closure condition requires R[R[{p}]-perp] to stay inside
    R[{p}]-perp for every point; when R is reflexive the inclusion is
    automatically an equality, and a violation of that equality with
    the other conditions passing raises
    ``InconsistentCharacterizations``.
    """
    f = mf.frame
    base = check_orthoframe(f, all_witnesses)
    b = ReportBuilder("monadic-orthoframe", all_witnesses)
    for v in base.violations:
        b.hit(v.rule, v.witness)
    for flag in base.flags:
        b.flag(flag)

    reflexive = True
    for p in range(f.m):
        if not mf.rel[p] >> p & 1:
            reflexive = False
            b.hit("r-reflexive", (p,))
    for p in range(f.m):
        for q in bits(mf.rel[p]):
            missing = mf.rel[q] & ~mf.rel[p]
            if missing:
                b.hit("r-transitive", (p, q, next(bits(missing))))

    for p in range(f.m):
        blocked = perp_of(f, mf.rel[p])
        image = rel_image(mf, blocked)
        if image & ~blocked:
            b.hit("r-perp-closed", (p,))
        elif reflexive and image != blocked:
            raise InconsistentCharacterizations(
                "R is reflexive and R-closure holds, yet R[R[{p}]-perp] is a "
                f"proper subset at point {f.labels[p]}"
            )
    return b.done()


@dataclass(frozen=True)
class BiorthoLattice:
    """The ortholattice of bi-orthogonally closed point sets.

    ``closed`` lists the closed sets (bitmasks) in the element order of
    ``lattice``; ``exists_r`` is filled when built over a monadic
    frame and tabulates U -> R[U]-perp-perp as an index map.
    """

    frame: OrthoFrame
    closed: tuple[int, ...]
    lattice: FiniteOrtholattice
    exists_r: UnaryOp | None = None

    def index_of(self, u: int) -> int:
        try:
            return self.closed.index(u)
        except ValueError:
            raise SizeMismatch("point set is not bi-orthogonally closed") from None


def _set_label(frame: OrthoFrame, u: int) -> str:
    return "{" + ",".join(frame.labels[p] for p in bits(u)) + "}"


def _closed_sets(f: OrthoFrame, max_closed: int) -> list[int]:
    if f.m <= MAX_SCAN_POINTS:
        found = [u for u in range(1 << f.m) if is_biortho_closed(f, u)]
    else:
        # seeded generation: every closed set is an intersection of
        # single-point perps (X for the empty intersection)
        seeds = [f.full] + [f.perp[p] for p in range(f.m)]
        family = set()
        work = list(seeds)
        while work:
            u = work.pop()
            if u in family:
                continue
            family.add(u)
            if len(family) > max_closed:
                raise TooLarge(f"more than {max_closed} bi-orthogonally closed sets")
            for v in list(family):
                w = u & v
                if w not in family:
                    work.append(w)
        found = sorted(family)
    if len(found) > max_closed:
        raise TooLarge(f"{len(found)} bi-orthogonally closed sets exceed the cap of {max_closed}")
    found.sort(key=lambda u: (bin(u).count("1"), u))
    return found


def bi_ortho_lattice(f: OrthoFrame, max_closed: int = MAX_CLOSED_SETS) -> BiorthoLattice:
    """Enumerate the closed sets and assemble their ortholattice.

    Exhaustive subset scan up to 20 points, seeded closure-system
    generation beyond; the resulting structure is validated with
    :func:`check_ortholattice` (a failure would be a bug, the closed
    sets of any orthoframe form a complete ortholattice).
    """
    closed = _closed_sets(f, max_closed)
    index = {u: i for i, u in enumerate(closed)}
    k = len(closed)
    names = tuple(_set_label(f, u) for u in closed)
    leq = []
    for u in closed:
        mask = 0
        for j, v in enumerate(closed):
            if u & ~v == 0:
                mask |= 1 << j
        leq.append(mask)
    meet_rows = []
    join_rows = []
    ocomp = []
    for u in closed:
        ocomp.append(index[perp_of(f, u)])
        meet_row = []
        join_row = []
        for v in closed:
            meet_row.append(index[u & v])
            join_row.append(index[perp_of(f, perp_of(f, u | v))])
        meet_rows.append(tuple(meet_row))
        join_rows.append(tuple(join_row))
    lattice = FiniteOrtholattice(
        n=k,
        names=names,
        leq=tuple(leq),
        meet=tuple(meet_rows),
        join=tuple(join_rows),
        ocomp=tuple(ocomp),
        bot=index[0],
        top=index[f.full],
        provenance=f"bi_ortho_lattice({f.m} points)",
    )
    report = check_ortholattice(lattice)
    if not report.passed:
        raise ConversionInconsistency(
            f"closed sets fail the ortholattice check: {report.summary()}"
        )
    return BiorthoLattice(frame=f, closed=tuple(closed), lattice=lattice)


def _nonzero_elements(a: BoundedQIA) -> list[int]:
    return [x for x in range(a.n) if x != a.zero]


def maclaren_frame(a: BoundedQIA) -> OrthoFrame:
    """Orthoframe on the nonzero elements with x perp y iff x.(y.0) = 1."""
    points = _nonzero_elements(a)
    t, z, one = a.table, a.zero, a.one
    perp = []
    for x in points:
        mask = 0
        for j, y in enumerate(points):
            if t[x][t[y][z]] == one:
                mask |= 1 << j
        perp.append(mask)
    frame = OrthoFrame(
        m=len(points), labels=tuple(a.names[x] for x in points), perp=tuple(perp)
    )
    report = check_orthoframe(frame)
    if not report.passed:
        raise ConversionInconsistency(
            f"MacLaren construction produced a non-orthoframe: {report.summary()}"
        )
    return frame


def enumerate_proper_filters(a: BoundedQIA, max_filters: int = MAX_FILTERS) -> tuple[int, ...]:
    """All proper filters, as element bitmasks, in lexicographic order.

    A filter is nonempty, upward closed, and closed under the meet
    polynomial ((x.y).(x.0)).0; proper means the zero stays outside.
    Generation starts from the principal up-sets and closes under the
    meet polynomial with a worklist; order/canonical form is the
    lexicographic order of the sorted member lists.
    """
    order = induced_order(a)
    t, z = a.table, a.zero
    seen = set()
    filters = []
    for e in range(a.n):
        if e == z:
            continue
        mask = order[e]
        # close under the meet polynomial until stable
        changed = True
        while changed:
            changed = False
            members = list(bits(mask))
            for x in members:
                for y in members:
                    w = t[t[t[x][y]][t[x][z]]][z]
                    if not mask >> w & 1:
                        mask |= 1 << w | order[w]
                        changed = True
        if mask >> z & 1:
            continue  # not proper
        if mask not in seen:
            seen.add(mask)
            filters.append(mask)
            if len(filters) > max_filters:
                raise TooLarge(f"more than {max_filters} proper filters")
    filters.sort(key=lambda mask: tuple(bits(mask)))
    return tuple(filters)


def goldblatt_frame(a: BoundedQIA, max_filters: int = MAX_FILTERS) -> OrthoFrame:
    """Orthoframe on the proper filters: F perp G iff some x in F has x.0 in G."""
    filters = enumerate_proper_filters(a, max_filters)
    t, z = a.table, a.zero
    star_mask = []
    for alpha in filters:
        mask = 0
        for x in bits(alpha):
            mask |= 1 << t[x][z]
        star_mask.append(mask)
    perp = []
    for i, _ in enumerate(filters):
        row = 0
        for j, beta in enumerate(filters):
            if star_mask[i] & beta:
                row |= 1 << j
        perp.append(row)
    labels = tuple(
        "{" + ",".join(a.names[x] for x in bits(alpha)) + "}" for alpha in filters
    )
    frame = OrthoFrame(m=len(filters), labels=labels, perp=tuple(perp))
    report = check_orthoframe(frame)
    if not report.passed:
        raise ConversionInconsistency(
            f"Goldblatt construction produced a non-orthoframe: {report.summary()}"
        )
    return frame


def monadic_maclaren_frame(m: MonadicQIA) -> MonadicOrthoFrame:
    """MacLaren frame plus accessibility p R q iff q . diamond(p) = 1.

    Validates the monadic-orthoframe axioms and the pointwise
    characterization of R[{p}]-perp as the down-set of the complement
    of diamond(p); both are theorems, failures raise
    ``ConversionInconsistency``.
    """
    a = m.qia
    frame = maclaren_frame(a)
    points = _nonzero_elements(a)
    t, z, one = a.table, a.zero, a.one
    rel = []
    for x in points:
        mask = 0
        dx = m.diamond(x)
        for j, y in enumerate(points):
            if t[y][dx] == one:
                mask |= 1 << j
        rel.append(mask)
    mf = MonadicOrthoFrame(frame=frame, rel=tuple(rel))
    report = check_monadic_orthoframe(mf)
    if not report.passed:
        raise ConversionInconsistency(
            f"monadic MacLaren frame fails its axioms: {report.summary()}"
        )
    for i, x in enumerate(points):
        blocked = perp_of(frame, mf.rel[i])
        c = t[m.diamond(x)][z]
        expected = 0
        for j, y in enumerate(points):
            if t[y][c] == one:
                expected |= 1 << j
        if blocked != expected:
            raise ConversionInconsistency(
                "R[{x}]-perp disagrees with the down-set of diamond(x).0 at "
                + a.names[x]
            )
    return mf


def monadic_goldblatt_frame(m: MonadicQIA, max_filters: int = MAX_FILTERS) -> MonadicOrthoFrame:
    """Goldblatt frame plus accessibility F R G iff diamond[F] is inside G.

    Validates the monadic-orthoframe axioms and the characterization of
    R[{F}]-perp as the filters containing diamond(x).0 for some x in F.
    """
    a = m.qia
    frame = goldblatt_frame(a, max_filters)
    filters = enumerate_proper_filters(a, max_filters)
    t, z = a.table, a.zero
    diamond_image = []
    for alpha in filters:
        img = 0
        for x in bits(alpha):
            img |= 1 << m.diamond(x)
        diamond_image.append(img)
    rel = []
    for i, _ in enumerate(filters):
        mask = 0
        for j, beta in enumerate(filters):
            if diamond_image[i] & ~beta == 0:
                mask |= 1 << j
        rel.append(mask)
    mf = MonadicOrthoFrame(frame=frame, rel=tuple(rel))
    report = check_monadic_orthoframe(mf)
    if not report.passed:
        raise ConversionInconsistency(
            f"monadic Goldblatt frame fails its axioms: {report.summary()}"
        )
    for i, alpha in enumerate(filters):
        blocked = perp_of(frame, mf.rel[i])
        witness_marks = 0
        for x in bits(alpha):
            witness_marks |= 1 << t[m.diamond(x)][z]
        expected = 0
        for j, beta in enumerate(filters):
            if witness_marks & beta:
                expected |= 1 << j
        if blocked != expected:
            raise ConversionInconsistency(
                "R[{F}]-perp disagrees with its witness characterization at filter "
                + frame.labels[i]
            )
    return mf


def exists_r(mf: MonadicOrthoFrame, u: int) -> int:
    """The frame quantifier: R[u] double-perp."""
    return perp_of(mf.frame, perp_of(mf.frame, rel_image(mf, u)))


def exists_r_quantifier(mf: MonadicOrthoFrame, bl: BiorthoLattice) -> UnaryOp:
    """Tabulate exists_r over the closed sets as a unary op on bl.lattice."""
    images = []
    index = {u: i for i, u in enumerate(bl.closed)}
    for u in bl.closed:
        v = exists_r(mf, u)
        if v not in index:
            raise ConversionInconsistency(
                "exists_r image of a closed set is not closed"
            )
        images.append(index[v])
    return UnaryOp(tuple(images))


def with_exists_r(mf: MonadicOrthoFrame, max_closed: int = MAX_CLOSED_SETS) -> BiorthoLattice:
    """Bi-orthogonal lattice of the frame with the exists_r table filled in."""
    bl = bi_ortho_lattice(mf.frame, max_closed)
    op = exists_r_quantifier(mf, bl)
    return BiorthoLattice(frame=bl.frame, closed=bl.closed, lattice=bl.lattice, exists_r=op)


def embedding(
    algebra: BoundedQIA | MonadicQIA, construction: str
) -> tuple[tuple[int, ...], CheckReport]:
    """Map the algebra into the closed sets of one of its frames.

    ``maclaren`` sends x to its nonzero down-set; ``goldblatt`` sends x
    to the filters containing it.  The report verifies that every image
    is closed, the map is injective and (finite case) surjective onto
    the closed sets, and that meet, join, complement, bounds and --
    for monadic input -- the diamond/exists_r square all commute.
    Returns the image list (point bitmasks, one per element) with the
    report.
    """
    if construction not in ("maclaren", "goldblatt"):
        raise ValueError(f"unknown construction {construction!r}")
    monadic = isinstance(algebra, MonadicQIA)
    a = algebra.qia if monadic else algebra
    if monadic:
        mf = (
            monadic_maclaren_frame(algebra)
            if construction == "maclaren"
            else monadic_goldblatt_frame(algebra)
        )
        frame = mf.frame
    else:
        mf = None
        frame = maclaren_frame(a) if construction == "maclaren" else goldblatt_frame(a)

    order = induced_order(a)
    if construction == "maclaren":
        points = _nonzero_elements(a)
        images = []
        for x in range(a.n):
            mask = 0
            for j, y in enumerate(points):
                if order[y] >> x & 1:
                    mask |= 1 << j
            images.append(mask)
    else:
        filters = enumerate_proper_filters(a)
        images = []
        for x in range(a.n):
            mask = 0
            for j, alpha in enumerate(filters):
                if alpha >> x & 1:
                    mask |= 1 << j
            images.append(mask)

    bl = bi_ortho_lattice(frame)
    closed_index = {u: i for i, u in enumerate(bl.closed)}
    title = f"embedding ({construction}{', monadic' if monadic else ''})"
    b = ReportBuilder(title, all_witnesses=False)

    for x in range(a.n):
        if images[x] not in closed_index:
            b.hit("closed-image", (x,))
    for x in range(a.n):
        for y in range(x + 1, a.n):
            if images[x] == images[y]:
                b.hit("injective", (x, y))
    image_set = set(images)
    for i, u in enumerate(bl.closed):
        if u not in image_set:
            b.hit("surjective", (i,))
    if images[a.zero] != 0:
        b.hit("bottom", (a.zero,))
    if images[a.one] != frame.full:
        b.hit("top", (a.one,))
    for x in range(a.n):
        if perp_of(frame, images[x]) != images[a.star(x)]:
            b.hit("complement", (x,))
        for y in range(a.n):
            if images[a.odot(x, y)] != images[x] & images[y]:
                b.hit("meet", (x, y))
            joined = perp_of(frame, perp_of(frame, images[x] | images[y]))
            if images[a.oplus(x, y)] != joined:
                b.hit("join", (x, y))
    if monadic:
        for x in range(a.n):
            if images[algebra.diamond(x)] != exists_r(mf, images[x]):
                b.hit("diamond-commutes", (x,))

    b.metric("closed-sets", len(bl.closed))
    return tuple(images), b.done()
