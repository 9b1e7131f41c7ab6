"""Finite ortholattices and orthomodular lattices.

Elements are integer indices into a fixed carrier.  The order relation is
stored as one bitmask per element (bit ``b`` of ``leq[a]`` is set iff
``a <= b``), which keeps every check below O(n^3) integer operations for
carriers of up to 64 elements.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    InconsistentCharacterizations,
    NoSuchElement,
    NotALattice,
    SizeMismatch,
    TooLarge,
)
from .report import CheckReport, ReportBuilder

MAX_ELEMENTS = 64

IMPLICATION_KINDS = ("classical", "sasaki", "dishkant", "kalmbach")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def transitive_closure(rows: list[int], n: int) -> None:
    """In-place Warshall closure of the reachability rows."""
    for k in range(n):
        bit = 1 << k
        row_k = rows[k]
        for a in range(n):
            if rows[a] & bit:
                rows[a] |= row_k


def _greatest_of(mask: int, down: Sequence[int]) -> int | None:
    """The unique member of ``mask`` whose down-set covers all of ``mask``."""
    for g in bits(mask):
        if mask & ~down[g] == 0:
            return g
    return None


def _least_of(mask: int, up: Sequence[int]) -> int | None:
    for g in bits(mask):
        if mask & ~up[g] == 0:
            return g
    return None


@dataclass(frozen=True)
class FiniteOrtholattice:
    """A finite bounded lattice with an orthocomplementation candidate.

    Instances produced by :meth:`from_order` have coherent meet/join
    tables and bounds by construction; the ortho axioms are only
    promised after :func:`check_ortholattice` passes.
    """

    n: int
    names: tuple[str, ...]
    leq: tuple[int, ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    ocomp: tuple[int, ...]
    bot: int
    top: int
    provenance: str | None = field(default=None, compare=False)

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a] >> b & 1)

    def downsets(self) -> tuple[int, ...]:
        down = [0] * self.n
        for a in range(self.n):
            for b in bits(self.leq[a]):
                down[b] |= 1 << a
        return tuple(down)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise NoSuchElement(f"no element named {name!r}") from None

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs (a, b) with b directly above a, in element order."""
        down = self.downsets()
        out = []
        for a in range(self.n):
            strict = self.leq[a] & ~(1 << a)
            for b in bits(strict):
                between = strict & down[b] & ~(1 << b)
                if between == 0:
                    out.append((a, b))
        return out

    def content_hash(self) -> str:
        blob = repr((self.names, self.leq, self.ocomp, self.bot, self.top)).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    @property
    def degenerate(self) -> bool:
        return self.n == 1

    @classmethod
    def from_order(
        cls,
        names: Sequence[str],
        pairs: Iterable[tuple[int, int]],
        ocomp: Sequence[int],
        provenance: str | None = None,
    ) -> "FiniteOrtholattice":
        """Build a lattice from generating order pairs and a complement map.

        The reflexive-transitive closure of ``pairs`` is computed;
        antisymmetry and the existence of all meets/joins are verified
        (``NotALattice`` otherwise).  Ortho axioms are left to
        :func:`check_ortholattice`.
        """
        n = len(names)
        if n == 0:
            raise NotALattice("a lattice needs at least one element")
        if n > MAX_ELEMENTS:
            raise TooLarge(f"carrier of {n} elements exceeds the cap of {MAX_ELEMENTS}")
        if len(set(names)) != n:
            raise SizeMismatch("element names are not distinct")
        if len(ocomp) != n:
            raise SizeMismatch(f"ocomp has {len(ocomp)} entries for {n} elements")
        if any(not (0 <= c < n) for c in ocomp):
            raise SizeMismatch("ocomp entry out of range")

        up = [1 << a for a in range(n)]
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise SizeMismatch(f"order pair ({a}, {b}) out of range")
            up[a] |= 1 << b
        transitive_closure(up, n)

        for a in range(n):
            for b in bits(up[a]):
                if b != a and up[b] >> a & 1:
                    raise NotALattice(
                        f"antisymmetry fails: {names[a]} and {names[b]} are mutually below each other",
                        pair=(a, b),
                    )

        down = [0] * n
        for a in range(n):
            for b in bits(up[a]):
                down[b] |= 1 << a

        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                g = _greatest_of(down[a] & down[b], down)
                if g is None:
                    raise NotALattice(
                        f"{names[a]} and {names[b]} have no meet", pair=(a, b)
                    )
                meet[a][b] = meet[b][a] = g
                l = _least_of(up[a] & up[b], up)
                if l is None:
                    raise NotALattice(
                        f"{names[a]} and {names[b]} have no join", pair=(a, b)
                    )
                join[a][b] = join[b][a] = l

        bot = 0
        top = 0
        for a in range(1, n):
            bot = meet[bot][a]
            top = join[top][a]

        return cls(
            n=n,
            names=tuple(names),
            leq=tuple(up),
            meet=tuple(tuple(row) for row in meet),
            join=tuple(tuple(row) for row in join),
            ocomp=tuple(ocomp),
            bot=bot,
            top=top,
            provenance=provenance,
        )


def _check_sizes(lat: FiniteOrtholattice) -> None:
    n = lat.n
    if n < 1:
        raise SizeMismatch("empty carrier")
    if n > MAX_ELEMENTS:
        raise TooLarge(f"carrier of {n} elements exceeds the cap of {MAX_ELEMENTS}")
    if len(lat.names) != n or len(lat.leq) != n or len(lat.ocomp) != n:
        raise SizeMismatch("names/leq/ocomp length disagrees with n")
    if len(lat.meet) != n or len(lat.join) != n:
        raise SizeMismatch("meet/join table has wrong row count")
    full = (1 << n) - 1
    if any(row & ~full for row in lat.leq):
        raise SizeMismatch("leq mask mentions elements out of range")
    for table in (lat.meet, lat.join):
        for row in table:
            if len(row) != n or any(not (0 <= v < n) for v in row):
                raise SizeMismatch("meet/join table entry out of range")
    if any(not (0 <= c < n) for c in lat.ocomp):
        raise SizeMismatch("ocomp entry out of range")
    if not (0 <= lat.bot < n and 0 <= lat.top < n):
        raise SizeMismatch("bot/top out of range")


def check_ortholattice(lat: FiniteOrtholattice, all_witnesses: bool = False) -> CheckReport:
    """Verify bounded-lattice plus orthocomplementation axioms.

    Raises ``SizeMismatch`` for shape problems and ``NotALattice`` when
    some pair has no greatest lower / least upper bound; everything
    else is reported as violations: order axioms, bounds, meet/join
    table correctness, and the complement laws (x ^ x' = 0, x v x' = 1,
    order reversal, involution).
    """
    _check_sizes(lat)
    n = lat.n
    b = ReportBuilder("ortholattice", all_witnesses)
    if n == 1:
        b.flag("degenerate")

    for a in range(n):
        if not lat.le(a, a):
            b.hit("reflexivity", (a,))
    for a in range(n):
        for bb in bits(lat.leq[a]):
            if bb != a and lat.le(bb, a):
                if a < bb:
                    b.hit("antisymmetry", (a, bb))
    for a in range(n):
        for c in bits(lat.leq[a]):
            missing = lat.leq[c] & ~lat.leq[a]
            if missing:
                b.hit("transitivity", (a, c, next(bits(missing))))

    down = lat.downsets()
    full = (1 << n) - 1
    if lat.leq[lat.bot] != full:
        b.hit("least", (lat.bot,))
    if down[lat.top] != full:
        b.hit("greatest", (lat.top,))

    # ground-truth bounds recomputed from the order; NotALattice when absent
    glb = [[0] * n for _ in range(n)]
    lub = [[0] * n for _ in range(n)]
    for a in range(n):
        for c in range(a, n):
            g = _greatest_of(down[a] & down[c], down)
            if g is None:
                raise NotALattice(f"{lat.names[a]} and {lat.names[c]} have no meet", pair=(a, c))
            glb[a][c] = glb[c][a] = g
            l = _least_of(lat.leq[a] & lat.leq[c], lat.leq)
            if l is None:
                raise NotALattice(f"{lat.names[a]} and {lat.names[c]} have no join", pair=(a, c))
            lub[a][c] = lub[c][a] = l

    for a in range(n):
        for c in range(n):
            if lat.meet[a][c] != glb[a][c]:
                b.hit("meet-table", (a, c))
            if lat.join[a][c] != lub[a][c]:
                b.hit("join-table", (a, c))

    for a in range(n):
        oa = lat.ocomp[a]
        if glb[a][oa] != lat.bot or lub[a][oa] != lat.top:
            b.hit("complement-law", (a,))
    for a in range(n):
        for c in bits(lat.leq[a]):
            if not lat.le(lat.ocomp[c], lat.ocomp[a]):
                b.hit("order-reversing", (a, c))
    for a in range(n):
        if lat.ocomp[lat.ocomp[a]] != a:
            b.hit("involution", (a,))

    return b.done()


@dataclass(frozen=True)
class SublatticeWitness:
    """Six elements forming a hexagon sub-ortholattice.

    Roles, in order: bottom, y, x, x-complement, y-complement, top with
    the two chains bottom < y < x < top and bottom < x' < y' < top and
    no other comparabilities.
    """

    bottom: int
    y: int
    x: int
    x_comp: int
    y_comp: int
    top: int

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.bottom, self.y, self.x, self.x_comp, self.y_comp, self.top)


def find_benzene_sublattice(lat: FiniteOrtholattice) -> SublatticeWitness | None:
    """Search for a hexagon (benzene-ring) sub-ortholattice.

    Scans ordered pairs (x, y) with bot < y < x < top; the remaining
    hexagon members are forced to be the complements of x and y.  The
    candidate counts only when all six elements are distinct and the
    ambient meets/joins of the two cross pairs collapse to the bounds,
    which makes the six-element set closed under meet, join, and
    complement.  Returns the first witness in scan order, or ``None``.
    """
    n, bot, top = lat.n, lat.bot, lat.top
    if n < 6:
        return None
    for x in range(n):
        if x == bot or x == top:
            continue
        for y in range(n):
            if y == x or y == bot or y == top:
                continue
            if not lat.le(y, x):
                continue
            xc = lat.ocomp[x]
            yc = lat.ocomp[y]
            six = {bot, y, x, xc, yc, top}
            if len(six) != 6:
                continue
            if lat.meet[x][yc] != bot or lat.join[x][yc] != top:
                continue
            if lat.meet[y][xc] != bot or lat.join[y][xc] != top:
                continue
            return SublatticeWitness(bot, y, x, xc, yc, top)
    return None


def check_orthomodular(lat: FiniteOrtholattice, all_witnesses: bool = False) -> CheckReport:
    """Cross-validated orthomodularity check.

    Evaluates four independent characterizations -- the orthomodular
    quasi-equation, the complement-separation condition, the join
    identity, and hexagon-sublattice absence -- and insists that all
    four agree (``InconsistentCharacterizations`` otherwise, which
    would signal a bug, not bad input).  The report carries the first
    witness of every failing characterization.
    """
    n = lat.n
    b = ReportBuilder("orthomodular", all_witnesses)
    if n == 1:
        b.flag("degenerate")

    quasi = True
    for a in range(n):
        for c in bits(lat.leq[a]):
            if lat.join[a][lat.meet[lat.ocomp[a]][c]] != c:
                quasi = False
                b.hit("quasi-equation", (a, c))

    separation = True
    for a in range(n):
        for c in bits(lat.leq[a]):
            if c != a and lat.meet[lat.ocomp[a]][c] == lat.bot:
                separation = False
                b.hit("complement-separation", (a, c))

    join_identity = True
    for a in range(n):
        for c in range(n):
            j = lat.join[a][c]
            if lat.join[a][lat.meet[lat.ocomp[a]][j]] != j:
                join_identity = False
                b.hit("join-identity", (a, c))

    witness = find_benzene_sublattice(lat)
    hexagon_free = witness is None
    if witness is not None:
        b.hit("benzene-free", witness.as_tuple())

    verdicts = (quasi, separation, join_identity, hexagon_free)
    if len(set(verdicts)) != 1:
        raise InconsistentCharacterizations(
            "orthomodularity characterizations disagree: "
            f"quasi-equation={quasi}, complement-separation={separation}, "
            f"join-identity={join_identity}, benzene-free={hexagon_free}"
        )
    return b.done()


def implication_polynomial(lat: FiniteOrtholattice, kind: str, a: int, b: int) -> int:
    """Evaluate one of the four implication polynomials at (a, b).

    classical:  a' v b
    sasaki:     a' v (a ^ b)
    dishkant:   (a' ^ b') v b
    kalmbach:   (a ^ b) v (a' ^ b) v (a' ^ b')
    """
    if kind not in IMPLICATION_KINDS:
        raise ValueError(f"unknown implication kind {kind!r}; expected one of {IMPLICATION_KINDS}")
    n = lat.n
    if not (0 <= a < n and 0 <= b < n):
        raise NoSuchElement(f"element index out of range: ({a}, {b}) with n={n}")
    ac = lat.ocomp[a]
    bc = lat.ocomp[b]
    if kind == "classical":
        return lat.join[ac][b]
    if kind == "sasaki":
        return lat.join[ac][lat.meet[a][b]]
    if kind == "dishkant":
        return lat.join[lat.meet[ac][bc]][b]
    return lat.join[lat.join[lat.meet[a][b]][lat.meet[ac][b]]][lat.meet[ac][bc]]


def sasaki(lat: FiniteOrtholattice, a: int, b: int) -> int:
    return implication_polynomial(lat, "sasaki", a, b)


def _signature(lat: FiniteOrtholattice) -> list[tuple[int, ...]]:
    down = lat.downsets()
    sig = []
    for e in range(lat.n):
        sig.append(
            (
                bin(down[e]).count("1"),
                bin(lat.leq[e]).count("1"),
                bin(down[lat.ocomp[e]]).count("1"),
                1 if lat.ocomp[e] == e else 0,
            )
        )
    return sig


def find_isomorphism(
    a: FiniteOrtholattice, b: FiniteOrtholattice
) -> tuple[int, ...] | None:
    """Ortho-isomorphism between two validated lattices, or ``None``.

    Backtracks over element images in index order, pruned by per-element
    rank/degree invariants, and returns the lexicographically least map
    preserving order (both ways), complement, bottom, and top.
    """
    if a.n != b.n:
        return None
    n = a.n
    sig_a = _signature(a)
    sig_b = _signature(b)
    if sorted(sig_a) != sorted(sig_b):
        return None

    mapping = [-1] * n
    used = [False] * n

    def consistent(e: int, f: int) -> bool:
        if sig_a[e] != sig_b[f]:
            return False
        if (e == a.bot) != (f == b.bot) or (e == a.top) != (f == b.top):
            return False
        oe = a.ocomp[e]
        if mapping[oe] >= 0 and mapping[oe] != b.ocomp[f]:
            return False
        for prev in range(e):
            g = mapping[prev]
            if a.le(e, prev) != b.le(f, g) or a.le(prev, e) != b.le(g, f):
                return False
        return True

    def extend(e: int) -> bool:
        if e == n:
            return True
        for f in range(n):
            if used[f]:
                continue
            if consistent(e, f):
                mapping[e] = f
                used[f] = True
                if extend(e + 1):
                    return True
                mapping[e] = -1
                used[f] = False
        return False

    if extend(0):
        return tuple(mapping)
    return None
