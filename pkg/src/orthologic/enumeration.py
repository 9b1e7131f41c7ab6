"""Exhaustive generation of small structures up to isomorphism.

Both generators fix the definable constants up front (bottom at index
0, top at index n-1, complement pairing (1,2), (3,4), ... on the
middle elements), which is harmless for isomorphism classes since the
constants are preserved by every isomorphism.  Canonical forms are
minima over the permutations that respect those constants, so two
generated structures are isomorphic iff their keys are equal.

``enumerate_bqia`` additionally cross-checks its output against the
Sasaki images of ``enumerate_oml``: the two families must biject, and
a mismatch raises rather than returning (it would mean one of the two
independent searches is wrong).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InconsistentCharacterizations, NotALattice, TooLarge
from .lattice import (
    FiniteOrtholattice,
    bits,
    check_ortholattice,
    check_orthomodular,
)
from .monadic import UnaryOp, check_quantifier
from .qia import BoundedQIA, FiniteMagma, as_bqia, check_bounded_qia, check_qia, oml_to_bqia
from .report import CheckReport

MAX_OML_SIZE = 10
MAX_BQIA_SIZE = 6
MAX_QUANTIFIER_SIZE = 12
MAX_ORACLE_SIZE = 16

_PAIR_LETTERS = "abcd"


@dataclass(frozen=True)
class EnumerationResult:
    kind: str
    size: int
    representatives: tuple
    total_labeled: int
    flags: tuple[str, ...] = ()


def _standard_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("0",)
    mids = []
    for m in range(n - 2):
        q, r = divmod(m, 2)
        mids.append(_PAIR_LETTERS[q] + ("'" if r else ""))
    return ("0", *mids, "1")


def _paired_perms(n: int) -> list[tuple[int, ...]]:
    """Carrier permutations fixing 0 and n-1 and commuting with the pairing."""
    k = n - 2
    p = k // 2
    perms = []
    for block in itertools.permutations(range(p)):
        for flips in itertools.product((0, 1), repeat=p):
            pi = list(range(n))
            for m in range(k):
                q, r = divmod(m, 2)
                pi[1 + m] = 1 + 2 * block[q] + (r ^ flips[q])
            perms.append(tuple(pi))
    return perms


def _middle_order_solutions(k: int):
    """Yield strict-order rows (masks) on k paired middle elements.

    Partner of middle i is i^1.  Solutions satisfy antisymmetry and
    transitivity, are mirror-symmetric (a < b iff partner(b) <
    partner(a)), never relate an element to its partner, and allow no
    middle element below or above both members of a pair (such orders
    could not carry an orthocomplementation with lawful meets/joins).
    """
    if k == 0:
        yield ()
        return

    reps = []
    for i in range(k):
        for j in range(i + 1, k):
            if j == i ^ 1:
                continue
            mirror = tuple(sorted((i ^ 1, j ^ 1)))
            if (i, j) <= mirror:
                reps.append((i, j))

    def add_edge(lt, gt, a, b):
        if a == b or lt[b] >> a & 1:
            return False
        if lt[a] >> b & 1:
            return True
        preds = gt[a] | (1 << a)
        succs = lt[b] | (1 << b)
        for p in bits(preds):
            lt[p] |= succs
        for s in bits(succs):
            gt[s] |= preds
        return True

    def consistent(lt, gt, incomparable):
        for u in range(k):
            if lt[u] >> u & 1 or lt[u] >> (u ^ 1) & 1:
                return False
            if lt[u] & lt[u ^ 1] or gt[u] & gt[u ^ 1]:
                return False
        for i, j in incomparable:
            if lt[i] >> j & 1 or lt[j] >> i & 1:
                return False
        return True

    def rec(idx, lt, gt, incomparable):
        if idx == len(reps):
            yield tuple(lt)
            return
        i, j = reps[idx]
        if not (lt[i] >> j & 1 or lt[j] >> i & 1):
            yield from rec(idx + 1, lt[:], gt[:], incomparable + [(i, j)])
        for a, b in ((i, j), (j, i)):
            lt2, gt2 = lt[:], gt[:]
            if not add_edge(lt2, gt2, a, b):
                continue
            if not add_edge(lt2, gt2, b ^ 1, a ^ 1):
                continue
            if consistent(lt2, gt2, incomparable):
                yield from rec(idx + 1, lt2, gt2, incomparable)

    yield from rec(0, [0] * k, [0] * k, [])


def _order_key(lt: tuple[int, ...], k: int, middle_perms) -> tuple[int, ...]:
    best = None
    for pi in middle_perms:
        rows = [0] * k
        for a in range(k):
            row = 0
            for b in bits(lt[a]):
                row |= 1 << pi[b]
            rows[pi[a]] = row
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return best


def _degenerate_lattice() -> FiniteOrtholattice:
    return FiniteOrtholattice.from_order(("0",), [], (0,), provenance="enumerate_oml(1)")


def enumerate_oml(n: int) -> EnumerationResult:
    """All orthomodular lattices with n elements, up to isomorphism.

    Backtracks over the strict order on the paired middle elements,
    builds each candidate lattice, and keeps the ones passing the
    ortholattice and orthomodularity checks.  ``total_labeled`` counts
    the valid labeled structures (with the fixed constants) before
    canonical-form reduction.
    """
    if n < 1:
        raise ValueError("size must be positive")
    if n > MAX_OML_SIZE:
        raise TooLarge(f"enumerate_oml supports n <= {MAX_OML_SIZE}, got {n}")
    if n == 1:
        return EnumerationResult(
            kind="oml",
            size=1,
            representatives=(_degenerate_lattice(),),
            total_labeled=1,
            flags=("degenerate",),
        )
    if n % 2 == 1:
        # the complement pairs the middle elements without fixed points:
        # a self-complementary element forces the one-element algebra
        return EnumerationResult(kind="oml", size=n, representatives=(), total_labeled=0)

    k = n - 2
    names = _standard_names(n)
    middle_perms = [tuple(pi[1 + m] - 1 for m in range(k)) for pi in _paired_perms(n)]
    ocomp = tuple([n - 1] + [1 + (m ^ 1) for m in range(k)] + [0])

    total = 0
    found: dict[tuple[int, ...], FiniteOrtholattice] = {}
    for lt in _middle_order_solutions(k):
        pairs = [(0, n - 1)]
        for m in range(k):
            pairs.append((0, 1 + m))
            pairs.append((1 + m, n - 1))
            for b in bits(lt[m]):
                pairs.append((1 + m, 1 + b))
        try:
            lat = FiniteOrtholattice.from_order(
                names, pairs, ocomp, provenance=f"enumerate_oml({n})"
            )
        except NotALattice:
            continue  # some pair lacks a bound; the search only pre-prunes cheaply
        ortho = check_ortholattice(lat)
        if not ortho.passed:
            raise InconsistentCharacterizations(
                f"generator produced a non-ortholattice: {ortho.summary()}"
            )
        if not check_orthomodular(lat).passed:
            continue
        total += 1
        key = _order_key(lt, k, middle_perms)
        if key not in found:
            found[key] = lat

    reps = tuple(found[key] for key in sorted(found))
    return EnumerationResult(kind="oml", size=n, representatives=reps, total_labeled=total)


def _degenerate_bqia() -> BoundedQIA:
    magma = FiniteMagma(1, ("0",), ((0,),), provenance="enumerate_bqia(1)")
    return as_bqia(magma, 0)


def _bqia_table_solutions(n: int):
    """Yield complete Cayley tables for candidate bounded QIAs.

    Constants are fixed (zero = 0, one = n-1, complement column =
    standard pairing); the cells decided by theorems (zero row, one
    row, one column, diagonal) are prefilled, and the remaining
    middle-by-middle cells are assigned by DFS with constraint
    propagation from contraction, self-absorption, and the induced
    order's antisymmetry/transitivity.  Leaves still undergo the full
    axiom check in the caller.
    """
    one = n - 1
    middles = range(1, n - 1)

    def partner(x: int) -> int:
        return x + 1 if x % 2 == 1 else x - 1

    t = [[-1] * n for _ in range(n)]
    for y in range(n):
        t[0][y] = one
    for y in range(n):
        t[one][y] = y
    for x in range(n):
        t[x][one] = one
        if t[x][x] == -1:
            t[x][x] = one
    for x in middles:
        t[x][0] = partner(x)

    free = [(x, y) for x in middles for y in middles if x != y]

    def assign(x: int, y: int, v: int, trail: list) -> bool:
        cur = t[x][y]
        if cur != -1:
            return cur == v
        t[x][y] = v
        trail.append((x, y))
        if not assign(v, x, x, trail):       # contraction: (x.y).x = x
            return False
        if not assign(x, v, v, trail):       # self-absorption: x.(x.y) = x.y
            return False
        if v == one:
            if x != y and t[y][x] == one:
                return False                  # antisymmetry of the induced order
            for z in range(n):
                if t[y][z] == one and not assign(x, z, one, trail):
                    return False
                if t[z][x] == one and not assign(z, y, one, trail):
                    return False
        return True

    def rec(idx: int):
        if idx == len(free):
            yield tuple(tuple(row) for row in t)
            return
        x, y = free[idx]
        if t[x][y] != -1:
            yield from rec(idx + 1)
            return
        for v in range(n):
            trail: list = []
            if assign(x, y, v, trail):
                yield from rec(idx + 1)
            for (ux, uy) in trail:
                t[ux][uy] = -1

    yield from rec(0)


def _table_key(table, n: int, perms) -> tuple[int, ...]:
    best = None
    for pi in perms:
        flat = [0] * (n * n)
        for x in range(n):
            base = pi[x] * n
            row = table[x]
            for y in range(n):
                flat[base + pi[y]] = pi[row[y]]
        key = tuple(flat)
        if best is None or key < best:
            best = key
    return best


def enumerate_bqia(n: int) -> EnumerationResult:
    """All bounded quasi-implication algebras with n elements, up to iso.

    Direct Cayley-table backtracking, independently cross-checked
    against the Sasaki images of ``enumerate_oml(n)``: the two sets
    must be equal up to isomorphism (``InconsistentCharacterizations``
    otherwise).
    """
    if n < 1:
        raise ValueError("size must be positive")
    if n > MAX_BQIA_SIZE:
        raise TooLarge(f"enumerate_bqia supports n <= {MAX_BQIA_SIZE}, got {n}")

    perms = _paired_perms(n) if n >= 2 and n % 2 == 0 else [tuple(range(n))]
    names = _standard_names(n)

    total = 0
    found: dict[tuple[int, ...], BoundedQIA] = {}
    if n == 1:
        found[(0,)] = _degenerate_bqia()
        total = 1
    elif n % 2 == 0:
        for table in _bqia_table_solutions(n):
            magma = FiniteMagma(n, names, table, provenance=f"enumerate_bqia({n})")
            if not check_qia(magma).passed:
                continue
            if not check_bounded_qia(magma, 0).passed:
                continue
            total += 1
            key = _table_key(table, n, perms)
            if key not in found:
                found[key] = as_bqia(magma, 0)
    # odd n > 1: the complement column pairs the middles without fixed
    # points, which an odd middle count cannot support

    expected = {
        _table_key(oml_to_bqia(lat).table, n, perms)
        for lat in enumerate_oml(n).representatives
    }
    if expected != set(found):
        raise InconsistentCharacterizations(
            f"bqia/oml enumeration mismatch at n={n}: "
            f"{len(found)} table classes vs {len(expected)} lattice classes"
        )

    reps = tuple(found[key] for key in sorted(found))
    flags = ("degenerate",) if n == 1 else ()
    return EnumerationResult(
        kind="bqia", size=n, representatives=reps, total_labeled=total, flags=flags
    )


def enumerate_quantifiers(lat: FiniteOrtholattice) -> tuple[UnaryOp, ...]:
    """All quantifiers on the lattice, in image-lexicographic order.

    Candidates come from the subsets containing the bounds and closed
    under join and complement (the would-be fixed sets); each induced
    closure map is validated with :func:`check_quantifier` before being
    kept.  The identity and the simple quantifier always appear.
    """
    n = lat.n
    if n > MAX_QUANTIFIER_SIZE:
        raise TooLarge(f"enumerate_quantifiers supports n <= {MAX_QUANTIFIER_SIZE}, got {n}")
    out = []
    required = (1 << lat.bot) | (1 << lat.top)
    for mask in range(1 << n):
        if mask & required != required:
            continue
        members = list(bits(mask))
        ok = True
        for a in members:
            if not mask >> lat.ocomp[a] & 1:
                ok = False
                break
            for b in members:
                if not mask >> lat.join[a][b] & 1:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        images = []
        for a in range(n):
            acc = lat.top
            for c in members:
                if lat.le(a, c):
                    acc = lat.meet[acc][c]
            images.append(acc)
        op = UnaryOp(tuple(images))
        if check_quantifier(lat, op).passed:
            out.append(op)
    out.sort(key=lambda op: op.map)
    return tuple(out)


def oracle_filter_count(a: BoundedQIA) -> int:
    """Count proper filters by raw subset scan (independent oracle).

    Tests the two filter conditions directly on every nonempty subset
    excluding the zero; intended as the ground truth against which
    ``enumerate_proper_filters`` is compared.
    """
    n = a.n
    if n > MAX_ORACLE_SIZE:
        raise TooLarge(f"oracle_filter_count supports n <= {MAX_ORACLE_SIZE}, got {n}")
    t, z, one = a.table, a.zero, a.one
    count = 0
    for s in range(1, 1 << n):
        if s >> z & 1:
            continue
        members = list(bits(s))
        ok = True
        for x in members:
            for y in range(n):
                if t[x][y] == one and not s >> y & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for x in members:
                for y in members:
                    w = t[t[t[x][y]][t[x][z]]][z]
                    if not s >> w & 1:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            count += 1
    return count
