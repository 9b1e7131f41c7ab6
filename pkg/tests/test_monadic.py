"""Quantifier/diamond axioms, conversions, duals, and homomorphisms."""
from __future__ import annotations

import itertools

import pytest

from orthologic import (
    FiniteOrtholattice,
    HomCandidate,
    KindMismatch,
    MonadicQIA,
    QuantumMonadicAlgebra,
    UnaryOp,
    as_qma,
    check_homomorphism,
    check_mqia,
    check_quantifier,
    enumerate_quantifiers,
    forall_dual,
    forall_op,
    hom_correspondence,
    identity_op,
    is_mqia_homomorphism,
    is_qma_homomorphism,
    mqia_to_qma,
    oml_to_bqia,
    qma_to_mqia,
    simple_quantifier,
)
from conftest import el


def test_simple_and_identity_quantifiers_pass(mo2):
    assert check_quantifier(mo2, simple_quantifier(mo2)).passed
    assert check_quantifier(mo2, identity_op(6)).passed


def test_collapsing_map_fails_increasing(mo2):
    # send y to x, fix everything else: y is not below x
    x, y = el(mo2, "x"), el(mo2, "y")
    images = list(range(6))
    images[y] = x
    report = check_quantifier(mo2, UnaryOp(tuple(images)))
    assert not report.passed
    assert report.witness("increasing") == (y,)


def test_quantifier_mode_titles(mo2):
    assert "quantum monadic" in check_quantifier(mo2, identity_op(6), "qma").title
    assert "ortholattice" in check_quantifier(mo2, identity_op(6), "mol").title
    with pytest.raises(KindMismatch):
        check_quantifier(mo2, identity_op(6), "boolean")


def test_closed_elements_metric(mo2):
    report = check_quantifier(mo2, simple_quantifier(mo2))
    assert report.metric("closed-elements") == 2


def test_mqia_simple_and_identity_pass(corpus_mqias):
    for m in corpus_mqias.values():
        assert check_mqia(m.qia, m.diamond).passed


def test_mqia_collapsing_diamond_fails(mo2_bqia):
    x, y = el(mo2_bqia, "x"), el(mo2_bqia, "y")
    images = list(range(6))
    images[x] = y
    report = check_mqia(mo2_bqia, UnaryOp(tuple(images)))
    assert not report.passed
    assert report.witness("increasing") == (x,)
    # x . diamond(x) = x . y = x' != 1
    assert mo2_bqia.table[x][y] == el(mo2_bqia, "x'")


# --- conversions -------------------------------------------------------------


def test_qma_to_mqia_and_back(corpus_qmas, mo2):
    for q in corpus_qmas.values():
        m = qma_to_mqia(q)
        assert check_mqia(m.qia, m.diamond).passed
        back = mqia_to_qma(m)
        assert back.lat == q.lat
        assert back.exists == q.exists


def test_mqia_to_qma_and_back(corpus_mqias):
    for m in corpus_mqias.values():
        q = mqia_to_qma(m)
        again = qma_to_mqia(q)
        assert again.qia == m.qia
        assert again.diamond == m.diamond


def test_two_element_identity_conversion(two):
    q = as_qma(two, identity_op(2))
    m = qma_to_mqia(q)
    zero, one = el(two, "0"), el(two, "1")
    assert m.qia.table[zero][zero] == one
    assert m.diamond.map == (0, 1)


def test_additivity_spot_instance(mo2, corpus_qmas):
    # diamond((x (+) y)) for the simple quantifier, evaluated stepwise
    q = corpus_qmas["mo2_qma_simple"]
    m = qma_to_mqia(q)
    x, y = el(mo2, "x"), el(mo2, "y")
    t = m.qia.table
    z = m.qia.zero
    lhs_inner = t[t[t[x][z]][t[y][z]]][x]
    assert lhs_inner == m.qia.one  # x (+) y = 1 in MO2
    assert m.diamond(lhs_inner) == m.qia.one
    rhs = t[t[t[m.diamond(x)][z]][t[m.diamond(y)][z]]][m.diamond(x)]
    assert rhs == m.qia.one


def test_diamond_additive_over_oplus(corpus_mqias):
    for m in corpus_mqias.values():
        a = m.qia
        for x in range(a.n):
            for y in range(a.n):
                assert m.diamond(a.oplus(x, y)) == a.oplus(m.diamond(x), m.diamond(y))


def test_diamond_idempotent_and_monotone(corpus_mqias):
    for m in corpus_mqias.values():
        a = m.qia
        for x in range(a.n):
            assert m.diamond(m.diamond(x)) == m.diamond(x)
            for y in range(a.n):
                if a.le(x, y):
                    assert a.le(m.diamond(x), m.diamond(y))


# --- forall ------------------------------------------------------------------


def test_forall_of_identity_is_identity(mo2):
    q = as_qma(mo2, identity_op(6))
    assert forall_op(q).map == tuple(range(6))


def test_forall_of_simple_quantifier(mo2):
    q = as_qma(mo2, simple_quantifier(mo2))
    one = el(mo2, "1")
    for a in range(6):
        expected = one if a == one else el(mo2, "0")
        assert forall_dual(q, a) == expected


def test_exists_forall_adjunction(mo2, corpus_qmas):
    for q in corpus_qmas.values():
        lat = q.lat
        for a in range(lat.n):
            for b in range(lat.n):
                assert lat.le(q.exists(a), b) == lat.le(a, forall_dual(q, b))


def test_forall_is_an_interior_operator(corpus_qmas):
    for q in corpus_qmas.values():
        lat = q.lat
        fa = forall_op(q)
        open_set = {a for a in range(lat.n) if fa(a) == a}
        for a in range(lat.n):
            assert lat.le(fa(a), a)
            assert fa(fa(a)) == fa(a)
        assert lat.bot in open_set and lat.top in open_set
        for a in open_set:
            assert lat.ocomp[a] in open_set
            for b in open_set:
                assert lat.meet[a][b] in open_set
                assert lat.join[a][b] in open_set


# --- the closed-set remark probe --------------------------------------------


def test_meet_distribution_fails_somewhere():
    """Search all (corpus OML, quantifier) pairs for exists(a ^ exists b) != exists a ^ exists b.

    Monadic Boolean algebras satisfy that equation; quantum monadic
    algebras need not.  The search must find a counterexample (MO2 with
    a block quantifier provides one), which this test records.
    """
    from conftest import load_structure

    witnesses = []
    for name in ("two", "b4", "mo2"):
        lat = load_structure(name)
        for op in enumerate_quantifiers(lat):
            for a in range(lat.n):
                for b in range(lat.n):
                    lhs = op(lat.meet[a][op(b)])
                    rhs = lat.meet[op(a)][op(b)]
                    if lhs != rhs:
                        witnesses.append((name, op.map, lat.names[a], lat.names[b]))
    assert witnesses, "expected a counterexample on some quantum monadic algebra"
    assert all(name == "mo2" for name, *_ in witnesses)  # Boolean carriers satisfy it


# --- homomorphisms -----------------------------------------------------------


def test_identity_is_a_hom_both_kinds(mo2, corpus_qmas):
    q = corpus_qmas["mo2_qma_simple"]
    ident = tuple(range(6))
    assert check_homomorphism(HomCandidate(q, q, ident), "qma").passed
    m = qma_to_mqia(q)
    assert check_homomorphism(HomCandidate(m, m, ident), "mqia").passed


def test_subalgebra_inclusion_is_a_hom(mo2, two, b4):
    # include the four-element block {0, x, x', 1} into MO2, identity
    # quantifiers on both sides
    sub = FiniteOrtholattice.from_order(
        ("0", "x", "x'", "1"), [(0, 1), (0, 2), (1, 3), (2, 3)], (3, 2, 1, 0)
    )
    q_sub = as_qma(sub, identity_op(4))
    q_mo2 = as_qma(mo2, identity_op(6))
    inclusion = tuple(mo2.names.index(n) for n in sub.names)
    assert check_homomorphism(HomCandidate(q_sub, q_mo2, inclusion), "qma").passed


def test_block_collapse_fails_meet_preservation(mo2, two):
    # x, y -> 1 and x', y' -> 0 cannot preserve meets
    q_mo2 = as_qma(mo2, identity_op(6))
    q_two = as_qma(two, identity_op(2))
    one2, zero2 = el(two, "1"), el(two, "0")
    fmap = [0] * 6
    fmap[el(mo2, "x")] = fmap[el(mo2, "y")] = one2
    fmap[el(mo2, "x'")] = fmap[el(mo2, "y'")] = zero2
    fmap[el(mo2, "0")] = zero2
    fmap[el(mo2, "1")] = one2
    report = check_homomorphism(HomCandidate(q_mo2, q_two, tuple(fmap)), "qma")
    assert not report.passed
    assert "meet" in report.rules_failed()
    x, y = el(mo2, "x"), el(mo2, "y")
    assert fmap[mo2.meet[x][y]] == zero2
    assert two.meet[fmap[x]][fmap[y]] == one2


def test_kind_mismatch(mo2, corpus_qmas):
    q = corpus_qmas["mo2_qma_simple"]
    with pytest.raises(KindMismatch):
        check_homomorphism(HomCandidate(q, q, tuple(range(6))), "mqia")
    with pytest.raises(KindMismatch):
        check_homomorphism(HomCandidate(q, q, tuple(range(6))), "weird")


def test_fast_predicates_agree_with_reports(mo2, two):
    q_mo2 = as_qma(mo2, simple_quantifier(mo2))
    q_two = as_qma(two, identity_op(2))
    m_mo2, m_two = qma_to_mqia(q_mo2), qma_to_mqia(q_two)
    for fmap in itertools.product(range(2), repeat=6):
        assert is_qma_homomorphism(q_mo2, q_two, fmap) == check_homomorphism(
            HomCandidate(q_mo2, q_two, fmap), "qma"
        ).passed
        assert is_mqia_homomorphism(m_mo2, m_two, fmap) == check_homomorphism(
            HomCandidate(m_mo2, m_two, fmap), "mqia"
        ).passed


# --- the category correspondence --------------------------------------------


def _naive_qma_hom_count(src, dst):
    """Independent oracle: re-derive the hom count straight from the tables."""
    count = 0
    sl, dl = src.lat, dst.lat
    for f in itertools.product(range(dst.n), repeat=src.n):
        ok = f[sl.bot] == dl.bot and f[sl.top] == dl.top
        for a in range(src.n):
            if not ok:
                break
            if f[sl.ocomp[a]] != dl.ocomp[f[a]] or f[src.exists(a)] != dst.exists(f[a]):
                ok = False
                break
            for b in range(src.n):
                if (
                    f[sl.meet[a][b]] != dl.meet[f[a]][f[b]]
                    or f[sl.join[a][b]] != dl.join[f[a]][f[b]]
                ):
                    ok = False
                    break
        if ok:
            count += 1
    return count


def test_two_to_two_has_only_the_identity(two):
    q = as_qma(two, identity_op(2))
    report = hom_correspondence(q, q)
    assert report.passed
    assert report.metric("maps") == 4
    assert report.metric("homomorphisms") == 1


def test_mo2_to_mo2_correspondence_and_count(mo2):
    q = as_qma(mo2, simple_quantifier(mo2))
    report = hom_correspondence(q, q)
    assert report.passed
    assert report.metric("maps") == 6**6
    assert report.metric("homomorphisms") == _naive_qma_hom_count(q, q)


def test_mo2_to_two_correspondence_possibly_empty(mo2, two):
    q_mo2 = as_qma(mo2, simple_quantifier(mo2))
    q_two = as_qma(two, identity_op(2))
    report = hom_correspondence(q_mo2, q_two)
    assert report.passed
    assert report.metric("homomorphisms") == 0  # MO2 admits no two-valued hom


def test_correspondence_with_explicit_candidates(mo2):
    q = as_qma(mo2, identity_op(6))
    report = hom_correspondence(q, q, candidates=[tuple(range(6))])
    assert report.passed
    assert report.metric("maps") == 1
    assert report.metric("homomorphisms") == 1
