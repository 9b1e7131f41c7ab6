"""Quasi-implication axioms, induced order, and the two conversions."""
from __future__ import annotations

import pytest

from orthologic import (
    BoundedQIA,
    FiniteMagma,
    FiniteOrtholattice,
    NoSuchElement,
    NotOrthomodular,
    ValidationFailed,
    as_bqia,
    bqia_to_oml,
    check_bounded_qia,
    check_qia,
    induced_order,
    oml_to_bqia,
    sasaki,
)
from conftest import el


def test_mo2_sasaki_table_passes(mo2_bqia):
    assert check_qia(mo2_bqia.magma).passed
    assert check_bounded_qia(mo2_bqia.magma, mo2_bqia.zero).passed


def test_constant_magma_fails_contraction():
    constant = FiniteMagma(2, ("a", "b"), ((1, 1), (1, 1)))
    report = check_qia(constant)
    assert report.rules_failed() == ("contraction",)
    # any reported witness really violates the axiom
    x, y = report.witness("contraction")
    assert constant.table[constant.table[x][y]][x] != x
    # (a, b) is among the full witness list
    full = check_qia(constant, all_witnesses=True)
    assert (0, 1) in [v.witness for v in full.violations if v.rule == "contraction"]


def test_fail_fast_keeps_first_witness_only():
    constant = FiniteMagma(2, ("a", "b"), ((1, 1), (1, 1)))
    assert len(check_qia(constant).violations) == 1
    assert len(check_qia(constant, all_witnesses=True).violations) == 2


def test_full_scan_reports_derived_rules_too():
    # right projection: contraction and exchange hold, the rest do not
    projection = FiniteMagma(2, ("a", "b"), ((0, 1), (0, 1)))
    assert check_qia(projection).rules_failed() == ("quasi-commutativity",)
    full = check_qia(projection, all_witnesses=True)
    assert set(full.rules_failed()) == {"quasi-commutativity", "uniform-diagonal"}


def _boolean_implication_table(lat: FiniteOrtholattice) -> FiniteMagma:
    # classical arrow a' v b as a magma
    n = lat.n
    table = tuple(
        tuple(lat.join[lat.ocomp[a]][b] for b in range(n)) for a in range(n)
    )
    return FiniteMagma(n, lat.names, table)


def _is_boolean_implication_algebra(m: FiniteMagma) -> bool:
    # recognizer: contraction, quasi-commutativity, exchange
    t, n = m.table, m.n
    for x in range(n):
        for y in range(n):
            if t[t[x][y]][x] != x:
                return False
            if t[t[x][y]][y] != t[t[y][x]][x]:
                return False
            for z in range(n):
                if t[x][t[y][z]] != t[y][t[x][z]]:
                    return False
    return True


def test_boolean_implication_reducts_are_qias(corpus_omls):
    for name in ("two", "b4", "b8"):
        magma = _boolean_implication_table(corpus_omls[name])
        assert _is_boolean_implication_algebra(magma)
        assert check_qia(magma).passed


def test_mo2_table_is_not_boolean_implication(mo2, mo2_bqia):
    assert not _is_boolean_implication_algebra(mo2_bqia.magma)
    # the explicit failing instance: (x.y).y = x but (y.x).x = y
    x, y = el(mo2, "x"), el(mo2, "y")
    t = mo2_bqia.table
    assert t[t[x][y]][y] == x
    assert t[t[y][x]][x] == y


# --- bounded checks ----------------------------------------------------------


def test_wrong_zero_fails_bound_axiom(mo2_bqia):
    x = el(mo2_bqia, "x")
    report = check_bounded_qia(mo2_bqia.magma, x)
    assert not report.passed
    assert "zero-row" in report.rules_failed()
    # witness column really is not mapped to one
    (col,) = report.witness("zero-row")
    assert mo2_bqia.table[x][col] != mo2_bqia.one


def test_zero_out_of_range(mo2_bqia):
    with pytest.raises(NoSuchElement):
        check_bounded_qia(mo2_bqia.magma, 17)


def test_degenerate_bqia_flagged():
    magma = FiniteMagma(1, ("0",), ((0,),))
    report = check_bounded_qia(magma, 0)
    assert report.passed
    assert "degenerate" in report.flags
    assert as_bqia(magma, 0).one == 0


def test_as_bqia_rejects_invalid():
    constant = FiniteMagma(2, ("a", "b"), ((1, 1), (1, 1)))
    with pytest.raises(ValidationFailed):
        as_bqia(constant, 0)


# --- induced order -----------------------------------------------------------


def test_induced_order_matches_the_lattice(mo2, mo2_bqia):
    assert induced_order(mo2_bqia) == mo2.leq


def test_induced_order_incomparabilities(mo2_bqia):
    x, xc = el(mo2_bqia, "x"), el(mo2_bqia, "x'")
    order = induced_order(mo2_bqia)
    assert not order[x] >> xc & 1  # x.x' = x' != 1
    assert not order[xc] >> x & 1


def test_bounds_in_induced_order(corpus_bqias):
    for a in corpus_bqias.values():
        order = induced_order(a)
        for e in range(a.n):
            assert order[e] >> a.one & 1
            assert order[a.zero] >> e & 1


# --- conversions -------------------------------------------------------------


def test_oml_to_bqia_reproduces_the_reference_table(mo2, mo2_bqia):
    for a in range(6):
        for b in range(6):
            assert mo2_bqia.table[a][b] == sasaki(mo2, a, b)
    assert mo2_bqia.zero == el(mo2, "0")


def test_two_element_conversion_is_classical_implication(two):
    b = oml_to_bqia(two)
    zero, one = el(two, "0"), el(two, "1")
    assert b.table[zero][zero] == one
    assert b.table[zero][one] == one
    assert b.table[one][zero] == zero
    assert b.table[one][one] == one


def test_oml_to_bqia_rejects_benzene(benzene):
    with pytest.raises(NotOrthomodular) as exc:
        oml_to_bqia(benzene)
    assert exc.value.witness  # carries a concrete witness


def test_star_is_the_complement(mo2, mo2_bqia):
    for a in range(6):
        assert mo2_bqia.star(a) == mo2.ocomp[a]


def test_oplus_with_complement_reaches_top(mo2_bqia):
    # ((x.x').(x'.x)).x evaluated stepwise from the table
    x, xc = el(mo2_bqia, "x"), el(mo2_bqia, "x'")
    t = mo2_bqia.table
    step1 = t[x][xc]
    step2 = t[xc][x]
    assert t[t[step1][step2]][x] == mo2_bqia.one
    assert mo2_bqia.oplus(x, xc) == mo2_bqia.one


def test_round_trips_are_identities(corpus_omls, corpus_bqias):
    for lat in corpus_omls.values():
        assert bqia_to_oml(oml_to_bqia(lat)) == lat
    for a in corpus_bqias.values():
        assert oml_to_bqia(bqia_to_oml(a)) == a


def test_bqia_to_oml_matches_induced_order(corpus_bqias):
    for a in corpus_bqias.values():
        lat = bqia_to_oml(a)
        assert lat.leq == induced_order(a)
        assert lat.bot == a.zero and lat.top == a.one


# --- derived laws ------------------------------------------------------------


def test_unit_laws(corpus_bqias):
    for a in corpus_bqias.values():
        t, one = a.table, a.one
        for x in range(a.n):
            assert t[one][x] == x
            assert t[x][one] == one


def test_absorption_and_diagonal(corpus_bqias):
    for a in corpus_bqias.values():
        t = a.table
        for x in range(a.n):
            assert t[x][x] == a.one
            for y in range(a.n):
                assert t[x][t[x][y]] == t[x][y]


def test_double_star_is_identity(corpus_bqias):
    for a in corpus_bqias.values():
        for x in range(a.n):
            assert a.star(a.star(x)) == x


def test_meet_shortcut(corpus_bqias):
    for a in corpus_bqias.values():
        t, z = a.table, a.zero
        for x in range(a.n):
            for y in range(a.n):
                assert a.odot(x, y) == t[t[t[x][y]][t[x][z]]][z]


def test_star_oplus_meet_recovers_the_arrow(corpus_bqias):
    for a in corpus_bqias.values():
        for x in range(a.n):
            for y in range(a.n):
                assert a.oplus(a.star(x), a.odot(x, y)) == a.table[x][y]
