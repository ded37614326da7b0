from fractions import Fraction

import pytest

from conftest import bz_names, modal_names
from oracles import naive_eval
from pbzkit import (
    NotDeMorgan,
    NotDistributivePBZ,
    NotQuasiStone,
    NotWeakLukasiewicz,
    Signature,
    SignatureMismatch,
    boolean_kernel,
    bz_of_modal,
    catalog,
    check_law,
    classify,
    classify_modal,
    classify_stone,
    is_quasi_stone,
    modal_of_bz,
    named_equation,
    parse,
    truncated_sum_table,
    verify_discriminator,
)
from pbzkit.equivalences import (
    MODAL_CLASSES,
    MODAL_DEFINITION_PARENTS,
    STONE_CLASSES,
    SUM_TERM,
    chain_values,
    truncated_sum_matches_arithmetic,
)
from pbzkit.terms import eval_term


def holds(A, name):
    return check_law(A, named_equation(name)) is None


# -- quasi-Stone taxonomy --------------------------------------------------------------


def test_bz4_kleene_quasi_stone():
    r = classify_stone(catalog("BZ4"))
    assert r["quasi-Stone"] and r["quasi-Stone-DeMorgan"] and r["Kleene-quasi-Stone"]
    assert not r["Stone"] and not r["Kleene-Stone"]


def test_d5_kleene_stone():
    assert classify_stone(catalog("D5"))["Kleene-Stone"]


def test_mo2_fails_only_distributivity():
    A = catalog("MO2")
    r = classify_stone(A)
    assert not r["quasi-Stone"]
    w = r.witnesses["quasi-Stone"]
    assert w.reason == "DIST"
    assert {v: A.label(e) for v, e in w.assignment} == {"x": "a", "y": "a'", "z": "b"}
    for qs in ("QS2", "QS3", "QS4", "QS5"):
        assert holds(A, qs)


def test_stone_needs_bz():
    with pytest.raises(SignatureMismatch):
        classify_stone(catalog("B6"))
    assert not is_quasi_stone(catalog("B6"))


@pytest.mark.parametrize("name", bz_names())
def test_kleene_stone_iff_distributive_pbz_sdm(name):
    A = catalog(name)
    r = classify(A)
    expected = bool(r["PBZ*"] and r["distributive"] and r["SDM"])
    assert classify_stone(A)["Kleene-Stone"] == expected


@pytest.mark.parametrize("name", bz_names())
def test_derived_quasi_stone_conditions(name):
    A = catalog(name)
    r = classify_stone(A)
    if r["quasi-Stone"]:
        for law in ("QS6", "QS7", "QS8", "QS9"):
            assert holds(A, law), law
    if r["quasi-Stone-DeMorgan"]:
        assert holds(A, "DOUBLE-TILDE")


@pytest.mark.parametrize("name", bz_names())
def test_stone_witnesses_reproduce(name):
    A = catalog(name)
    r = classify_stone(A)
    assert list(r.memberships) == list(STONE_CLASSES)
    for cls, w in r.witnesses.items():
        assert not r[cls] and w.reproduces(A)


def test_boolean_kernel():
    for name in ("BZ4", "D5", "D3"):
        A = catalog(name)
        assert boolean_kernel(A) == {A.bottom, A.top}
    with pytest.raises(NotQuasiStone):
        boolean_kernel(catalog("MO2"))


# -- modal classes -----------------------------------------------------------------------


def memberships(name):
    return classify_modal(catalog(name)).memberships


def test_menarini_1():
    m = memberships("menarini-1")
    assert m["diamond-DeMorgan"] and not m["topological-quasi-Boolean"]
    A = catalog("menarini-1")
    cx = classify_modal(A).identities["M3"]
    assert [A.label(v) for v in cx.assignment] == ["1"]


def test_menarini_2():
    m = memberships("menarini-2")
    assert m["topological-quasi-Boolean"] and not m["classical-diamond-DeMorgan"]
    A = catalog("menarini-2")
    a = A.index("a")
    # dia a meets its complement in a, not in 0
    assert A.meet(A.diamond(a), A.inv(A.diamond(a))) == a


def test_menarini_3():
    m = memberships("menarini-3")
    assert m["classical-diamond-DeMorgan"] and not m["monadic-DeMorgan"]
    A = catalog("menarini-3")
    env = {"x": "a"}
    assert A.label(eval_term(A, parse("box(dia(x))", "MODAL"), env)) == "0"
    assert A.label(eval_term(A, parse("dia(x)", "MODAL"), env)) == "a"


def test_menarini_4():
    m = memberships("menarini-4")
    assert m["tetravalent-modal"] and m["monadic-DeMorgan"]
    assert not m["involutive-Stone"] and not m["weak-Lukasiewicz"]
    A = catalog("menarini-4")
    env = {"x": "a", "y": "b"}
    assert A.label(eval_term(A, parse("dia(x & y)", "MODAL"), env)) == "0"
    assert A.label(eval_term(A, parse("dia(x) & dia(y)", "MODAL"), env)) == "1"
    with pytest.raises(NotWeakLukasiewicz):
        bz_of_modal(A)


def test_menarini_5():
    m = memberships("menarini-5")
    assert m["monadic-DeMorgan"] and not m["tetravalent-modal"]
    A = catalog("menarini-5")
    env = {"x": "a"}
    assert A.label(eval_term(A, parse("dia(x) & x'", "MODAL"), env)) == "a'"
    assert A.label(eval_term(A, parse("x & x'", "MODAL"), env)) == "0"


def test_menarini_6():
    m = memberships("menarini-6")
    assert m["involutive-Stone"] and not m["weak-Lukasiewicz"]


def test_menarini_7():
    m = memberships("menarini-7")
    assert m["weak-Lukasiewicz"] and not m["involutive-Stone"] and not m["Lukasiewicz"]


def test_menarini_8():
    m = memberships("menarini-8")
    assert m["Lukasiewicz"] and m["weak-Lukasiewicz"] and m["involutive-Stone"]
    assert not m["tetravalent-modal"] and not m["three-valued-Lukasiewicz"]
    A = catalog("menarini-8")
    env = {"x": "a"}
    assert A.label(eval_term(A, parse("dia(x) & x'", "MODAL"), env)) == "a'"
    assert A.label(eval_term(A, parse("x & x'", "MODAL"), env)) == "a"


@pytest.mark.parametrize("name", modal_names())
def test_modal_report_consistency(name):
    A = catalog(name)
    r = classify_modal(A)
    assert list(r.memberships) == list(MODAL_CLASSES)
    assert r.respects_implications()
    for cls, parents in MODAL_DEFINITION_PARENTS.items():
        if r[cls]:
            assert all(r[p] for p in parents)
    for ident, cx in r.identities.items():
        if cx is not None:
            env = dict(zip(cx.variables, cx.assignment))
            assert naive_eval(A, cx.law.lhs, env) != naive_eval(A, cx.law.rhs, env)


@pytest.mark.parametrize("name", modal_names())
def test_weak_lukasiewicz_satisfies_m6(name):
    A = catalog(name)
    if classify_modal(A)["weak-Lukasiewicz"]:
        assert holds(A, "M6")


@pytest.mark.parametrize("name", modal_names())
def test_classical_satisfies_m8(name):
    A = catalog(name)
    if classify_modal(A)["classical-diamond-DeMorgan"]:
        assert holds(A, "M8")


def test_classify_modal_errors():
    with pytest.raises(SignatureMismatch):
        classify_modal(catalog("D3"))
    non_dist = catalog("M3-PK").with_op("diamond", [0, 4, 4, 4, 4], Signature.MODAL)
    with pytest.raises(NotDeMorgan):
        classify_modal(non_dist)


# -- translations ------------------------------------------------------------------------


@pytest.mark.parametrize("name", bz_names())
def test_bz_round_trip(name):
    A = catalog(name)
    r = classify(A)
    if r["PBZ*"] and r["distributive"]:
        M = modal_of_bz(A)
        assert classify_modal(M)["weak-Lukasiewicz"]
        B = bz_of_modal(M)
        assert B == A
        assert B.labels == A.labels
    else:
        with pytest.raises(NotDistributivePBZ):
            modal_of_bz(A)


@pytest.mark.parametrize("name", modal_names())
def test_modal_round_trip(name):
    M = catalog(name)
    if classify_modal(M)["weak-Lukasiewicz"]:
        L = bz_of_modal(M)
        r = classify(L)
        assert r["PBZ*"] and r["distributive"]
        assert modal_of_bz(L) == M
    else:
        with pytest.raises(NotWeakLukasiewicz):
            bz_of_modal(M)


def test_d3_translation_tables():
    M = modal_of_bz(catalog("D3"))
    assert M.table("diamond").tolist() == [0, 2, 2]
    L = bz_of_modal(catalog("menarini-8"))
    assert L.table("brouwer").tolist() == [3, 0, 0, 0]


# -- discriminator and truncated sum --------------------------------------------------------


def test_discriminator_d3():
    A = catalog("D3")
    r = verify_discriminator(A)
    assert r.ok and bool(r)
    assert r.e_zero_on_diagonal and r.e_one_off_diagonal
    for a in range(3):
        for b in range(3):
            assert r.e_table[a, b] == (A.bottom if a == b else A.top)
            for c in range(3):
                assert r.t_table[a, b, c] == (c if a == b else a)


def test_discriminator_d4_fails():
    A = catalog("D4")
    r = verify_discriminator(A)
    assert not r.ok
    a, na = A.index("a"), A.index("a'")
    assert r.e_table[a, na] == A.bottom
    assert r.t_failures


def test_discriminator_on_chains_d2_d3_only():
    assert verify_discriminator(catalog("D2")).ok
    assert not verify_discriminator(catalog("D5")).ok


def test_truncated_sum_d3():
    A = catalog("D3")
    table = truncated_sum_table(A)
    values = chain_values(A)
    assert values == [Fraction(0), Fraction(1, 2), Fraction(1)]
    for x in range(3):
        for y in range(3):
            assert values[int(table[x, y])] == min(Fraction(1), values[x] + values[y])
    assert truncated_sum_matches_arithmetic(A)
    assert table.tolist() == [[0, 1, 2], [1, 2, 2], [2, 2, 2]]
    t = parse(SUM_TERM, "BZ")
    assert all(table[x, y] == naive_eval(A, t, {"x": x, "y": y}) for x in range(3) for y in range(3))


def test_chain_values_rejects_non_chain():
    with pytest.raises(ValueError):
        chain_values(catalog("F8"))
