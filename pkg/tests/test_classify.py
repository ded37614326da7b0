import pytest

from conftest import bounded_with_inv, bz_names
from pbzkit import Signature, catalog, catalog_names, check_law, classify, named_equation
from pbzkit.classify import CLASS_ORDER, EQUATION_CLASSES


def holds(A, name):
    return check_law(A, named_equation(name)) is None


def test_f8():
    r = classify(catalog("F8"))
    assert r["PBZ*"] and r["antiortholattice"]
    assert not r["distributive"]
    assert r["SDM"] is True
    assert r["Q"] is False


def test_h():
    r = classify(catalog("H"))
    assert r["PBZ*"] and not r["antiortholattice"]
    assert r["SDM"] and r["SK"]
    assert r["J2"] is False
    A = catalog("H")
    assert r.witnesses["J2"].describe(A) == "J2 fails at x=d, y=e: 0 != d"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_chains(n):
    r = classify(catalog(f"D{n}"))
    assert r["PBZ*"] and r["antiortholattice"]


def test_chain_sk():
    assert classify(catalog("D3"))["SK"] and classify(catalog("D3"))["SDM"]
    assert classify(catalog("D4"))["SK"] is False
    assert classify(catalog("D5"))["SK"] is False


def test_section_three_witnesses():
    assert classify(catalog("M3+M3"))["WDSDM"] is False
    assert classify(catalog("M3+M3"))["WDISTjoinTilde"] is False
    r = classify(catalog("D2+M3+D2"))
    assert r["SDM"] and not r["distributive"]
    r = classify(catalog("D2^2+D2^2"))
    assert r["distributive"] and not r["SDM"]


def test_m3_m3_witness_values():
    A = catalog("M3+M3")
    w = classify(A).witnesses["WDSDM"]
    assert {v: A.label(e) for v, e in w.assignment} == {"x": "a", "y": "b", "z": "c"}
    assert (A.label(w.lhs), A.label(w.rhs)) == ("0", "1")


def test_bz4_star_failure():
    A = catalog("BZ4")
    r = classify(A)
    assert r["star"] is False and r["PBZ*"] is False
    w = r.witnesses["star"]
    assert A.label(dict(w.assignment)["x"]) == "a"
    assert (A.label(w.lhs), A.label(w.rhs)) == ("1", "0")


def test_mo2_not_antiortholattice():
    A = catalog("MO2")
    w = classify(A).witnesses["antiortholattice"]
    assert w.reason == "nontrivial sharp element"
    assert w.reproduces(A)


def test_not_applicable_classes():
    r = classify(catalog("M3"))
    assert r["BI-lattice"] is None and r["star"] is None and r["PBZ*"] is None
    assert r["lattice"] and r["modular"] and not r["distributive"]
    r = classify(catalog("B6"))
    assert r["BI-lattice"] and r["BZ-lattice"] is None


@pytest.mark.parametrize("name", catalog_names())
def test_every_witness_reproduces(name):
    A = catalog(name)
    r = classify(A)
    for cls, w in r.witnesses.items():
        assert r[cls] is False
        assert w.reproduces(A), (cls, w)
    assert all(line.startswith(cls) for line, cls in zip(r.lines(A), CLASS_ORDER))


@pytest.mark.parametrize("name", catalog_names())
def test_class_hierarchy(name):
    r = classify(catalog(name))
    implications = [
        ("Kleene", "pseudo-Kleene"),
        ("Kleene", "De Morgan"),
        ("orthomodular", "ortholattice"),
        ("antiortholattice", "PBZ*"),
        ("PBZ*", "paraorthomodular"),
        ("PBZ*", "BZ-lattice"),
        ("distributive", "modular"),
    ]
    for a, b in implications:
        if r[a]:
            assert r[b], (a, b)


@pytest.mark.parametrize("name", bz_names())
def test_sdm_implies_star(name):
    A = catalog(name)
    if holds(A, "SDM"):
        assert holds(A, "star")


@pytest.mark.parametrize("name", bz_names())
def test_sk_implies_star(name):
    A = catalog(name)
    if holds(A, "SK"):
        assert holds(A, "star")


SDM_WITHOUT_SK = ["D4", "D5", "F8", "D2+M3+D2", "A"]


@pytest.mark.parametrize("name", bz_names())
def test_sdm_implies_sk(name):
    # refuted on every BZ-chain with at least four elements: chains satisfy SDM, D4 fails SK
    A = catalog(name)
    if name in SDM_WITHOUT_SK:
        assert holds(A, "SDM") and not holds(A, "SK")
    elif holds(A, "SDM"):
        assert holds(A, "SK")


@pytest.mark.xfail(strict=True, reason="SDM does not imply SK: D4 satisfies SDM and fails SK")
def test_sdm_implies_sk_on_whole_catalog():
    for name in bz_names():
        A = catalog(name)
        if holds(A, "SDM"):
            assert holds(A, "SK"), name


@pytest.mark.parametrize("name", bz_names())
def test_j0_implies_j2(name):
    A = catalog(name)
    if holds(A, "J0"):
        assert holds(A, "J2")


@pytest.mark.parametrize("name", bounded_with_inv())
@pytest.mark.parametrize("sig", [Signature.BI, Signature.I])
def test_q_equivalent_to_q_prime(name, sig):
    A = catalog(name).reduct(sig)
    assert holds(A, "Q") == holds(A, "Qprime")


def test_swapped_q_prime_conclusion_is_not_equivalent():
    from pbzkit import parse_law

    swapped = parse_law("x' & (x' & u)' <= x & (x' & u) => u <= x'", "I")
    A = catalog("D2")
    assert holds(A, "Q")
    cx = check_law(A, swapped)
    assert cx is not None and [A.label(v) for v in cx.assignment] == ["1", "1"]


@pytest.mark.parametrize("name", bounded_with_inv())
def test_four_meets_coincide(name):
    # a <= b' and a' & b' <= a & b force a & a' = b & b' = a' & b' = a & b
    A = catalog(name)
    for a in range(A.n):
        for b in range(A.n):
            na, nb = A.inv(a), A.inv(b)
            if A.le(a, nb) and A.le(A.meet(na, nb), A.meet(a, b)):
                assert A.meet(a, na) == A.meet(b, nb) == A.meet(na, nb) == A.meet(a, b)


def test_equation_classes_are_reported():
    r = classify(catalog("F8"))
    assert set(EQUATION_CLASSES) <= set(r.memberships)
