import numpy as np
import pytest

from oracles import naive_bottom, naive_join, naive_meet, naive_top
from pbzkit import (
    FiniteAlgebra,
    MalformedAlgebra,
    PreconditionFailed,
    Signature,
    SignatureMismatch,
    bounds,
    catalog,
    catalog_names,
    chain,
    dense_elements,
    sharp_elements,
    trivial_brouwer_extension,
)
from pbzkit.algebra import trivial_brouwer_table


@pytest.mark.parametrize("name", catalog_names())
def test_lattice_tables_match_order(name):
    A = catalog(name)
    for x in range(A.n):
        for y in range(A.n):
            assert A.meet(x, y) == naive_meet(A, x, y)
            assert A.join(x, y) == naive_join(A, x, y)


@pytest.mark.parametrize("name", catalog_names())
def test_bounded_catalog_layout(name):
    A = catalog(name)
    if A.signature.bounded:
        assert A.bottom == 0 == naive_bottom(A)
        assert A.top == A.n - 1 == naive_top(A)


def test_f8_bounds():
    A = catalog("F8")
    assert tuple(A.label(v) for v in bounds(A, "a", "b")) == ("c", "c'")
    assert tuple(A.label(v) for v in bounds(A, "a", "a'")) == ("c", "c'")


def test_sharp_and_dense_f8():
    A = catalog("F8")
    assert sharp_elements(A) == {A.bottom, A.top}
    assert dense_elements(A) == frozenset(range(1, A.n))


def test_sharp_elements_of_ortholattice():
    A = catalog("MO2")
    assert sharp_elements(A) == frozenset(range(A.n))


def test_trivial_extension_reproduces_chain():
    D3 = catalog("D3")
    assert trivial_brouwer_extension(D3.reduct(Signature.BI)) == D3


def test_trivial_extension_needs_pseudo_kleene():
    B6 = catalog("B6")
    with pytest.raises(PreconditionFailed) as info:
        trivial_brouwer_extension(B6)
    assert info.value.witness is not None


def test_trivial_extension_rejects_nontrivial_sharp():
    with pytest.raises(PreconditionFailed):
        trivial_brouwer_extension(catalog("MO2").reduct(Signature.BI))


def test_trivial_table_on_d1_and_d2():
    assert trivial_brouwer_table(catalog("D1").reduct(Signature.BI)) == [0]
    assert trivial_brouwer_table(catalog("D2").reduct(Signature.BI)) == [1, 0]


def test_not_a_lattice():
    # two maximal elements
    with pytest.raises(MalformedAlgebra):
        FiniteAlgebra.from_covers("V", ["0", "a", "b"], {"0": ["a", "b"]}, Signature.LAT)


def test_not_antisymmetric():
    leq = np.ones((2, 2), dtype=bool)
    with pytest.raises(MalformedAlgebra):
        FiniteAlgebra("bad", ["p", "q"], leq, {}, Signature.LAT)


def test_bad_involution():
    with pytest.raises(MalformedAlgebra):
        # order preserving, not reversing
        FiniteAlgebra.from_covers("bad", ["0", "a", "1"], {"0": ["a"], "a": ["1"]}, Signature.BI, inv=[("0", "0"), ("a", "a"), ("1", "1")])


def test_bad_brouwer():
    bi = catalog("D3").reduct(Signature.BI)
    with pytest.raises(MalformedAlgebra):
        bi.with_op("brouwer", [2, 2, 0], Signature.BZ)


def test_duplicate_labels():
    with pytest.raises(MalformedAlgebra):
        FiniteAlgebra("dup", ["x", "x"], np.eye(2, dtype=bool), {}, Signature.LAT)


def test_missing_operation_for_signature():
    with pytest.raises(MalformedAlgebra):
        FiniteAlgebra("c", ["0", "1"], [[True, True], [False, True]], {}, Signature.BZ)


def test_reduct_requires_operations():
    with pytest.raises(SignatureMismatch):
        catalog("M3").reduct(Signature.BI)


def test_unbounded_signature_has_no_constants():
    A = catalog("B6").reduct(Signature.I)
    assert A.bottom is None and A.top is None
    with pytest.raises(SignatureMismatch):
        A.require_bounds()


def test_equality_ignores_name():
    assert chain(3, name="other") == catalog("D3")
    assert chain(3) != chain(4)


def test_index_and_label():
    A = catalog("F8")
    assert A.index("b'") == 4
    assert A.label(4) == "b'"
    assert A.index(4) == 4
    with pytest.raises(KeyError):
        A.index("zz")


def test_covers_and_degree():
    A = catalog("F8")
    c = A.index("c")
    assert [A.label(x) for x in A.upper_covers(c)] == ["a", "b"]
    assert [A.label(x) for x in A.lower_covers(c)] == ["0"]
    assert A.degree(c) == 3


def test_sharp_needs_involution():
    with pytest.raises(SignatureMismatch):
        sharp_elements(catalog("M3"))
    with pytest.raises(SignatureMismatch):
        dense_elements(catalog("B6"))
