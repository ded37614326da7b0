"""Registry of finite-instance claims re-checked by ``verify-paper``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import Signature, bounds, dense_elements, sharp_elements, trivial_brouwer_extension
from .analysis import (
    Partition,
    find_embedding,
    find_isomorphism,
    constants_singleton,
    is_congruence,
    is_simple,
    is_subdirectly_irreducible,
    quotient,
)
from .classify import classify
from .constructors import (
    catalog,
    chain,
    direct_product,
    h_brouwer_completions,
    horizontal_sum_mo,
    ordinal_sum,
    symmetric_extension,
)
from .equivalences import (
    boolean_kernel,
    bz_of_modal,
    classify_modal,
    classify_stone,
    modal_of_bz,
    truncated_sum_matches_arithmetic,
    truncated_sum_table,
    verify_discriminator,
)
from .errors import NotWeakLukasiewicz
from .terms import check_law, format_term, m_terms, named_equation, parse

THETA = "0;a;c,e;b,d;b',d';c',e';a';1"


@dataclass(frozen=True)
class Fact:
    id: str
    citation: str
    runner: Callable[[], tuple[bool, str]]
    expected: bool = True

    def run(self) -> tuple[bool, str]:
        try:
            outcome, detail = self.runner()
        except Exception as exc:  # a crash is a failed fact, reported with its message
            return False, f"error: {type(exc).__name__}: {exc}"
        return outcome == self.expected, detail


def _law(alg: str, name: str, holds: bool) -> Callable[[], tuple[bool, str]]:
    def run():
        A = catalog(alg)
        cx = check_law(A, named_equation(name))
        detail = "holds" if cx is None else f"fails at {cx.describe(A)}"
        return (cx is None) == holds, detail

    return run


def _classes(alg: str, **want: bool) -> Callable[[], tuple[bool, str]]:
    def run():
        report = classify(catalog(alg))
        got = {k.replace("_", "-"): report[_class_key(k)] for k in want}
        return all(got[k.replace("_", "-")] == v for k, v in want.items()), str(got)

    return run


def _class_key(k: str) -> str:
    return {"PBZ": "PBZ*", "AOL": "antiortholattice"}.get(k, k.replace("_", "-"))


def _modal(alg: str, **want: bool) -> Callable[[], tuple[bool, str]]:
    def run():
        report = classify_modal(catalog(alg))
        got = {k: report[k.replace("_", "-")] for k in want}
        return got == want, str(got)

    return run


def _witness(alg: str, identity: str, env: dict[str, str], lhs: str, rhs: str):
    def run():
        M = catalog(alg)
        cx = check_law(M, named_equation(identity))
        if cx is None:
            return False, f"{identity} holds"
        got = {v: M.label(e) for v, e in zip(cx.variables, cx.assignment)}
        ok = got == env and (M.label(cx.lhs), M.label(cx.rhs)) == (lhs, rhs)
        return ok, f"{identity} fails at {cx.describe(M)}"

    return run


def _labels(A, elements) -> list[str]:
    return sorted((A.label(x) for x in elements), key=A.index)


def _embed(p: str, a: str, sig: str, found: bool):
    def run():
        f = find_embedding(catalog(p), catalog(a), sig)
        return (f is not None) == found, "none" if f is None else f.format()

    return run


def _f8_sharp():
    A = catalog("F8")
    got = _labels(A, sharp_elements(A))
    return got == ["0", "1"], str(got)


def _f8_dense():
    A = catalog("F8")
    got = _labels(A, dense_elements(A))
    return got == list(A.labels[1:]), str(got)


def _f8_bounds():
    A = catalog("F8")
    m, j = bounds(A, "a", "b")
    return (A.label(m), A.label(j)) == ("c", "c'"), f"a&b={A.label(m)}, a|b={A.label(j)}"


def _f8_from_symext():
    bi = symmetric_extension(chain(2).reduct(Signature.LAT), catalog("B6"))
    f = find_isomorphism(trivial_brouwer_extension(bi), catalog("F8"), Signature.BZ)
    return f is not None, "isomorphic" if f else "not isomorphic"


def _d3_trivial_extension():
    A = trivial_brouwer_extension(catalog("D3").reduct(Signature.BI))
    return classify(A)["antiortholattice"] is True, "antiortholattice"


def _d5_kernel():
    A = catalog("D5")
    got = _labels(A, boolean_kernel(A))
    return got == ["0", "1"], str(got)


def _d3_chain():
    A = chain(3)
    ok = A.inv(A.index("a")) == A.index("a") and A.brouwer(A.index("a")) == A.bottom
    return ok and classify(A)["antiortholattice"] is True, "a' = a, a~ = 0, antiortholattice"


def _m3_osum():
    S = ordinal_sum(catalog("M3"), catalog("M3"))
    covers = len(S.upper_covers(S.bottom))
    return S.n == 9 and covers == 3, f"{S.n} elements, bottom has {covers} covers"


def _f8_osum_size():
    S = ordinal_sum(ordinal_sum(chain(2).reduct(Signature.LAT), catalog("B6").reduct(Signature.LAT)), chain(2).reduct(Signature.LAT))
    return S.n == 8, f"{S.n} elements"


def _d2m3d2():
    bi = symmetric_extension(chain(2).reduct(Signature.LAT), catalog("M3-PK"))
    A = trivial_brouwer_extension(bi)
    same = find_isomorphism(A, catalog("D2+M3+D2"), Signature.BZ) is not None
    return same and classify(A)["antiortholattice"] is True, f"{A.n}-element antiortholattice"


def _product_27():
    P = direct_product(catalog("M3+M3"), catalog("D3"))
    return P.n == 27 and P.signature is Signature.BZ, f"{P.n} elements, {P.signature.value}"


def _mo2():
    report = classify(horizontal_sum_mo(2))
    return report["orthomodular"] is True and report["distributive"] is False, "orthomodular, not distributive"


def _h_size():
    A = catalog("H")
    return A.n == 16, f"{A.n} distinct elements"


def _h_unique():
    found = h_brouwer_completions()
    return len(found) == 1, f"{len(found)} completion(s)"


def _star_parse():
    return parse("(x & x') ~ = x~ | x'~", Signature.BZ) == named_equation("star"), "round trip"


def _q_parse():
    return parse("x <= y' , x' & y' <= x & y => x = y'", Signature.I) == named_equation("Q"), "round trip"


def _m_terms_prefix():
    t, u = parse("x | x'", Signature.BZ), parse("y | y'", Signature.BZ)
    mt, mu = m_terms(t, u, ["x"], ["y"], [])
    same = mt.left == mu.left and mt.right == t and mu.right == u
    return same, f"{format_term(mt)} / {format_term(mu)}"


def _theta_singletons():
    A = catalog("A")
    theta = Partition.parse(A, THETA)
    ok = constants_singleton(A, theta) and is_congruence(A, theta, "BI")
    return ok, "0 and 1 singleton; " + ("congruence" if ok else "not a BI congruence")


def _sk_vars():
    n = len(named_equation("SK").variables)
    return n == 2, f"{n} variables"


def _j0_j2():
    bad = []
    for name in ("D1", "D2", "D3", "D4", "D5", "B6-OL", "F8", "MO2", "M3+M3", "D2+M3+D2", "D2^2+D2^2", "H", "A", "BZ4"):
        A = catalog(name)
        if check_law(A, named_equation("J0")) is None and check_law(A, named_equation("J2")) is not None:
            bad.append(name)
    return not bad, "no exceptions" if not bad else f"J0 without J2 in {bad}"


def _theta_congruence(sig: str):
    def run():
        A = catalog("A")
        theta = Partition.parse(A, THETA)
        ok = is_congruence(A, theta, sig)
        return ok, "congruence" if ok else "not a congruence"

    return run


def _theta_quotient():
    A = catalog("A")
    Q = quotient(A, Partition.parse(A, THETA), Signature.BZ)
    f = find_isomorphism(Q, catalog("F8"), Signature.BZ)
    return f is not None, "A/theta isomorphic to F8" if f else "not isomorphic"


def _d3_si():
    A = catalog("D3")
    return is_subdirectly_irreducible(A, Signature.BZ) and is_simple(A, Signature.BZ), "simple, subdirectly irreducible"


def _bz4_star():
    A = catalog("BZ4")
    cx = check_law(A, named_equation("star"))
    if cx is None:
        return False, "(*) holds"
    ok = A.label(cx.assignment[0]) == "a" and (A.label(cx.lhs), A.label(cx.rhs)) == ("1", "0")
    return ok, f"fails at {cx.describe(A)}"


def _stone(alg: str, cls: str):
    def run():
        value = classify_stone(catalog(alg))[cls]
        return value, f"{cls}: {value}"

    return run


def _round_trip_d3():
    D3 = catalog("D3")
    return bz_of_modal(modal_of_bz(D3)) == D3, "tables identical"


def _menarini4_translation():
    try:
        bz_of_modal(catalog("menarini-4"))
    except NotWeakLukasiewicz:
        return True, "NotWeakLukasiewicz"
    return False, "translation succeeded"


def _discriminator_d3():
    r = verify_discriminator(catalog("D3"))
    ok = r.ok and r.e_zero_on_diagonal and r.e_one_off_diagonal
    return ok, f"t discriminator: {r.ok}; e(a,a)=0: {r.e_zero_on_diagonal}; e(a,b)=1: {r.e_one_off_diagonal}"


def _truncated_sum_d3():
    A = catalog("D3")
    table = truncated_sum_table(A)
    a = A.index("a")
    ok = table[a, a] == A.top and truncated_sum_matches_arithmetic(A)
    return ok, f"a+a = {A.label(int(table[a, a]))}; matches min(1, x+y): {truncated_sum_matches_arithmetic(A)}"


def _forbidden_suite():
    bad = []
    F8, B6 = catalog("F8"), catalog("B6")
    for name in _bi_catalog():
        A = catalog(name)
        if not classify(A)["paraorthomodular"]:
            continue
        q = check_law(A, named_equation("Q")) is None
        if q != (find_embedding(F8, A, Signature.BI) is None) or q != (find_embedding(B6, A, Signature.I) is None):
            bad.append(name)
    return not bad, "all agree" if not bad else f"disagreement on {bad}"


def _bi_catalog() -> list[str]:
    from .constructors import catalog_names

    return [n for n in catalog_names() if catalog(n).signature.bounded and catalog(n).has_op("inv")]


def _no_sdm_aol_in_product():
    M = catalog("M3+M3")
    f = find_embedding(M, direct_product(M, catalog("D3")), Signature.BZ)
    return f is None, "none" if f is None else f.format()


FACTS: list[Fact] = [
    Fact("F8-bounds", "F8: a & b = c, a | b = c'", _f8_bounds),
    Fact("F8-classes", "F8 is an antiortholattice and not distributive", _classes("F8", PBZ=True, AOL=True, distributive=False)),
    Fact("F8-SDM", "F8 |= SDM", _law("F8", "SDM", True)),
    Fact("F8-Q", "F8 does not satisfy Q", _law("F8", "Q", False)),
    Fact("F8-sharp", "S(F8) = {0, 1}", _f8_sharp),
    Fact("F8-dense", "trivial Brouwer complement on F8: x~ = 0 for x != 0", _f8_dense),
    Fact("F8-symext", "F8 = D2 + B6 + D2 with the trivial Brouwer complement", _f8_from_symext),
    Fact("F8-osum-size", "D2 + B6 + D2 has 8 elements", _f8_osum_size),
    Fact("D3-trivial-extension", "BZ-chains are antiortholattices", _d3_trivial_extension),
    Fact("D3-chain", "D3: a' = a, a~ = 0", _d3_chain),
    Fact("D3-SDM", "D3 |= SDM", _law("D3", "SDM", True)),
    Fact("D3-SK", "D3 |= SK", _law("D3", "SK", True)),
    Fact("D3-simple", "D3 is subdirectly irreducible", _d3_si),
    Fact("D4-SK", "D4 does not satisfy SK", _law("D4", "SK", False)),
    Fact("D5-SK", "D5 does not satisfy SK", _law("D5", "SK", False)),
    Fact("D5-kernel", "D5: image of ~ is {0, 1}", _d5_kernel),
    *[
        Fact(f"D{n}-AOL", f"D{n} is a PBZ*-lattice and an antiortholattice", _classes(f"D{n}", PBZ=True, AOL=True))
        for n in range(2, 6)
    ],
    Fact("M3M3-osum", "M3 + M3 has 9 elements and three atoms", _m3_osum),
    Fact("M3M3-WDSDM", "M3 + M3: (a & (b | c))~ = 0 while (a & b)~ & (a & c)~ = 1", _witness("M3+M3", "WDSDM", {"x": "a", "y": "b", "z": "c"}, "0", "1")),
    Fact("M3M3-WDISTjoinTilde", "M3 + M3 does not satisfy WDISTjoinTilde", _law("M3+M3", "WDISTjoinTilde", False)),
    Fact("D2M3D2-SDM", "D2 + M3 + D2 |= SDM", _law("D2+M3+D2", "SDM", True)),
    Fact("D2M3D2-DIST", "D2 + M3 + D2 is not distributive", _law("D2+M3+D2", "DIST", False)),
    Fact("D2M3D2-symext", "D2 + M3 + D2 is an antiortholattice", _d2m3d2),
    Fact("D22D22-DIST", "D2^2 + D2^2 is distributive", _law("D2^2+D2^2", "DIST", True)),
    Fact("D22D22-SDM", "D2^2 + D2^2 does not satisfy SDM", _law("D2^2+D2^2", "SDM", False)),
    Fact("product-27", "(M3 + M3) x D3 is a 27-element BZ-lattice", _product_27),
    Fact("SDM-AOL-not-in-product", "M3 + M3 does not BZ-embed in (M3 + M3) x D3", _no_sdm_aol_in_product),
    Fact("MO2-classes", "MO2 is orthomodular and not distributive", _mo2),
    Fact("B6-in-F8", "B6 is a sub-involution lattice of F8", _embed("B6", "F8", "I", True)),
    Fact("forbidden-F8-B6", "paraorthomodular: Q iff no F8 BI-embedding iff no B6 I-embedding", _forbidden_suite),
    Fact("A-Q", "A |= Q", _law("A", "Q", True)),
    Fact("A-no-F8", "F8 does not BI-embed in A", _embed("F8", "A", "BI", False)),
    Fact("A-theta-BI", "theta is a BI congruence of A", _theta_congruence("BI")),
    Fact("A-theta-BI01", "theta is a BI congruence with singleton classes of 0 and 1", _theta_singletons),
    Fact("A-theta-BZ", "theta is a BZ congruence of A", _theta_congruence("BZ")),
    Fact("A-quotient", "A/theta is isomorphic to F8", _theta_quotient),
    Fact("H-size", "H has 16 elements", _h_size),
    Fact("H-brouwer-unique", "H: the four labelled ~ values extend to exactly one Brouwer complement", _h_unique),
    Fact("H-PBZ", "H is a PBZ*-lattice", _classes("H", PBZ=True)),
    Fact("H-SDM", "H |= SDM", _law("H", "SDM", True)),
    Fact("H-SK", "H |= SK", _law("H", "SK", True)),
    Fact("H-J2", "H does not satisfy J2", _law("H", "J2", False)),
    Fact("D3-in-H", "D3 is a BZ-subalgebra of H", _embed("D3", "H", "BZ", True)),
    Fact("star-parse", "(*) parses to the named equation", _star_parse),
    Fact("Q-parse", "the Q quasiequation parses to the named law", _q_parse),
    Fact("m-term-pair", "m(t,u) and m(u,t) differ only in the trailing term", _m_terms_prefix),
    Fact("SK-arity", "SK has two variables", _sk_vars),
    Fact("J0-implies-J2", "J0 implies J2 on the catalog", _j0_j2),
    Fact("BZ4-KqS", "BZ4 is Kleene-quasi-Stone", _stone("BZ4", "Kleene-quasi-Stone")),
    Fact("BZ4-star", "BZ4: (a & a')~ = 1, a~ | a'~ = 0", _bz4_star),
    Fact("D5-Kleene-Stone", "D5 is Kleene-Stone", _stone("D5", "Kleene-Stone")),
    Fact("D3-discriminator", "D3: e(a,a) = 0, e(a,b) = 1 for a != b, t is the discriminator", _discriminator_d3),
    Fact("D3-truncated-sum", "D3: x + y = min(1, x + y) = (x | dia y) & (y | dia x)", _truncated_sum_d3),
    Fact("fg-round-trip-D3", "f and g are mutually inverse on D3", _round_trip_d3),
    Fact("menarini-1", "menarini-1: diamond-De Morgan, not topological quasi-Boolean", _modal("menarini-1", diamond_DeMorgan=True, topological_quasi_Boolean=False)),
    Fact("menarini-2", "menarini-2: topological quasi-Boolean, not classical", _modal("menarini-2", topological_quasi_Boolean=True, classical_diamond_DeMorgan=False)),
    Fact("menarini-2-witness", "menarini-2: dia a & (dia a)' = a", _witness("menarini-2", "M5", {"x": "a"}, "a", "0")),
    Fact("menarini-3", "menarini-3: topological quasi-Boolean, not monadic", _modal("menarini-3", topological_quasi_Boolean=True, monadic_DeMorgan=False)),
    Fact("menarini-3-witness", "menarini-3: box dia a = 0, dia a = a", _witness("menarini-3", "M6", {"x": "a"}, "a", "0")),
    Fact("menarini-4", "menarini-4: tetravalent, monadic, not involutive Stone, not weak Lukasiewicz", _modal("menarini-4", tetravalent_modal=True, monadic_DeMorgan=True, involutive_Stone=False, weak_Lukasiewicz=False, Lukasiewicz=False, three_valued_Lukasiewicz=False)),
    Fact("menarini-4-witness", "menarini-4: dia(a & b) = 0, dia a & dia b = 1", _witness("menarini-4", "M9", {"x": "a", "y": "b"}, "0", "1")),
    Fact("menarini-4-translation", "menarini-4: has no PBZ* counterpart", _menarini4_translation),
    Fact("menarini-5", "menarini-5: monadic, not tetravalent", _modal("menarini-5", monadic_DeMorgan=True, tetravalent_modal=False)),
    Fact("menarini-5-witness", "menarini-5: dia a & a' = a', a & a' = 0", _witness("menarini-5", "M10", {"x": "a"}, "0", "a'")),
    Fact("menarini-6", "menarini-6: involutive Stone, not weak Lukasiewicz", _modal("menarini-6", involutive_Stone=True, weak_Lukasiewicz=False, Lukasiewicz=False)),
    Fact("menarini-7", "menarini-7: weak Lukasiewicz, not involutive Stone", _modal("menarini-7", weak_Lukasiewicz=True, involutive_Stone=False, Lukasiewicz=False)),
    Fact("menarini-7-witness", "menarini-7: dia(a & b) = 0, dia a & dia b = 1", _witness("menarini-7", "M9", {"x": "a", "y": "b"}, "0", "1")),
    Fact("menarini-8", "menarini-8: Lukasiewicz, involutive Stone, weak Lukasiewicz, not tetravalent", _modal("menarini-8", Lukasiewicz=True, involutive_Stone=True, weak_Lukasiewicz=True, tetravalent_modal=False, three_valued_Lukasiewicz=False)),
    Fact("menarini-8-witness", "menarini-8: dia a & a' = a', a & a' = a", _witness("menarini-8", "M10", {"x": "a"}, "a", "a'")),
]

FACTS_BY_ID = {f.id: f for f in FACTS}
