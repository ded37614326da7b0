import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from oracles import naive_eval, naive_first_failure
from pbzkit import (
    CapExceeded,
    Equation,
    ParseError,
    Quasiequation,
    SignatureError,
    UnboundVariable,
    UnknownName,
    VariableSplitError,
    build_m_term,
    catalog,
    catalog_names,
    check_identity,
    check_law,
    check_quasiidentity,
    direct_product,
    format_law,
    format_term,
    named_equation,
    parse,
    parse_law,
)
from pbzkit.algebra import BROUWER, DIAMOND, INV, Signature
from pbzkit.terms import (
    NAMED_LAWS,
    ONE,
    ZERO,
    Const,
    Join,
    Meet,
    Unary,
    Var,
    brouwer,
    eval_term,
    inv,
    m_terms,
    named_signature,
    term_table,
)

x, y, z = Var("x"), Var("y"), Var("z")


def test_precedence():
    assert parse("x | y & z", "BZ") == Join(x, Meet(y, z))
    assert parse("x & y | z", "BZ") == Join(Meet(x, y), z)
    assert parse("x'~", "BZ") == brouwer(inv(x))
    assert parse("(x & y)'", "BZ") == inv(Meet(x, y))


def test_prime_variants():
    assert parse("x′", "BI") == parse("x'", "BI")


def test_star_equation():
    assert parse("(x & x') ~ = x~ | x'~", "BZ") == Equation(brouwer(Meet(x, inv(x))), Join(brouwer(x), brouwer(inv(x))))
    assert parse("(x & x') ~ = x~ | x'~", "BZ") == named_equation("star")


def test_q_quasiequation():
    q = parse("x <= y' , x' & y' <= x & y => x = y'", "I")
    assert isinstance(q, Quasiequation)
    assert q == named_equation("Q")
    assert q.premises[0] == Equation(Meet(x, inv(y)), x)
    assert q.conclusion == Equation(x, inv(y))


def test_leq_desugars_to_meet():
    assert parse("x <= y", "LAT") == Equation(Meet(x, y), x)


def test_diamond_in_bz_and_modal():
    assert parse("dia(x)", "BZ") == brouwer(brouwer(x))
    assert parse("box(x)", "BZ") == brouwer(inv(x))
    assert parse("dia(x)", "MODAL") == Unary(DIAMOND, x)
    assert parse("box(x)", "MODAL") == inv(Unary(DIAMOND, inv(x)))


def test_constants():
    assert parse("x | 1", "BI") == Join(x, ONE)
    assert parse("0", "BI") == ZERO


@pytest.mark.parametrize(
    "text, sig",
    [("x~", "BI"), ("dia(x)", "BI"), ("x'", "LAT"), ("x | 0", "I"), ("1", "I"), ("x~", "MODAL")],
)
def test_signature_errors(text, sig):
    with pytest.raises(SignatureError):
        parse(text, sig)


@pytest.mark.parametrize("text", ["x &", "(x | y", "x = ", "x = y = z", "x = y, y = z", "q", "x # y", "x => y"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text, "BZ")


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse("x & $", "BZ")
    assert info.value.position == 4


def test_parse_law_needs_relation():
    with pytest.raises(ParseError):
        parse_law("x & y", "BZ")


def test_unknown_named_law():
    with pytest.raises(UnknownName):
        named_equation("XYZ")


def test_all_named_laws_parse():
    for name in NAMED_LAWS:
        law = named_equation(name)
        parts = law if isinstance(law, tuple) else (law,)
        assert all(len(p.variables) <= 4 for p in parts)
        assert named_signature(name) in Signature


def test_sk_has_two_variables():
    assert named_equation("SK").variables == ("x", "y")


def test_eval_term():
    A = catalog("F8")
    assert A.label(eval_term(A, parse("x & y", "BZ"), {"x": "a", "y": "b"})) == "c"
    assert A.label(eval_term(A, parse("x~", "BZ"), {"x": "0"})) == "1"
    with pytest.raises(UnboundVariable):
        eval_term(A, parse("x & y", "BZ"), {"x": "a"})


def test_eval_rejects_missing_operation():
    with pytest.raises(SignatureError):
        eval_term(catalog("B6"), parse("x~", "BZ"), {"x": 0})


def test_check_holds_and_fails():
    assert check_law(catalog("F8"), named_equation("SDM")) is None
    A = catalog("D5")
    cx = check_law(A, named_equation("SK"))
    assert cx is not None
    assert [A.label(v) for v in cx.assignment] == ["b", "a"]
    assert cx.describe(A) == "x=b, y=a: a != b"


def test_counterexample_is_lex_first():
    A = catalog("F8")
    law = named_equation("Q")
    cx = check_quasiidentity(A, law)
    assert cx.assignment == naive_first_failure(A, law)


def test_check_identity_type_errors():
    with pytest.raises(TypeError):
        check_identity(catalog("D3"), named_equation("Q"))
    with pytest.raises(TypeError):
        check_quasiidentity(catalog("D3"), named_equation("SDM"))


def test_pair_law_reports_failing_part():
    A = catalog("B6-OL")
    cx = check_law(A, named_equation("S1"))
    assert cx is not None
    assert cx.law in named_equation("S1")


def test_caps():
    big = direct_product(direct_product(catalog("D4"), catalog("D4")), direct_product(catalog("D3"), catalog("D2")))
    assert big.n > 64
    with pytest.raises(CapExceeded):
        check_law(big, named_equation("SDM"))
    with pytest.raises(CapExceeded):
        check_law(catalog("D3"), parse("x & y & z & w & u = x & y & z & w & u & u'", "BI"))


def test_m_term_shape():
    t, u = parse("x | x'", "BZ"), parse("y | y'", "BZ")
    m = build_m_term(t, u, ["x"], ["y"])
    assert format_term(m) == "(x & x')~ | (y & y')~ | (x | x')"
    mt, mu = m_terms(t, u, ["x"], ["y"], [])
    assert mt.left == mu.left
    assert (mt.right, mu.right) == (t, u)


def test_m_term_no_variables():
    assert build_m_term(ONE, ZERO, [], []) == ONE


def test_m_term_shared_variables():
    t, u = parse("x | z", "BZ"), parse("y & z", "BZ")
    m = build_m_term(t, u, ["x"], ["y"], ["z"])
    assert format_term(m) == "(x & x')~ | (y & y')~ | (z & z')~ | (x | z)"


def test_m_term_split_errors():
    t = parse("x | z", "BZ")
    with pytest.raises(VariableSplitError):
        build_m_term(t, t, ["x"], ["y"])
    with pytest.raises(VariableSplitError):
        build_m_term(t, t, ["x", "z"], ["z"])


def test_term_table_shape():
    A = catalog("D3")
    table = term_table(A, parse("x | y", "BZ"))
    assert table.shape == (3, 3)
    assert table.tolist() == [[0, 1, 2], [1, 1, 2], [2, 2, 2]]


# -- properties -------------------------------------------------------------------

OPS = {"LAT": (), "BI": (INV,), "BZ": (INV, BROUWER), "MODAL": (INV, DIAMOND)}


def terms(sig: str, names=("x", "y", "z")):
    leaves = st.sampled_from([Var(n) for n in names] + ([ZERO, ONE] if sig != "LAT" else []))

    def extend(children):
        binary = st.builds(Meet, children, children) | st.builds(Join, children, children)
        if not OPS[sig]:
            return binary
        return binary | st.builds(Unary, st.sampled_from(OPS[sig]), children)

    return st.recursive(leaves, extend, max_leaves=8)


@given(st.sampled_from(list(OPS)).flatmap(lambda s: st.tuples(st.just(s), terms(s))))
@settings(max_examples=200)
def test_print_parse_round_trip(case):
    sig, t = case
    assert parse(format_term(t), sig) == t


ALGEBRAS = {
    "BZ": ["D3", "D4", "F8", "MO2", "M3+M3", "BZ4", "D2+M3+D2"],
    "BI": ["B6", "M3-PK", "B4-DM"],
    "LAT": ["M3"],
    "MODAL": ["menarini-3", "menarini-6", "menarini-8"],
}


@st.composite
def identity_cases(draw):
    sig = draw(st.sampled_from(list(ALGEBRAS)))
    A = catalog(draw(st.sampled_from(ALGEBRAS[sig])))
    return A, Equation(draw(terms(sig)), draw(terms(sig)))


@given(identity_cases())
@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_check_identity_matches_naive(case):
    A, e = case
    cx = check_identity(A, e)
    expected = naive_first_failure(A, e)
    assert (cx is None) == (expected is None)
    if cx is not None:
        assert cx.assignment == expected
        env = dict(zip(cx.variables, cx.assignment))
        assert (cx.lhs, cx.rhs) == (naive_eval(A, e.lhs, env), naive_eval(A, e.rhs, env))


@pytest.mark.parametrize("name", [n for n in NAMED_LAWS if named_signature(n) is not Signature.MODAL])
def test_named_laws_match_naive_on_f8(name):
    A = catalog("F8")
    law = named_equation(name)
    for part in law if isinstance(law, tuple) else (law,):
        cx = check_law(A, part)
        assert (None if cx is None else cx.assignment) == naive_first_failure(A, part)


@pytest.mark.parametrize("name", [n for n in NAMED_LAWS if named_signature(n) is Signature.MODAL])
@pytest.mark.parametrize("alg", [n for n in catalog_names() if n.startswith("menarini")])
def test_modal_laws_match_naive(name, alg):
    A = catalog(alg)
    law = named_equation(name)
    cx = check_law(A, law)
    assert (None if cx is None else cx.assignment) == naive_first_failure(A, law)


def test_format_law_round_trip():
    for name in NAMED_LAWS:
        law = named_equation(name)
        for part in law if isinstance(law, tuple) else (law,):
            sig = named_signature(name)
            if sig is Signature.BZ and "dia" not in NAMED_LAWS[name][0][0] and "box" not in NAMED_LAWS[name][0][0]:
                assert parse_law(format_law(part), sig) == part
