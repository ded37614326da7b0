"""Terms over meet, join, involution, Brouwer complement and diamond.

Grammar (ASCII)::

    quasi   := rel (',' rel)* '=>' rel
    rel     := term ('=' | '<=') term
    term    := meet ('|' meet)*
    meet    := postfix ('&' postfix)*
    postfix := atom ("'" | '~')*
    atom    := var | '0' | '1' | '(' term ')' | 'box(' term ')' | 'dia(' term ')'

Variables are ``x y z w u v`` or ``x1`` .. ``x9``.  Sugar is expanded while
parsing: ``s <= t`` becomes ``s & t = s``; in the BZ signature ``dia(t)`` is
``t~~`` and ``box(t)`` is ``t'~``; in the modal signature ``box(t)`` is
``dia(t')'``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Union

import numpy as np

from .algebra import BROUWER, DIAMOND, INV, FiniteAlgebra, Signature
from .errors import (
    CapExceeded,
    ParseError,
    SignatureError,
    UnboundVariable,
    UnknownName,
    VariableSplitError,
)

MAX_VARIABLES = 4
MAX_SIZE = 64

VARIABLE_NAMES = ("x", "y", "z", "w", "u", "v") + tuple(f"x{i}" for i in range(1, 10))
_RANK = {name: i for i, name in enumerate(VARIABLE_NAMES)}


# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Unary:
    op: str  # INV, BROUWER or DIAMOND
    arg: "Term"


Term = Union[Var, Const, Meet, Join, Unary]

ZERO, ONE = Const(0), Const(1)


def inv(t: Term) -> Term:
    return Unary(INV, t)


def brouwer(t: Term) -> Term:
    return Unary(BROUWER, t)


def diamond(t: Term) -> Term:
    return Unary(DIAMOND, t)


def join_all(terms: Sequence[Term]) -> Term:
    result = terms[0]
    for t in terms[1:]:
        result = Join(result, t)
    return result


def _sort_vars(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=lambda v: _RANK[v]))


def variables(t: Term) -> tuple[str, ...]:
    return _sort_vars(_iter_vars(t))


def _iter_vars(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, (Meet, Join)):
        yield from _iter_vars(t.left)
        yield from _iter_vars(t.right)
    elif isinstance(t, Unary):
        yield from _iter_vars(t.arg)


def operations(t: Term) -> set[str]:
    """Unary operation names used by ``t``, plus ``"const"`` if 0 or 1 occurs."""
    if isinstance(t, Const):
        return {"const"}
    if isinstance(t, Var):
        return set()
    if isinstance(t, Unary):
        return {t.op} | operations(t.arg)
    return operations(t.left) | operations(t.right)


def substitute(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, Unary):
        return Unary(t.op, substitute(t.arg, mapping))
    return type(t)(substitute(t.left, mapping), substitute(t.right, mapping))


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    @property
    def variables(self) -> tuple[str, ...]:
        return _sort_vars([*_iter_vars(self.lhs), *_iter_vars(self.rhs)])

    def terms(self) -> tuple[Term, ...]:
        return (self.lhs, self.rhs)

    def __str__(self) -> str:
        return format_law(self)


@dataclass(frozen=True)
class Quasiequation:
    premises: tuple[Equation, ...]
    conclusion: Equation

    @property
    def variables(self) -> tuple[str, ...]:
        names = [v for e in (*self.premises, self.conclusion) for v in e.variables]
        return _sort_vars(names)

    def terms(self) -> tuple[Term, ...]:
        return tuple(t for e in (*self.premises, self.conclusion) for t in e.terms())

    def __str__(self) -> str:
        return format_law(self)


Law = Union[Equation, Quasiequation]


def leq(s: Term, t: Term) -> Equation:
    """``s <= t`` in meet-absorption form."""
    return Equation(Meet(s, t), s)


# -- parser ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(=>|<=|x[1-9]|box|dia|[xyzwuv]|[01]|[&|'~(),=])")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    text = text.replace("′", "'")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", len(text) - len(text[pos:].lstrip()))
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    tokens.append(("<end>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, signature: Signature):
        self.tokens = _tokenize(text)
        self.i = 0
        self.sig = signature

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok, pos = self.tokens[self.i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", pos)
        self.i += 1
        return tok

    def parse(self):
        first = self.term()
        if self.peek() in ("<end>",):
            return first
        rels = [self.relation_rest(first)]
        while self.peek() == ",":
            self.take()
            rels.append(self.relation_rest(self.term()))
        if self.peek() == "=>":
            self.take()
            conclusion = self.relation_rest(self.term())
            self.take("<end>")
            return Quasiequation(tuple(rels), conclusion)
        if len(rels) > 1:
            raise ParseError("premise list must be followed by '=>'", self.pos())
        self.take("<end>")
        return rels[0]

    def relation_rest(self, lhs: Term) -> Equation:
        tok = self.peek()
        if tok == "=":
            self.take()
            return Equation(lhs, self.term())
        if tok == "<=":
            self.take()
            return leq(lhs, self.term())
        raise ParseError(f"expected '=' or '<=', found {tok!r}", self.pos())

    def term(self) -> Term:
        t = self.meet()
        while self.peek() == "|":
            self.take()
            t = Join(t, self.meet())
        return t

    def meet(self) -> Term:
        t = self.postfix()
        while self.peek() == "&":
            self.take()
            t = Meet(t, self.postfix())
        return t

    def postfix(self) -> Term:
        t = self.atom()
        while self.peek() in ("'", "~"):
            pos = self.pos()
            if self.take() == "'":
                self._need_inv(pos)
                t = inv(t)
            else:
                if self.sig is not Signature.BZ:
                    raise SignatureError(f"'~' is not available in signature {self.sig.value}")
                t = brouwer(t)
        return t

    def _need_inv(self, pos):
        if self.sig is Signature.LAT:
            raise SignatureError(f"involution is not available in signature LAT (position {pos})")

    def atom(self) -> Term:
        tok, pos = self.tokens[self.i]
        if tok in _RANK:
            self.take()
            return Var(tok)
        if tok in ("0", "1"):
            if not self.sig.bounded:
                raise SignatureError(f"constant {tok} is not available in signature {self.sig.value}")
            self.take()
            return Const(int(tok))
        if tok == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        if tok in ("box", "dia"):
            if self.sig not in (Signature.BZ, Signature.MODAL):
                raise SignatureError(f"{tok}(...) is not available in signature {self.sig.value}")
            self.take()
            self.take("(")
            t = self.term()
            self.take(")")
            if self.sig is Signature.BZ:
                return brouwer(brouwer(t)) if tok == "dia" else brouwer(inv(t))
            return diamond(t) if tok == "dia" else inv(diamond(inv(t)))
        raise ParseError(f"unexpected token {tok!r}", pos)


def parse(text: str, signature: Signature | str = Signature.BZ):
    """Parse a term, equation or quasiequation."""
    return _Parser(text, Signature.parse(signature)).parse()


def parse_law(text: str, signature: Signature | str = Signature.BZ) -> Law:
    result = parse(text, signature)
    if not isinstance(result, (Equation, Quasiequation)):
        raise ParseError("expected an equation or quasiequation", 0)
    return result


# -- printer --------------------------------------------------------------------

_JOIN_PREC, _MEET_PREC, _POSTFIX_PREC = 1, 2, 3


def format_term(t: Term, _ctx: int = 0) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Unary):
        if t.op == DIAMOND:
            return f"dia({format_term(t.arg)})"
        suffix = "'" if t.op == INV else "~"
        return format_term(t.arg, _POSTFIX_PREC) + suffix
    if isinstance(t, Meet):
        text = f"{format_term(t.left, _MEET_PREC)} & {format_term(t.right, _MEET_PREC + 1)}"
        return f"({text})" if _ctx > _MEET_PREC else text
    text = f"{format_term(t.left, _JOIN_PREC)} | {format_term(t.right, _JOIN_PREC + 1)}"
    return f"({text})" if _ctx > _JOIN_PREC else text


def format_law(law) -> str:
    if isinstance(law, Equation):
        return f"{format_term(law.lhs)} = {format_term(law.rhs)}"
    if isinstance(law, Quasiequation):
        premises = " , ".join(format_law(p) for p in law.premises)
        return f"{premises} => {format_law(law.conclusion)}"
    return format_term(law)


# -- evaluation -----------------------------------------------------------------


def _check_support(A: FiniteAlgebra, t: Term):
    for op in operations(t):
        if op == "const":
            if not A.signature.bounded:
                raise SignatureError(f"{A.name} has no constants")
        elif not A.has_op(op):
            raise SignatureError(f"{A.name} ({A.signature.value}) cannot interpret {op}")


def eval_term(A: FiniteAlgebra, t: Term, assignment: Mapping[str, int | str]) -> int:
    """Evaluate ``t`` in ``A`` under ``assignment`` (variable name -> element)."""
    _check_support(A, t)
    env = {k: A.index(v) for k, v in assignment.items()}
    return _eval(A, t, env)


def _eval(A: FiniteAlgebra, t: Term, env: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariable(f"no value for variable {t.name}") from None
    if isinstance(t, Const):
        return A.top if t.value else A.bottom
    if isinstance(t, Unary):
        return int(A.unary[t.op][_eval(A, t.arg, env)])
    if isinstance(t, Meet):
        return A.meet(_eval(A, t.left, env), _eval(A, t.right, env))
    return A.join(_eval(A, t.left, env), _eval(A, t.right, env))


def _eval_vec(A: FiniteAlgebra, t: Term, env: Mapping[str, np.ndarray], size: int) -> np.ndarray:
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Const):
        return np.full(size, A.top if t.value else A.bottom, dtype=np.int64)
    if isinstance(t, Unary):
        return A.unary[t.op][_eval_vec(A, t.arg, env, size)]
    left = _eval_vec(A, t.left, env, size)
    right = _eval_vec(A, t.right, env, size)
    table = A.meet_table if isinstance(t, Meet) else A.join_table
    return table[left, right]


@dataclass(frozen=True)
class Counterexample:
    """The first assignment (lexicographic, first variable most significant) refuting a law."""

    law: Law
    variables: tuple[str, ...]
    assignment: tuple[int, ...]
    lhs: int
    rhs: int

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.variables, self.assignment))

    def describe(self, A: FiniteAlgebra) -> str:
        env = ", ".join(f"{v}={A.label(e)}" for v, e in zip(self.variables, self.assignment))
        return f"{env}: {A.label(self.lhs)} != {A.label(self.rhs)}"


def _check_caps(A: FiniteAlgebra, names: Sequence[str]):
    if len(names) > MAX_VARIABLES:
        raise CapExceeded(f"{len(names)} variables exceed the limit of {MAX_VARIABLES}")
    if A.n > MAX_SIZE:
        raise CapExceeded(f"{A.name} has {A.n} elements; the limit is {MAX_SIZE}")


def _first_failure(A: FiniteAlgebra, law: Law) -> Counterexample | None:
    for t in law.terms():
        _check_support(A, t)
    names = law.variables
    _check_caps(A, names)
    n, k = A.n, len(names)
    if isinstance(law, Equation):
        premises, conclusion = (), law
    else:
        premises, conclusion = law.premises, law.conclusion
    # chunk over the first variable so memory stays at n**(k-1) per array
    rest = k - 1 if k else 0
    size = n ** rest
    grid = np.arange(size, dtype=np.int64)
    rest_arrays = [(grid // n ** (rest - 1 - j)) % n for j in range(rest)]
    for v0 in range(n if k else 1):
        env = {}
        if k:
            env[names[0]] = np.full(size, v0, dtype=np.int64)
            env.update(zip(names[1:], rest_arrays))
        mask = np.ones(size, dtype=bool)
        for p in premises:
            mask &= _eval_vec(A, p.lhs, env, size) == _eval_vec(A, p.rhs, env, size)
        lhs = _eval_vec(A, conclusion.lhs, env, size)
        rhs = _eval_vec(A, conclusion.rhs, env, size)
        bad = np.flatnonzero(mask & (lhs != rhs))
        if bad.size:
            i = int(bad[0])
            values = ((v0,) if k else ()) + tuple(int(a[i]) for a in rest_arrays)
            return Counterexample(law, names, values, int(lhs[i]), int(rhs[i]))
    return None


def check_identity(A: FiniteAlgebra, e: Equation) -> Counterexample | None:
    """Exhaustively check ``e`` in ``A``; ``None`` means it holds."""
    if not isinstance(e, Equation):
        raise TypeError("check_identity expects an Equation")
    return _first_failure(A, e)


def check_quasiidentity(A: FiniteAlgebra, q: Quasiequation) -> Counterexample | None:
    if not isinstance(q, Quasiequation):
        raise TypeError("check_quasiidentity expects a Quasiequation")
    return _first_failure(A, q)


def check_law(A: FiniteAlgebra, law) -> Counterexample | None:
    """Check an equation, a quasiequation, or a tuple of them (first failure wins)."""
    if isinstance(law, tuple):
        for part in law:
            failure = _first_failure(A, part)
            if failure is not None:
                return failure
        return None
    return _first_failure(A, law)


def satisfies(A: FiniteAlgebra, law) -> bool:
    return check_law(A, law) is None


def fails_at(A: FiniteAlgebra, law: Law, assignment: Mapping[str, int]) -> bool:
    """True iff ``law`` is refuted by this single assignment."""
    if isinstance(law, Equation):
        return eval_term(A, law.lhs, assignment) != eval_term(A, law.rhs, assignment)
    if all(eval_term(A, p.lhs, assignment) == eval_term(A, p.rhs, assignment) for p in law.premises):
        return fails_at(A, law.conclusion, assignment)
    return False


def assignments(A: FiniteAlgebra, names: Sequence[str]) -> Iterator[dict[str, int]]:
    for values in itertools.product(range(A.n), repeat=len(names)):
        yield dict(zip(names, values))


# -- named laws -----------------------------------------------------------------

_B, _L, _I, _M, _Z = Signature.BI, Signature.LAT, Signature.I, Signature.MODAL, Signature.BZ

NAMED_LAWS: dict[str, tuple[tuple[str, ...], Signature]] = {
    "star": (("(x & x')~ = x~ | x'~",), _Z),
    "SDM": (("(x & y)~ = x~ | y~",), _Z),
    "SK": (("x & dia(y) <= box(x) | y",), _Z),
    "DIST": (("x & (y | z) = (x & y) | (x & z)",), _L),
    "MODULAR": (("(x & z) | (y & z) = ((x & z) | y) & z",), _L),
    "J0": (("(x & y~) | (x & dia(y)) = x",), _Z),
    "J2": (("(x & (y & y')~) | (x & dia(y & y')) = x",), _Z),
    "D2OLjoin": (("(x & x')~ | (y & y')~ | x | x' = (x & x')~ | (y & y')~ | y | y'",), _Z),
    "WDSDM": (("(x & (y | z))~ = (x & y)~ & (x & z)~",), _Z),
    "DISTjoinTilde": (
        ("(x | x~) & (y | y~ | z | z~) = ((x | x~) & (y | y~)) | ((x | x~) & (z | z~))",),
        _Z,
    ),
    "WDISTjoinTilde": (
        ("((x | x~) & (y | y~ | z | z~))~ = (((x | x~) & (y | y~)) | ((x | x~) & (z | z~)))~",),
        _Z,
    ),
    "Q": (("x <= y' , x' & y' <= x & y => x = y'",), _I),
    "Qprime": (("x' & (x' & u)' <= x & (x' & u) => x' <= u",), _I),
    "PARA": (("x <= y , x' & y = 0 => x = y",), _B),
    "OM": (("x <= y => y = (y & x') | x",), _I),
    "KLEENE": (("x & x' <= y | y'",), _I),
    "ORTHO": (("x | x' = 1",), _B),
    # Brouwer complement axioms
    "BZ-DISJOINT": (("x & x~ = 0",), _Z),
    "BZ-EXPANSIVE": (("x <= x~~",), _Z),
    "BZ-COMPAT": (("x~~ = x~'",), _Z),
    "BZ-ANTITONE": (("x <= y => y~ <= x~",), _Z),
    # diamond identities
    "M1": (("dia(0) = 0",), _M),
    "M2": (("dia(x | y) = dia(x) | dia(y)",), _M),
    "M3": (("x <= dia(x)",), _M),
    "M4": (("dia(x) = dia(dia(x))",), _M),
    "M5": (("dia(x) & dia(x)' = 0",), _M),
    "M6": (("dia(x) = box(dia(x))",), _M),
    "M7": (("dia(x & x') = dia(x) & dia(x')",), _M),
    "M8": (("x' | dia(x) = 1",), _M),
    "M9": (("dia(x & y) = dia(x) & dia(y)",), _M),
    "M10": (("x & x' = dia(x) & x'",), _M),
    # quasi-Stone conditions; QS1 is variable-free and checked on constants
    "QS2": (("(x | y)~ = x~ & y~",), _Z),
    "QS3": (("(x & y~)~ = x~ | y~~",), _Z),
    "QS4": (("x <= x~~",), _Z),
    "QS5": (("x~ | x~~ = 1",), _Z),
    "QS6": (("x <= y => y~ <= x~",), _Z),
    "QS7": (("x & x~ = 0",), _Z),
    "QS8": (("x~~~ = x~",), _Z),
    "QS9": (("x & y~ = 0 => x <= y~~", "x <= y~~ => x & y~ = 0"), _Z),
    "S1": (("x & y = 0 => x <= y~", "x <= y~ => x & y = 0"), _Z),
    "DOUBLE-TILDE": (("x~~ = x~'~'",), _Z),
    "QSDM-CLOSURE": (("x~~ = x => x'~~ = x'",), _Z),
}


def named_equation(name: str):
    """The frozen law called ``name``; two-way conditions come back as a pair."""
    try:
        texts, sig = NAMED_LAWS[name]
    except KeyError:
        raise UnknownName(f"unknown equation {name!r}; known: {', '.join(NAMED_LAWS)}") from None
    laws = tuple(parse_law(text, sig) for text in texts)
    return laws[0] if len(laws) == 1 else laws


def named_signature(name: str) -> Signature:
    return NAMED_LAWS[name][1]


# -- m-terms --------------------------------------------------------------------


def _sharpness_defects(names: Sequence[str]) -> list[Term]:
    return [brouwer(Meet(Var(v), inv(Var(v)))) for v in names]


def m_terms(
    t: Term, u: Term, t_only: Sequence[str], u_only: Sequence[str], shared: Sequence[str]
) -> tuple[Term, Term]:
    """Return ``(m(t, u), m(u, t))``; both share the same prefix of defect joins.

    ``t`` may use ``t_only`` and ``shared`` variables, ``u`` may use ``u_only``
    and ``shared``; the three lists must be disjoint.
    """
    groups = [list(t_only), list(u_only), list(shared)]
    flat = [v for g in groups for v in g]
    if len(set(flat)) != len(flat):
        raise VariableSplitError("variable split lists overlap")
    for term, allowed, label in ((t, set(t_only) | set(shared), "t"), (u, set(u_only) | set(shared), "u")):
        extra = set(variables(term)) - allowed
        if extra:
            raise VariableSplitError(f"{label} uses undeclared variables {sorted(extra)}")
    prefix = _sharpness_defects(flat)
    return join_all(prefix + [t]), join_all(prefix + [u])


def build_m_term(
    t: Term, u: Term, t_only: Sequence[str], u_only: Sequence[str], shared: Sequence[str] = ()
) -> Term:
    return m_terms(t, u, t_only, u_only, shared)[0]


def term_table(A: FiniteAlgebra, t: Term, names: Sequence[str] | None = None) -> np.ndarray:
    """All values of ``t`` as an array indexed by the variables in ``names`` order."""
    _check_support(A, t)
    names = tuple(variables(t) if names is None else names)
    n, k = A.n, len(names)
    size = n**k
    grid = np.arange(size, dtype=np.int64)
    env = {v: (grid // n ** (k - 1 - j)) % n for j, v in enumerate(names)}
    return _eval_vec(A, t, env, size).reshape((n,) * k)
