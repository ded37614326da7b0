"""Exhaustive class membership for finite algebras."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import BROUWER, INV, FiniteAlgebra, sharp_elements
from .errors import SignatureError
from .terms import Counterexample, check_law, fails_at, named_equation

SHARP = "nontrivial sharp element"
QS1 = "QS1"
B_CLOSURE = "B-closure"

# laws reported as memberships of their own
EQUATION_CLASSES = ("SDM", "SK", "J0", "J2", "D2OLjoin", "WDSDM", "DISTjoinTilde", "WDISTjoinTilde", "Q", "Qprime")

CLASS_ORDER = (
    "lattice",
    "distributive",
    "modular",
    "BI-lattice",
    "De Morgan",
    "pseudo-Kleene",
    "Kleene",
    "ortholattice",
    "orthomodular",
    "paraorthomodular",
    "BZ-lattice",
    "star",
    "PBZ*",
    "antiortholattice",
) + EQUATION_CLASSES


@dataclass(frozen=True)
class Witness:
    """Evidence against a class: a failing law instance, or a nontrivial sharp element."""

    reason: str  # a named law, or SHARP
    assignment: tuple[tuple[str, int], ...]
    lhs: int | None = None
    rhs: int | None = None

    @classmethod
    def from_counterexample(cls, reason: str, cx: Counterexample) -> Witness:
        return cls(reason, tuple(zip(cx.variables, cx.assignment)), cx.lhs, cx.rhs)

    def as_dict(self) -> dict[str, int]:
        return dict(self.assignment)

    def reproduces(self, A: FiniteAlgebra) -> bool:
        env = self.as_dict()
        if self.reason == SHARP:
            x = env["x"]
            return x not in (A.bottom, A.top) and x in sharp_elements(A)
        if self.reason == QS1:
            x = env["x"]
            return int(A.brouwer(x)) != (A.top if x == A.bottom else A.bottom)
        if self.reason == B_CLOSURE:
            image = set(int(v) for v in A.table(BROUWER))
            return env["x"] in image and A.inv(env["x"]) not in image
        law = named_equation(self.reason)
        parts = law if isinstance(law, tuple) else (law,)
        return any(fails_at(A, part, env) for part in parts)

    def describe(self, A: FiniteAlgebra) -> str:
        env = ", ".join(f"{v}={A.label(e)}" for v, e in self.assignment)
        if self.reason == SHARP:
            return f"{SHARP} {env}"
        if self.reason == QS1:
            return f"QS1 fails: {env}, x~ = {A.label(self.lhs)}"
        if self.reason == B_CLOSURE:
            return f"{env} lies in the image of ~ but x' does not"
        return f"{self.reason} fails at {env}: {A.label(self.lhs)} != {A.label(self.rhs)}"


@dataclass
class ClassificationReport:
    algebra: str
    memberships: dict[str, bool | None] = field(default_factory=dict)
    witnesses: dict[str, Witness] = field(default_factory=dict)

    def __getitem__(self, name: str) -> bool | None:
        return self.memberships[name]

    def holds(self, name: str) -> bool:
        return self.memberships.get(name) is True

    def lines(self, A: FiniteAlgebra) -> list[str]:
        out = []
        for name in CLASS_ORDER:
            value = self.memberships.get(name)
            text = "n/a" if value is None else ("yes" if value else "no")
            line = f"{name:18} {text}"
            if name in self.witnesses:
                line += f"  [{self.witnesses[name].describe(A)}]"
            out.append(line)
        return out


class _Checker:
    def __init__(self, A: FiniteAlgebra):
        self.A = A
        self.cache: dict[str, tuple[bool | None, Witness | None]] = {}

    def law(self, name: str) -> tuple[bool | None, Witness | None]:
        if name not in self.cache:
            try:
                cx = check_law(self.A, named_equation(name))
            except SignatureError:
                self.cache[name] = (None, None)
            else:
                self.cache[name] = (cx is None, None if cx is None else Witness.from_counterexample(name, cx))
        return self.cache[name]


def _all(*results):
    """Conjunction of (value, witness) pairs; the first failure supplies the witness."""
    for value, witness in results:
        if value is None:
            return None, None
        if not value:
            return False, witness
    return True, None


def classify(A: FiniteAlgebra) -> ClassificationReport:
    """Decide every class in ``CLASS_ORDER`` by exhaustive evaluation.

    A membership is ``None`` when the algebra's signature cannot express the
    class (for instance ``star`` on an algebra without ``~``).
    """
    c = _Checker(A)
    results: dict[str, tuple[bool | None, Witness | None]] = {}
    has_inv = A.has_op(INV)
    bounded = A.signature.bounded

    results["lattice"] = (True, None)
    results["distributive"] = c.law("DIST")
    results["modular"] = c.law("MODULAR")
    results["BI-lattice"] = (True, None) if has_inv and bounded else (None, None)
    results["De Morgan"] = _all(results["BI-lattice"], results["distributive"])
    results["pseudo-Kleene"] = _all(results["BI-lattice"], c.law("KLEENE"))
    results["Kleene"] = _all(results["pseudo-Kleene"], results["distributive"])
    results["ortholattice"] = _all(results["BI-lattice"], c.law("ORTHO"))
    results["orthomodular"] = _all(results["ortholattice"], c.law("OM"))
    results["paraorthomodular"] = c.law("PARA")
    # the Brouwer axioms themselves are enforced when the algebra is built
    has_brouwer = A.has_op(BROUWER)
    results["BZ-lattice"] = results["pseudo-Kleene"] if has_brouwer else (None, None)
    results["star"] = c.law("star")
    results["PBZ*"] = _all(results["BZ-lattice"], results["paraorthomodular"], results["star"])
    if results["PBZ*"][0]:
        extra = sorted(set(sharp_elements(A)) - {A.bottom, A.top})
        sharp = (False, Witness(SHARP, (("x", extra[0]),))) if extra else (True, None)
        results["antiortholattice"] = sharp
    else:
        results["antiortholattice"] = results["PBZ*"]
    for name in EQUATION_CLASSES:
        results[name] = c.law(name)

    report = ClassificationReport(A.name)
    for name in CLASS_ORDER:
        value, witness = results[name]
        report.memberships[name] = value
        if value is False and witness is not None:
            report.witnesses[name] = witness
    return report
