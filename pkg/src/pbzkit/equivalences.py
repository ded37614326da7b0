"""Quasi-Stone and modal taxonomies, the f/g translations, the discriminator and truncated sum."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import BROUWER, DIAMOND, INV, FiniteAlgebra, Signature
from .classify import B_CLOSURE, QS1, Witness, classify
from .errors import (
    NotDeMorgan,
    NotDistributivePBZ,
    NotQuasiStone,
    NotWeakLukasiewicz,
    SignatureMismatch,
)
from .terms import Counterexample, check_law, named_equation, parse, term_table


@dataclass
class TaxonomyReport:
    """Memberships plus a witness for each failed class."""

    algebra: str
    memberships: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, Witness] = field(default_factory=dict)

    def __getitem__(self, name: str) -> bool:
        return self.memberships[name]

    def lines(self, A: FiniteAlgebra) -> list[str]:
        out = []
        for name, value in self.memberships.items():
            line = f"{name:26} {'yes' if value else 'no'}"
            if name in self.witnesses:
                line += f"  [{self.witnesses[name].describe(A)}]"
            out.append(line)
        return out


def _law(A: FiniteAlgebra, name: str) -> tuple[bool, Witness | None]:
    cx = check_law(A, named_equation(name))
    return (True, None) if cx is None else (False, Witness.from_counterexample(name, cx))


def _conj(*results) -> tuple[bool, Witness | None]:
    for ok, witness in results:
        if not ok:
            return False, witness
    return True, None


class _Lazy:
    """Evaluates named conditions once, on demand."""

    def __init__(self, A: FiniteAlgebra, extra=None):
        self.A = A
        self.extra = extra or {}
        self.done: dict[str, tuple[bool, Witness | None]] = {}

    def __getitem__(self, name: str) -> tuple[bool, Witness | None]:
        if name not in self.done:
            self.done[name] = self.extra[name]() if name in self.extra else _law(self.A, name)
        return self.done[name]


def _finish(A: FiniteAlgebra, results: dict[str, tuple[bool, Witness | None]], cls=TaxonomyReport):
    report = cls(A.name)
    for name, (ok, witness) in results.items():
        report.memberships[name] = ok
        if not ok and witness is not None:
            report.witnesses[name] = witness
    return report


# -- quasi-Stone ------------------------------------------------------------------------


def _require_bz(A: FiniteAlgebra):
    if A.signature is not Signature.BZ:
        raise SignatureMismatch(f"{A.name} has signature {A.signature.value}; a Brouwer complement is required")


def _qs1(A: FiniteAlgebra) -> tuple[bool, Witness | None]:
    for x, want in ((A.bottom, A.top), (A.top, A.bottom)):
        if A.brouwer(x) != want:
            return False, Witness(QS1, (("x", x),), A.brouwer(x), want)
    return True, None


def _b_closure(A: FiniteAlgebra) -> tuple[bool, Witness | None]:
    image = sorted(set(int(v) for v in A.table(BROUWER)))
    for x in image:
        if A.inv(x) not in image:
            return False, Witness(B_CLOSURE, (("x", x),))
    return True, None


STONE_CLASSES = ("quasi-Stone", "Stone", "quasi-Stone-DeMorgan", "Kleene-quasi-Stone", "Kleene-Stone")


def classify_stone(A: FiniteAlgebra) -> TaxonomyReport:
    """Quasi-Stone, Stone, quasi-Stone De Morgan and the Kleene variants.

    The Brouwer complement plays the quasi-Stone operation.  The Kleene
    variants include the requirement that the image of ``~`` be closed under
    the involution.
    """
    _require_bz(A)
    c = _Lazy(A, {"QS1": lambda: _qs1(A), "closure": lambda: _b_closure(A)})
    quasi = _conj(c["QS1"], c["QS2"], c["QS3"], c["QS4"], c["QS5"], c["DIST"])
    qsdm = _conj(quasi, c["closure"])
    kqs = _conj(qsdm, c["KLEENE"])
    results = {
        "quasi-Stone": quasi,
        "Stone": _conj(quasi, c["SDM"]),
        "quasi-Stone-DeMorgan": qsdm,
        "Kleene-quasi-Stone": kqs,
        "Kleene-Stone": _conj(kqs, c["SDM"]),
    }
    return _finish(A, results)


def is_quasi_stone(A: FiniteAlgebra) -> bool:
    return A.signature is Signature.BZ and classify_stone(A)["quasi-Stone"]


def boolean_kernel(A: FiniteAlgebra) -> frozenset[int]:
    """The image of ``~`` on a quasi-Stone algebra, checked to be a Boolean subuniverse."""
    report = classify_stone(A)
    if not report["quasi-Stone"]:
        raise NotQuasiStone(f"{A.name} is not quasi-Stone", witness=report.witnesses.get("quasi-Stone"))
    b = A.table(BROUWER)
    image = frozenset(int(v) for v in b)
    fixed = frozenset(x for x in range(A.n) if b[b[x]] == x)
    closed = {A.bottom, A.top} <= image and all(
        A.meet(x, y) in image and A.join(x, y) in image for x in image for y in image
    )
    complemented = all(A.meet(x, int(b[x])) == A.bottom and A.join(x, int(b[x])) == A.top for x in image)
    if image != fixed or not closed or not complemented or any(int(b[x]) not in image for x in image):
        raise AssertionError(f"{A.name}: image of ~ is not a Boolean subuniverse")
    return image


# -- modal classes -------------------------------------------------------------------------

MODAL_CLASSES = (
    "diamond-DeMorgan",
    "topological-quasi-Boolean",
    "classical-diamond-DeMorgan",
    "monadic-DeMorgan",
    "tetravalent-modal",
    "involutive-Stone",
    "weak-Lukasiewicz",
    "Lukasiewicz",
    "three-valued-Lukasiewicz",
)

# class -> classes it is defined as a strengthening of
MODAL_DEFINITION_PARENTS = {
    "topological-quasi-Boolean": ("diamond-DeMorgan",),
    "classical-diamond-DeMorgan": ("topological-quasi-Boolean",),
    "monadic-DeMorgan": ("classical-diamond-DeMorgan",),
    "tetravalent-modal": ("classical-diamond-DeMorgan",),
    "involutive-Stone": ("classical-diamond-DeMorgan",),
    "weak-Lukasiewicz": ("classical-diamond-DeMorgan",),
    "Lukasiewicz": ("weak-Lukasiewicz", "involutive-Stone"),
    "three-valued-Lukasiewicz": ("Lukasiewicz", "tetravalent-modal"),
}

MODAL_IDENTITIES = tuple(f"M{i}" for i in range(1, 11))


@dataclass
class ModalClassReport(TaxonomyReport):
    identities: dict[str, Counterexample | None] = field(default_factory=dict)

    def respects_implications(self) -> bool:
        return all(
            not self.memberships[child] or all(self.memberships[p] for p in parents)
            for child, parents in MODAL_DEFINITION_PARENTS.items()
        )

    def lines(self, A: FiniteAlgebra) -> list[str]:
        out = super().lines(A)
        for name, cx in self.identities.items():
            out.append(f"{name:26} {'holds' if cx is None else 'fails at ' + cx.describe(A)}")
        return out


def classify_modal(M: FiniteAlgebra) -> ModalClassReport:
    """Memberships in the nine modal De Morgan classes."""
    if M.signature is not Signature.MODAL:
        raise SignatureMismatch(f"{M.name} has signature {M.signature.value}; a diamond is required")
    dist = _law(M, "DIST")
    if not dist[0]:
        raise NotDeMorgan(f"{M.name}: the diamond-free reduct is not distributive", witness=dist[1])
    c = _Lazy(M)
    dm = _conj(c["M1"], c["M2"])
    tqb = _conj(dm, c["M3"], c["M4"])
    classical = _conj(tqb, c["M5"])
    weak = _conj(classical, c["KLEENE"], c["M7"])
    luk = _conj(weak, c["M9"])
    results = {
        "diamond-DeMorgan": dm,
        "topological-quasi-Boolean": tqb,
        "classical-diamond-DeMorgan": classical,
        "monadic-DeMorgan": _conj(classical, c["M6"]),
        "tetravalent-modal": _conj(classical, c["M10"]),
        "involutive-Stone": _conj(classical, c["M9"]),
        "weak-Lukasiewicz": weak,
        "Lukasiewicz": luk,
        "three-valued-Lukasiewicz": _conj(luk, c["M10"]),
    }
    report = _finish(M, results, ModalClassReport)
    report.identities = {name: check_law(M, named_equation(name)) for name in MODAL_IDENTITIES}
    return report


# -- term equivalence -------------------------------------------------------------------------


def bz_of_modal(M: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Same lattice and involution, with ``x~ = (dia x)'``."""
    report = classify_modal(M)
    if not report["weak-Lukasiewicz"]:
        raise NotWeakLukasiewicz(
            f"{M.name} is not a weak Lukasiewicz algebra", witness=report.witnesses.get("weak-Lukasiewicz")
        )
    inv, dia = M.table(INV), M.table(DIAMOND)
    return M.reduct(Signature.BI).with_op(BROUWER, inv[dia], Signature.BZ, name=name or f"f({M.name})")


def modal_of_bz(L: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Same lattice and involution, with ``dia x = x~~``."""
    _require_bz(L)
    report = classify(L)
    if not (report["PBZ*"] and report["distributive"]):
        witness = report.witnesses.get("PBZ*") or report.witnesses.get("distributive")
        raise NotDistributivePBZ(f"{L.name} is not a distributive PBZ*-lattice", witness=witness)
    b = L.table(BROUWER)
    return L.reduct(Signature.BI).with_op(DIAMOND, b[b], Signature.MODAL, name=name or f"g({L.name})")


# -- discriminator and truncated sum ------------------------------------------------------------

E_TERM = "(x~ & dia(y)) | (y~ & dia(x)) | (box(x) & box(y)~) | (box(y) & box(x)~)"
T_TERM = f"(({E_TERM}) | z) & (({E_TERM})' | x)"
SUM_TERM = "(x | dia(y)) & (y | dia(x))"


@dataclass
class DiscriminatorReport:
    e_table: np.ndarray
    t_table: np.ndarray
    e_zero_on_diagonal: bool
    e_one_off_diagonal: bool
    t_is_discriminator: bool
    t_failures: list[tuple[int, int, int]]

    @property
    def ok(self) -> bool:
        return self.t_is_discriminator

    def __bool__(self) -> bool:
        return self.ok


def verify_discriminator(A: FiniteAlgebra) -> DiscriminatorReport:
    """Tabulate ``e`` and ``t`` and compare ``t`` with the ternary discriminator."""
    _require_bz(A)
    e = term_table(A, parse(E_TERM, Signature.BZ), ("x", "y"))
    t = term_table(A, parse(T_TERM, Signature.BZ), ("x", "y", "z"))
    n = A.n
    diag = np.eye(n, dtype=bool)
    failures = [
        (a, b, c)
        for a in range(n)
        for b in range(n)
        for c in range(n)
        if t[a, b, c] != (c if a == b else a)
    ]
    return DiscriminatorReport(
        e_table=e,
        t_table=t,
        e_zero_on_diagonal=bool((e[diag] == A.bottom).all()),
        e_one_off_diagonal=bool((e[~diag] == A.top).all()),
        t_is_discriminator=not failures,
        t_failures=failures,
    )


def truncated_sum_table(A: FiniteAlgebra) -> np.ndarray:
    """Table of ``(x | dia y) & (y | dia x)``."""
    _require_bz(A)
    return term_table(A, parse(SUM_TERM, Signature.BZ), ("x", "y"))


def chain_values(A: FiniteAlgebra) -> list[Fraction]:
    """Place a chain's elements evenly on ``[0, 1]``; raises if ``A`` is not a chain."""
    heights = A.leq.sum(axis=0) - 1
    if sorted(heights.tolist()) != list(range(A.n)):
        raise ValueError(f"{A.name} is not a chain")
    top = max(A.n - 1, 1)
    return [Fraction(int(h), top) for h in heights]


def truncated_sum_matches_arithmetic(A: FiniteAlgebra) -> bool:
    """True iff the term table equals ``min(1, x + y)`` on the evenly spaced chain."""
    values = chain_values(A)
    table = truncated_sum_table(A)
    return all(
        values[table[x, y]] == min(Fraction(1), values[x] + values[y]) for x in range(A.n) for y in range(A.n)
    )
