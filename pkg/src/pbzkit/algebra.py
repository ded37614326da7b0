"""Finite lattice-ordered algebras over the involution / Brouwer / diamond signatures.

Elements are the integers ``0..n-1``; a separate label table carries display
names.  The order relation is the stored primary; meet and join tables are
derived from it once, at construction, and the constructor refuses anything
that is not a lattice or whose unary tables break the axioms of the declared
signature.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import MalformedAlgebra, PreconditionFailed, SignatureMismatch

INV = "inv"
BROUWER = "brouwer"
DIAMOND = "diamond"

OP_SYMBOLS = {INV: "'", BROUWER: "~", DIAMOND: "dia"}


class Signature(Enum):
    LAT = "LAT"      # bounded lattice, no unary operations
    I = "I"          # involution lattice
    BI = "BI"        # bounded involution lattice
    BZ = "BZ"        # Brouwer-Zadeh lattice
    MODAL = "MODAL"  # De Morgan algebra with a possibility operator

    @property
    def bounded(self) -> bool:
        return self is not Signature.I

    @property
    def unary_ops(self) -> tuple[str, ...]:
        return _SIGNATURE_OPS[self]

    @classmethod
    def parse(cls, text: str | Signature) -> Signature:
        if isinstance(text, Signature):
            return text
        try:
            return cls(text.upper())
        except ValueError:
            raise SignatureMismatch(f"unknown signature {text!r}") from None


_SIGNATURE_OPS = {
    Signature.LAT: (),
    Signature.I: (INV,),
    Signature.BI: (INV,),
    Signature.BZ: (INV, BROUWER),
    Signature.MODAL: (INV, DIAMOND),
}


def _closure(leq: np.ndarray) -> np.ndarray:
    leq = leq.copy()
    for k in range(leq.shape[0]):
        leq |= np.outer(leq[:, k], leq[k, :])
    return leq


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class FiniteAlgebra:
    """A finite lattice with optional involution, Brouwer complement or diamond.

    ``leq[i, j]`` is true iff element ``i`` lies below element ``j``.  ``unary``
    maps operation names (``"inv"``, ``"brouwer"``, ``"diamond"``) to total
    tables.  Instances are immutable.
    """

    def __init__(
        self,
        name: str,
        labels: Sequence[str],
        leq,
        unary: Mapping[str, Sequence[int]] | None = None,
        signature: Signature | str = Signature.BI,
    ):
        self.name = name
        self.signature = Signature.parse(signature)
        self.labels = tuple(str(lab) for lab in labels)
        n = len(self.labels)
        if n == 0:
            raise MalformedAlgebra("an algebra needs at least one element")
        if len(set(self.labels)) != n:
            raise MalformedAlgebra(f"{name}: duplicate element labels")
        self.n = n
        leq = np.array(leq, dtype=bool)
        if leq.shape != (n, n):
            raise MalformedAlgebra(f"{name}: order relation must be {n}x{n}")
        self.leq = _readonly(leq)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._check_order()
        self.meet_table, self.join_table = self._lattice_tables()
        bottom = int(np.flatnonzero(self.leq.all(axis=1))[0])
        top = int(np.flatnonzero(self.leq.all(axis=0))[0])
        self.bottom = bottom if self.signature.bounded else None
        self.top = top if self.signature.bounded else None
        self._bottom, self._top = bottom, top

        unary = dict(unary or {})
        expected = set(self.signature.unary_ops)
        if set(unary) != expected:
            raise MalformedAlgebra(
                f"{name}: signature {self.signature.value} needs unary ops "
                f"{sorted(expected)}, got {sorted(unary)}"
            )
        self.unary: dict[str, np.ndarray] = {}
        for op, table in unary.items():
            arr = np.array(table, dtype=np.int64)
            if arr.shape != (n,) or arr.min() < 0 or arr.max() >= n:
                raise MalformedAlgebra(f"{name}: {op} table must be total on {n} elements")
            self.unary[op] = _readonly(arr)
        if INV in self.unary:
            self._check_involution()
        if BROUWER in self.unary:
            self._check_brouwer()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_covers(
        cls,
        name: str,
        labels: Sequence[str],
        covers: Mapping[str, Iterable[str]],
        signature: Signature | str = Signature.BI,
        inv: Mapping[str, str] | Iterable[tuple[str, str]] | None = None,
        brouwer: Mapping[str, str] | None = None,
        diamond: Mapping[str, str] | None = None,
    ) -> FiniteAlgebra:
        """Build from upper covers; the order is their reflexive-transitive closure.

        ``inv`` is a set of pairs (both directions implied); ``brouwer`` and
        ``diamond`` map every label to its image.
        """
        labels = list(labels)
        index = {lab: i for i, lab in enumerate(labels)}

        def idx(lab):
            try:
                return index[lab]
            except KeyError:
                raise MalformedAlgebra(f"{name}: unknown element {lab!r}") from None

        n = len(labels)
        leq = np.eye(n, dtype=bool)
        for low, highs in covers.items():
            for high in highs:
                leq[idx(low), idx(high)] = True
        leq = _closure(leq)
        unary = {}
        if inv is not None:
            pairs = inv.items() if isinstance(inv, Mapping) else inv
            table = [-1] * n
            for x, y in pairs:
                for a, b in ((idx(x), idx(y)), (idx(y), idx(x))):
                    if table[a] not in (-1, b):
                        raise MalformedAlgebra(f"{name}: conflicting involution pairs at {labels[a]!r}")
                    table[a] = b
            if -1 in table:
                raise MalformedAlgebra(f"{name}: involution undefined at {labels[table.index(-1)]!r}")
            unary[INV] = table
        for op, mapping in ((BROUWER, brouwer), (DIAMOND, diamond)):
            if mapping is None:
                continue
            missing = [lab for lab in labels if lab not in mapping]
            if missing:
                raise MalformedAlgebra(f"{name}: {op} undefined at {missing[0]!r}")
            unary[op] = [idx(mapping[lab]) for lab in labels]
        return cls(name, labels, leq, unary, signature)

    def with_op(self, op: str, table: Sequence[int], signature: Signature | str, name: str | None = None) -> FiniteAlgebra:
        signature = Signature.parse(signature)
        unary = {k: v for k, v in self.unary.items() if k in signature.unary_ops}
        unary[op] = list(table)
        return FiniteAlgebra(name or self.name, self.labels, self.leq, unary, signature)

    def reduct(self, signature: Signature | str, name: str | None = None) -> FiniteAlgebra:
        signature = Signature.parse(signature)
        missing = set(signature.unary_ops) - set(self.unary)
        if missing:
            raise SignatureMismatch(f"{self.name} has no {sorted(missing)} to keep in a {signature.value} reduct")
        unary = {k: self.unary[k] for k in signature.unary_ops}
        return FiniteAlgebra(name or self.name, self.labels, self.leq, unary, signature)

    def relabel(self, labels: Sequence[str], name: str | None = None) -> FiniteAlgebra:
        return FiniteAlgebra(name or self.name, labels, self.leq, self.unary, self.signature)

    def renamed(self, name: str) -> FiniteAlgebra:
        return FiniteAlgebra(name, self.labels, self.leq, self.unary, self.signature)

    # -- validation -----------------------------------------------------------

    def _check_order(self):
        leq = self.leq
        if not leq.diagonal().all():
            raise MalformedAlgebra(f"{self.name}: order is not reflexive")
        both = leq & leq.T
        if (both & ~np.eye(self.n, dtype=bool)).any():
            i, j = np.argwhere(both & ~np.eye(self.n, dtype=bool))[0]
            raise MalformedAlgebra(
                f"{self.name}: order is not antisymmetric ({self.labels[i]}, {self.labels[j]})"
            )
        if (_closure(leq) != leq).any():
            raise MalformedAlgebra(f"{self.name}: order is not transitive")

    def _lattice_tables(self):
        n = self.n
        down = [int(sum(1 << i for i in np.flatnonzero(self.leq[:, x]))) for x in range(n)]
        up = [int(sum(1 << i for i in np.flatnonzero(self.leq[x, :]))) for x in range(n)]
        by_down = {d: x for x, d in enumerate(down)}
        by_up = {u: x for x, u in enumerate(up)}
        meet = np.empty((n, n), dtype=np.int64)
        join = np.empty((n, n), dtype=np.int64)
        for x in range(n):
            for y in range(x, n):
                m = by_down.get(down[x] & down[y])
                j = by_up.get(up[x] & up[y])
                if m is None or j is None:
                    kind = "greatest lower" if m is None else "least upper"
                    raise MalformedAlgebra(
                        f"{self.name}: {self.labels[x]} and {self.labels[y]} have no {kind} bound"
                    )
                meet[x, y] = meet[y, x] = m
                join[x, y] = join[y, x] = j
        return _readonly(meet), _readonly(join)

    def _check_involution(self):
        inv = self.unary[INV]
        idx = np.arange(self.n)
        bad = np.flatnonzero(inv[inv] != idx)
        if bad.size:
            raise MalformedAlgebra(f"{self.name}: x'' != x at {self.labels[bad[0]]}")
        reversed_leq = self.leq[np.ix_(inv, inv)].T
        bad = np.argwhere(self.leq & ~reversed_leq)
        if bad.size:
            x, y = bad[0]
            raise MalformedAlgebra(
                f"{self.name}: involution is not order-reversing at {self.labels[x]} <= {self.labels[y]}"
            )

    def _check_brouwer(self):
        b = self.unary[BROUWER]
        inv = self.unary[INV]
        lab = self.labels
        for x in range(self.n):
            if self.meet_table[x, b[x]] != self._bottom:
                raise MalformedAlgebra(f"{self.name}: x & x~ != 0 at {lab[x]}")
            if not self.leq[x, b[b[x]]]:
                raise MalformedAlgebra(f"{self.name}: x <= x~~ fails at {lab[x]}")
            if b[b[x]] != inv[b[x]]:
                raise MalformedAlgebra(f"{self.name}: x~~ != x~' at {lab[x]}")
        bad = np.argwhere(self.leq & ~self.leq[np.ix_(b, b)].T)
        if bad.size:
            x, y = bad[0]
            raise MalformedAlgebra(
                f"{self.name}: Brouwer complement is not order-reversing at {lab[x]} <= {lab[y]}"
            )

    # -- element access -------------------------------------------------------

    def index(self, element: int | str) -> int:
        if isinstance(element, (int, np.integer)):
            if not 0 <= element < self.n:
                raise IndexError(f"{self.name} has no element {element}")
            return int(element)
        try:
            return self._index[element]
        except KeyError:
            raise KeyError(f"{self.name} has no element labelled {element!r}") from None

    def label(self, x: int) -> str:
        return self.labels[x]

    def __len__(self) -> int:
        return self.n

    @property
    def size(self) -> int:
        return self.n

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def has_op(self, op: str) -> bool:
        return op in self.unary

    def table(self, op: str) -> np.ndarray:
        try:
            return self.unary[op]
        except KeyError:
            raise SignatureMismatch(
                f"{self.name} ({self.signature.value}) has no {OP_SYMBOLS.get(op, op)} operation"
            ) from None

    def inv(self, x: int) -> int:
        return int(self.table(INV)[x])

    def brouwer(self, x: int) -> int:
        return int(self.table(BROUWER)[x])

    def diamond(self, x: int) -> int:
        return int(self.table(DIAMOND)[x])

    def require_bounds(self):
        if not self.signature.bounded:
            raise SignatureMismatch(f"{self.name} ({self.signature.value}) has no constants 0, 1")

    def upper_covers(self, x: int) -> list[int]:
        above = [y for y in range(self.n) if y != x and self.leq[x, y]]
        return [y for y in above if not any(z != y and self.leq[z, y] for z in above)]

    def lower_covers(self, x: int) -> list[int]:
        below = [y for y in range(self.n) if y != x and self.leq[y, x]]
        return [y for y in below if not any(z != y and self.leq[y, z] for z in below)]

    def degree(self, x: int) -> int:
        return len(self.upper_covers(x)) + len(self.lower_covers(x))

    # -- comparison -----------------------------------------------------------

    def same_tables(self, other: FiniteAlgebra) -> bool:
        return (
            self.signature == other.signature
            and self.labels == other.labels
            and np.array_equal(self.leq, other.leq)
            and self.unary.keys() == other.unary.keys()
            and all(np.array_equal(self.unary[k], other.unary[k]) for k in self.unary)
        )

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return self.same_tables(other)

    def __hash__(self):
        return hash((self.signature, self.labels, self.leq.tobytes()))

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, n={self.n}, signature={self.signature.value})"


def bounds(A: FiniteAlgebra, x: int | str, y: int | str) -> tuple[int, int]:
    """Return ``(x & y, x | y)``."""
    x, y = A.index(x), A.index(y)
    return A.meet(x, y), A.join(x, y)


def _require_bounded_inv(A: FiniteAlgebra):
    A.require_bounds()
    A.table(INV)


def sharp_elements(A: FiniteAlgebra) -> frozenset[int]:
    """Elements ``x`` with ``x | x' = 1``."""
    _require_bounded_inv(A)
    inv = A.table(INV)
    return frozenset(x for x in range(A.n) if A.join(x, int(inv[x])) == A.top)


def dense_elements(A: FiniteAlgebra) -> frozenset[int]:
    """Elements whose Brouwer complement is the bottom."""
    b = A.table(BROUWER)
    return frozenset(x for x in range(A.n) if b[x] == A.bottom)


def trivial_brouwer_table(A: FiniteAlgebra) -> list[int]:
    A.require_bounds()
    return [A.top if x == A.bottom else A.bottom for x in range(A.n)]


def trivial_brouwer_extension(A: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Attach the trivial Brouwer complement ``0~ = 1``, ``x~ = 0`` otherwise.

    Only paraorthomodular pseudo-Kleene algebras whose sole sharp elements are
    the bounds qualify; anything else raises ``PreconditionFailed`` carrying a
    witness tuple of element indices.
    """
    _require_bounded_inv(A)
    inv = A.table(INV)
    n = A.n
    for x in range(n):
        for y in range(n):
            if not A.le(A.meet(x, int(inv[x])), A.join(y, int(inv[y]))):
                raise PreconditionFailed(
                    f"{A.name} is not pseudo-Kleene: {A.label(x)} & {A.label(x)}' is not below "
                    f"{A.label(y)} | {A.label(y)}'",
                    witness=(x, y),
                )
    for x in sorted(sharp_elements(A)):
        if x not in (A.bottom, A.top):
            raise PreconditionFailed(f"{A.name} has the nontrivial sharp element {A.label(x)}", witness=(x,))
    for x in range(n):
        for y in range(n):
            if x != y and A.le(x, y) and A.meet(int(inv[x]), y) == A.bottom:
                raise PreconditionFailed(
                    f"{A.name} is not paraorthomodular: {A.label(x)} <= {A.label(y)} and "
                    f"{A.label(x)}' & {A.label(y)} = 0",
                    witness=(x, y),
                )
    return A.reduct(Signature.BI).with_op(BROUWER, trivial_brouwer_table(A), Signature.BZ, name=name)
