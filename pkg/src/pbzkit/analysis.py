"""Subuniverses, embeddings, isomorphisms, congruences and quotients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import FiniteAlgebra, Signature
from .errors import CapExceeded, NotACongruence, SignatureMismatch

CONGRUENCE_CAP = 16


def _signature(A: FiniteAlgebra, signature) -> Signature:
    sig = A.signature if signature is None else Signature.parse(signature)
    missing = [op for op in sig.unary_ops if not A.has_op(op)]
    if missing or (sig.bounded and not A.signature.bounded):
        raise SignatureMismatch(f"{A.name} ({A.signature.value}) cannot be read in signature {sig.value}")
    return sig


# -- partitions ---------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def labels(self) -> list[int]:
        return [self.find(x) for x in range(len(self.parent))]


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on ``0..n-1``.

    ``block_of[x]`` numbers blocks in order of their least element, so equal
    relations always have equal ``block_of`` tuples.
    """

    block_of: tuple[int, ...]

    def __post_init__(self):
        seen: dict[int, int] = {}
        canon = tuple(seen.setdefault(b, len(seen)) for b in self.block_of)
        object.__setattr__(self, "block_of", canon)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> Partition:
        block_of = [-1] * n
        for i, block in enumerate(blocks):
            for x in block:
                if block_of[x] != -1:
                    raise ValueError(f"element {x} appears in two blocks")
                block_of[x] = i
        if -1 in block_of:
            raise ValueError(f"element {block_of.index(-1)} is in no block")
        return cls(tuple(block_of))

    @classmethod
    def identity(cls, n: int) -> Partition:
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> Partition:
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.block_of)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(max(self.block_of, default=-1) + 1)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return out

    def related(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def block(self, x: int) -> list[int]:
        return [y for y in range(self.n) if self.related(x, y)]

    def is_identity(self) -> bool:
        return len(set(self.block_of)) == self.n

    def is_total(self) -> bool:
        return len(set(self.block_of)) <= 1

    def refines(self, other: Partition) -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        return all(other.related(x, b[0]) for b in self.blocks() for x in b)

    def join(self, other: Partition) -> Partition:
        uf = _UnionFind(self.n)
        for p in (self, other):
            for b in p.blocks():
                for x in b[1:]:
                    uf.union(b[0], x)
        return Partition(tuple(uf.labels()))

    def meet(self, other: Partition) -> Partition:
        return Partition(tuple(zip(self.block_of, other.block_of)))  # type: ignore[arg-type]

    def format(self, A: FiniteAlgebra) -> str:
        return ";".join(",".join(A.label(x) for x in b) for b in self.blocks())

    @classmethod
    def parse(cls, A: FiniteAlgebra, text: str) -> Partition:
        """Read ``a,b;c;...``; labels may themselves contain commas."""
        text = text.strip()
        blocks = _split_labels(A, text)
        if blocks is None:
            raise ValueError(f"cannot read {text!r} as a partition of {A.name}")
        return cls.from_blocks(A.n, [[A.index(lab) for lab in b] for b in blocks])


def _split_labels(A: FiniteAlgebra, text: str) -> list[list[str]] | None:
    labels = sorted(A.labels, key=len, reverse=True)

    def walk(pos: int, current: list[str], done: list[list[str]]):
        for lab in labels:
            if not text.startswith(lab, pos):
                continue
            end = pos + len(lab)
            if end == len(text):
                return [*done, [*current, lab]]
            sep = text[end]
            if sep == ",":
                found = walk(end + 1, [*current, lab], done)
            elif sep == ";":
                found = walk(end + 1, [], [*done, [*current, lab]])
            else:
                continue
            if found is not None:
                return found
        return None

    return walk(0, [], []) if text else None


# -- subuniverses and maps ------------------------------------------------------------


def subuniverse_closure(A: FiniteAlgebra, seed: Iterable, signature=None) -> frozenset[int]:
    """Least subset containing ``seed`` closed under the operations of ``signature``."""
    sig = _signature(A, signature)
    current = {A.index(x) for x in seed}
    if sig.bounded:
        current |= {A.bottom, A.top}
    tables = [A.unary[op] for op in sig.unary_ops]
    frontier = list(current)
    while frontier:
        x = frontier.pop()
        new = {int(t[x]) for t in tables}
        for y in list(current):
            new.add(A.meet(x, y))
            new.add(A.join(x, y))
        new -= current
        current |= new
        frontier.extend(new)
    return frozenset(current)


@dataclass(frozen=True)
class ElementMap:
    source: FiniteAlgebra
    target: FiniteAlgebra
    images: tuple[int, ...]

    def __call__(self, x) -> int:
        return self.images[self.source.index(x)]

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_bijective(self) -> bool:
        return self.is_injective() and len(self.images) == self.target.n

    def preserves(self, signature) -> bool:
        sig = Signature.parse(signature)
        P, A, f = self.source, self.target, self.images
        for x in range(P.n):
            for y in range(P.n):
                if f[P.meet(x, y)] != A.meet(f[x], f[y]) or f[P.join(x, y)] != A.join(f[x], f[y]):
                    return False
            for op in sig.unary_ops:
                if f[int(P.unary[op][x])] != int(A.unary[op][f[x]]):
                    return False
        if sig.bounded and (f[P.bottom] != A.bottom or f[P.top] != A.top):
            return False
        return True

    def as_labels(self) -> list[tuple[str, str]]:
        return [(self.source.label(x), self.target.label(y)) for x, y in enumerate(self.images)]

    def format(self) -> str:
        return " ".join(f"{a}->{b}" for a, b in self.as_labels())


def _down_up_sizes(A: FiniteAlgebra) -> tuple[np.ndarray, np.ndarray]:
    return A.leq.sum(axis=0), A.leq.sum(axis=1)


def _search(P: FiniteAlgebra, A: FiniteAlgebra, sig: Signature, bijective: bool) -> ElementMap | None:
    n, m = P.n, A.n
    p_down, p_up = _down_up_sizes(P)
    a_down, a_up = _down_up_sizes(A)
    ops = [(P.unary[op], A.unary[op]) for op in sig.unary_ops]
    candidates = []
    for p in range(n):
        if bijective:
            ok = [q for q in range(m) if a_down[q] == p_down[p] and a_up[q] == p_up[p] and A.degree(q) == P.degree(p)]
        else:
            ok = [q for q in range(m) if a_down[q] >= p_down[p] and a_up[q] >= p_up[p]]
        candidates.append(sorted(ok, key=lambda q: (-A.degree(q), q)))
    order = sorted(range(n), key=lambda p: (len(candidates[p]), -P.degree(p), p))

    def assign(f: list[int], used: dict[int, int], p: int, q: int) -> bool:
        queue = [(p, q)]
        while queue:
            p, q = queue.pop()
            if f[p] == q:
                continue
            if f[p] != -1 or q in used or q not in cand_sets[p]:
                return False
            f[p] = q
            used[q] = p
            for tp, ta in ops:
                queue.append((int(tp[p]), int(ta[q])))
            for r in range(n):
                if f[r] != -1:
                    queue.append((P.meet(p, r), A.meet(q, f[r])))
                    queue.append((P.join(p, r), A.join(q, f[r])))
        return True

    cand_sets = [set(c) for c in candidates]
    f0 = [-1] * n
    used0: dict[int, int] = {}
    if sig.bounded and not (assign(f0, used0, P.bottom, A.bottom) and assign(f0, used0, P.top, A.top)):
        return None

    def search(f: list[int], used: dict[int, int]) -> list[int] | None:
        free = [p for p in order if f[p] == -1]
        if not free:
            return f
        p = free[0]
        for q in candidates[p]:
            if q in used:
                continue
            f2, used2 = list(f), dict(used)
            if assign(f2, used2, p, q):
                found = search(f2, used2)
                if found is not None:
                    return found
        return None

    found = search(f0, used0)
    return None if found is None else ElementMap(P, A, tuple(found))


def find_embedding(P: FiniteAlgebra, A: FiniteAlgebra, signature=None) -> ElementMap | None:
    """An injective homomorphism ``P -> A`` for ``signature``, or ``None``.

    In signature ``I`` the bounds of ``P`` need not go to the bounds of ``A``.
    """
    sig = _signature(P, signature)
    _signature(A, sig)
    if P.n > A.n:
        return None
    return _search(P, A, sig, bijective=False)


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra, signature=None) -> ElementMap | None:
    sig = _signature(A, signature)
    _signature(B, sig)
    if A.n != B.n:
        return None
    return _search(A, B, sig, bijective=True)


# -- congruences ----------------------------------------------------------------------


def is_congruence(A: FiniteAlgebra, p: Partition, signature=None) -> bool:
    """True iff ``p`` is compatible with meet, join and the unary operations of ``signature``."""
    sig = _signature(A, signature)
    if p.n != A.n:
        raise ValueError(f"partition has {p.n} elements, {A.name} has {A.n}")
    block = np.array(p.block_of)
    images = [block[A.meet_table], block[A.join_table]]
    images += [block[A.unary[op]][:, None] for op in sig.unary_ops]
    for members in p.blocks():
        for img in images:
            rows = img[members]
            if not (rows == rows[0]).all():
                return False
    return True


def principal_congruence(A: FiniteAlgebra, x, y, signature=None) -> Partition:
    """Least congruence identifying ``x`` and ``y``."""
    sig = _signature(A, signature)
    x, y = A.index(x), A.index(y)
    tables = [A.unary[op] for op in sig.unary_ops]
    uf = _UnionFind(A.n)
    pending = [(x, y)] if uf.union(x, y) else []
    while pending:
        a, b = pending.pop()
        pairs = [(int(t[a]), int(t[b])) for t in tables]
        for z in range(A.n):
            pairs.append((A.meet(a, z), A.meet(b, z)))
            pairs.append((A.join(a, z), A.join(b, z)))
        for c, d in pairs:
            if uf.union(c, d):
                pending.append((c, d))
    return Partition(tuple(uf.labels()))


def _cap(A: FiniteAlgebra):
    if A.n > CONGRUENCE_CAP:
        raise CapExceeded(f"{A.name} has {A.n} elements; congruence lattices are limited to {CONGRUENCE_CAP}")


def constants_singleton(A: FiniteAlgebra, p: Partition) -> bool:
    """True iff the classes of 0 and 1 are singletons."""
    A.require_bounds()
    return all(len(p.block(c)) == 1 for c in (A.bottom, A.top))


def all_congruences(A: FiniteAlgebra, signature=None, constants_singleton_only: bool = False) -> list[Partition]:
    """Every congruence, as the join-closure of the principal ones.

    The list is sorted from finest to coarsest (by number of blocks, then by
    ``block_of``).
    """
    sig = _signature(A, signature)
    _cap(A)
    principal = {principal_congruence(A, x, y, sig) for x in range(A.n) for y in range(x + 1, A.n)}
    found = {Partition.identity(A.n)} | principal
    frontier = set(principal)
    while frontier:
        new = {p.join(q) for p in frontier for q in principal} - found
        found |= new
        frontier = new
    result = sorted(found, key=lambda p: (-len(set(p.block_of)), p.block_of))
    if constants_singleton_only:
        result = [p for p in result if constants_singleton(A, p)]
    return result


def quotient(A: FiniteAlgebra, p: Partition, signature=None, name: str | None = None) -> FiniteAlgebra:
    """``A/p`` with the induced order and operations; block labels are joined with ``/``."""
    sig = _signature(A, signature)
    if not is_congruence(A, p, sig):
        raise NotACongruence(f"{p.format(A)} is not a {sig.value} congruence of {A.name}")
    blocks = p.blocks()
    reps = [b[0] for b in blocks]
    block = p.block_of
    k = len(blocks)
    leq = np.zeros((k, k), dtype=bool)
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            leq[i, j] = block[A.join(x, y)] == j
    unary = {op: [block[int(A.unary[op][x])] for x in reps] for op in sig.unary_ops}
    labels = ["/".join(A.label(x) for x in b) for b in blocks]
    return FiniteAlgebra(name or f"{A.name}/~", labels, leq, unary, sig)


def monolith(A: FiniteAlgebra, signature=None) -> Partition | None:
    """The least non-identity congruence, or ``None`` if there is none."""
    congs = [p for p in all_congruences(A, signature) if not p.is_identity()]
    if not congs:
        return None
    result = congs[0]
    for p in congs[1:]:
        result = result.meet(p)
    return None if result.is_identity() else result


def is_subdirectly_irreducible(A: FiniteAlgebra, signature=None) -> bool:
    """Nontrivial with a monolith; the one-element algebra does not qualify."""
    _cap(A)
    return A.n > 1 and monolith(A, signature) is not None


def is_simple(A: FiniteAlgebra, signature=None) -> bool:
    return A.n > 1 and len(all_congruences(A, signature)) == 2


def congruence_lattice_is_closed(congs: Sequence[Partition]) -> bool:
    """True iff pairwise meets and joins stay within ``congs``."""
    members = set(congs)
    return all(p.meet(q) in members and p.join(q) in members for p in congs for q in congs)
