"""Chains, duals, ordinal sums, symmetric extensions, products and the named catalog."""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Mapping

import numpy as np

from .algebra import (
    BROUWER,
    DIAMOND,
    INV,
    FiniteAlgebra,
    Signature,
    trivial_brouwer_extension,
    trivial_brouwer_table,
)
from .errors import MalformedAlgebra, PreconditionFailed, SignatureMismatch, UnknownName


def _chain_labels(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    inner = n - 2
    low = list(string.ascii_lowercase[: inner // 2])
    middle = [string.ascii_lowercase[inner // 2]] if inner % 2 else []
    return ["0", *low, *middle, *[x + "'" for x in reversed(low)], "1"]


def chain(n: int, name: str | None = None) -> FiniteAlgebra:
    """The ``n``-element chain with ``i' = n-1-i`` and the trivial Brouwer complement."""
    if n < 1:
        raise ValueError("a chain needs at least one element")
    leq = np.triu(np.ones((n, n), dtype=bool))
    inv = [n - 1 - i for i in range(n)]
    brouwer = [n - 1 if i == 0 else 0 for i in range(n)]
    return FiniteAlgebra(name or f"D{n}", _chain_labels(n), leq, {INV: inv, BROUWER: brouwer}, Signature.BZ)


def dual(A: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Order-dual lattice listed in reverse, so its bottom comes first; unary operations are dropped."""
    rev = slice(None, None, -1)
    return FiniteAlgebra(name or f"{A.name}^d", A.labels[rev], A.leq.T[rev, rev], {}, Signature.LAT)


def _stack(parts: list[tuple[str, FiniteAlgebra, bool, bool]]) -> tuple[list[str], np.ndarray, list[list[int]]]:
    """Stack lattices bottom to top, gluing consecutive top/bottom elements.

    Each part is ``(prefix, algebra, drop_bottom, drop_top)``; dropped elements
    are identified with the neighbouring part's glue point.  Returns the
    labels, the order, and for each part the global index of each local element.
    """
    labels: list[str] = []
    positions: list[list[int]] = []
    levels: list[int] = []
    for level, (prefix, alg, drop_bottom, drop_top) in enumerate(parts):
        pos = []
        for x in range(alg.n):
            if drop_bottom and x == alg._bottom:
                prev = parts[level - 1][1]
                pos.append(positions[-1][prev._top])
            elif drop_top and x == alg._top:
                pos.append(-1)  # patched once the next part is placed
            else:
                pos.append(len(labels))
                labels.append(f"{prefix}:{alg.label(x)}")
                levels.append(level)
        if level and parts[level - 1][3]:
            positions[-1][parts[level - 1][1]._top] = pos[alg._bottom]
        positions.append(pos)
    n = len(labels)
    leq = np.zeros((n, n), dtype=bool)
    for level, (_, alg, _, _) in enumerate(parts):
        pos = positions[level]
        for x in range(alg.n):
            for y in range(alg.n):
                if alg.le(x, y):
                    leq[pos[x], pos[y]] = True
    lv = np.array(levels)
    leq |= lv[:, None] < lv[None, :]
    return labels, leq, positions


def ordinal_sum(L: FiniteAlgebra, M: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """``L`` with ``M`` stacked on top, top of ``L`` glued to bottom of ``M``."""
    labels, leq, _ = _stack([("L", L, False, True), ("M", M, False, False)])
    return FiniteAlgebra(name or f"{L.name}+{M.name}", labels, leq, {}, Signature.LAT)


def symmetric_extension(L: FiniteAlgebra, K: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """``L + K + L^d`` as a bounded involution lattice.

    The involution swaps each ``L:x`` with its mirror ``Ld:x`` and restricts to
    the involution of ``K`` in the middle.
    """
    if L.n < 2:
        raise PreconditionFailed(f"{L.name} is trivial; the outer lattice must be nontrivial")
    k_inv = K.table(INV)
    Ld = dual(L)
    labels, leq, (pl, pk, pd) = _stack([("L", L, False, True), ("K", K, False, False), ("Ld", Ld, True, False)])
    inv = [-1] * len(labels)
    mirror = {lab: i for i, lab in enumerate(Ld.labels)}
    for x in range(L.n):
        if x != L._top:
            y = pd[mirror[L.label(x)]]
            inv[pl[x]], inv[y] = y, pl[x]
    for x in range(K.n):
        inv[pk[x]] = pk[int(k_inv[x])]
    return FiniteAlgebra(name or f"{L.name}+{K.name}+{L.name}^d", labels, leq, {INV: inv}, Signature.BI)


def direct_product(A: FiniteAlgebra, B: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Componentwise product; labels are ``(l,r)``."""
    if A.signature is not B.signature:
        raise SignatureMismatch(f"{A.name} is {A.signature.value} but {B.name} is {B.signature.value}")
    pairs = [(a, b) for a in range(A.n) for b in range(B.n)]
    labels = [f"({A.label(a)},{B.label(b)})" for a, b in pairs]
    leq = np.kron(A.leq.astype(np.int8), B.leq.astype(np.int8)).astype(bool)
    unary = {op: [int(A.unary[op][a]) * B.n + int(B.unary[op][b]) for a, b in pairs] for op in A.unary}
    return FiniteAlgebra(name or f"{A.name}x{B.name}", labels, leq, unary, A.signature)


def horizontal_sum_mo(k: int, name: str | None = None) -> FiniteAlgebra:
    """The ortholattice with ``k`` pairs of complementary atoms, ``~`` equal to ``'``."""
    if not 1 <= k <= 26:
        raise ValueError("k must be between 1 and 26")
    letters = string.ascii_lowercase[:k]
    atoms = [lab for x in letters for lab in (x, x + "'")]
    labels = ["0", *atoms, "1"]
    covers = {"0": atoms, **{a: ["1"] for a in atoms}}
    pairs = [("0", "1")] + [(x, x + "'") for x in letters]
    bi = FiniteAlgebra.from_covers(name or f"MO{k}", labels, covers, Signature.BI, inv=pairs)
    return bi.with_op(BROUWER, bi.table(INV), Signature.BZ)


# -- Brouwer completions ----------------------------------------------------------


def brouwer_completions(A: FiniteAlgebra, fixed: Mapping[str, str] | None = None) -> Iterator[list[int]]:
    """Enumerate every Brouwer complement on the BI reduct of ``A`` extending ``fixed``.

    A table qualifies when ``x & x~ = 0``, ``x <= x~~``, ``x~~ = x~'`` and ``~``
    is antitone.  Tables are produced in lexicographic order.
    """
    A.require_bounds()
    inv = A.table(INV)
    n = A.n
    domains = []
    for x in range(n):
        dom = [y for y in range(n) if A.meet(x, y) == A.bottom]
        if fixed and A.label(x) in fixed:
            want = A.index(fixed[A.label(x)])
            dom = [want] if want in dom else []
        domains.append(dom)
    table = [-1] * n

    def consistent(x: int) -> bool:
        y = table[x]
        for z in range(n):
            t = table[z]
            if t < 0:
                continue
            if A.le(x, z) and not A.le(t, y):
                return False
            if A.le(z, x) and not A.le(y, t):
                return False
            # x~~ = x~' and x <= x~~ whenever both links are known
            if z == y and t != inv[y]:
                return False
            if t == x and y != inv[x]:
                return False
        if table[y] >= 0 and not A.le(x, table[y]):
            return False
        for z in range(n):
            if table[z] == x and not A.le(z, y):
                return False
        return True

    def search(x: int) -> Iterator[list[int]]:
        if x == n:
            yield list(table)
            return
        for y in domains[x]:
            table[x] = y
            if consistent(x):
                yield from search(x + 1)
            table[x] = -1

    yield from search(0)


# -- catalog ------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], FiniteAlgebra]
    provenance: str


def _primes(*names: str) -> list[tuple[str, str]]:
    return [(x, x + "'") for x in names]


def _b6() -> FiniteAlgebra:
    return FiniteAlgebra.from_covers(
        "B6",
        ["0", "a", "b", "b'", "a'", "1"],
        {"0": ["a", "b"], "a": ["b'"], "b": ["a'"], "b'": ["1"], "a'": ["1"]},
        Signature.BI,
        inv=[("0", "1"), *_primes("a", "b")],
    )


def _b6_ol() -> FiniteAlgebra:
    b6 = _b6()
    return b6.with_op(BROUWER, b6.table(INV), Signature.BZ, name="B6-OL")


def _f8() -> FiniteAlgebra:
    bi = FiniteAlgebra.from_covers(
        "F8",
        ["0", "c", "a", "b", "b'", "a'", "c'", "1"],
        {"0": ["c"], "c": ["a", "b"], "a": ["b'"], "b": ["a'"], "b'": ["c'"], "a'": ["c'"], "c'": ["1"]},
        Signature.BI,
        inv=[("0", "1"), *_primes("c", "a", "b")],
    )
    return bi.with_op(BROUWER, trivial_brouwer_table(bi), Signature.BZ)


def _m3() -> FiniteAlgebra:
    return FiniteAlgebra.from_covers(
        "M3", ["0", "a", "b", "c", "1"], {"0": ["a", "b", "c"], "a": ["1"], "b": ["1"], "c": ["1"]}, Signature.LAT
    )


def _m3_pk() -> FiniteAlgebra:
    # swapping two atoms and fixing the third keeps x & x' <= y | y'
    m3 = _m3()
    inv = [m3.index(v) for v in ("1", "b", "a", "c", "0")]
    return FiniteAlgebra("M3-PK", m3.labels, m3.leq, {INV: inv}, Signature.BI)


def _mirror_labels(A: FiniteAlgebra, middle: Mapping[str, str]) -> list[str]:
    """Readable labels for a symmetric extension: ``L:x`` -> ``x``, ``Ld:x`` -> ``x'``."""
    out = []
    for lab in A.labels:
        prefix, _, base = lab.partition(":")
        if prefix == "L":
            out.append(base)
        elif prefix == "Ld":
            out.append("1" if base == "0" else base + "'")
        else:
            out.append(middle[base])
    return out


def _aol(name: str, L: FiniteAlgebra, K: FiniteAlgebra, middle: Mapping[str, str]) -> FiniteAlgebra:
    bi = symmetric_extension(L, K)
    return trivial_brouwer_extension(bi.relabel(_mirror_labels(bi, middle)), name=name)


def _m3_m3() -> FiniteAlgebra:
    return _aol("M3+M3", _m3(), chain(1).reduct(Signature.BI), {"0": "m"})


def _d2_m3_d2() -> FiniteAlgebra:
    return _aol("D2+M3+D2", chain(2).reduct(Signature.LAT), _m3_pk(), {"0": "a", "a": "b", "b": "b'", "c": "c", "1": "a'"})


def _boolean4_lattice() -> FiniteAlgebra:
    return FiniteAlgebra.from_covers("D2^2", ["0", "a", "b", "1"], {"0": ["a", "b"], "a": ["1"], "b": ["1"]}, Signature.LAT)


def _d22_d22() -> FiniteAlgebra:
    return _aol("D2^2+D2^2", _boolean4_lattice(), chain(1).reduct(Signature.BI), {"0": "c"})


H_LABELS = ["0", "d", "e", "f", "g", "a", "b", "c", "b'", "a'", "d'", "e'", "f'", "g'", "1"]
H_COVERS = {
    "0": ["d", "e", "f", "g"],
    "d": ["a", "c"],
    "e": ["b", "c"],
    "f": ["b'", "c"],
    "g": ["a'", "c"],
    "a": ["g'"],
    "b": ["f'"],
    "b'": ["e'"],
    "a'": ["d'"],
    "c": ["d'", "e'", "f'", "g'"],
    "d'": ["1"],
    "e'": ["1"],
    "f'": ["1"],
    "g'": ["1"],
}
H_KNOWN_BROUWER = {"d": "a'", "e": "b'", "f": "b", "g": "a"}
H_BROUWER = {
    **H_KNOWN_BROUWER,
    "0": "1",
    "1": "0",
    "a": "a'",
    "b": "b'",
    "b'": "b",
    "a'": "a",
    "c": "0",
    "d'": "0",
    "e'": "0",
    "f'": "0",
    "g'": "0",
}


def h_involution_lattice() -> FiniteAlgebra:
    return FiniteAlgebra.from_covers(
        "H", H_LABELS, H_COVERS, Signature.BI, inv=[("0", "1"), ("c", "c"), *_primes("d", "e", "f", "g", "a", "b")]
    )


def h_brouwer_completions() -> list[list[int]]:
    return list(brouwer_completions(h_involution_lattice(), H_KNOWN_BROUWER))


def _h() -> FiniteAlgebra:
    bi = h_involution_lattice()
    found = h_brouwer_completions()
    frozen = [bi.index(H_BROUWER[lab]) for lab in bi.labels]
    if found != [frozen]:
        raise MalformedAlgebra(f"H: expected exactly the frozen Brouwer table, search found {len(found)} completion(s)")
    return bi.with_op(BROUWER, frozen, Signature.BZ)


def _algebra_a() -> FiniteAlgebra:
    bi = FiniteAlgebra.from_covers(
        "A",
        ["0", "c", "a", "e", "b", "d", "a'", "d'", "b'", "e'", "c'", "1"],
        {
            "0": ["c"],
            "c": ["a", "e", "b"],
            "e": ["d", "b'"],
            "b": ["d", "e'"],
            "d": ["a'"],
            "a": ["d'"],
            "d'": ["e'", "b'"],
            "b'": ["c'"],
            "e'": ["c'"],
            "a'": ["c'"],
            "c'": ["1"],
        },
        Signature.BI,
        inv=[("0", "1"), *_primes("a", "b", "c", "d", "e")],
    )
    return trivial_brouwer_extension(bi)


def _bz4() -> FiniteAlgebra:
    bi = FiniteAlgebra.from_covers(
        "BZ4", ["0", "a", "a'", "1"], {"0": ["a", "a'"], "a": ["1"], "a'": ["1"]}, Signature.BI, inv=[("0", "1"), ("a", "a'")]
    )
    return bi.with_op(BROUWER, trivial_brouwer_table(bi), Signature.BZ)


def _b4_dm() -> FiniteAlgebra:
    return FiniteAlgebra.from_covers(
        "B4-DM", ["0", "a", "b", "1"], {"0": ["a", "b"], "a": ["1"], "b": ["1"]}, Signature.BI, inv=[("0", "1"), ("a", "a"), ("b", "b")]
    )


def _modal(name: str, base: FiniteAlgebra, diamond: Mapping[str, str]) -> FiniteAlgebra:
    bi = base.reduct(Signature.BI)
    return bi.with_op(DIAMOND, [bi.index(diamond[lab]) for lab in bi.labels], Signature.MODAL, name=name)


def _nonzero_to_top(A: FiniteAlgebra) -> dict[str, str]:
    return {lab: ("0" if lab == "0" else "1") for lab in A.labels}


def _boolean4() -> FiniteAlgebra:
    return _bz4().reduct(Signature.BI)


def _menarini(i: int) -> FiniteAlgebra:
    name = f"menarini-{i}"
    if i == 1:
        return _modal(name, chain(2), {"0": "0", "1": "0"})
    if i == 2:
        return _modal(name, chain(3), {"0": "0", "a": "a", "1": "1"})
    if i == 3:
        return _modal(name, _boolean4(), {"0": "0", "a": "a", "a'": "1", "1": "1"})
    if i == 4:
        base = _b4_dm()
    elif i == 5:
        base = _boolean4()
    elif i == 6:
        base = FiniteAlgebra.from_covers(
            "D2+B4+D2",
            ["0", "a", "b", "c", "a'", "1"],
            {"0": ["a"], "a": ["b", "c"], "b": ["a'"], "c": ["a'"], "a'": ["1"]},
            Signature.BI,
            inv=[("0", "1"), ("a", "a'"), ("b", "b"), ("c", "c")],
        )
    elif i == 7:
        base = _d22_d22()
    elif i == 8:
        base = chain(4)
    else:
        raise UnknownName(f"menarini-{i}")
    return _modal(name, base, _nonzero_to_top(base))


_ENTRIES = [
    *[CatalogEntry(f"D{n}", (lambda n=n: chain(n)), "n-element chain with the trivial Brouwer complement") for n in range(1, 6)],
    CatalogEntry("B6", _b6, "benzene ring as a bounded involution lattice"),
    CatalogEntry("B6-OL", _b6_ol, "benzene ring with ~ equal to the involution"),
    CatalogEntry("F8", _f8, "D2 + B6 + D2 with the trivial Brouwer complement"),
    CatalogEntry("MO2", lambda: horizontal_sum_mo(2), "modular ortholattice with two pairs of atoms"),
    CatalogEntry("M3", _m3, "diamond lattice, no involution"),
    CatalogEntry("M3-PK", _m3_pk, "M3 with a pseudo-Kleene involution swapping a and b"),
    CatalogEntry("M3+M3", _m3_m3, "antiortholattice on the ordinal sum of two copies of M3"),
    CatalogEntry("D2+M3+D2", _d2_m3_d2, "antiortholattice D2 + M3 + D2"),
    CatalogEntry("D2^2+D2^2", _d22_d22, "antiortholattice on two stacked Boolean squares"),
    CatalogEntry("H", _h, "PBZ*-lattice H with its Brouwer table completed by search"),
    CatalogEntry("A", _algebra_a, "12-element antiortholattice A as drawn, with the candidate partition theta"),
    CatalogEntry("BZ4", _bz4, "Boolean square with the trivial Brouwer complement"),
    CatalogEntry("B4-DM", _b4_dm, "four-element De Morgan algebra with two fixed points"),
    *[CatalogEntry(f"menarini-{i}", (lambda i=i: _menarini(i)), "modal separating algebra") for i in range(1, 9)],
]
CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


@lru_cache(maxsize=None)
def catalog(name: str) -> FiniteAlgebra:
    """A named algebra from the built-in catalog."""
    try:
        entry = CATALOG[name]
    except KeyError:
        raise UnknownName(f"unknown catalog algebra {name!r}") from None
    return entry.build().renamed(entry.name)


def catalog_names() -> list[str]:
    return list(CATALOG)
