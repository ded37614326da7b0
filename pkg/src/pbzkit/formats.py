"""Line-oriented text format for finite algebras.

::

    algebra F8
    signature BZ
    elements 0 c a b b' a' c' 1
    covers 0: c
    covers c: a b
    invol 0:1 c:c' a:a' b:b'
    brouwer 0:1 *:0

``covers`` lists upper covers and may repeat; the order is their
reflexive-transitive closure.  ``invol`` pairs apply in both directions.
``brouwer`` and ``diamond`` give one ``x:y`` per element, with ``*:y`` as an
explicit default.  ``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path

from .algebra import BROUWER, DIAMOND, INV, FiniteAlgebra, Signature
from .errors import FormatError, SignatureMismatch

_KEYWORDS = ("algebra", "signature", "elements", "covers", "invol", "brouwer", "diamond")


def _split_pair(token: str, labels: set[str], lineno: int, allow_default: bool) -> tuple[str, str]:
    options = []
    for i, ch in enumerate(token):
        if ch != ":":
            continue
        left, right = token[:i], token[i + 1 :]
        if (left in labels or (allow_default and left == "*")) and right in labels:
            options.append((left, right))
    if len(options) != 1:
        what = "unknown labels in" if not options else "ambiguous"
        raise FormatError(f"{what} pair {token!r}", lineno)
    return options[0]


def parse_algebra(text: str, source: str = "<text>") -> FiniteAlgebra:
    name = None
    signature = None
    labels: list[str] | None = None
    covers: dict[str, list[str]] = {}
    tables: dict[str, list[tuple[int, str]]] = {INV: [], BROUWER: [], DIAMOND: []}
    seen_tables: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword not in _KEYWORDS:
            raise FormatError(f"unknown keyword {keyword!r}", lineno)
        if keyword == "algebra":
            name = rest
        elif keyword == "signature":
            try:
                signature = Signature.parse(rest)
            except SignatureMismatch:
                raise FormatError(f"unknown signature {rest!r}", lineno) from None
        elif keyword == "elements":
            labels = rest.split()
            if len(set(labels)) != len(labels):
                raise FormatError("duplicate element labels", lineno)
        else:
            if labels is None:
                raise FormatError(f"'{keyword}' before 'elements'", lineno)
            known = set(labels)
            if keyword == "covers":
                low = next((lab for lab in sorted(known, key=len, reverse=True) if rest.startswith(lab + ":")), None)
                if low is None:
                    raise FormatError(f"cannot read covers line {rest!r}", lineno)
                highs = rest[len(low) + 1 :].split()
                for h in highs:
                    if h not in known:
                        raise FormatError(f"unknown element {h!r}", lineno)
                covers.setdefault(low, []).extend(highs)
            else:
                op = {"invol": INV, "brouwer": BROUWER, "diamond": DIAMOND}[keyword]
                seen_tables.add(op)
                for token in rest.split():
                    tables[op].append((lineno, *_split_pair(token, known, lineno, op != INV)))
    if name is None or signature is None or labels is None:
        raise FormatError(f"{source}: 'algebra', 'signature' and 'elements' are required", 0)
    return _assemble(name, signature, labels, covers, tables, seen_tables)


def _assemble(name, signature, labels, covers, tables, seen_tables) -> FiniteAlgebra:
    wanted = set(signature.unary_ops)
    extra = seen_tables - wanted
    if extra:
        op = sorted(extra)[0]
        raise FormatError(f"signature {signature.value} has no {op} operation", tables[op][0][0])
    missing = wanted - seen_tables
    if missing:
        raise FormatError(f"signature {signature.value} needs a {sorted(missing)[0]} line", 0)
    inv = None
    if INV in wanted:
        pairs = [(x, y) for _, x, y in tables[INV]]
        covered = {v for p in pairs for v in p}
        absent = [lab for lab in labels if lab not in covered]
        if absent:
            raise FormatError(f"involution misses element {absent[0]!r}", tables[INV][0][0] if pairs else 0)
        inv = pairs
    maps = {}
    for op in (BROUWER, DIAMOND):
        if op not in wanted:
            continue
        mapping: dict[str, str] = {}
        default = None
        for lineno, x, y in tables[op]:
            if x == "*":
                default = y
            elif x in mapping:
                raise FormatError(f"{op} given twice for {x!r}", lineno)
            else:
                mapping[x] = y
        for lab in labels:
            if lab not in mapping:
                if default is None:
                    raise FormatError(f"{op} undefined at {lab!r} and no '*:' default", tables[op][-1][0] if tables[op] else 0)
                mapping[lab] = default
        maps[op] = mapping
    A = FiniteAlgebra.from_covers(
        name, labels, covers, signature, inv=inv, brouwer=maps.get(BROUWER), diamond=maps.get(DIAMOND)
    )
    if signature.bounded and (A.bottom != 0 or A.top != A.n - 1):
        raise FormatError("bounded algebras list the bottom first and the top last", 0)
    return A


def format_algebra(A: FiniteAlgebra) -> str:
    lines = [f"algebra {A.name}", f"signature {A.signature.value}", "elements " + " ".join(A.labels)]
    for x in range(A.n):
        ups = A.upper_covers(x)
        if ups:
            lines.append(f"covers {A.label(x)}: " + " ".join(A.label(y) for y in ups))
    if A.has_op(INV):
        inv = A.table(INV)
        pairs = [f"{A.label(x)}:{A.label(int(inv[x]))}" for x in range(A.n) if x <= inv[x]]
        lines.append("invol " + " ".join(pairs))
    for op, word in ((BROUWER, "brouwer"), (DIAMOND, "diamond")):
        if A.has_op(op):
            table = A.table(op)
            lines.append(f"{word} " + " ".join(f"{A.label(x)}:{A.label(int(table[x]))}" for x in range(A.n)))
    return "\n".join(lines) + "\n"


def load_algebra(path: str | Path) -> FiniteAlgebra:
    path = Path(path)
    return parse_algebra(path.read_text(), str(path))


def save_algebra(A: FiniteAlgebra, path: str | Path) -> None:
    Path(path).write_text(format_algebra(A))
