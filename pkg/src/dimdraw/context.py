"""Formal-context input and output.

Two text formats are supported.  The Burmeister ``.cxt`` dialect accepted
here is, line by line::

    B
    <blank>
    <number of objects>
    <number of attributes>
    <one object name per line>
    <one attribute name per line>
    <one row per object, one character per attribute: 'X' or '.'>

CSV cross tables use a comma separator with no quoting, so names must not
contain commas (documented limitation).  The header row lists the
attributes (its first cell is ignored); every other row starts with the
object name.  ``X``, ``x`` and ``1`` mark an incident cell; an empty
cell, ``0`` or ``.`` a non-incident one.

Arbitrary finite posets enter the pipeline through ``poset_to_context``,
which encodes an order (X, <=) as the context (X, X, <=).  The concept
lattice of that context is the Dedekind-MacNeille completion of the
poset, and completion preserves the order dimension, so the rest of the
pipeline applies unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CycleError, ParseError

_CSV_INCIDENT = frozenset({"X", "x", "1"})
_CSV_EMPTY = frozenset({"", "0", "."})


def _check_names(names: tuple[str, ...], kind: str) -> None:
    seen = set()
    for name in names:
        if "\n" in name or "\r" in name:
            raise ValueError(f"{kind} name {name!r} contains a line break")
        if name in seen:
            raise ValueError(f"duplicate {kind} name {name!r}")
        seen.add(name)


@dataclass(frozen=True)
class FormalContext:
    """A cross table: objects, attributes, and their incidence pairs.

    Incidence cells are (object-index, attribute-index) pairs.  Names are
    opaque strings; all computation downstream runs on the dense indices,
    in input order.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "incidence", frozenset(self.incidence))
        _check_names(self.objects, "object")
        _check_names(self.attributes, "attribute")
        for g, m in self.incidence:
            if not (0 <= g < len(self.objects) and 0 <= m < len(self.attributes)):
                raise ValueError(f"incidence cell ({g}, {m}) out of range")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    def object_rows(self) -> tuple[int, ...]:
        """Per-object bitmask over attribute indices."""
        rows = [0] * len(self.objects)
        for g, m in self.incidence:
            rows[g] |= 1 << m
        return tuple(rows)

    def attribute_cols(self) -> tuple[int, ...]:
        """Per-attribute bitmask over object indices."""
        cols = [0] * len(self.attributes)
        for g, m in self.incidence:
            cols[m] |= 1 << g
        return tuple(cols)


@dataclass(frozen=True)
class PosetInput:
    """A finite order given by element names and a set of (x, y) pairs, x <= y.

    Acyclicity of the reflexive-transitive closure is checked by
    ``poset_to_context``, which is the only consumer.
    """

    elements: tuple[str, ...]
    relation: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "relation", frozenset(self.relation))
        _check_names(self.elements, "element")
        known = set(self.elements)
        for x, y in self.relation:
            if x not in known or y not in known:
                raise ValueError(f"relation pair ({x!r}, {y!r}) names unknown element")


def _strip_cr(lines: list[str]) -> list[str]:
    return [ln[:-1] if ln.endswith("\r") else ln for ln in lines]


def _parse_count(raw: str, line: int, what: str) -> int:
    try:
        value = int(raw.strip())
    except ValueError:
        raise ParseError(f"malformed {what}: {raw!r}", line=line) from None
    if value < 0:
        raise ParseError(f"negative {what}: {value}", line=line)
    return value


def parse_cxt(text: str) -> FormalContext:
    """Parse Burmeister ``.cxt`` text into a context.

    Raises ParseError (with a 1-based line number) on a malformed header,
    a count mismatch, a row length mismatch, an illegal row character, or
    a duplicate name.
    """
    lines = _strip_cr(text.split("\n"))

    def need(i: int, what: str) -> str:
        if i >= len(lines):
            raise ParseError(f"unexpected end of input, expected {what}",
                             line=len(lines) + 1)
        return lines[i]

    if need(0, "header 'B'").strip() != "B":
        raise ParseError("malformed header, expected 'B'", line=1)
    if need(1, "blank line").strip() != "":
        raise ParseError("malformed header, expected blank line after 'B'", line=2)
    n_objects = _parse_count(need(2, "object count"), 3, "object count")
    n_attributes = _parse_count(need(3, "attribute count"), 4, "attribute count")

    base = 4
    objects: list[str] = []
    seen: dict[str, int] = {}
    for i in range(n_objects):
        name = need(base + i, "object name")
        if name in seen:
            raise ParseError(f"duplicate object name {name!r}", line=base + i + 1)
        seen[name] = i
        objects.append(name)

    base += n_objects
    attributes: list[str] = []
    seen = {}
    for i in range(n_attributes):
        name = need(base + i, "attribute name")
        if name in seen:
            raise ParseError(f"duplicate attribute name {name!r}", line=base + i + 1)
        seen[name] = i
        attributes.append(name)

    base += n_attributes
    incidence: set[tuple[int, int]] = set()
    for g in range(n_objects):
        row = need(base + g, "incidence row")
        lineno = base + g + 1
        if len(row) != n_attributes:
            raise ParseError(
                f"row length mismatch: expected {n_attributes} cells, got {len(row)}",
                line=lineno)
        for m, ch in enumerate(row):
            if ch == "X":
                incidence.add((g, m))
            elif ch != ".":
                raise ParseError(f"illegal character {ch!r} in row", line=lineno)

    for extra in range(base + n_objects, len(lines)):
        if lines[extra].strip():
            raise ParseError("unexpected trailing content", line=extra + 1)

    return FormalContext(tuple(objects), tuple(attributes), frozenset(incidence))


def write_cxt(ctx: FormalContext) -> str:
    """Serialize a context; ``parse_cxt(write_cxt(ctx)) == ctx``."""
    out = ["B", "", str(ctx.n_objects), str(ctx.n_attributes)]
    out.extend(ctx.objects)
    out.extend(ctx.attributes)
    rows = ctx.object_rows()
    for g in range(ctx.n_objects):
        out.append("".join(
            "X" if rows[g] >> m & 1 else "." for m in range(ctx.n_attributes)))
    return "\n".join(out) + "\n"


def parse_csv(text: str) -> FormalContext:
    """Parse a CSV cross table (see module docstring for the dialect)."""
    lines = _strip_cr(text.split("\n"))
    while lines and lines[-1].strip() == "":
        lines.pop()
    if not lines:
        raise ParseError("empty CSV input", line=1)

    header = [cell.strip() for cell in lines[0].split(",")]
    attributes = header[1:]
    seen: set[str] = set()
    for name in attributes:
        if name in seen:
            raise ParseError(f"duplicate attribute name {name!r}", line=1)
        seen.add(name)

    n_cols = len(header)
    objects: list[str] = []
    incidence: set[tuple[int, int]] = set()
    seen = set()
    for lineno, raw in enumerate(lines[1:], start=2):
        cells = [cell.strip() for cell in raw.split(",")]
        if len(cells) != n_cols:
            raise ParseError(
                f"ragged row: expected {n_cols} cells, got {len(cells)}", line=lineno)
        name = cells[0]
        if name in seen:
            raise ParseError(f"duplicate object name {name!r}", line=lineno)
        seen.add(name)
        g = len(objects)
        objects.append(name)
        for m, cell in enumerate(cells[1:]):
            if cell in _CSV_INCIDENT:
                incidence.add((g, m))
            elif cell not in _CSV_EMPTY:
                raise ParseError(f"unrecognized cell value {cell!r}", line=lineno)

    return FormalContext(tuple(objects), tuple(attributes), frozenset(incidence))


def _closure_masks(n: int, direct: list[int]) -> list[int]:
    """Reflexive-transitive closure of a successor-mask adjacency."""
    reach = [direct[i] | (1 << i) for i in range(n)]
    for k in range(n):
        kbit = 1 << k
        for i in range(n):
            if reach[i] & kbit:
                reach[i] |= reach[k]
    return reach


def _cycle_path(p: PosetInput, idx: dict[str, int], a: int, b: int) -> list[str]:
    """A closed witness path a -> ... -> b -> ... -> a along direct pairs."""
    succ: dict[int, list[int]] = {i: [] for i in range(len(p.elements))}
    for x, y in sorted(p.relation):
        succ[idx[x]].append(idx[y])

    def bfs(src: int, dst: int) -> list[int]:
        parent = {src: -1}
        queue = [src]
        while queue:
            cur = queue.pop(0)
            if cur == dst:
                path = [cur]
                while parent[path[-1]] != -1:
                    path.append(parent[path[-1]])
                return path[::-1]
            for nxt in succ[cur]:
                if nxt not in parent:
                    parent[nxt] = cur
                    queue.append(nxt)
        raise AssertionError("witness path must exist")

    forward = bfs(a, b)
    back = bfs(b, a)
    names = [p.elements[i] for i in forward + back[1:]]
    return names


def poset_to_context(p: PosetInput) -> FormalContext:
    """Encode a poset as the context (X, X, <=) of its completion.

    Raises CycleError, naming a closed witness path, when the
    reflexive-transitive closure of the input pairs is not antisymmetric.
    """
    n = len(p.elements)
    idx = {name: i for i, name in enumerate(p.elements)}
    direct = [0] * n
    for x, y in p.relation:
        direct[idx[x]] |= 1 << idx[y]
    reach = _closure_masks(n, direct)

    for i in range(n):
        for j in range(i + 1, n):
            if reach[i] >> j & 1 and reach[j] >> i & 1:
                raise CycleError(_cycle_path(p, idx, i, j))

    incidence = {(i, j) for i in range(n) for j in range(n) if reach[i] >> j & 1}
    return FormalContext(p.elements, p.elements, frozenset(incidence))
