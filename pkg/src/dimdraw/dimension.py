"""Order dimension via Ferrers-relation covers of the non-incidence cells.

A relation F on G x M is Ferrers when its rows, read as attribute sets,
are totally ordered by inclusion (a staircase).  The minimum number of
Ferrers relations whose union is the complement of the incidence
relation equals the order dimension of the concept lattice, and the
complement of each part is a Ferrers superset of the incidence whose
concept lattice is a chain; ranking concepts along those chains yields
the linear extensions of a realizer.

Deciding dimension >= 3 is NP-complete, so the cover search is exact
branch-and-bound with an explicit time budget; running out of budget is
an *undecided* outcome, never reported as a dimension.

Search order (this fixes the deterministic "first witness" contract):
non-incident cells are indexed row-major; the branching variable is the
uncovered cell with the fewest admissible parts, lowest index on ties;
parts are tried in ascending index, and while several parts are still
empty only the lowest-indexed empty one is branched on.  On success each
part is grown into a maximal staircase by scanning cells in row-major
order, so returned parts may overlap.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence, Union

from .context import FormalContext
from .errors import (ContractViolation, DimensionUndecided, OracleCapExceeded,
                     SearchTimeout)
from .lattice import ConceptLattice

Cell = tuple[int, int]

DEFAULT_TIMEOUT_S = 60.0
DEFAULT_ORACLE_ELEMENT_CAP = 10
DEFAULT_ORACLE_EXTENSION_CAP = 100_000


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _cell_rows(n_objects: int, n_attributes: int,
               cells: Iterable[Cell]) -> list[int]:
    rows = [0] * n_objects
    for g, m in cells:
        if not (0 <= g < n_objects and 0 <= m < n_attributes):
            raise ValueError(f"cell ({g}, {m}) out of range")
        rows[g] |= 1 << m
    return rows


def is_ferrers(n_objects: int, n_attributes: int, cells: Iterable[Cell]) -> bool:
    """Whether the cell set is a Ferrers relation.

    Tested here through the staircase characterization: the row sets must
    form a chain under inclusion.  (Equivalently: (g,m) and (h,n) present
    imply (g,n) or (h,m) present; the test suite cross-checks the two.)
    """
    rows = _cell_rows(n_objects, n_attributes, cells)
    distinct = sorted(set(rows), key=lambda r: (bin(r).count("1"), r))
    for small, big in zip(distinct, distinct[1:]):
        if small & ~big:
            return False
    return True


def complement(n_objects: int, n_attributes: int,
               cells: Iterable[Cell]) -> frozenset[Cell]:
    """All cells of G x M not in the given set."""
    rows = _cell_rows(n_objects, n_attributes, cells)
    full = (1 << n_attributes) - 1
    return frozenset((g, m)
                     for g in range(n_objects)
                     for m in _bits(full & ~rows[g]))


@dataclass(frozen=True)
class FerrersCover:
    """Ferrers relations whose union is the non-incidence cell set."""

    parts: tuple[frozenset[Cell], ...]

    @property
    def k(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class LinearExtension:
    """A total order on concept indices; ``order[rank]`` lists bottom first."""

    order: tuple[int, ...]
    pos: tuple[int, ...]

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise ValueError("extension is not a permutation of 0..n-1")
        if any(self.pos[c] != r for r, c in enumerate(self.order)):
            raise ValueError("pos is inconsistent with order")

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "LinearExtension":
        order = tuple(order)
        pos = [0] * len(order)
        for rank, c in enumerate(order):
            pos[c] = rank
        return cls(order=order, pos=tuple(pos))


@dataclass(frozen=True)
class Realizer:
    """Linear extensions whose intersection is the lattice order."""

    extensions: tuple[LinearExtension, ...]

    @property
    def dim(self) -> int:
        return len(self.extensions)


class DimensionResult(NamedTuple):
    dim: int
    cover: FerrersCover


class _CoverSearch:
    """Exact assignment of non-incident cells to k staircase parts.

    A part is kept *feasible*: extendable to a Ferrers relation inside
    the non-incidence set.  Feasibility of a row-mask set S holds iff the
    "must sit strictly above" digraph on nonempty rows is acyclic, where
    row b must sit strictly above row a whenever S_b is not contained in
    the non-incidence row of a.  (Placing rows bottom-up, each row's
    staircase entry is the union of the part rows at or below it, which
    fits iff every such row individually fits.)
    """

    def __init__(self, non_rows: Sequence[int], inc_rows: Sequence[int],
                 k: int, deadline: float | None):
        self.n_g = len(non_rows)
        self.R = tuple(non_rows)
        self.k = k
        self.deadline = deadline
        self.cells: list[Cell] = [(g, m) for g in range(self.n_g)
                                  for m in _bits(non_rows[g])]
        self.n_cells = len(self.cells)

        # cells that can never share a part: both opposite corners incident
        self.conflicts = [0] * self.n_cells
        for a, (g, m) in enumerate(self.cells):
            for b, (h, n) in enumerate(self.cells):
                if g != h and m != n and inc_rows[g] >> n & 1 and inc_rows[h] >> m & 1:
                    self.conflicts[a] |= 1 << b

        self.part_rows = [[0] * self.n_g for _ in range(k)]
        self.part_cells = [0] * k
        self.adm = [(1 << k) - 1] * self.n_cells
        self.uncovered = (1 << self.n_cells) - 1
        self.n_used = 0
        self.nodes = 0

    def extendable(self, rows: Sequence[int], g0: int, m0: int) -> bool:
        add = 1 << m0
        active = [(g, rows[g] | (add if g == g0 else 0))
                  for g in range(self.n_g)
                  if rows[g] or g == g0]
        na = len(active)
        if na <= 1:
            return True
        out = [0] * na
        indeg = [0] * na
        for u in range(na):
            allowed = self.R[active[u][0]]
            for v in range(na):
                if u != v and active[v][1] & ~allowed:
                    out[u] |= 1 << v
                    indeg[v] += 1
        ready = [v for v in range(na) if indeg[v] == 0]
        seen = 0
        while ready:
            u = ready.pop()
            seen += 1
            for v in _bits(out[u]):
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
        return seen == na

    def _assign(self, c: int, j: int):
        g, m = self.cells[c]
        opened = j == self.n_used
        if opened:
            self.n_used += 1
        self.part_rows[j][g] |= 1 << m
        self.part_cells[j] |= 1 << c
        self.uncovered &= ~(1 << c)
        jbit = 1 << j
        cleared = []
        rows = self.part_rows[j]
        for c2 in _bits(self.uncovered):
            if self.adm[c2] & jbit:
                g2, m2 = self.cells[c2]
                if (self.conflicts[c2] & self.part_cells[j]
                        or not self.extendable(rows, g2, m2)):
                    self.adm[c2] &= ~jbit
                    cleared.append(c2)
        return c, j, opened, cleared, jbit

    def _undo(self, trail) -> None:
        c, j, opened, cleared, jbit = trail
        g, m = self.cells[c]
        self.part_rows[j][g] &= ~(1 << m)
        self.part_cells[j] &= ~(1 << c)
        self.uncovered |= 1 << c
        for c2 in cleared:
            self.adm[c2] |= jbit
        if opened:
            self.n_used -= 1

    def _dfs(self) -> bool:
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchTimeout("Ferrers cover search ran out of budget")
        if self.uncovered == 0:
            return True

        used_mask = (1 << self.n_used) - 1
        open_extra = 1 if self.n_used < self.k else 0
        best_c = -1
        best_count = self.k + 1
        for c in _bits(self.uncovered):
            count = bin(self.adm[c] & used_mask).count("1") + open_extra
            if count == 0:
                return False
            if count < best_count:
                best_count = count
                best_c = c

        options = self.adm[best_c] & used_mask
        if open_extra:
            options |= 1 << self.n_used
        for j in _bits(options):
            trail = self._assign(best_c, j)
            if self._dfs():
                return True
            self._undo(trail)
        return False

    def maximalize(self, rows: list[int]) -> None:
        for g, m in self.cells:
            if rows[g] >> m & 1:
                continue
            if self.extendable(rows, g, m):
                rows[g] |= 1 << m

    def run(self) -> list[list[int]] | None:
        if self.n_cells and not self._dfs():
            return None
        return self.part_rows


def _check_cover(ctx: FormalContext, cover: FerrersCover) -> None:
    """Invariants asserted on every successful search exit."""
    n_g, n_m = ctx.n_objects, ctx.n_attributes
    union: set[Cell] = set()
    for part in cover.parts:
        if part & ctx.incidence:
            raise ContractViolation("cover part overlaps the incidence relation")
        if not is_ferrers(n_g, n_m, part):
            raise ContractViolation("cover part is not a Ferrers relation")
        union |= part
    non_incidence = {(g, m) for g in range(n_g) for m in range(n_m)
                     if (g, m) not in ctx.incidence}
    if union != non_incidence:
        raise ContractViolation("cover union differs from the non-incidence cells")


def ferrers_cover(ctx: FormalContext, k: int, *,
                  timeout: float | None = DEFAULT_TIMEOUT_S) -> FerrersCover | None:
    """Exact search for k Ferrers relations covering all non-incident cells.

    Returns the first witness under the documented search order, or None
    when no k-part cover exists (a completed search, not a heuristic).
    Raises SearchTimeout when the budget runs out before either outcome.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    inc_rows = ctx.object_rows()
    full = (1 << ctx.n_attributes) - 1
    non_rows = [full & ~r for r in inc_rows]
    deadline = None if timeout is None else time.monotonic() + timeout
    search = _CoverSearch(non_rows, inc_rows, k, deadline)
    result = search.run()
    if result is None:
        return None
    for rows in result:
        search.maximalize(rows)
    parts = tuple(
        frozenset((g, m) for g in range(ctx.n_objects) for m in _bits(rows[g]))
        for rows in result)
    cover = FerrersCover(parts)
    _check_cover(ctx, cover)
    return cover


def order_dimension(ctx: FormalContext, *,
                    timeout_per_k: float | None = DEFAULT_TIMEOUT_S,
                    max_k: int | None = None) -> DimensionResult:
    """Smallest k admitting a Ferrers cover, with the witness cover.

    k starts at 1 when the incidence relation is itself Ferrers (the
    lattice is a chain) and at 2 otherwise, and increases by one.  An
    exhausted budget raises DimensionUndecided carrying the proven lower
    bound; it is never misreported as an answer.
    """
    inc_rows = ctx.object_rows()
    full = (1 << ctx.n_attributes) - 1
    n_non = sum(bin(full & ~r).count("1") for r in inc_rows)
    lower = 1 if is_ferrers(ctx.n_objects, ctx.n_attributes, ctx.incidence) else 2
    hard_cap = max(1, n_non)
    limit = hard_cap if max_k is None else min(max_k, hard_cap)
    for k in range(lower, limit + 1):
        try:
            cover = ferrers_cover(ctx, k, timeout=timeout_per_k)
        except SearchTimeout:
            raise DimensionUndecided(k, f"search budget exhausted at k = {k}") \
                from None
        if cover is not None:
            return DimensionResult(k, cover)
    raise DimensionUndecided(max(lower, limit + 1), f"max-k {limit} exhausted")


def linear_extension_from_ferrers(ctx: FormalContext, part: Iterable[Cell],
                                  lattice: ConceptLattice) -> LinearExtension:
    """Linear extension induced by one Ferrers part of a cover.

    The complement J = (G x M) \\ F is a Ferrers relation containing the
    incidence, so its concept lattice is a chain.  Each concept maps to
    its closure under J; ranking along the chain and breaking ties by
    canonical concept index (ascending, which is itself order-compatible)
    yields a linear extension of the lattice order.
    """
    n_g, n_m = ctx.n_objects, ctx.n_attributes
    part = frozenset(part)
    part_rows = _cell_rows(n_g, n_m, part)
    if part & ctx.incidence:
        raise ContractViolation(
            "part overlaps the incidence relation; its complement cannot "
            "contain the incidence")
    if not is_ferrers(n_g, n_m, part):
        raise ContractViolation("part is not a Ferrers relation")

    full_m = (1 << n_m) - 1
    j_rows = [full_m & ~r for r in part_rows]

    def chain_extent(extent_mask: int) -> int:
        intent = full_m
        for g in _bits(extent_mask):
            intent &= j_rows[g]
        ext = 0
        for g in range(n_g):
            if intent & ~j_rows[g] == 0:
                ext |= 1 << g
        return ext

    mapped = [chain_extent(c.extent_mask) for c in lattice.concepts]
    levels = sorted(set(mapped))
    for small, big in zip(levels, levels[1:]):
        if small & ~big:
            raise ContractViolation("chain closure produced incomparable levels")
    rank = {ext: r for r, ext in enumerate(levels)}
    order = sorted(range(lattice.n), key=lambda c: (rank[mapped[c]], c))
    return LinearExtension.from_order(order)


def verify_realizer(lattice: ConceptLattice, r: Realizer) -> bool:
    """True iff the extensions' intersection is exactly the lattice order."""
    n = lattice.n
    if not r.extensions:
        return False
    if any(len(ext.order) != n for ext in r.extensions):
        return False
    inter = [(1 << n) - 1] * n
    for ext in r.extensions:
        suffix = 0
        up = [0] * n
        for rank in range(n - 1, -1, -1):
            suffix |= 1 << ext.order[rank]
            up[ext.order[rank]] = suffix
        for i in range(n):
            inter[i] &= up[i]
    return tuple(inter) == lattice.up_masks


def realizer_from_cover(ctx: FormalContext, lattice: ConceptLattice,
                        cover: FerrersCover) -> Realizer:
    """One linear extension per cover part, verified before returning."""
    exts = tuple(linear_extension_from_ferrers(ctx, part, lattice)
                 for part in cover.parts)
    result = Realizer(exts)
    if not verify_realizer(lattice, result):
        raise ContractViolation("cover-induced extensions do not realize the order")
    return result


def realizer(ctx: FormalContext, lattice: ConceptLattice, *,
             timeout_per_k: float | None = DEFAULT_TIMEOUT_S,
             max_k: int | None = None) -> Realizer:
    """Minimal realizer of the lattice order, via a minimal Ferrers cover."""
    result = order_dimension(ctx, timeout_per_k=timeout_per_k, max_k=max_k)
    return realizer_from_cover(ctx, lattice, result.cover)


def _all_linear_extensions(up_masks: Sequence[int], cap: int) -> list[tuple[int, ...]]:
    n = len(up_masks)
    down = [0] * n
    for i in range(n):
        for j in _bits(up_masks[i] & ~(1 << i)):
            down[j] |= 1 << i
    out: list[tuple[int, ...]] = []
    order: list[int] = []

    def rec(placed: int) -> None:
        if len(order) == n:
            out.append(tuple(order))
            if len(out) > cap:
                raise OracleCapExceeded(
                    f"more than {cap} linear extensions; the brute-force "
                    "oracle refuses this order")
            return
        for v in range(n):
            if placed >> v & 1 or down[v] & ~placed:
                continue
            order.append(v)
            rec(placed | (1 << v))
            order.pop()

    rec(0)
    return out


def brute_force_dimension(order: Union[ConceptLattice, Sequence[int]], *,
                          max_elements: int = DEFAULT_ORACLE_ELEMENT_CAP,
                          max_extensions: int = DEFAULT_ORACLE_EXTENSION_CAP) -> int:
    """Exact dimension by exhausting linear-extension subsets.

    Independent of the Ferrers machinery by construction: enumerates all
    linear extensions of the order and finds the smallest subset whose
    intersection is the order.  Accepts a ConceptLattice or raw up-set
    bitmasks, so it also serves arbitrary finite orders.
    """
    up = tuple(order.up_masks) if isinstance(order, ConceptLattice) else tuple(order)
    n = len(up)
    if n == 0:
        raise ValueError("order must have at least one element")
    if n > max_elements:
        raise OracleCapExceeded(
            f"{n} elements exceed the oracle cap of {max_elements}")
    extensions = _all_linear_extensions(up, max_extensions)

    ext_up: list[tuple[int, ...]] = []
    for ext in extensions:
        suffix = 0
        masks = [0] * n
        for rank in range(n - 1, -1, -1):
            suffix |= 1 << ext[rank]
            masks[ext[rank]] = suffix
        ext_up.append(tuple(masks))

    target = up
    for size in range(1, len(extensions) + 1):
        for combo in combinations(range(len(extensions)), size):
            ok = True
            for i in range(n):
                acc = (1 << n) - 1
                for e in combo:
                    acc &= ext_up[e][i]
                if acc != target[i]:
                    ok = False
                    break
            if ok:
                return size
    raise ContractViolation("intersection of all extensions missed the order")


def realizer_permutations(ctx: FormalContext, lattice: ConceptLattice,
                          real: Realizer) -> dict:
    """Realizer as JSON-ready permutations, by concept index and by
    intent labels (attribute names, in input order)."""
    by_intent = []
    for ext in real.extensions:
        chain = []
        for c in ext.order:
            intent = lattice.concepts[c].intent
            chain.append([ctx.attributes[m] for m in sorted(intent)])
        by_intent.append(chain)
    return {
        "by_index": [list(ext.order) for ext in real.extensions],
        "by_intent": by_intent,
    }


def certificate_json(ctx: FormalContext, lattice: ConceptLattice,
                     dim: int, cover: FerrersCover, real: Realizer) -> str:
    """Dimension certificate: d, the cells of each part, and the realizer
    permutations both by concept index and by intent labels."""
    doc = {
        "dimension": dim,
        "ferrers_parts": [
            [[g, m] for g, m in sorted(part)] for part in cover.parts
        ],
        "realizer": realizer_permutations(ctx, lattice, real),
    }
    return json.dumps(doc, indent=2) + "\n"
