"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's bitmask machinery:
they work from raw definitions (set comprehensions, quantifiers, dense
sampling, parametric line intersection) so that agreement with the
implementation is meaningful evidence.
"""

from __future__ import annotations

import random
from itertools import combinations

from dimdraw import FormalContext

# ---------------------------------------------------------------------------
# The classic 8x9 "living beings and water" demo context: 19 concepts,
# 32 cover edges, order dimension 3.

LIFE_OBJECTS = tuple("12345678")
LIFE_ATTRIBUTES = tuple("abcdefghi")
LIFE_ROWS = (
    "XX....X..",
    "XX....XX.",
    "XXX...XX.",
    "X.X...XXX",
    "XX.X.X...",
    "XXXX.X...",
    "X.XXX....",
    "X.XX.X...",
)

# A known 3-part staircase cover of its non-incident cells, written as
# per-row attribute letters (column a is index 0 ... i is index 8).
_LIFE_PART_1 = ("cefhi", "cei", "ei", "e", "cei", "ei", "", "ei")
_LIFE_PART_2 = ("i", "i", "", "", "ghi", "ghi", "bfghi", "bghi")
_LIFE_PART_3 = ("def", "def", "def", "bdef", "e", "", "", "e")

# A reference realizer of the 19-element lattice, as chains of the
# conventional concept letters (S = bottom ... A = top), and the rank
# vectors they induce.  Reference listings of these coordinates show
# D = (15,16,7), which duplicates E and cannot be a rank vector (each
# axis is a permutation); the fixture pins the value recomputed from
# the chains themselves.
LIFE_CHAIN_1 = "S Q O R P N H L K C M I G F J E B D A".split()
LIFE_CHAIN_2 = "S P O M J H F B R K I D N G Q L E C A".split()
LIFE_CHAIN_3 = "S R Q N I L G E P M K J D O H F C B A".split()
LIFE_LETTER_COORDS = {
    "A": (18, 18, 18), "B": (16, 7, 17), "C": (9, 17, 16), "D": (17, 11, 12),
    "E": (15, 16, 7), "F": (13, 6, 15), "G": (12, 13, 6), "H": (6, 5, 14),
    "I": (11, 10, 4), "J": (14, 4, 11), "K": (8, 9, 10), "L": (7, 15, 5),
    "M": (10, 3, 9), "N": (5, 12, 3), "O": (2, 2, 13), "P": (4, 1, 8),
    "Q": (1, 14, 2), "R": (3, 8, 1), "S": (0, 0, 0),
}


def life_context() -> FormalContext:
    incidence = frozenset(
        (g, m)
        for g, row in enumerate(LIFE_ROWS)
        for m, ch in enumerate(row) if ch == "X")
    return FormalContext(LIFE_OBJECTS, LIFE_ATTRIBUTES, incidence)


def life_cxt_text() -> str:
    lines = ["B", "", "8", "9"]
    lines.extend(LIFE_OBJECTS)
    lines.extend(LIFE_ATTRIBUTES)
    lines.extend(LIFE_ROWS)
    return "\n".join(lines) + "\n"


def life_csv_text() -> str:
    lines = ["name," + ",".join(LIFE_ATTRIBUTES)]
    for name, row in zip(LIFE_OBJECTS, LIFE_ROWS):
        lines.append(name + "," + ",".join(ch if ch == "X" else "" for ch in row))
    return "\n".join(lines) + "\n"


def life_ferrers_parts() -> tuple[frozenset, frozenset, frozenset]:
    parts = []
    for spec_rows in (_LIFE_PART_1, _LIFE_PART_2, _LIFE_PART_3):
        cells = set()
        for g, letters in enumerate(spec_rows):
            for ch in letters:
                cells.add((g, LIFE_ATTRIBUTES.index(ch)))
        parts.append(frozenset(cells))
    return tuple(parts)


# ---------------------------------------------------------------------------
# Other stock contexts and orders.

def contra_nominal(n: int) -> FormalContext:
    """([n], [n], !=): Boolean lattice 2^n, order dimension n."""
    names = tuple(str(i) for i in range(1, n + 1))
    incidence = frozenset((i, j) for i in range(n) for j in range(n) if i != j)
    return FormalContext(names, names, incidence)


def chain_context(n: int) -> FormalContext:
    """Strict n x n staircase; its concept lattice is a chain of n + 1."""
    names = tuple(str(i) for i in range(1, n + 1))
    incidence = frozenset((i, j) for i in range(n) for j in range(n) if j < i)
    return FormalContext(names, tuple("c" + x for x in names), incidence)


def grid_context(n: int) -> FormalContext:
    """Direct sum of two strict staircases: product of two (n+1)-chains."""
    objects = tuple(f"a{i}" for i in range(n)) + tuple(f"b{i}" for i in range(n))
    attributes = tuple(f"p{i}" for i in range(n)) + tuple(f"q{i}" for i in range(n))
    incidence = set()
    for i in range(n):
        for j in range(n):
            if j < i:
                incidence.add((i, j))
                incidence.add((n + i, n + j))
    for g in range(n):
        for m in range(n, 2 * n):
            incidence.add((g, m))
    for g in range(n, 2 * n):
        for m in range(n):
            incidence.add((g, m))
    return FormalContext(objects, attributes, frozenset(incidence))


def s3_up_masks() -> list[int]:
    """The 6-element standard example: atoms 0..2, coatoms 3..5,
    atom i below coatom j iff i != j."""
    masks = []
    for i in range(3):
        up = 1 << i
        for j in range(3):
            if i != j:
                up |= 1 << (3 + j)
        masks.append(up)
    for j in range(3):
        masks.append(1 << (3 + j))
    return masks


def diamond_up_masks() -> list[int]:
    """Bottom 0, incomparable 1 and 2, top 3."""
    return [0b1111, 0b1010, 0b1100, 0b1000]


def random_context(rng: random.Random, max_objects: int = 5,
                   max_attributes: int = 5) -> FormalContext:
    n_g = rng.randint(1, max_objects)
    n_m = rng.randint(1, max_attributes)
    density = rng.choice((0.25, 0.5, 0.75))
    incidence = frozenset((g, m) for g in range(n_g) for m in range(n_m)
                          if rng.random() < density)
    return FormalContext(tuple(f"g{i}" for i in range(n_g)),
                         tuple(f"m{j}" for j in range(n_m)), incidence)


# ---------------------------------------------------------------------------
# Independent oracles.

def brute_concepts(ctx: FormalContext) -> set[tuple[frozenset, frozenset]]:
    """All concepts by checking closure of every object subset directly."""
    found = set()
    for mask in range(1 << ctx.n_objects):
        extent = {g for g in range(ctx.n_objects) if mask >> g & 1}
        intent = {m for m in range(ctx.n_attributes)
                  if all((g, m) in ctx.incidence for g in extent)}
        closure = {g for g in range(ctx.n_objects)
                   if all((g, m) in ctx.incidence for m in intent)}
        if closure == extent:
            found.add((frozenset(extent), frozenset(intent)))
    return found


def brute_covers(leq) -> set[tuple[int, int]]:
    """Cover pairs by the definition, via a double loop; ``leq`` is a
    callable on index pairs and ``leq.n`` gives the element count."""
    n = leq.n
    covers = set()
    for x in range(n):
        for y in range(n):
            if x == y or not leq.leq(x, y):
                continue
            if any(z not in (x, y) and leq.leq(x, z) and leq.leq(z, y)
                   for z in range(n)):
                continue
            covers.add((x, y))
    return covers


def quantifier_is_ferrers(cells) -> bool:
    """The raw two-pair condition: (g,m),(h,n) present implies (g,n) or (h,m)."""
    cells = set(cells)
    for (g, m) in cells:
        for (h, n) in cells:
            if (g, n) not in cells and (h, m) not in cells:
                return False
    return True


def oracle_crossings(points, edges) -> int:
    """Segment crossings via the parametric 2x2 solve, counting unordered
    edge pairs that meet at interior parameters of both segments."""
    total = 0
    for (a, b), (c, d) in combinations(edges, 2):
        if a in (c, d) or b in (c, d):
            continue
        p, q = points[a], points[b]
        r, s = points[c], points[d]
        det = (q[0] - p[0]) * (r[1] - s[1]) - (q[1] - p[1]) * (r[0] - s[0])
        if det == 0:
            continue
        t = ((r[0] - p[0]) * (r[1] - s[1]) - (r[1] - p[1]) * (r[0] - s[0])) / det
        u = ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])) / det
        if 0.0 < t < 1.0 and 0.0 < u < 1.0:
            total += 1
    return total


def oracle_point_segment_distance(p, a, b, samples: int = 4096) -> float:
    """Distance to a segment by dense sampling of the parameter."""
    best = float("inf")
    for i in range(samples + 1):
        t = i / samples
        x = a[0] + t * (b[0] - a[0])
        y = a[1] + t * (b[1] - a[1])
        d = ((p[0] - x) ** 2 + (p[1] - y) ** 2) ** 0.5
        if d < best:
            best = d
    return best


def closed_form_point_segment_distance(p, a, b) -> float:
    vx, vy = b[0] - a[0], b[1] - a[1]
    wx, wy = p[0] - a[0], p[1] - a[1]
    norm2 = vx * vx + vy * vy
    if norm2 <= 0.0:
        return (wx * wx + wy * wy) ** 0.5
    t = max(0.0, min(1.0, (wx * vx + wy * vy) / norm2))
    dx, dy = wx - t * vx, wy - t * vy
    return (dx * dx + dy * dy) ** 0.5


def order_isomorphisms(letters, letter_leq, lattice, limit: int = 2):
    """Backtracking search for order isomorphisms letter -> concept index.

    ``letter_leq`` is a dict on letter pairs.  Used to place the
    reference realizer chains onto the computed lattice.
    """
    n = lattice.n
    letter_sig = {}
    for c in letters:
        down = sum(1 for d in letters if letter_leq[(d, c)])
        up = sum(1 for d in letters if letter_leq[(c, d)])
        letter_sig[c] = (down, up)
    concept_sig = {}
    for i in range(n):
        down = sum(1 for j in range(n) if lattice.leq(j, i))
        up = sum(1 for j in range(n) if lattice.leq(i, j))
        concept_sig[i] = (down, up)

    ordering = sorted(letters, key=lambda c: (letter_sig[c], c))
    found: list[dict] = []

    def extend(mapping: dict) -> None:
        if len(found) >= limit:
            return
        if len(mapping) == len(letters):
            found.append(dict(mapping))
            return
        c = ordering[len(mapping)]
        for i in range(n):
            if i in mapping.values() or concept_sig[i] != letter_sig[c]:
                continue
            if all(letter_leq[(c, d)] == lattice.leq(i, k)
                   and letter_leq[(d, c)] == lattice.leq(k, i)
                   for d, k in mapping.items()):
                mapping[c] = i
                extend(mapping)
                del mapping[c]

    extend({})
    return found


def life_letter_map(lattice) -> dict[str, int]:
    """The unique order isomorphism from the reference chain letters onto
    the computed 19-concept lattice."""
    letters = sorted(LIFE_LETTER_COORDS)
    pos = [{c: i for i, c in enumerate(chain)}
           for chain in (LIFE_CHAIN_1, LIFE_CHAIN_2, LIFE_CHAIN_3)]
    letter_leq = {(x, y): all(p[x] <= p[y] for p in pos)
                  for x in letters for y in letters}
    isos = order_isomorphisms(letters, letter_leq, lattice, limit=2)
    assert len(isos) == 1, f"expected a unique isomorphism, found {len(isos)}"
    return isos[0]
