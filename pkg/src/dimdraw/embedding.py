"""Integer coordinates from a realizer.

Concept C gets the vector of its ranks across the realizer's linear
extensions (0 = bottom).  Every axis is then a permutation of 0..n-1 and
the lattice order coincides with componentwise dominance, which is what
makes any upward linear projection of these points order-faithful.
Coordinates stay exact integers; floating point only enters at the
projection stage.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dimension import LinearExtension, Realizer, verify_realizer
from .errors import ContractViolation
from .lattice import ConceptLattice

_EXHAUSTIVE_CHECK_LIMIT = 200


@dataclass(frozen=True)
class DimEmbedding:
    """Per-concept integer vectors plus the cover edges they will be drawn with."""

    dim: int
    coords: tuple[tuple[int, ...], ...]
    covers: tuple[tuple[int, int], ...]


def positions(ext: LinearExtension) -> tuple[int, ...]:
    """Rank of each concept in the extension: bottom 0, top n-1."""
    return ext.pos


def _check_dominance(lattice: ConceptLattice,
                     coords: tuple[tuple[int, ...], ...]) -> None:
    n = lattice.n
    if n <= _EXHAUSTIVE_CHECK_LIMIT:
        pairs = ((i, j) for i in range(n) for j in range(n) if i != j)
    else:
        # deterministic strided sample on big lattices
        step = max(1, (n * n) // (_EXHAUSTIVE_CHECK_LIMIT ** 2))
        pairs = ((i, j) for i in range(n) for j in range(i % step, n, step)
                 if i != j)
    for i, j in pairs:
        dominated = all(a <= b for a, b in zip(coords[i], coords[j]))
        if dominated != lattice.leq(i, j):
            raise ContractViolation(
                f"dominance mismatch between concepts {i} and {j}")


def embed(lattice: ConceptLattice, r: Realizer) -> DimEmbedding:
    """Coordinates of every concept: its positions across the extensions.

    Requires a verified realizer; dominance equivalence (order iff
    componentwise <=) is asserted on the result.
    """
    if not verify_realizer(lattice, r):
        raise ContractViolation("realizer does not realize the lattice order")
    coords = tuple(
        tuple(ext.pos[c] for ext in r.extensions) for c in range(lattice.n))
    _check_dominance(lattice, coords)
    return DimEmbedding(dim=r.dim, coords=coords, covers=lattice.covers)
