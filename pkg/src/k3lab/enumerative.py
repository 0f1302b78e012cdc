"""Expected-dimension bookkeeping: Brill-Noether numbers, section loci in
rank-2 moduli, the Fano genus table, and linear sections of the three
homogeneous ambients.

The codimension rules for the section loci (symmetric n(n+1)/2 for the
canonical-determinant type, antisymmetric n(n-1)/2 for the Hom type) are
heuristic commitments; callers that surface them should flag the result
as "expected (heuristic)".
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .lattices import MukaiVector

EXPECTED_DIM_BASIS = "expected (heuristic)"

FANO_GENERA = frozenset(range(2, 11)) | {12}


def brill_noether_number(g: int, r: int, d: int) -> int:
    """rho = g - (r+1)(g - d + r); negative means the locus is expected empty."""
    return g - (r + 1) * (g - d + r)


def type_iii_expected_dim(g: int, n: int) -> int:
    """Expected dimension of the canonical-determinant locus with h^0 >= n:
    (3g - 3) - n(n+1)/2."""
    _check_gn(g, n)
    return 3 * g - 3 - n * (n + 1) // 2


def type_ii_expected_dim(g: int, n: int) -> int:
    """Expected dimension of the Hom-counting locus: (3g - 3) - n(n-1)/2.

    The auxiliary rank-2 bundle is not modeled here; its degree is
    conventionally congruent to n mod 2, which this count does not enforce.
    """
    _check_gn(g, n)
    return 3 * g - 3 - n * (n - 1) // 2


def _check_gn(g, n):
    if g < 2:
        raise PreconditionError("genus must be at least 2")
    if n < 0:
        raise PreconditionError("section count must be non-negative")


def restriction_section_bound(v: MukaiVector) -> int:
    """chi = r + s: restricting a sheaf with this class to a curve lands in
    the canonical-determinant locus with at least chi sections."""
    return v.chi


def fano_genus_allowed(g: int) -> bool:
    """Genera realized by index-one Fano 3-folds: 2..10 and 12."""
    if g < 2:
        raise PreconditionError("genus must be at least 2")
    return g in FANO_GENERA


def fano_degree(g: int) -> int:
    """(-K)^3 = 2g - 2."""
    if g < 2:
        raise PreconditionError("genus must be at least 2")
    return 2 * g - 2


def pairs_moduli_dims(g: int):
    """(dim of curve-on-surface pairs, dim of curves) = (g + 19, 3g - 3)."""
    if g < 2:
        raise PreconditionError("genus must be at least 2")
    return (g + 19, 3 * g - 3)


@dataclass(frozen=True)
class HomSpaceDatum:
    """A homogeneous ambient: dimension, degree, Fano index, ambient P^N."""

    name: str
    dim: int
    degree: int
    index: int
    ambient_dim: int


HOMOGENEOUS_SPACES = {
    # 10-dimensional spinor variety in P^15, anti-canonical = 8H
    "spinor10": HomSpaceDatum("spinor10", 10, 12, 8, 15),
    # 6-dimensional Lagrangian Grassmannian in P^13
    "lagrangian6": HomSpaceDatum("lagrangian6", 6, 16, 4, 13),
    # Grassmannian of planes in 5-space, Pluecker-embedded in P^9
    "g25": HomSpaceDatum("g25", 6, 5, 5, 9),
}


def linear_section_invariants(space, k: int) -> dict:
    """Invariants of a transversal cut by k hyperplanes.

    Dimension and index each drop by k, the degree is unchanged.  The
    classification names the familiar outcomes; genus follows the
    index-one convention 2g - 2 = degree where that makes sense.
    """
    datum = HOMOGENEOUS_SPACES[space] if isinstance(space, str) else space
    if not 0 <= k <= datum.dim - 1:
        raise PreconditionError(
            f"hyperplane count must lie in [0, {datum.dim - 1}]")
    dim = datum.dim - k
    index = datum.index - k
    degree = datum.degree
    genus = None
    if dim == 3 and index >= 1:
        classification = "Fano 3-fold"
        genus = degree // 2 + 1 if degree % 2 == 0 else None
    elif dim == 2 and index == 0:
        classification = "K3 surface"
        genus = degree // 2 + 1
    elif dim == 1 and index == 0:
        classification = "genus-1 curve"
        genus = 1
    elif dim == 1 and index == -1:
        classification = "canonical curve"
        genus = degree // 2 + 1
    else:
        classification = "other"
    return {
        "dim": dim,
        "degree": degree,
        "index": index,
        "genus": genus,
        "classification": classification,
    }
