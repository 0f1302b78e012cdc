"""Moduli-dimension calculus and integral lattice constructions.

``MukaiVector`` records the numeric data (r, (L^2), s) of a sheaf class;
the moduli space attached to it is smooth of dimension (L^2) - 2rs + 2,
rigid when that is 0 and a K3 candidate when it is 2.

``IntegralLattice`` is a finite-rank lattice with integer Gram matrix.
``k3_lattice`` builds the even unimodular lattice of signature (3, 19)
as U + U + U + E8(-1) + E8(-1).  ``l_zero_sublattice`` carves out the
vectors pairing with a fixed alpha divisibly by r, and ``overlattice``
adjoins alpha/r, which stays integral and even precisely because 2*r^2
divides (alpha^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DivisibilityViolation, K3LabError, PreconditionError
from .scalars import QQ


@dataclass(frozen=True)
class MukaiVector:
    """Rank r >= 0, even self-intersection (L^2), and integer s; chi = r + s."""

    r: int
    selfint: int
    s: int

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.selfint, int)
                and isinstance(self.s, int)):
            raise PreconditionError("Mukai data must be integers")
        if self.r < 0:
            raise PreconditionError("rank must be non-negative")
        if self.selfint % 2:
            raise PreconditionError("(L^2) must be even on a surface")

    @property
    def chi(self) -> int:
        return self.r + self.s


def moduli_dim(v: MukaiVector) -> int:
    """(L^2) - 2rs + 2."""
    return v.selfint - 2 * v.r * v.s + 2


def is_rigid(v: MukaiVector) -> bool:
    return moduli_dim(v) == 0


def is_k3_moduli(v: MukaiVector) -> bool:
    return moduli_dim(v) == 2


class IntegralLattice:
    """A finite-rank lattice presented by a symmetric integer Gram matrix."""

    __slots__ = ("rank", "gram", "label", "_det")

    def __init__(self, gram, label: str = ""):
        rows = tuple(tuple(int(x) for x in r) for r in gram)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise PreconditionError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise PreconditionError("Gram matrix must be symmetric")
        object.__setattr__(self, "rank", n)
        object.__setattr__(self, "gram", rows)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_det", None)

    def __setattr__(self, *a):
        raise AttributeError("IntegralLattice is immutable")

    @property
    def det(self) -> int:
        if self._det is None:
            object.__setattr__(self, "_det", int_det(self.gram))
        return self._det

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def pairing(self, u, v) -> int:
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank))

    def norm(self, v) -> int:
        return self.pairing(v, v)

    def signature(self):
        """(positive, negative) inertia counts; None when degenerate."""
        if self.rank == 0:
            return (0, 0)
        g = [[Fraction(x) for x in row] for row in self.gram]
        _, d = linalg.congruence_diagonalize(QQ, g)
        pos = sum(1 for i in range(self.rank) if d[i][i] > 0)
        neg = sum(1 for i in range(self.rank) if d[i][i] < 0)
        if pos + neg < self.rank:
            return None
        return (pos, neg)

    def to_json(self):
        return {"label": self.label, "gram": [list(r) for r in self.gram]}

    def __eq__(self, other):
        return isinstance(other, IntegralLattice) and self.gram == other.gram

    __hash__ = None

    def __repr__(self):
        return f"IntegralLattice(rank={self.rank}, label={self.label!r})"


def lattice_invariants(lat: IntegralLattice) -> dict:
    """rank, determinant, evenness and signature (None when degenerate)."""
    return {
        "rank": lat.rank,
        "det": lat.det,
        "even": lat.is_even,
        "signature": lat.signature(),
    }


# -- standard blocks ------------------------------------------------------

U_GRAM = ((0, 1), (1, 0))

# Simply-laced E8 diagram, nodes 0..7: chain 0-2-3-4-5-6-7 with 1 attached
# to node 3.  The Cartan matrix has determinant 1.
_E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


def e8_gram(negative: bool = True):
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = -1
    if negative:
        g = [[-x for x in row] for row in g]
    return tuple(tuple(row) for row in g)


def hyperbolic_plane_lattice() -> IntegralLattice:
    return IntegralLattice(U_GRAM, label="U")


def e8_lattice(negative: bool = True) -> IntegralLattice:
    return IntegralLattice(e8_gram(negative), label="E8(-1)" if negative else "E8")


def k3_lattice() -> IntegralLattice:
    """U^3 + E8(-1)^2: even, rank 22, determinant -1, signature (3, 19)."""
    blocks = [U_GRAM, U_GRAM, U_GRAM, e8_gram(), e8_gram()]
    n = sum(len(b) for b in blocks)
    g = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                g[off + i][off + j] = x
        off += len(b)
    return IntegralLattice(g, label="K3")


# -- integer matrix helpers ------------------------------------------------

def int_det(gram) -> int:
    """Fraction-free Bareiss determinant over the integers."""
    n = len(gram)
    if n == 0:
        return 1
    a = [list(row) for row in gram]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hnf_row_basis(rows):
    """Row-style Hermite reduction; returns the nonzero rows (a Z-basis of
    the row span) with positive pivots and reduced entries above them.

    Column elimination uses one-shot Bezout 2x2 operations rather than a
    Euclid cascade of row subtractions, which keeps entry growth tame.
    """
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    nrows = len(mat)
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, nrows):
            if not mat[i][c]:
                continue
            g, s, t = _xgcd(mat[r][c], mat[i][c])
            u, v = mat[i][c] // g, mat[r][c] // g
            row_r, row_i = mat[r], mat[i]
            mat[r] = [s * x + t * y for x, y in zip(row_r, row_i)]
            mat[i] = [v * y - u * x for x, y in zip(row_r, row_i)]
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == nrows:
            break
    return [row for row in mat[:r]]


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _kernel_of_functional_mod(w, r: int):
    """Z-basis (as columns) of {beta : w . beta = 0 mod r}.

    Works on the integer kernel of the 1 x (n+1) matrix [w | r] via
    unimodular column operations, then projects away the auxiliary
    coordinate (the projection is injective on the kernel).
    """
    n = len(w)
    v = list(w) + [r]
    u = [[1 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]
    for i in range(1, n + 1):
        if v[i] == 0:
            continue
        g, s, t = _xgcd(v[0], v[i])
        a0, ai = v[0] // g, v[i] // g
        for row in u:
            c0, ci = row[0], row[i]
            row[0] = s * c0 + t * ci
            row[i] = -ai * c0 + a0 * ci
        v[0], v[i] = g, 0
    # columns 1..n of u span the kernel; keep their beta parts
    return [tuple(u[i][j] for i in range(n)) for j in range(1, n + 1)]


# -- sublattice and overlattice ---------------------------------------------

def l_zero_sublattice(lat: IntegralLattice, alpha, r: int) -> IntegralLattice:
    """The sublattice of vectors beta with (beta . alpha) divisible by r."""
    basis = l_zero_basis(lat, alpha, r)
    gram = _basis_gram(lat, basis)
    return IntegralLattice(gram, label=f"L0({lat.label or 'L'}; r={r})")


def l_zero_basis(lat: IntegralLattice, alpha, r: int):
    """Column basis vectors of the sublattice, in the ambient coordinates."""
    alpha = tuple(int(x) for x in alpha)
    if len(alpha) != lat.rank:
        raise PreconditionError("alpha has the wrong length")
    if not any(alpha):
        raise PreconditionError("alpha must be nonzero")
    if r < 1:
        raise PreconditionError("r must be positive")
    w = [sum(lat.gram[i][j] * alpha[j] for j in range(lat.rank))
         for i in range(lat.rank)]
    return _kernel_of_functional_mod(w, r)


def _basis_gram(lat: IntegralLattice, basis):
    k = len(basis)
    return [[lat.pairing(basis[i], basis[j]) for j in range(k)] for i in range(k)]


@dataclass(frozen=True)
class OverlatticeSpec:
    """Ambient lattice, class alpha (coordinates in the ambient basis), r >= 2."""

    lattice: IntegralLattice
    alpha: tuple
    r: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))
        if len(self.alpha) != self.lattice.rank:
            raise PreconditionError("alpha has the wrong length")
        if not any(self.alpha):
            raise PreconditionError("alpha must be nonzero")
        if self.r < 2:
            raise PreconditionError("r must be at least 2")

    @property
    def alpha_sq(self) -> int:
        return self.lattice.norm(self.alpha)


def overlattice(spec: OverlatticeSpec) -> IntegralLattice:
    """The lattice generated by L0 and alpha/r inside the rational span.

    Requires 2*r^2 | (alpha^2) (DivisibilityViolation otherwise); the result
    is verified to be integral and even before it is returned.

    Computed in L0-coordinates: alpha/r has integer coordinates over a
    denominator m | r there (alpha lies in L0 since r | (alpha^2)), so the
    overlattice is Z^n + Z(c/m), whose Hermite stack is diagonal plus one
    dense row and stays well-conditioned.
    """
    lat, alpha, r = spec.lattice, spec.alpha, spec.r
    if spec.alpha_sq % (2 * r * r):
        raise DivisibilityViolation(
            f"(alpha^2) = {spec.alpha_sq} is not divisible by 2*r^2 = {2 * r * r}")
    n = lat.rank
    basis = l_zero_basis(lat, alpha, r)
    bmat = [[Fraction(basis[j][i]) for j in range(n)] for i in range(n)]
    coords = linalg.solve(QQ, bmat, [Fraction(x) for x in alpha])
    y = [x / r for x in coords]  # alpha/r in L0-coordinates
    m = 1
    for x in y:
        m = m * x.denominator // _gcd(m, x.denominator)
    c = [int(x * m) for x in y]
    rows = [[m if i == j else 0 for j in range(n)] for i in range(n)]
    rows.append(c)
    scaled = hnf_row_basis(rows)  # basis of m * (Z^n + Z(c/m)) in L0-coords
    if len(scaled) != n:
        raise K3LabError("overlattice basis has wrong rank")  # unreachable
    # back to ambient coordinates, still scaled by m
    ambient = [[sum(row[j] * basis[j][i] for j in range(n)) for i in range(n)]
               for row in scaled]
    m2 = m * m
    gram = []
    for i in range(n):
        grow = []
        for j in range(n):
            val = lat.pairing(ambient[i], ambient[j])
            if val % m2:
                raise K3LabError("overlattice Gram is not integral")  # unreachable
            grow.append(val // m2)
        gram.append(grow)
    out = IntegralLattice(gram, label=f"{lat.label or 'L'}+Z(alpha/{r})")
    if not out.is_even:
        raise K3LabError("overlattice is not even")  # unreachable under the precondition
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)
