"""Matrices of polynomials: symbolic determinants, Pfaffians, linear matrices.

``poly_det`` uses fraction-free Bareiss when every entry is constant and a
memoized Laplace expansion otherwise (pivoting buys nothing for symbolic
entries at sizes <= 8).  ``pfaffian`` is the classical first-row expansion,
normalized so that the 4x4 value is m01*m23 - m02*m13 + m03*m12.

``LinearMatrix`` bundles an m x m matrix of homogeneous linear forms
A(x) = sum_i A_i x_i through its scalar coefficient matrices A_i.
"""

from __future__ import annotations

from . import linalg
from .errors import FieldMismatch, PreconditionError, VariableCountMismatch
from .poly import MultiPoly

_MAX_DET = 8
_MAX_PF = 6


class PolyMatrix:
    """A rectangular matrix of polynomials over a common variable set."""

    __slots__ = ("field", "nvars", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(row) for row in entries)
        if not rows or not rows[0]:
            raise PreconditionError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise PreconditionError("ragged matrix")
        first = rows[0][0]
        for row in rows:
            for p in row:
                if not isinstance(p, MultiPoly):
                    raise PreconditionError("entries must be MultiPoly")
                if p.field != first.field:
                    raise FieldMismatch("entries over different fields")
                if p.nvars != first.nvars:
                    raise VariableCountMismatch("entries over different variable sets")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "field", first.field)
        object.__setattr__(self, "nvars", first.nvars)

    def __setattr__(self, *a):
        raise AttributeError("PolyMatrix is immutable")

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_constant(self) -> bool:
        return all(p.degree() <= 0 for row in self.entries for p in row)

    def is_alternating(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i in range(self.nrows):
            if not self.entries[i][i].is_zero():
                return False
            for j in range(i + 1, self.ncols):
                if self.entries[j][i] != -self.entries[i][j]:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    __hash__ = None


def poly_det(m: PolyMatrix) -> MultiPoly:
    """Exact determinant of a square PolyMatrix of size <= 8."""
    if m.nrows != m.ncols:
        raise PreconditionError("determinant of a non-square matrix")
    n = m.nrows
    if n > _MAX_DET:
        raise PreconditionError(f"determinant limited to size {_MAX_DET}")
    if m.is_constant():
        zero_e = (0,) * m.nvars
        scal = [[p.coeff(zero_e) for p in row] for row in m.entries]
        return MultiPoly.const(m.field, m.nvars, linalg.det(m.field, scal))

    one = MultiPoly.const(m.field, m.nvars, m.field.one)
    cache: dict = {}

    def minor(cols: tuple) -> MultiPoly:
        if not cols:
            return one
        got = cache.get(cols)
        if got is not None:
            return got
        i = n - len(cols)  # expand along row i, the first not yet consumed
        acc = MultiPoly.zero(m.field, m.nvars)
        for pos, j in enumerate(cols):
            e = m.entries[i][j]
            if e.is_zero():
                continue
            sub = minor(cols[:pos] + cols[pos + 1:])
            term = e * sub
            acc = acc - term if pos % 2 else acc + term
        cache[cols] = acc
        return acc

    return minor(tuple(range(n)))


def pfaffian(m: PolyMatrix) -> MultiPoly:
    """Pfaffian of an alternating matrix of even size <= 6.

    Satisfies pfaffian(m)**2 == poly_det(m).
    """
    if m.nrows != m.ncols:
        raise PreconditionError("pfaffian of a non-square matrix")
    n = m.nrows
    if n % 2 or n > _MAX_PF:
        raise PreconditionError(f"pfaffian needs even size <= {_MAX_PF}")
    if not m.is_alternating():
        raise PreconditionError("pfaffian of a non-alternating matrix")

    one = MultiPoly.const(m.field, m.nvars, m.field.one)
    cache: dict = {}

    def pf(idx: tuple) -> MultiPoly:
        if not idx:
            return one
        got = cache.get(idx)
        if got is not None:
            return got
        i0, rest = idx[0], idx[1:]
        acc = MultiPoly.zero(m.field, m.nvars)
        for pos, j in enumerate(rest):
            e = m.entries[i0][j]
            if e.is_zero():
                continue
            sub = pf(rest[:pos] + rest[pos + 1:])
            term = e * sub
            acc = acc - term if pos % 2 else acc + term
        cache[idx] = acc
        return acc

    return pf(tuple(range(n)))


# Klein basis order for 4x4 alternating matrices: entries (0,1), (0,2),
# (0,3), (1,2), (1,3), (2,3), in which Pf = w0*w5 - w1*w4 + w2*w3.
KLEIN_INDEX_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class LinearMatrix:
    """An m x m matrix of linear forms A(x) = sum_i A_i x_i.

    ``coeff_mats`` holds one m x m scalar matrix per variable; entry (j, k)
    of A(x) is the linear form sum_i (A_i)[j][k] * x_i.
    """

    __slots__ = ("field", "size", "nvars", "coeff_mats", "alternating")

    def __init__(self, field, size: int, nvars: int, coeff_mats, alternating=None):
        mats = tuple(tuple(tuple(field.coerce(x) for x in row) for row in mat)
                     for mat in coeff_mats)
        if len(mats) != nvars:
            raise VariableCountMismatch(
                f"expected {nvars} coefficient matrices, got {len(mats)}")
        for mat in mats:
            if len(mat) != size or any(len(r) != size for r in mat):
                raise PreconditionError(f"coefficient matrices must be {size}x{size}")
        alt = all(_is_alternating_scalar(mat) for mat in mats)
        if alternating and not alt:
            raise PreconditionError("alternating flag set but a coefficient matrix is not")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "coeff_mats", mats)
        object.__setattr__(self, "alternating", alt if alternating is None else alternating)

    def __setattr__(self, *a):
        raise AttributeError("LinearMatrix is immutable")

    @classmethod
    def from_linear_forms(cls, field, size, nvars, form_rows, alternating=None):
        """Build from entry-wise coefficient vectors: form_rows[j][k][i] is
        the x_i coefficient of entry (j, k)."""
        mats = [[[field.coerce(form_rows[j][k][i]) for k in range(size)]
                 for j in range(size)] for i in range(nvars)]
        return cls(field, size, nvars, mats, alternating)

    def entry_poly(self, j: int, k: int) -> MultiPoly:
        terms = {}
        for i, mat in enumerate(self.coeff_mats):
            c = mat[j][k]
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return MultiPoly(self.field, self.nvars, terms)

    def to_poly_matrix(self) -> PolyMatrix:
        return PolyMatrix([[self.entry_poly(j, k) for k in range(self.size)]
                           for j in range(self.size)])

    def det_poly(self) -> MultiPoly:
        return poly_det(self.to_poly_matrix())

    def pfaffian_poly(self) -> MultiPoly:
        return pfaffian(self.to_poly_matrix())

    def scaled(self, t) -> "LinearMatrix":
        t = self.field.coerce(t)
        return LinearMatrix(
            self.field, self.size, self.nvars,
            [linalg.mat_scale(t, mat) for mat in self.coeff_mats])

    def left_right_transform(self, g, h) -> "LinearMatrix":
        """A_i -> g A_i h^T for square scalar matrices g, h."""
        ht = linalg.transpose(h)
        mats = [linalg.mat_mul(self.field, linalg.mat_mul(self.field, g, mat), ht)
                for mat in self.coeff_mats]
        return LinearMatrix(self.field, self.size, self.nvars, mats)

    def congruence_transform(self, g) -> "LinearMatrix":
        """A_i -> g A_i g^T (preserves the alternating property)."""
        return self.left_right_transform(g, g)

    def klein_coordinates(self, i: int):
        """Coordinates of the alternating coefficient matrix A_i in the
        Klein basis order (0,1), (0,2), (0,3), (1,2), (1,3), (2,3)."""
        if self.size != 4 or not self.alternating:
            raise PreconditionError("Klein coordinates need a 4x4 alternating matrix")
        mat = self.coeff_mats[i]
        return tuple(mat[a][b] for a, b in KLEIN_INDEX_PAIRS)

    @classmethod
    def from_klein_rows(cls, field, nvars, rows):
        """Alternating 4x4 linear matrix whose Klein coordinate vector is
        w(x) with w_a(x) = sum_i rows[a][i] x_i."""
        if len(rows) != 6:
            raise PreconditionError("need six Klein coordinate forms")
        mats = []
        for i in range(nvars):
            mat = [[field.zero] * 4 for _ in range(4)]
            for a, (r, c) in enumerate(KLEIN_INDEX_PAIRS):
                v = field.coerce(rows[a][i])
                mat[r][c] = v
                mat[c][r] = -v
            mats.append(mat)
        return cls(field, 4, nvars, mats, alternating=True)

    def __eq__(self, other):
        return (isinstance(other, LinearMatrix) and self.field == other.field
                and self.size == other.size and self.nvars == other.nvars
                and self.coeff_mats == other.coeff_mats)

    __hash__ = None

    def __repr__(self):
        return (f"LinearMatrix(size={self.size}, nvars={self.nvars}, "
                f"alternating={self.alternating})")


def _is_alternating_scalar(mat) -> bool:
    n = len(mat)
    for i in range(n):
        if mat[i][i]:
            return False
        for j in range(i + 1, n):
            if mat[i][j] != -mat[j][i]:
                return False
    return True
