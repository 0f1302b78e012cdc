"""Exact quadratic-form algebra over QQ and odd prime fields.

Gram convention: q(x) = x^T G x with G symmetric, so G[i][i] is the
coefficient of x_i^2 and G[i][j] is *half* the coefficient of x_i x_j.
This forces characteristic != 2, which the scalar layer already enforces.
The associated bilinear form is B(u, v) = u^T G v = (q(u+v)-q(u)-q(v))/2.

The split normal form used throughout pairs basis vectors into hyperbolic
planes with Gram [[0, 1/2], [1/2, 0]] (the form x*y), stacked first, with
an anisotropic residual of dimension <= 2 at the end.

``express_as_2x2_det`` and ``express_as_pfaffian`` realize split forms as
det of a 2x2 matrix of linear forms, respectively as the Pfaffian of an
alternating 4x4 one, by transporting the form to the standard model
through explicit Witt decompositions.  Both return a LinearMatrix whose
det/Pf reproduces the input form *identically*, which downstream sampling
relies on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .errors import (DegenerateSystem, FieldMismatch, NotSplit,
                     PreconditionError)
from .poly import MultiPoly
from .polymat import KLEIN_INDEX_PAIRS, LinearMatrix
from .scalars import GF, PrimeField, QQ


class QuadraticForm:
    """A quadratic form of dimension n <= 6 given by its symmetric Gram matrix."""

    __slots__ = ("field", "n", "gram")

    MAX_DIM = 6

    def __init__(self, gram, field=None):
        rows = tuple(tuple(r) for r in gram)
        n = len(rows)
        if n > self.MAX_DIM:
            raise PreconditionError(f"quadratic forms limited to dimension {self.MAX_DIM}")
        if field is None:
            if n == 0:
                raise PreconditionError("dimension-0 form needs an explicit field")
            probe = rows[0][0]
            field = probe.field if hasattr(probe, "field") else QQ
        rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        if any(len(r) != n for r in rows):
            raise PreconditionError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise PreconditionError("Gram matrix must be symmetric")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gram", rows)

    def __setattr__(self, *a):
        raise AttributeError("QuadraticForm is immutable")

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "QuadraticForm":
        if not p.is_homogeneous(2) or p.is_zero():
            raise PreconditionError("expected a nonzero homogeneous quadratic")
        n = p.nvars
        half = p.field.one / p.field.coerce(2)
        gram = [[p.field.zero] * n for _ in range(n)]
        for e, c in p.terms.items():
            idx = [i for i, k in enumerate(e) if k]
            if len(idx) == 1:
                gram[idx[0]][idx[0]] = c
            else:
                i, j = idx
                gram[i][j] = c * half
                gram[j][i] = c * half
        return cls(gram, p.field)

    def to_poly(self) -> MultiPoly:
        terms = {}
        for i in range(self.n):
            if self.gram[i][i]:
                e = [0] * self.n
                e[i] = 2
                terms[tuple(e)] = self.gram[i][i]
            for j in range(i + 1, self.n):
                if self.gram[i][j]:
                    e = [0] * self.n
                    e[i] = e[j] = 1
                    terms[tuple(e)] = 2 * self.gram[i][j]
        return MultiPoly(self.field, self.n, terms)

    def eval(self, v):
        v = tuple(self.field.coerce(x) for x in v)
        acc = self.field.zero
        for i in range(self.n):
            row = self.gram[i]
            for j in range(self.n):
                acc = acc + v[i] * row[j] * v[j]
        return acc

    def bilinear(self, u, v):
        u = tuple(self.field.coerce(x) for x in u)
        v = tuple(self.field.coerce(x) for x in v)
        acc = self.field.zero
        for i in range(self.n):
            row = self.gram[i]
            for j in range(self.n):
                acc = acc + u[i] * row[j] * v[j]
        return acc

    def disc(self):
        """det of the Gram matrix; zero iff the form is degenerate."""
        return linalg.det(self.field, self.gram)

    def is_nondegenerate(self) -> bool:
        return bool(self.disc()) if self.n else True

    def reduce_mod(self, p: int) -> "QuadraticForm":
        f = GF(p)
        return QuadraticForm([[f.coerce(x) for x in r] for r in self.gram], f)

    def __eq__(self, other):
        return (isinstance(other, QuadraticForm) and self.field == other.field
                and self.gram == other.gram)

    __hash__ = None

    def __repr__(self):
        return f"QuadraticForm({self.gram!r})"


class Isometry:
    """An invertible change of basis acting on Gram matrices by G -> M^T G M."""

    __slots__ = ("field", "matrix")

    def __init__(self, matrix, field=None):
        rows = tuple(tuple(r) for r in matrix)
        if field is None:
            field = rows[0][0].field if hasattr(rows[0][0], "field") else QQ
        rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        if not linalg.det(field, rows):
            raise PreconditionError("isometry matrix must be invertible")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "matrix", rows)

    def __setattr__(self, *a):
        raise AttributeError("Isometry is immutable")

    def transform_gram(self, gram):
        mt = linalg.transpose(self.matrix)
        return linalg.mat_mul(self.field, linalg.mat_mul(self.field, mt, gram), self.matrix)

    def transform(self, q: QuadraticForm) -> QuadraticForm:
        return QuadraticForm(self.transform_gram(q.gram), self.field)

    def inverse(self) -> "Isometry":
        return Isometry(linalg.inverse(self.field, self.matrix), self.field)

    def det(self):
        return linalg.det(self.field, self.matrix)

    def __repr__(self):
        return f"Isometry({self.matrix!r})"


def gram_disc(q: QuadraticForm):
    return q.disc()


def diagonalize(q: QuadraticForm):
    """Congruence diagonalization: returns (Isometry m, diagonal form d) with
    m^T G m = Gram(d).  Rank is preserved; degenerate forms are fine."""
    m, d = linalg.congruence_diagonalize(q.field, q.gram)
    return Isometry(m, q.field), QuadraticForm(d, q.field)


def _require_prime_field(q: QuadraticForm, who: str):
    if not isinstance(q.field, PrimeField):
        raise FieldMismatch(f"{who} works over prime fields only")


def isotropic_vector(q: QuadraticForm, seed: int = 0):
    """A nonzero v with q(v) = 0 over F_p, or None when none exists.

    For nondegenerate forms a vector always exists once n >= 3; for n = 2 it
    exists iff -disc is a square; n <= 1 is always anisotropic.  The search
    sweeps a seeded pseudorandom sequence first (reproducible), then falls
    back to a deterministic solve on a diagonalized ternary subform.
    """
    _require_prime_field(q, "isotropic_vector")
    if not q.is_nondegenerate():
        raise PreconditionError("isotropic_vector expects a nondegenerate form")
    field, n = q.field, q.n
    if n <= 1:
        return None
    if n == 2:
        iso, diag = diagonalize(q)
        a, b = diag.gram[0][0], diag.gram[1][1]
        s = field.sqrt(-b / a)
        if s is None:
            return None
        return linalg.mat_vec(field, iso.matrix, (s, field.one))

    rng = random.Random(seed)
    for _ in range(64 * field.p):
        v = tuple(field.random_element(rng) for _ in range(n))
        if any(v) and not q.eval(v):
            return v

    # Deterministic completion: solve a*x^2 + b*y^2 + c = 0 on the first
    # three diagonal entries (a nondegenerate conic always has an affine
    # point over F_p).
    iso, diag = diagonalize(q)
    a, b, c = (diag.gram[i][i] for i in range(3))
    for x in field.elements():
        s = field.sqrt((-c - a * x * x) / b)
        if s is not None:
            w = [field.zero] * n
            w[0], w[1], w[2] = x, s, field.one
            return linalg.mat_vec(field, iso.matrix, w)
    raise AssertionError("unreachable: ternary conics over F_p are isotropic")


@dataclass(frozen=True)
class WittDecomposition:
    """h hyperbolic planes, an anisotropic residual, and the isometry into
    the split normal form (planes first, residual last)."""

    h: int
    residual: QuadraticForm
    isometry: Isometry

    def target_gram(self):
        field = self.isometry.field
        n = 2 * self.h + self.residual.n
        half = field.one / field.coerce(2)
        g = [[field.zero] * n for _ in range(n)]
        for k in range(self.h):
            g[2 * k][2 * k + 1] = half
            g[2 * k + 1][2 * k] = half
        for i in range(self.residual.n):
            for j in range(self.residual.n):
                g[2 * self.h + i][2 * self.h + j] = self.residual.gram[i][j]
        return tuple(tuple(r) for r in g)


def witt_split(q: QuadraticForm, seed: int = 0) -> WittDecomposition:
    """Witt decomposition of a nondegenerate form over F_p.

    Splits off hyperbolic planes one at a time: find an isotropic v, a
    partner u with B(v, u) = 1/2 and q(u) = 0, then recurse on the
    orthogonal complement; what remains (dimension <= 2) is anisotropic.
    """
    _require_prime_field(q, "witt_split")
    if not q.is_nondegenerate():
        raise DegenerateSystem("witt_split expects a nondegenerate form")
    field = q.field
    half = field.one / field.coerce(2)

    # `embed` holds the current subspace basis as columns in original coords.
    embed = [tuple(field.one if i == j else field.zero for i in range(q.n))
             for j in range(q.n)]
    pairs = []
    while True:
        dim = len(embed)
        if dim == 0:
            break
        sub_gram = [[q.bilinear(embed[i], embed[j]) for j in range(dim)]
                    for i in range(dim)]
        sub = QuadraticForm(sub_gram, field)
        v_loc = isotropic_vector(sub, seed)
        if v_loc is None:
            break
        j = next(i for i in range(dim) if sub.bilinear(v_loc, _unit(field, dim, i)))
        u_loc = _unit(field, dim, j)
        u_loc = tuple(x * (half / sub.bilinear(v_loc, u_loc)) for x in u_loc)
        # now B(v, u) = 1/2; make u isotropic without touching B(v, u)
        t = sub.eval(u_loc)
        u_loc = tuple(x - t * y for x, y in zip(u_loc, v_loc))
        v = _combine(field, embed, v_loc)
        u = _combine(field, embed, u_loc)
        pairs.append((v, u))
        # orthogonal complement of span(v, u) inside the current subspace
        rows = [[sub.bilinear(v_loc, _unit(field, dim, i)) for i in range(dim)],
                [sub.bilinear(u_loc, _unit(field, dim, i)) for i in range(dim)]]
        kernel = linalg.nullspace(field, rows)
        embed = [_combine(field, embed, w) for w in kernel]

    res_dim = len(embed)
    res_gram = [[q.bilinear(embed[i], embed[j]) for j in range(res_dim)]
                for i in range(res_dim)]
    residual = QuadraticForm(res_gram, field)
    cols = [c for pair in pairs for c in pair] + embed
    matrix = tuple(tuple(col[i] for col in cols) for i in range(q.n))
    dec = WittDecomposition(h=len(pairs), residual=residual,
                            isometry=Isometry(matrix, field))
    assert dec.isometry.transform_gram(q.gram) == dec.target_gram()
    return dec


def _unit(field, n, i):
    return tuple(field.one if j == i else field.zero for j in range(n))


def _combine(field, basis_cols, coeffs):
    n = len(basis_cols[0])
    out = [field.zero] * n
    for col, c in zip(basis_cols, coeffs):
        if c:
            for i in range(n):
                out[i] = out[i] + c * col[i]
    return tuple(out)


def hyperbolic_form(field, nplanes: int) -> QuadraticForm:
    """x0*x1 + x2*x3 + ... with `nplanes` hyperbolic planes."""
    n = 2 * nplanes
    half = field.one / field.coerce(2)
    g = [[field.zero] * n for _ in range(n)]
    for k in range(nplanes):
        g[2 * k][2 * k + 1] = half
        g[2 * k + 1][2 * k] = half
    return QuadraticForm(g, field)


def det_2x2_form(field) -> QuadraticForm:
    """The form z0*z3 - z1*z2 = det [[z0, z1], [z2, z3]]."""
    half = field.one / field.coerce(2)
    g = [[field.zero] * 4 for _ in range(4)]
    g[0][3] = g[3][0] = half
    g[1][2] = g[2][1] = -half
    return QuadraticForm(g, field)


def klein_form(field) -> QuadraticForm:
    """The Pfaffian form w0*w5 - w1*w4 + w2*w3 on alternating 4x4 matrices,
    in the Klein basis order (0,1), (0,2), (0,3), (1,2), (1,3), (2,3)."""
    half = field.one / field.coerce(2)
    g = [[field.zero] * 6 for _ in range(6)]
    g[0][5] = g[5][0] = half
    g[1][4] = g[4][1] = -half
    g[2][3] = g[3][2] = half
    return QuadraticForm(g, field)


def express_as_2x2_det(q: QuadraticForm, seed: int = 0) -> LinearMatrix:
    """Write a split 4-variable form over F_p as det of a 2x2 linear matrix.

    Returns A(x) with det A(x) = q(x) identically.  Raises NotSplit when the
    form has Witt index < 2 (equivalently: non-square discriminant class).
    """
    _require_prime_field(q, "express_as_2x2_det")
    if q.n != 4:
        raise PreconditionError("express_as_2x2_det expects a 4-variable form")
    if not q.is_nondegenerate():
        raise PreconditionError("form must be nondegenerate")
    dec = witt_split(q, seed)
    if dec.h != 2:
        raise NotSplit("form is not split: no 2x2 determinantal model")
    target = witt_split(det_2x2_form(q.field), seed)
    # q(M_q u) = H(u) and det-form(M_t u) = H(u), so z = M_t M_q^{-1} x.
    r = linalg.mat_mul(q.field, target.isometry.matrix,
                       linalg.inverse(q.field, dec.isometry.matrix))
    forms = [[r[0], r[1]], [r[2], r[3]]]
    a = LinearMatrix.from_linear_forms(q.field, 2, 4, forms)
    assert a.det_poly() == q.to_poly()
    return a


def express_as_pfaffian(q: QuadraticForm, seed: int = 0) -> LinearMatrix:
    """Write a 6-variable form isometric to the Klein form as Pf of an
    alternating 4x4 linear matrix, with Pf(A(x)) = q(x) identically."""
    _require_prime_field(q, "express_as_pfaffian")
    if q.n != 6:
        raise PreconditionError("express_as_pfaffian expects a 6-variable form")
    if not q.is_nondegenerate():
        raise PreconditionError("form must be nondegenerate")
    dec = witt_split(q, seed)
    if dec.h != 3:
        raise NotSplit("Witt index mismatch with the Klein form")
    target = witt_split(klein_form(q.field), seed)
    r = linalg.mat_mul(q.field, target.isometry.matrix,
                       linalg.inverse(q.field, dec.isometry.matrix))
    a = LinearMatrix.from_klein_rows(q.field, 6, r)
    assert a.pfaffian_poly() == q.to_poly()
    return a


__all__ = [
    "QuadraticForm", "Isometry", "WittDecomposition", "KLEIN_INDEX_PAIRS",
    "gram_disc", "diagonalize", "isotropic_vector", "witt_split",
    "hyperbolic_form", "det_2x2_form", "klein_form",
    "express_as_2x2_det", "express_as_pfaffian",
]
