"""Sampling and invariants for rank-degenerate spaces of linear matrices.

Two parallel settings share the machinery:

* pencil case: 2x2 matrices of linear forms in four variables whose
  determinant lies in the span of the pencil's quadrics;
* net case: alternating 4x4 matrices of linear forms in six variables
  whose Pfaffian lies in the span of the net's quadrics.

For such a matrix A, the span coordinates B (degree 2 in the entries of A)
and the coefficient determinant T (degree 4, resp. 6: det of the row-major
flattenings of A_0..A_3, resp. of their Klein coordinate vectors) generate
the invariants of the natural SL x SL, resp. SL(4), action.  On samples the
single relation T^2 = c * disc(B) is verified, where disc is the system's
discriminant polynomial and c a constant of the chosen Gram normalization:
it is measured from the first sample and cross-checked on all others.

Samples are drawn over F_p by picking a base point lam with disc(lam) != 0
whose member splits, and factoring that member through its Witt
decomposition, normalized so that det A(x) (or Pf A(x)) equals the member
exactly; the span coordinates are then lam on the nose.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple

from . import linalg
from .errors import (BadReduction, InconsistentConstant, NoSplitMember,
                     NotInSpan, NotSplit, PreconditionError)
from .polymat import KLEIN_INDEX_PAIRS, LinearMatrix
from .quadforms import express_as_2x2_det, express_as_pfaffian
from .scalars import GF, projective_points
from .systems import (NetOfQuadrics, PencilOfQuadrics, discriminant_poly)


class InvariantData(NamedTuple):
    """Span coordinates and coefficient determinant of a linear matrix."""

    b: tuple
    t: object


def b_coordinates(a: LinearMatrix, system) -> tuple:
    """Solve det A(x) = sum B_i q_i (pencil) or Pf A(x) = sum B_i q_i (net).

    The solution is unique because the system's quadrics are linearly
    independent; a nonzero residual raises NotInSpan.
    """
    forms = system.forms
    lhs = _matrix_form(a)
    field = a.field
    monomials = set(lhs.terms)
    cols = [q.to_poly() for q in forms]
    for c in cols:
        monomials.update(c.terms)
    monomials = sorted(monomials)
    mat = [[c.coeff(e) for c in cols] for e in monomials]
    rhs = [lhs.coeff(e) for e in monomials]
    sol = linalg.solve(field, mat, rhs)
    if sol is None:
        raise NotInSpan("det/Pf of the matrix is not a combination of the system's quadrics")
    return sol


def _matrix_form(a: LinearMatrix):
    if a.size == 2:
        return a.det_poly()
    if a.size == 4 and a.alternating:
        return a.pfaffian_poly()
    raise PreconditionError("expected a 2x2 matrix or an alternating 4x4 matrix")


def t_invariant(a: LinearMatrix):
    """Coefficient determinant of A(x) = sum A_i x_i.

    Pencil shape (2x2 in four variables): det of the 4x4 matrix whose i-th
    column is A_i flattened row-major.  Net shape (alternating 4x4 in six
    variables): det of the 6x6 matrix of Klein coordinate columns.
    """
    field = a.field
    if a.size == 2 and a.nvars == 4:
        cols = [[mat[0][0], mat[0][1], mat[1][0], mat[1][1]] for mat in a.coeff_mats]
    elif a.size == 4 and a.nvars == 6 and a.alternating:
        cols = [list(a.klein_coordinates(i)) for i in range(6)]
    else:
        raise PreconditionError(
            "t_invariant expects 2x2 over four variables or alternating 4x4 over six")
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols))]
    return linalg.det(field, rows)


def invariants(a: LinearMatrix, system) -> InvariantData:
    return InvariantData(b=b_coordinates(a, system), t=t_invariant(a))


@dataclass(frozen=True)
class SystemPoint:
    """A sampled matrix together with its system mod p and base point.

    Invariant (checked at construction): det/Pf of the matrix equals the
    member at ``base_point`` exactly, so the span coordinates are the base
    point itself.
    """

    matrix: LinearMatrix
    system: object
    base_point: tuple
    b: tuple

    @staticmethod
    def build(matrix: LinearMatrix, system, base_point: tuple) -> "SystemPoint":
        b = b_coordinates(matrix, system)
        assert tuple(b) == tuple(base_point)
        return SystemPoint(matrix, system, tuple(base_point), tuple(b))


def _reduced(system, p):
    if isinstance(system, (PencilOfQuadrics, NetOfQuadrics)):
        if system.field.char == 0:
            return system.reduce_mod(p)
        if system.field.char == p:
            return system
        raise BadReduction(f"system already lives over GF({system.field.char})")
    raise PreconditionError("expected a pencil or a net")


def sample_point(system, p: int, seed: int = 0) -> SystemPoint:
    """Draw a split member over F_p and factor it into a SystemPoint.

    Sweeps the base's projective points in a seeded pseudorandom order and
    keeps the first lam with disc(lam) != 0 whose member is split; raises
    NoSplitMember when the full sweep finds none (possible for tiny p) and
    BadReduction when the reduced discriminant vanishes identically.
    """
    red = _reduced(system, p)
    pencil_case = isinstance(red, PencilOfQuadrics)
    disc = discriminant_poly(red)
    if disc.is_zero():
        raise BadReduction(f"discriminant vanishes identically mod {p}")
    gf = GF(p)
    points = list(projective_points(gf, 1 if pencil_case else 2))
    rng = random.Random(seed)
    rng.shuffle(points)
    for lam in points:
        if not disc.eval(lam):
            continue
        member = red.member(lam)
        try:
            if pencil_case:
                a = express_as_2x2_det(member, seed=seed)
            else:
                a = express_as_pfaffian(member, seed=seed)
        except NotSplit:
            continue
        return SystemPoint.build(a, red, lam)
    raise NoSplitMember(f"no nondegenerate split member over F_{p}")


@dataclass(frozen=True)
class RelationReport:
    """Outcome of checking T^2 = c * disc(B) across samples."""

    case: str
    p: int
    samples: int
    seed: int
    c: object
    passed: int
    failed: tuple

    @property
    def ok(self) -> bool:
        return not self.failed

    def raise_if_failed(self):
        if self.failed:
            raise InconsistentConstant(
                f"constant mismatch on {len(self.failed)} of {self.samples} samples; "
                f"first witness: {self.failed[0]}")

    def to_json(self):
        return {
            "case": self.case,
            "p": self.p,
            "samples": self.samples,
            "seed": self.seed,
            "c": self.c.v,
            "passed": self.passed,
            "failed": [
                {
                    "index": w["index"],
                    "base_point": [x.v for x in w["base_point"]],
                    "t": w["t"].v,
                    "disc_b": w["disc_b"].v,
                }
                for w in self.failed
            ],
        }


def verify_relation(system, p: int, count: int, seed: int = 0) -> RelationReport:
    """Sample ``count`` points mod p and check T^2 = c * disc(B) on each.

    c is measured on the first sample (every sample has disc(B) != 0 by
    construction) and must agree with all others; disagreements are
    collected as witnesses rather than raised, so callers can report them.
    """
    if count < 2:
        raise PreconditionError("need at least two samples to cross-check the constant")
    red = _reduced(system, p)
    case = "pencil" if isinstance(red, PencilOfQuadrics) else "net"
    disc = discriminant_poly(red)
    c = None
    passed, failed = 0, []
    for i in range(count):
        pt = sample_point(red, p, seed + i)
        t = t_invariant(pt.matrix)
        disc_b = disc.eval(pt.b)
        if c is None:
            c = t * t / disc_b
        if t * t == c * disc_b:
            passed += 1
        else:
            failed.append({"index": i, "base_point": pt.base_point,
                           "t": t, "disc_b": disc_b})
    return RelationReport(case=case, p=p, samples=count, seed=seed, c=c,
                          passed=passed, failed=tuple(failed))


@dataclass(frozen=True)
class InvarianceReport:
    b_before: tuple
    b_after: tuple
    t_before: object
    t_after: object

    @property
    def b_equal(self) -> bool:
        return self.b_before == self.b_after

    @property
    def t_equal(self) -> bool:
        return self.t_before == self.t_after

    @property
    def ok(self) -> bool:
        return self.b_equal and self.t_equal


def group_invariance_check(a: LinearMatrix, system, g, h=None) -> InvarianceReport:
    """Check that B and T are unchanged under the unimodular action.

    Pencil case: (g, h) in SL2 x SL2 acting by A_i -> g A_i h^T.
    Net case: g in SL4 acting by A_i -> g A_i g^T (h must be omitted).
    Non-unimodular inputs are rejected.
    """
    field = a.field
    if a.size == 2:
        if h is None:
            raise PreconditionError("pencil case needs a pair (g, h)")
        for m in (g, h):
            if linalg.det(field, m) != field.one:
                raise PreconditionError("group elements must have determinant 1")
        transformed = a.left_right_transform(g, h)
    elif a.size == 4:
        if h is not None:
            raise PreconditionError("net case takes a single SL(4) element")
        if linalg.det(field, g) != field.one:
            raise PreconditionError("group elements must have determinant 1")
        transformed = a.congruence_transform(g)
    else:
        raise PreconditionError("unsupported matrix shape")
    before = invariants(a, system)
    after = invariants(transformed, system)
    return InvarianceReport(b_before=tuple(before.b), b_after=tuple(after.b),
                            t_before=before.t, t_after=after.t)


def wedge2_matrix(field, g):
    """The induced action on Klein coordinates: the 6x6 matrix of 2x2 minors
    of g, indexed by the Klein pair order.  Its determinant is det(g)^3."""
    rows = []
    for (i, j) in KLEIN_INDEX_PAIRS:
        row = []
        for (k, l) in KLEIN_INDEX_PAIRS:
            row.append(g[i][k] * g[j][l] - g[i][l] * g[j][k])
        rows.append(tuple(row))
    return tuple(rows)


def random_sl(field, n: int, rng) -> tuple:
    """A seeded pseudorandom element of SL_n(F_p)."""
    while True:
        m = [[field.random_element(rng) for _ in range(n)] for _ in range(n)]
        d = linalg.det(field, m)
        if d:
            inv = field.one / d
            m[0] = [x * inv for x in m[0]]
            return tuple(tuple(r) for r in m)


def random_gl(field, n: int, rng) -> tuple:
    """A seeded pseudorandom element of GL_n(F_p)."""
    while True:
        m = tuple(tuple(field.random_element(rng) for _ in range(n)) for _ in range(n))
        if linalg.det(field, m):
            return m
