"""Binary quartic forms, their invariants, and the j-invariant of tau^2 = f.

A binary quartic a*x^4 + b*x^3*y + c*x^2*y^2 + d*x*y^3 + e*y^4 carries the
classical invariants

    I = 12ae - 3bd + c^2          (degree 2)
    J = 72ace + 9bcd - 27ad^2 - 27b^2e - 2c^3   (degree 3)

with discriminant Delta = (4I^3 - J^2)/27, zero exactly when the form has a
repeated root in P^1.  When Delta != 0 the double cover tau^2 = f(x, y) is a
smooth genus-one curve with

    j = 1728 * 4I^3 / (4I^3 - J^2),

which agrees with the cross-ratio expression 256(L^2-L+1)^3 / (L^2(L-1)^2)
for any ordering of the four roots.
"""

from __future__ import annotations

from .errors import BadPrime, DegenerateBranch, PreconditionError
from .poly import MultiPoly
from .scalars import GF, QQ


class BinaryQuartic:
    """The five exact coefficients (a, b, c, d, e); all-zero is forbidden."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs, field=QQ):
        cs = tuple(field.coerce(c) for c in coeffs)
        if len(cs) != 5:
            raise PreconditionError("a binary quartic has five coefficients")
        if not any(cs):
            raise PreconditionError("the zero quartic is forbidden")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, *a):
        raise AttributeError("BinaryQuartic is immutable")

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "BinaryQuartic":
        if p.nvars != 2 or not p.is_homogeneous(4):
            raise PreconditionError("expected a homogeneous binary quartic")
        return cls([p.coeff((4 - k, k)) for k in range(5)], p.field)

    def to_poly(self) -> MultiPoly:
        return MultiPoly(self.field, 2,
                         {(4 - k, k): c for k, c in enumerate(self.coeffs)})

    def dehomogenized(self):
        """Coefficients of f(t, 1) in ascending degree (kept even when a = 0
        drops the top degree)."""
        a, b, c, d, e = self.coeffs
        coeffs = [e, d, c, b, a]
        while len(coeffs) > 1 and not coeffs[-1]:
            coeffs.pop()
        return tuple(coeffs)

    def invariants(self):
        """The triple (I, J, Delta)."""
        if self.field.char == 3:
            raise BadPrime("quartic invariants are undefined in characteristic 3")
        a, b, c, d, e = self.coeffs
        i_inv = 12 * a * e - 3 * b * d + c * c
        j_inv = (72 * a * c * e + 9 * b * c * d - 27 * a * d * d
                 - 27 * b * b * e - 2 * c**3)
        delta = (4 * i_inv**3 - j_inv**2) / self.field.coerce(27)
        return i_inv, j_inv, delta

    def discriminant(self):
        return self.invariants()[2]

    def is_squarefree(self) -> bool:
        """True when the four roots in P^1 are distinct."""
        return bool(self.discriminant())

    def j_invariant(self):
        i_inv, j_inv, delta = self.invariants()
        if not delta:
            raise DegenerateBranch("repeated branch point: j-invariant undefined")
        return 1728 * 4 * i_inv**3 / (4 * i_inv**3 - j_inv**2)

    def reduce_mod(self, p: int) -> "BinaryQuartic":
        f = GF(p)
        return BinaryQuartic([f.coerce(c) for c in self.coeffs], f)

    def __eq__(self, other):
        return (isinstance(other, BinaryQuartic) and self.field == other.field
                and self.coeffs == other.coeffs)

    __hash__ = None

    def __repr__(self):
        return f"BinaryQuartic({self.coeffs!r})"

    def __str__(self):
        return str(self.to_poly())


def quartic_invariants(f: BinaryQuartic):
    return f.invariants()


def j_from_quartic(f: BinaryQuartic):
    return f.j_invariant()
