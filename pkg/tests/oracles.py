"""Independent oracle implementations used by the test suite.

Everything here recomputes results by a different route than the library:
permutation-sum determinants, direct cofactor recursion, term-by-term
convolution, cross-ratio j-invariants, exhaustive isotropic searches.
"""

from fractions import Fraction
from itertools import permutations

from k3lab import MultiPoly


def perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(entries):
    """Permutation-sum determinant of a matrix of MultiPoly entries."""
    n = len(entries)
    field, nvars = entries[0][0].field, entries[0][0].nvars
    acc = MultiPoly.zero(field, nvars)
    for perm in permutations(range(n)):
        term = MultiPoly.const(field, nvars, field.one)
        for i in range(n):
            term = term * entries[i][perm[i]]
        acc = acc + term if perm_sign(perm) > 0 else acc - term
    return acc


def cofactor_det(entries):
    """Plain first-row cofactor expansion (no memoization, fresh code)."""
    n = len(entries)
    field, nvars = entries[0][0].field, entries[0][0].nvars
    if n == 1:
        return entries[0][0]
    acc = MultiPoly.zero(field, nvars)
    for j in range(n):
        minor = [[entries[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = entries[0][j] * cofactor_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def scalar_leibniz_det(field, rows):
    n = len(rows)
    acc = field.zero
    for perm in permutations(range(n)):
        term = field.one
        for i in range(n):
            term = term * rows[i][perm[i]]
        acc = acc + term if perm_sign(perm) > 0 else acc - term
    return acc


def pfaffian_three_term(entries):
    """Pf of a 4x4 alternating matrix: m01*m23 - m02*m13 + m03*m12."""
    m = entries
    return m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2]


def naive_convolution(p, q):
    """Term-by-term double-loop product, assembled without MultiPoly.__mul__."""
    acc = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            c = c1 * c2
            if e in acc:
                acc[e] = acc[e] + c
            else:
                acc[e] = c
    return MultiPoly(p.field, p.nvars, acc)


def cross_ratio_j(roots):
    """j from the cross-ratio of four distinct elements of Q."""
    r1, r2, r3, r4 = (Fraction(r) for r in roots)
    lam = ((r1 - r3) * (r2 - r4)) / ((r1 - r4) * (r2 - r3))
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)


def quartic_from_roots(roots, scale=1):
    """The binary quartic scale * prod (x - r_i y) as coefficient tuple."""
    poly = [Fraction(scale)]
    for r in roots:
        r = Fraction(r)
        # multiply by (x - r*y): poly[i] tracks the coefficient of x^i
        new = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i] += c * (-r)
            new[i + 1] += c
        poly = new
    # poly[i] is the coefficient of x^i y^(4-i); return (a, b, c, d, e)
    return (poly[4], poly[3], poly[2], poly[1], poly[0])


def uni_sweep_count(quartic, p):
    """Points of the smooth model of tau^2 = f(t) over F_p by direct sweep."""
    from k3lab import GF

    gf = GF(p)
    a, b, c, d, e = (gf.coerce(x) for x in quartic.coeffs)
    count = 0
    for t in gf.elements():
        val = a * t**4 + b * t**3 + c * t**2 + d * t + e
        if val == 0:
            count += 1
        elif gf.legendre(val) == 1:
            count += 2
    if a == 0:
        count += 1
    elif gf.legendre(a) == 1:
        count += 2
    return count


def row_reduction_rank(field, rows):
    """Row-echelon rank with no pivot normalization (independent of linalg)."""
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c] / mat[rank][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def all_vectors(field, n):
    total = field.p**n
    for idx in range(total):
        v, m = [], idx
        for _ in range(n):
            v.append(field.element(m % field.p))
            m //= field.p
        yield tuple(v)


def exhaustive_isotropic(q):
    """All nonzero isotropic vectors of a form over a small prime field."""
    out = []
    for v in all_vectors(q.field, q.n):
        if any(v) and not q.eval(v):
            out.append(v)
    return out


def witt_index_exhaustive(q):
    """Max dimension of a totally isotropic subspace, by projective search."""
    field = q.field
    # normalized projective representatives of isotropic vectors
    iso = []
    for v in exhaustive_isotropic(q):
        lead = next(i for i in range(q.n) if v[i])
        if v[lead] == field.one:
            iso.append(v)
    best = 0

    def extend(chosen, candidates):
        nonlocal best
        best = max(best, len(chosen))
        for idx, v in enumerate(candidates):
            if _dependent_on(field, chosen, v):
                continue
            rest = [w for w in candidates[idx + 1:] if not q.bilinear(v, w)]
            extend(chosen + [v], rest)

    extend([], iso)
    return best


def _dependent_on(field, chosen, v):
    if not chosen:
        return False
    rows = [list(u) for u in chosen] + [list(v)]
    return row_reduction_rank(field, rows) < len(rows)
