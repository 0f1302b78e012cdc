import random
from fractions import Fraction

import pytest

from k3lab import (GF, QQ, BadReduction, BinaryQuartic, DegenerateBranch,
                   DegenerateSystem, MultiPoly, NetOfQuadrics,
                   PencilOfQuadrics, QuadraticForm, count_points,
                   discriminant_poly, jacobian_j_invariant,
                   moduli_double_cover, net_discriminant, pencil_discriminant,
                   pic2_double_cover, sextic_smoothness_probe)
from oracles import cofactor_det, cross_ratio_j, uni_sweep_count

VAR = lambda i, n=2: MultiPoly.var(QQ, n, i)


def rand_sym(rng, n, lo=-4, hi=4):
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = Fraction(rng.randint(lo, hi))
    return g


def rand_pencil(rng):
    while True:
        try:
            return PencilOfQuadrics(QuadraticForm(rand_sym(rng, 4), QQ),
                                    QuadraticForm(rand_sym(rng, 4), QQ))
        except DegenerateSystem:
            continue


def rand_net(rng):
    while True:
        try:
            return NetOfQuadrics(QuadraticForm(rand_sym(rng, 6), QQ),
                                 QuadraticForm(rand_sym(rng, 6), QQ),
                                 QuadraticForm(rand_sym(rng, 6), QQ))
        except DegenerateSystem:
            continue


# -- pencil discriminant ------------------------------------------------------

def test_diagonal_pencil_product_formula():
    pencil = PencilOfQuadrics.from_diagonals([1, 1, 1, 1], [0, 1, 2, 3])
    d = pencil_discriminant(pencil).to_poly()
    l0, l1 = VAR(0), VAR(1)
    expected = l0 * (l0 + l1) * (l0 + 2 * l1) * (l0 + 3 * l1)
    assert d == expected


def test_repeated_diagonal_entry_not_squarefree():
    pencil = PencilOfQuadrics.from_diagonals([1, 1, 1, 1], [0, 0, 1, 2])
    assert not pencil_discriminant(pencil).is_squarefree()


def test_pencil_disc_matches_cofactor_oracle():
    rng = random.Random(50)
    for _ in range(20):
        pencil = rand_pencil(rng)
        sym = [[_symbolic_entry(pencil, i, j) for j in range(4)] for i in range(4)]
        oracle = cofactor_det(sym)
        try:
            assert pencil_discriminant(pencil).to_poly() == oracle
        except DegenerateSystem:
            assert oracle.is_zero()


def _symbolic_entry(system, i, j):
    forms = system.forms
    k = len(forms)
    terms = {}
    for v, q in enumerate(forms):
        if q.gram[i][j]:
            e = [0] * k
            e[v] = 1
            terms[tuple(e)] = q.gram[i][j]
    return MultiPoly(QQ, k, terms)


def test_everywhere_singular_pencil_raises():
    pencil = PencilOfQuadrics.from_diagonals([1, 0, 0, 0], [0, 1, 0, 0])
    with pytest.raises(DegenerateSystem):
        pencil_discriminant(pencil)


# -- double cover over P^1 ----------------------------------------------------

def test_pic2_cover_smooth_and_singular():
    smooth = PencilOfQuadrics.from_diagonals([1, 1, 1, 1], [0, 1, 2, 3])
    cover = pic2_double_cover(smooth)
    assert cover.base_dim == 1 and cover.branch_degree == 4
    assert cover.verdict.status == "smooth"
    assert cover.equation.startswith("tau^2 = ")
    singular = PencilOfQuadrics.from_diagonals([1, 1, 1, 1], [0, 0, 1, 2])
    assert pic2_double_cover(singular).verdict.status == "singular"


def test_pic2_random_squarefree_smooth():
    rng = random.Random(51)
    done = 0
    while done < 20:
        pencil = rand_pencil(rng)
        try:
            branch = pencil_discriminant(pencil)
        except DegenerateSystem:
            continue
        if branch.is_squarefree():
            assert pic2_double_cover(pencil).verdict.status == "smooth"
            done += 1


# -- j-invariants -------------------------------------------------------------

def test_j_symmetric_roots_pencil():
    pencil = PencilOfQuadrics.from_diagonals([1, 1, 1, 1], [1, -1, 2, -2])
    # branch roots are t = -a_i
    assert jacobian_j_invariant(pencil) == cross_ratio_j((-1, 1, -2, 2))


def test_j_harmonic_branch_is_1728():
    # branch roots {0, 1, -1, inf}: a harmonic quadruple
    pencil = PencilOfQuadrics.from_diagonals([1, 1, 1, 0], [0, -1, 1, 1])
    assert jacobian_j_invariant(pencil) == 1728


def test_j_error_on_degenerate_branch():
    pencil = PencilOfQuadrics.from_diagonals([1, 1, 1, 1], [0, 0, 1, 2])
    with pytest.raises(DegenerateBranch):
        jacobian_j_invariant(pencil)


def test_j_invariant_under_affine_root_maps():
    rng = random.Random(52)
    count = 0
    while count < 50:
        a = rng.sample(range(-8, 9), 4)
        u = rng.choice([x for x in range(-5, 6) if x])
        v = rng.randint(-5, 5)
        p1 = PencilOfQuadrics.from_diagonals([1] * 4, a)
        p2 = PencilOfQuadrics.from_diagonals([1] * 4, [u * x + v for x in a])
        assert jacobian_j_invariant(p1) == jacobian_j_invariant(p2)
        count += 1


# -- discriminant covariance --------------------------------------------------

def test_disc_covariant_under_recombination():
    rng = random.Random(53)
    count = 0
    while count < 50:
        pencil = rand_pencil(rng)
        s = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if s[0][0] * s[1][1] - s[0][1] * s[1][0] == 0:
            continue
        mix = lambda i: QuadraticForm(
            [[s[i][0] * pencil.q1.gram[a][b] + s[i][1] * pencil.q2.gram[a][b]
              for b in range(4)] for a in range(4)], QQ)
        try:
            other = PencilOfQuadrics(mix(0), mix(1))
        except DegenerateSystem:
            continue
        d = discriminant_poly(pencil)
        d2 = discriminant_poly(other)
        x0, x1 = VAR(0), VAR(1)
        subs = {j: s[0][j] * x0 + s[1][j] * x1 for j in range(2)}
        assert d2 == d.substitute(subs)
        count += 1


def test_disc_scales_by_det_squared_under_coordinate_change():
    rng = random.Random(54)
    from k3lab import linalg

    count = 0
    while count < 50:
        pencil = rand_pencil(rng)
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(4)]
        det_m = linalg.det(QQ, m)
        if det_m == 0:
            continue
        mt = linalg.transpose(m)

        def push(q):
            g = linalg.mat_mul(QQ, linalg.mat_mul(QQ, mt, q.gram), m)
            return QuadraticForm(g, QQ)

        moved = PencilOfQuadrics(push(pencil.q1), push(pencil.q2))
        lhs = discriminant_poly(moved)
        rhs = discriminant_poly(pencil) * (det_m * det_m)
        assert lhs == rhs
        count += 1


# -- nets ----------------------------------------------------------------------

def test_diagonal_net_is_product_of_six_lines():
    net = NetOfQuadrics.from_diagonals(
        [1] * 6, [0, 1, 2, 3, 4, 5], [0, 1, 4, 9, 16, 25])
    d = net_discriminant(net)
    l = [MultiPoly.var(QQ, 3, i) for i in range(3)]
    expected = MultiPoly.const(QQ, 3, 1)
    for i in range(6):
        expected = expected * (l[0] + i * l[1] + i * i * l[2])
    assert d == expected


def test_random_net_degree_six():
    rng = random.Random(55)
    done = 0
    while done < 20:
        net = rand_net(rng)
        d = net_discriminant(net)
        if d.is_zero():
            continue
        assert d.degree() == 6 and d.is_homogeneous(6)
        done += 1


def test_net_disc_matches_cofactor_oracle():
    rng = random.Random(56)
    for _ in range(3):
        net = rand_net(rng)
        sym = [[_symbolic_entry(net, i, j) for j in range(6)] for i in range(6)]
        assert net_discriminant(net) == cofactor_det(sym)


def test_dependent_net_rejected_at_construction():
    q1 = QuadraticForm(rand_sym(random.Random(57), 6), QQ)
    q2 = QuadraticForm(rand_sym(random.Random(58), 6), QQ)
    q3 = QuadraticForm([[q1.gram[i][j] + q2.gram[i][j] for j in range(6)]
                        for i in range(6)], QQ)
    with pytest.raises(DegenerateSystem):
        NetOfQuadrics(q1, q2, q3)


# -- sextic probe ---------------------------------------------------------------

def test_probe_six_lines_singular_with_crossing_witness():
    net = NetOfQuadrics.from_diagonals(
        [1] * 6, [0, 1, 2, 3, 4, 5], [0, 1, 4, 9, 16, 25])
    d = net_discriminant(net)
    verdict = sextic_smoothness_probe(d, (7,))
    assert verdict.status == "singular"
    p, pt = verdict.witness
    dp = d.reduce_mod(p)
    assert dp.eval(pt) == 0
    # a singular point of a reduced product of distinct lines lies on >= 2 lines
    gf = GF(p)
    lines = [[gf.one, gf.element(i), gf.element(i * i)] for i in range(6)]
    vanishing = sum(1 for ln in lines
                    if sum(c * x for c, x in zip(ln, pt)) == gf.zero)
    assert vanishing >= 2


def test_probe_fermat_probably_smooth():
    l = [MultiPoly.var(QQ, 3, i) for i in range(3)]
    fermat = l[0]**6 + l[1]**6 + l[2]**6
    verdict = sextic_smoothness_probe(fermat, (7, 11, 13))
    assert verdict.status == "probably-smooth"
    assert verdict.primes == (7, 11, 13)


def test_probe_cone_singular_at_vertex():
    l = [MultiPoly.var(QQ, 3, i) for i in range(3)]
    cone = l[0]**6 + l[1]**6
    verdict = sextic_smoothness_probe(cone, (7,))
    assert verdict.status == "singular"
    assert tuple(c.v for c in verdict.witness[1]) == (0, 0, 1)


def test_probe_rejects_bad_prime():
    from k3lab import BadPrime
    l = [MultiPoly.var(QQ, 3, i) for i in range(3)]
    f = l[0]**6 * Fraction(1, 7) + l[1]**6 + l[2]**6
    with pytest.raises(BadPrime):
        sextic_smoothness_probe(f, (7,))


def test_moduli_double_cover_diagonal_singular():
    net = NetOfQuadrics.from_diagonals(
        [1] * 6, [0, 1, 2, 3, 4, 5], [0, 1, 4, 9, 16, 25])
    cover = moduli_double_cover(net)
    assert cover.base_dim == 2 and cover.branch_degree == 6
    assert cover.verdict.status == "singular"


def test_moduli_double_cover_error_on_vanishing_discriminant():
    # three coordinate squares in six variables: every member has rank <= 3
    def coord_square(i):
        g = [[Fraction(0)] * 6 for _ in range(6)]
        g[i][i] = Fraction(1)
        return QuadraticForm(g, QQ)

    net = NetOfQuadrics(coord_square(0), coord_square(1), coord_square(2))
    assert net_discriminant(net).is_zero()
    with pytest.raises(DegenerateSystem):
        moduli_double_cover(net)


def test_moduli_double_cover_dense_net_probably_smooth():
    rng = random.Random(59)
    while True:
        net = rand_net(rng)
        d = net_discriminant(net)
        if d.is_zero():
            continue
        cover = moduli_double_cover(net)
        if cover.verdict.status == "probably-smooth":
            assert cover.verdict.primes == (7, 11, 13)
            break


# -- point counts ----------------------------------------------------------------

def test_count_pencil_points_against_direct_enumeration():
    pencil = PencilOfQuadrics.from_diagonals([1, 1, 1, 1], [0, 1, 2, 3])
    n = count_points(pencil, 5)
    gf = GF(5)
    from k3lab import projective_points

    pts = list(projective_points(gf, 3))
    assert len(pts) == 156
    red = pencil.reduce_mod(5)
    manual = sum(1 for pt in pts
                 if red.q1.eval(pt) == 0 and red.q2.eval(pt) == 0)
    assert n == manual


def test_count_hyperelliptic_against_sweep():
    branch = BinaryQuartic(
        pencil_discriminant(
            PencilOfQuadrics.from_diagonals([1] * 4, [0, 1, 2, 3])).coeffs)
    n = count_points(branch, 5)
    assert n == uni_sweep_count(branch, 5)


def test_twist_dichotomy_small():
    rng = random.Random(60)
    done = 0
    while done < 3:
        a = rng.sample(range(0, 12), 4)
        pencil = PencilOfQuadrics.from_diagonals([1] * 4, a)
        branch = pencil_discriminant(pencil)
        for p in (5, 7, 11, 13):
            try:
                n_c = count_points(pencil, p)
                n_h = count_points(branch, p)
            except BadReduction:
                continue
            assert n_c in (n_h, 2 * p + 2 - n_h)
        done += 1


def test_count_bad_reduction():
    pencil = PencilOfQuadrics.from_diagonals([1] * 4, [0, 1, 2, 3])
    # disc has roots 0, -1, -2, -3; mod 3 the roots 0 and -3 collide
    with pytest.raises(BadReduction):
        count_points(pencil, 3)


def test_count_degree_drop_infinity_rule():
    # branch quartic x^3 y - x y^3 dehomogenizes to the cubic t^3 - t, whose
    # smooth model has exactly one point at infinity; over F_5 the curve
    # tau^2 = t^3 - t has 7 affine points, so 8 in total
    pencil = PencilOfQuadrics.from_diagonals([1, 1, 1, 0], [0, -1, 1, 1])
    branch = pencil_discriminant(pencil)
    assert branch.coeffs == (0, 1, 0, -1, 0)
    assert count_points(branch, 5) == 8
    n_curve = count_points(pencil, 5)
    assert n_curve in (8, 2 * 5 + 2 - 8)
