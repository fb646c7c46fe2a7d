import random
from fractions import Fraction

import pytest

from nildga.cplx import (
    BasisChange,
    ComplexStructureEq,
    NotIntegrable,
    complex_algebra,
    coframe_to_eq,
    eq_c,
    find_adapted_basis,
    identify_underlying,
    invariants,
    is_abelian,
    is_abelian_basis,
    is_integrable_basis,
    is_nilpotent_basis,
    realify,
    reduce,
    standard_J,
    transform,
)
from nildga.exterior import Multivector, wedge
from nildga.lie import NotNilpotent, check_jacobi, classify
from nildga.notation import parse
from nildga.scalars import I, ZERO, gq
from nildga.tables import TABLE1_ROWS, random_basis_change, random_eq, sample_table1_row

H6_STD = eq_c(rho=1, B=1)
H8_STD = eq_c(A=1)


def std_coframe(g):
    e = lambda i: Multivector.mono(g.space, (i - 1,))
    return [e(1) + e(2) * I, e(3) + e(4) * I, e(5) + e(6) * I]


def span_conditions(eq):
    # the five relations equivalent to dw3, dwb3 spanning at most a line
    A, B, C, D = eq.A, eq.B, eq.C, eq.D
    return (
        eq.rho == ZERO
        and B.abs2() == C.abs2()
        and A * D.conj() == A.conj() * D
        and A * B.conj() == A.conj() * C
        and D * B.conj() == D.conj() * C
    )


def wedge_square_coeffs(eq):
    """(a, b, c) with (s*de5 - t*de6)^2 = (a s^2 + b st + c t^2) e1234."""
    g = realify(eq)
    d5, d6 = g.d1[4], g.d1[5]
    mask = 0b1111
    out = []
    for mv in (wedge(d5, d5), wedge(d5, d6) * (-2), wedge(d6, d6)):
        assert set(mv.coeffs) <= {mask}
        z = mv.coeffs.get(mask, ZERO)
        assert z.im == 0
        out.append(z.re)
    return tuple(out)


def projective_root_count(a, b, c):
    """Real solutions [s:t] of a s^2 + b st + c t^2 = 0, or 'all'."""
    if a == 0 and b == 0 and c == 0:
        return "all"
    disc = b * b - 4 * a * c
    if disc > 0:
        return 2
    return 1 if disc == 0 else 0


def rand_gauss(rng, nonzero=False):
    while True:
        z = gq(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
               Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        if z or not nonzero:
            return z


def rand_rational(rng):
    return gq(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))


def test_eq_validation():
    with pytest.raises(ValueError):
        eq_c(epsilon=1, D=1)  # D*epsilon must vanish
    with pytest.raises(ValueError):
        eq_c(epsilon=1)  # nonzero epsilon with closed third form
    eq = eq_c(epsilon="2", rho="1/2+i", B="-i")
    assert eq.rho == gq(Fraction(1, 2), 1)


def test_invariants_h6_standard():
    p = invariants(H6_STD)
    assert p.Delta1 == ZERO
    assert p.Delta2 == 0
    assert p.d_span == 2
    assert p.rankX == 1
    assert p.n == (4, 6)


def test_invariants_h8_standard():
    p = invariants(H8_STD)
    assert p.Delta1 == ZERO
    assert p.Delta2 == 0
    assert p.d_span == 1
    assert p.n == (5, 6)


def test_invariants_zero():
    p = invariants(eq_c())
    assert p.n == (6, 6)
    assert p.Delta1 == ZERO and p.Delta2 == 0
    assert p.d_span == 0 and p.rankX == 0
    assert p.sign_disc == 0 and p.abelian


def test_reduce_normalizes_epsilon():
    out = reduce(eq_c(epsilon=2, rho=1, B=1))
    assert out == eq_c(epsilon=1, rho=1, B=1)


def test_reduce_eliminates_A():
    eq = eq_c(epsilon=1, rho=1, A=3, B=1)
    out = reduce(eq)
    assert out.A == ZERO
    # independent route: dth3 = dw3 - 3 dw2 in the exterior algebra
    gc = complex_algebra(eq)
    shifted = gc.d1[2] - gc.d1[1] * 3
    assert shifted == complex_algebra(out).d1[2]


def test_reduce_idempotent_and_class_preserving():
    rng = random.Random(7)
    for _ in range(40):
        eq = random_eq(rng)
        red = reduce(eq)
        assert reduce(red) == red
        assert red.epsilon in (ZERO, gq(1))
        if red.epsilon != ZERO:
            assert red.A == ZERO and red.D == ZERO
        p0, p1 = invariants(eq), invariants(red)
        assert (p0.n, p0.d_span, p0.rankX, p0.sign_disc) == (
            p1.n, p1.d_span, p1.rankX, p1.sign_disc)
        assert classify(realify(eq)) == classify(realify(red))


def test_transform_identity():
    eq = eq_c(rho=1, B=1, C=2, D="i")
    ident = BasisChange(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert transform(eq, ident) == eq


def test_transform_scales_deltas_by_four():
    eq = eq_c(rho=1, B=1, C=2, D="i")
    sigma = BasisChange(((1, 0, 0), (0, 1, 0), (0, 0, 2)))
    p0, p1 = invariants(eq), invariants(transform(eq, sigma))
    assert p1.Delta1 == p0.Delta1 * 4
    assert p1.Delta2 == p0.Delta2 * 4


def test_transform_delta_laws_random():
    rng = random.Random(11)
    discriminating = 0
    for _ in range(40):
        eq = random_eq(rng)
        sigma = random_basis_change(rng, eq)
        p0, p1 = invariants(eq), invariants(transform(eq, sigma))
        dp, s33 = sigma.delta_prime(), sigma.s(3, 3)
        assert p1.Delta1 * gq(dp.abs2()) == p0.Delta1 * s33 * s33
        assert p1.Delta2 * dp.abs2() == p0.Delta2 * s33.abs2()
        assert p1.sign_disc == p0.sign_disc
        assert (p1.n, p1.d_span) == (p0.n, p0.d_span)
        if p0.Delta1 != ZERO or p0.Delta2 != 0:
            discriminating += 1
    assert discriminating > 10


def test_transform_rejects_incompatible_sigma():
    eq = eq_c(epsilon=1, rho=1)
    sigma = BasisChange(((1, 0, 0), (1, 1, 0), (0, 0, 1)))  # s^1_2 = 1
    with pytest.raises(ValueError):
        transform(eq, sigma)


def test_basis_change_validation():
    with pytest.raises(ValueError):
        BasisChange(((1, 0, 0), (0, 1, 0), (1, 0, 1)))  # th3 involves w1
    with pytest.raises(ValueError):
        BasisChange(((1, 1, 0), (1, 1, 0), (0, 0, 1)))  # singular block


def test_realify_h8():
    g = realify(H8_STD)
    e12 = Multivector.mono(g.space, (0, 1))
    assert g.d1[5] == e12 * (-2)
    assert all(g.d1[k].is_zero() for k in range(5))
    assert classify(g) == "h8"


def test_realify_zero_and_h6():
    assert classify(realify(eq_c())) == "h1"
    assert classify(realify(H6_STD)) == "h6"


def test_realify_random_is_lie():
    rng = random.Random(13)
    for _ in range(25):
        g = realify(random_eq(rng))
        assert check_jacobi(g)


def test_identify_examples():
    eq7 = eq_c(epsilon=1, rho=1, B=1)
    assert invariants(eq7).n == (3, 6)
    assert identify_underlying(eq7) == "h7"
    assert identify_underlying(H8_STD) == "h8"
    eq5 = eq_c(B=1)
    p5 = invariants(eq5)
    assert p5.n == (4, 6) and p5.sign_disc < 0
    assert identify_underlying(eq5) == "h5"


def test_identify_agrees_with_classify_realify():
    rng = random.Random(17)
    for row in TABLE1_ROWS:
        for k in range(3):
            eq = sample_table1_row(row, rng, k)
            assert identify_underlying(eq) == row.name
            assert classify(realify(eq)) == row.name


def test_is_abelian_flag():
    assert is_abelian(eq_c(B=1))
    assert not is_abelian(eq_c(rho=1))


def test_coframe_predicates_on_h5_presentations():
    # same real algebra, one abelian and one non-abelian presentation
    abelian_eq, nonabelian_eq = eq_c(B=1), eq_c(rho=1)
    for eq, expect in ((abelian_eq, True), (nonabelian_eq, False)):
        g = realify(eq)
        assert classify(g) == "h5"
        ws = std_coframe(g)
        assert is_abelian_basis(g, ws) is expect
        assert is_nilpotent_basis(g, ws)
        assert is_integrable_basis(g, ws)


def test_coframe_predicates_trivial_and_ordering():
    g = realify(eq_c())
    ws = std_coframe(g)
    assert is_abelian_basis(g, ws)
    assert is_nilpotent_basis(g, ws)
    assert is_integrable_basis(g, ws)
    # reordering can keep the product condition while breaking the filtration
    g6 = realify(H6_STD)
    w1, w2, w3 = std_coframe(g6)
    assert is_integrable_basis(g6, [w1, w3, w2])
    assert not is_nilpotent_basis(g6, [w1, w3, w2])
    assert not is_abelian_basis(g6, [w1, w3, w2])


def test_coframe_predicate_chain_random():
    rng = random.Random(19)
    for _ in range(25):
        eq = random_eq(rng)
        g = realify(eq)
        ws = std_coframe(g)
        assert is_nilpotent_basis(g, ws)
        assert is_integrable_basis(g, ws)
        assert is_abelian_basis(g, ws) is (eq.rho == ZERO)


def test_find_adapted_basis_trivial():
    g = parse("(0,0,0,0,0,0)")
    ws = find_adapted_basis(g, standard_J())
    assert len(ws) == 3
    assert all(c == ZERO for c in coframe_to_eq(g, ws).constants())


def test_find_adapted_basis_recovers_h6():
    g = realify(H6_STD)
    ws = find_adapted_basis(g, standard_J())
    eq = coframe_to_eq(g, ws)
    assert identify_underlying(eq) == "h6"
    assert eq == H6_STD


def test_find_adapted_basis_on_h7_catalog():
    g = parse("(0,0,0,12,13,23)")
    ws = find_adapted_basis(g, standard_J())
    eq = coframe_to_eq(g, ws)
    assert eq.rho != ZERO
    assert invariants(eq).n == (3, 6)
    assert identify_underlying(eq) == "h7"


def test_find_adapted_basis_errors():
    g = parse("(0,0,0,0,12,15)")  # h17 equations
    with pytest.raises(ValueError):
        find_adapted_basis(g, [[ZERO] * 6 for _ in range(6)])
    with pytest.raises(NotIntegrable):
        find_adapted_basis(g, standard_J())
    solvable = parse("(0,12,0,0,0,0)")
    with pytest.raises(NotNilpotent):
        find_adapted_basis(solvable, standard_J())


def test_span_conditions_iff_d_span_small():
    rng = random.Random(23)
    low, high = 0, 0
    for trial in range(300):
        if trial % 3 == 0:
            # crafted stratum satisfying all five relations
            eps = rng.choice((ZERO, gq(1)))
            A = rand_rational(rng)
            D = ZERO if eps != ZERO else rand_rational(rng)
            B = rand_gauss(rng)
            if eps != ZERO and A == B == ZERO:
                continue
            eq = eq_c(eps, ZERO, A, B, B.conj(), D)
        else:
            eq = random_eq(rng)
        small = invariants(eq).d_span <= 1
        assert small == span_conditions(eq)
        if small:
            low += 1
            assert invariants(eq).sign_disc == 0
        else:
            high += 1
    assert low > 50 and high > 50


def test_simple_form_count_matches_discriminant():
    rng = random.Random(29)
    seen = set()
    for trial in range(150):
        if trial % 5 == 0:
            # dependent span: the quadratic degenerates to a single root
            B = rand_gauss(rng)
            eq = eq_c(ZERO, ZERO, rand_rational(rng), B, B.conj(),
                      rand_rational(rng))
        else:
            eq = random_eq(rng)
        p = invariants(eq)
        a, b, c = wedge_square_coeffs(eq)
        # coefficients agree with the invariant values exactly
        assert a == -4 * (p.Delta2 + p.Delta1.re)
        assert c == -4 * (p.Delta2 - p.Delta1.re)
        assert b == 8 * p.Delta1.im
        count = projective_root_count(a, b, c)
        seen.add(count)
        if count == 2:
            assert p.sign_disc > 0
        elif count == 0:
            assert p.sign_disc < 0
        else:
            assert p.sign_disc == 0
    assert {0, 1, 2} <= seen


def test_delta_bounds_for_abelian_strata():
    rng = random.Random(31)
    for _ in range(60):
        # epsilon = rho = 0 with singular X: Delta2 is nonnegative
        mu = rand_gauss(rng)
        C, D = rand_gauss(rng), rand_gauss(rng)
        eq = eq_c(ZERO, ZERO, mu * C, mu * D, C, D)
        p = invariants(eq)
        assert p.Delta1 == ZERO
        assert p.Delta2 >= 0
    for _ in range(60):
        # epsilon = 1, rho = 0 reduced: Delta2^2 - |Delta1|^2 is a square
        B, C = rand_gauss(rng), rand_gauss(rng)
        if B == ZERO and C == ZERO:
            continue
        eq = eq_c(gq(1), ZERO, ZERO, B, C, ZERO)
        p = invariants(eq)
        gap = p.Delta2 * p.Delta2 - p.Delta1.abs2()
        quarter = Fraction(1, 4) * (B.abs2() - C.abs2()) ** 2
        assert gap == quarter
        assert gap >= 0
        assert (gap == 0) == (p.d_span <= 1)
