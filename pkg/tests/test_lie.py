import random
from fractions import Fraction

import pytest

from nildga.exterior import BasisSpace, LinearMap, Multivector, masks_of_degree
from nildga.lie import (
    LieAlgebra,
    NoMatch,
    NotNilpotent,
    ascending_series,
    betti,
    ce_d,
    change_basis,
    check_jacobi,
    classify,
    d_matrix,
    derived_series,
    dual_sequence,
    fingerprint,
    lower_central,
    wedge_pencil_rank,
)
from nildga.notation import CATALOG_EQUATIONS, catalog, catalog_lookup, parse
from nildga.scalars import ONE, ZERO, gq
from nildga.tables import random_unitriangular


def test_catalog_satisfies_jacobi():
    for name, g in catalog().items():
        assert check_jacobi(g), name


def test_ce_d_leibniz_on_h6():
    g = catalog_lookup("h6")  # de5 = e12, de6 = e13
    e = lambda *idx: Multivector.mono(g.space, tuple(i - 1 for i in idx))
    assert ce_d(g, e(5)) == e(1, 2)
    assert ce_d(g, e(6)) == e(1, 3)
    lhs = ce_d(g, e(5, 6))
    rhs = (Multivector.mono(g.space, (0, 1, 5))
           - Multivector.mono(g.space, (0, 2, 4)))
    assert lhs == rhs  # d(e5^e6) = e12^e6 - e5^e13


def test_ce_d_zero_on_abelian():
    g = catalog_lookup("h1")
    for k in range(1, 4):
        assert d_matrix(g, k).rank() == 0


def test_ce_d_on_h8():
    g = catalog_lookup("h8")
    assert ce_d(g, Multivector.mono(g.space, (5,))) == Multivector.mono(
        g.space, (0, 1))


def test_check_jacobi_rejects_tampered_constants():
    assert check_jacobi(parse("(0,0,0,12,13+42,14+23)"))  # h15
    bad = parse("(0,0,0,12,34,15)")
    assert not check_jacobi(bad)


def test_d_squared_iff_jacobi_random_constants():
    """Both directions on random structure-constant draws."""
    rng = random.Random(0)
    sp = BasisSpace(6, tuple(f"e{i}" for i in range(1, 7)))
    seen_bad = seen_good = 0
    for _ in range(400):
        d1 = [Multivector.zero(sp) for _ in range(6)]
        for k in rng.sample(range(3, 6), rng.randint(1, 3)):
            i = rng.randrange(0, k)
            j = rng.randrange(0, k)
            if i != j:
                d1[k] = d1[k] + Multivector.mono(sp, (i, j), rng.choice((1, -1, 2)))
        g = LieAlgebra(sp, d1)
        dd_zero = all(not ce_d(g, ce_d(g, Multivector.mono(sp, (k,))))
                      for k in range(6))
        assert dd_zero == check_jacobi(g)
        seen_bad += not dd_zero
        seen_good += dd_zero
    assert seen_bad > 20 and seen_good > 20


def test_dual_sequence_examples():
    assert dual_sequence(catalog_lookup("h7")) == (3, 6)
    assert dual_sequence(catalog_lookup("h1")) == (6,)
    assert dual_sequence(parse("(0,0,0,0,12,14+25)")) == (4, 5, 6)


def test_lower_central_examples():
    assert lower_central(catalog_lookup("h1")) == (6, 0)
    assert lower_central(catalog_lookup("h8")) == (6, 1, 0)
    assert lower_central(catalog_lookup("h7")) == (6, 3, 0)


def test_series_duality():
    # dim g_p + n_p = dim, pairing the lower central series with the dual one
    for name in CATALOG_EQUATIONS:
        g = catalog_lookup(name)
        lcs = lower_central(g)
        dual = dual_sequence(g)
        assert len(lcs) == len(dual) + 1
        for p, np in enumerate(dual, start=1):
            assert lcs[p] + np == 6


def test_ascending_series_examples():
    assert ascending_series(catalog_lookup("h1")) == (6,)
    assert ascending_series(catalog_lookup("h7")) == (3, 6)


def test_derived_series_examples():
    assert derived_series(catalog_lookup("h1")) == (6, 0)
    assert derived_series(catalog_lookup("h7")) == (6, 3, 0)
    assert derived_series(catalog_lookup("h8")) == (6, 1, 0)


def test_betti_examples():
    assert betti(catalog_lookup("h1"), 1) == 6
    assert betti(catalog_lookup("h7"), 1) == 3
    assert betti(catalog_lookup("h8"), 2) == 11


def test_betti_against_sympy_nullspaces():
    import sympy

    for name in ("h6", "h8", "h15"):
        g = catalog_lookup(name)
        for k in (1, 2):
            dk = d_matrix(g, k)
            dk1 = d_matrix(g, k - 1)
            mk = sympy.Matrix([[sympy.Rational(str(c.re)) for c in row]
                               for row in dk.matrix])
            mk1 = sympy.Matrix([[sympy.Rational(str(c.re)) for c in row]
                                for row in dk1.matrix]) if dk1.matrix else None
            dim_k = len(list(masks_of_degree(6, k)))
            nullity = dim_k - mk.rank()
            boundary = mk1.rank() if mk1 is not None else 0
            assert betti(g, k) == nullity - boundary, (name, k)


def test_wedge_pencil_rank_examples():
    assert wedge_pencil_rank(catalog_lookup("h8")) == 0
    assert wedge_pencil_rank(parse("(0,0,0,0,12,34)")) == 1
    assert wedge_pencil_rank(catalog_lookup("h1")) == 0


def test_fingerprints_pairwise_distinct():
    fps = {name: fingerprint(catalog_lookup(name)) for name in CATALOG_EQUATIONS}
    names = list(fps)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            assert fps[names[a]] != fps[names[b]], (names[a], names[b])


def test_fingerprint_invariant_under_basis_change():
    rng = random.Random(1)
    for name in ("h4", "h8", "h13", "h16"):
        g = catalog_lookup(name)
        fp = fingerprint(g)
        for _ in range(20):
            p = random_unitriangular(rng)
            h = change_basis(g, [[gq(c) for c in row] for row in p])
            assert fingerprint(h) == fp
            assert classify(h) == name


def test_classify_examples():
    assert classify(parse("(0,0,0,0,12,13)")) == "h6"
    assert classify(parse("(0,0,0,0,0,0)")) == "h1"


def test_classify_rejects_noncatalog_algebra():
    g = parse("(0,0,0,0,12,15+34)")
    assert check_jacobi(g)
    with pytest.raises(NoMatch):
        classify(g)


def test_not_nilpotent_detected():
    sp = BasisSpace(3, ("e1", "e2", "e3"))
    d1 = [Multivector.zero(sp),
          Multivector.mono(sp, (0, 1)),
          Multivector.mono(sp, (0, 2))]
    g = LieAlgebra(sp, d1)  # de2 = e12, de3 = e13: solvable, not nilpotent
    assert check_jacobi(g)
    with pytest.raises(NotNilpotent):
        lower_central(g)
    with pytest.raises(NotNilpotent):
        dual_sequence(g)


def test_change_basis_requires_invertible():
    g = catalog_lookup("h6")
    singular = [[ZERO] * 6 for _ in range(6)]
    with pytest.raises(ValueError):
        change_basis(g, singular)


def test_bracket_antisymmetry():
    g = catalog_lookup("h15")
    rng = random.Random(2)
    for _ in range(50):
        u = [gq(rng.randint(-2, 2)) for _ in range(6)]
        v = [gq(rng.randint(-2, 2)) for _ in range(6)]
        uv = g.bracket(u, v)
        vu = g.bracket(v, u)
        assert all(uv[i] + vu[i] == ZERO for i in range(6))
