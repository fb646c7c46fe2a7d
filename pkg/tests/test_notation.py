import pytest

from nildga.exterior import BasisSpace, Multivector
from nildga.lie import LieAlgebra, check_jacobi
from nildga.notation import (
    CATALOG_EQUATIONS,
    ForwardReference,
    NonIntegerCoefficient,
    ParseError,
    UnknownName,
    catalog,
    catalog_lookup,
    parse,
    print_algebra,
)
from nildga.scalars import gq


def e(g, i, j, c=1):
    return Multivector.mono(g.space, (i - 1, j - 1), c)


def test_parse_h15():
    g = parse("(0,0,0,12,13+42,14+23)")
    assert g.d1[3] == e(g, 1, 2)
    assert g.d1[4] == e(g, 1, 3) - e(g, 2, 4)
    assert g.d1[5] == e(g, 1, 4) + e(g, 2, 3)


def test_parse_normalizes_reversed_pairs():
    # "42" means the pair (2,4) with a sign flip
    g = parse("(0,0,0,0,0,42)")
    assert g.d1[5] == e(g, 2, 4, c=-1)


def test_parse_trivial():
    g = parse("(0,0,0,0,0,0)")
    assert all(mv.is_zero() for mv in g.d1)


def test_parse_coefficients_and_signs():
    g = parse("(0,0,212,0,13-24,0)")
    assert g.d1[2] == e(g, 1, 2, c=2)
    assert g.d1[4] == e(g, 1, 3) - e(g, 2, 4)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse("(0,0,0,12,99)")
    assert "position" in str(err.value)
    assert err.value.pos > 0
    with pytest.raises(ParseError):
        parse("0,0,0")
    with pytest.raises(ParseError):
        parse("(0,0,0,12,xy,0)")
    with pytest.raises(ParseError):
        parse("(0,0,0,0,0,17)")  # index exceeds dimension
    with pytest.raises(ParseError):
        parse("")


def test_malcev_flag_forward_reference():
    parse("(0,0,12)", malcev=True)
    with pytest.raises(ForwardReference):
        parse("(23,0,0)", malcev=True)
    # without the flag the same text parses fine
    parse("(23,0,0)")


def test_print_examples():
    assert print_algebra(catalog_lookup("h3")) == "(0,0,0,0,0,12+34)"
    assert print_algebra(parse("(0,0,0,0,0,0)")) == "(0,0,0,0,0,0)"
    assert print_algebra(parse("(0,0,0,0,0,42)")) == "(0,0,0,0,0,-24)"


def test_print_rejects_fractional_constants():
    space = BasisSpace(6)
    half = gq(1) / gq(2)
    d1 = [Multivector.zero(space)] * 5 + [Multivector.mono(space, (0, 1), half)]
    g = LieAlgebra(space, d1)
    with pytest.raises(NonIntegerCoefficient):
        print_algebra(g)


def test_roundtrip_catalog():
    for name, text in CATALOG_EQUATIONS.items():
        g = parse(text)
        assert check_jacobi(g), name
        assert parse(print_algebra(g)) == g, name


def test_catalog_lookup():
    g = catalog_lookup("h7")
    assert print_algebra(g) == "(0,0,0,12,13,23)"
    assert print_algebra(catalog_lookup("h17")) == "(0,0,0,0,12,15)"
    with pytest.raises(UnknownName):
        catalog_lookup("h99")


def test_catalog_is_complete():
    assert set(catalog()) == {f"h{k}" for k in range(1, 18)}
