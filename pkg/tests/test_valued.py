from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropec.errors import NotInvertible, ParseError, ResidueCharUnsupported
from tropec.valued import INF, ResidueConfig, ValuedElement, fmt_q

V = ValuedElement
PI = ValuedElement.pi

exponents = st.fractions(min_value=-4, max_value=4, max_denominator=3)
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(bool)
elements = st.dictionaries(exponents, coeffs, max_size=4).map(V)


def test_valuation_of_sums():
    a = V({0: 3, 2: 1})
    assert a.valuation() == 0
    assert V({Fraction(1, 2): 5, 3: 1}).valuation() == Fraction(1, 2)
    assert V.zero().valuation() == INF


def test_leading_coefficient_and_lattice():
    a = V({Fraction(-1, 3): 7, Fraction(1, 2): 1})
    assert a.leading_coefficient() == 7
    assert a.lattice() == 6


def test_parse_and_format_round_trip():
    for text in ["3/2*pi^-1 + 5 - 1/2*pi^2", "pi^(1/2)", "-1", "7*pi", "-pi^3"]:
        assert str(V.parse(text)) == text
    assert V.parse("(1 + pi)") == 1 + PI()


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        V.parse("1 + + pi")
    with pytest.raises(ParseError):
        V.parse("3 pi")


def test_worked_product():
    # (2 pi + pi^2) * (-1/2 pi^-1) = -1 - 1/2 pi
    a = V({1: 2, 2: 1}) * V({-1: Fraction(-1, 2)})
    assert a == V({0: -1, 1: Fraction(-1, 2)})


def test_monomial_inverse_only():
    assert (PI(2, 3)).inverse() == V({-2: Fraction(1, 3)})
    with pytest.raises(NotInvertible):
        (1 + PI()).inverse()
    with pytest.raises(NotInvertible):
        V.zero().inverse()
    with pytest.raises(ZeroDivisionError):
        V.one() / V.zero()


def test_negative_powers_of_monomials():
    assert PI(1, 2) ** -2 == V({-2: Fraction(1, 4)})


def test_residue_config():
    assert ResidueConfig(0).divides(12) is False
    assert ResidueConfig(5).divides(10)
    assert not ResidueConfig(7).divides(10)
    for p in (2, 3):
        with pytest.raises(ResidueCharUnsupported):
            ResidueConfig(p)
    with pytest.raises(ValueError):
        ResidueConfig(9)


def test_fmt_q():
    assert fmt_q(Fraction(3, 4)) == "3/4"
    assert fmt_q(Fraction(-2)) == "-2"
    assert fmt_q(INF) == "inf"


@given(elements, elements)
def test_valuation_is_multiplicative(a, b):
    assert (a * b).valuation() == (a.valuation() + b.valuation() if a and b else INF)


@given(elements, elements)
def test_ultrametric_inequality(a, b):
    assert (a + b).valuation() >= min(a.valuation(), b.valuation())


@given(elements, elements, elements)
@settings(max_examples=50)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    assert a * b == b * a


@given(elements)
def test_string_round_trip(a):
    assert V.parse(str(a)) == a
