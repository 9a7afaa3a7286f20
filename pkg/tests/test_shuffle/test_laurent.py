"""Tests for exact Laurent polynomial arithmetic."""

import pytest

from cuspidal_shadow.laurent import ONE, ZERO, LaurentPoly, q


def test_q_integers():
    assert LaurentPoly.q_integer(0) == ZERO
    assert LaurentPoly.q_integer(1) == ONE
    assert LaurentPoly.q_integer(2) == q + q**-1
    assert LaurentPoly.q_integer(3) == q**2 + 1 + q**-2
    assert LaurentPoly.q_factorial(3) == LaurentPoly.q_integer(2) * LaurentPoly.q_integer(3)


def test_arithmetic_with_integers():
    p = 2 * q - 1
    assert p.coefficient(1) == 2
    assert p.coefficient(0) == -1
    assert (p + 1) == 2 * q
    assert (1 - p) == 2 - 2 * q
    assert p - p == 0


def test_bar_and_parts():
    p = q**2 - 3 + q**-1
    assert p.bar() == q**-2 - 3 + q
    assert p.positive_part() == q**2
    assert not p.in_q_zq()
    assert (q + q**3).in_q_zq()
    assert ZERO.in_q_zq()


def test_degrees_and_evaluation():
    p = q**-2 + 4 * q**3
    assert (p.min_degree(), p.max_degree()) == (-2, 3)
    assert p.evaluate_at_one() == 5
    with pytest.raises(ValueError):
        ZERO.min_degree()


def test_monomial_predicates():
    assert (q**-3).is_q_power()
    assert (-(q**-3)).is_monomial()
    assert not (-(q**-3)).is_q_power()
    assert not (q + 1).is_monomial()
    assert (q**-3).monomial_exponent() == -3


def test_negative_power_needs_a_unit():
    assert (q**2) ** -1 == q**-2
    with pytest.raises(ValueError):
        (q + 1) ** -1


def test_exact_division():
    assert (q**2 - q**-2).exact_div(q - q**-1) == q + q**-1
    assert (q + 1).exact_div(q**2) == q**-1 + q**-2
    with pytest.raises(ValueError):
        ONE.exact_div(1 + q)
    with pytest.raises(ValueError):
        (3 * q).exact_div(2)
    with pytest.raises(ZeroDivisionError):
        q.exact_div(ZERO)


def test_gcd_is_normalised():
    a = (1 + q**2) * q**-4
    b = (1 + q**2) * (1 - q) * q**3
    assert a.gcd(b) == 1 + q**2
    assert ZERO.gcd(a) == a


@pytest.mark.parametrize("p", [ZERO, ONE, q**-3 - 2 * q + 7 * q**4])
def test_canonical_serialization(p):
    assert LaurentPoly.parse(str(p)) == p


def test_serialization_format():
    assert str(q**-1 + 2) == "q{-1}:1,q{0}:2"
    assert str(ZERO) == "0"


@pytest.mark.parametrize("text", ["q1:1", "q{1}", "q{1}:1,q{1}:2", "x"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        LaurentPoly.parse(text)


def test_sympy_round_trip():
    p = q**-1 + 5 * q**2
    assert LaurentPoly.from_sympy(p.to_sympy()) == p


def test_hash_consistent_with_equality():
    assert len({q + 1, 1 + q, LaurentPoly({0: 1, 1: 1, 5: 0})}) == 1
