"""Tests for commutation, Λ and δ of global basis pairs."""

import pytest

from cuspidal_shadow.gbasis import GlobalBasis
from cuspidal_shadow.invariants import (
    PairCalculator,
    PairInvariants,
    commutes,
    delta_pair,
    lambda_pair,
    pair_invariants,
)
from cuspidal_shadow.laurent import ONE, q
from cuspidal_shadow.liecore import beta_sequence


@pytest.fixture
def calculator(a2_engine):
    return PairCalculator(a2_engine)


@pytest.fixture
def letter_1(a2_engine):
    return a2_engine.element((1, 0, 0))


@pytest.fixture
def letter_2(a2_engine):
    return a2_engine.element((0, 0, 1))


@pytest.fixture
def word_21(a2_engine):
    return a2_engine.element((0, 1, 0))


def test_product_expansion(calculator, letter_1, word_21):
    assert calculator.product(letter_1, word_21) == {(1, 1, 0): q**-1}
    assert calculator.product(word_21, letter_1) == {(1, 1, 0): 1}


def test_commuting_pair(calculator, letter_1, word_21):
    assert calculator.commutes(letter_1, word_21) == (True, -1)
    assert calculator.commutes(word_21, letter_1) == (True, 0)
    assert calculator.pair_invariants(letter_1, word_21) == PairInvariants(1, -1, 0, 1)


def test_non_commuting_letters(calculator, letter_1, letter_2):
    assert calculator.commutes(letter_1, letter_2) == (False, None)
    invariants = calculator.pair_invariants(letter_1, letter_2)
    assert (invariants.lambda_xy, invariants.lambda_yx) == (1, 1)
    assert invariants.delta == 1
    assert invariants.wt_pair == -1


def test_delta_is_symmetric(calculator, letter_1, letter_2, word_21):
    for x, y in [(letter_1, letter_2), (letter_1, word_21), (letter_2, word_21)]:
        assert calculator.delta_pair(x, y) == calculator.delta_pair(y, x)


def test_lambda_parity_matches_weights(calculator, a2_engine):
    elements = [g for mu in [(1, 0), (0, 1), (1, 1)] for g in a2_engine.at_weight(mu)]
    for x in elements:
        for y in elements:
            value = calculator.lambda_pair(x, y)
            if value is not None:
                assert (value - calculator.wt_pair(x, y)) % 2 == 0


def test_square_of_a_letter(a1):
    engine = GlobalBasis.for_word(a1, beta_sequence(a1, (1,)))
    x = engine.element((1,))
    assert commutes(engine, x, x) == (True, -1)
    assert lambda_pair(engine, x, x) == 0
    assert delta_pair(engine, x, x) == 0


def test_module_functions(a2_engine, letter_1, letter_2):
    assert pair_invariants(a2_engine, letter_1, letter_2).to_dict() == {
        "lambda_xy": 1,
        "lambda_yx": 1,
        "delta": 1,
        "wt_pair": -1,
    }


def test_products_are_memoized(calculator, letter_1, letter_2):
    first = calculator.product(letter_1, letter_2)
    assert calculator.product(letter_1, letter_2) is first


@pytest.fixture
def word_12(a2_engine):
    return a2_engine.element((1, 0, 1))


def test_letter_commutes_with_the_other_root_vector(calculator, letter_2, word_12):
    assert calculator.product(letter_2, word_12) == {(1, 0, 2): q**-1}
    assert calculator.commutes(letter_2, word_12) == (True, -1)
    assert calculator.commutes(word_12, letter_2) == (True, 0)
    assert calculator.pair_invariants(letter_2, word_12) == PairInvariants(1, -1, 0, 1)


def test_lambda_is_undefined_without_monomial_heads(a2_engine, letter_2, word_12):
    calculator = PairCalculator(a2_engine)
    # products whose head coefficients are not signed powers of q
    calculator._products[(letter_2.exponent, word_12.exponent)] = {(1, 0, 2): q**-2 + 1, (0, 1, 1): q**-1}
    calculator._products[(word_12.exponent, letter_2.exponent)] = {(1, 0, 2): q**-1 + q, (0, 1, 1): ONE}
    assert calculator.lambda_pair(letter_2, word_12) is None
    assert calculator.pair_invariants(letter_2, word_12).delta is None
    assert calculator.commutes(letter_2, word_12) == (False, None)


def test_delta_vanishes_exactly_on_commuting_pairs(calculator, a2_engine):
    elements = [g for mu in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] for g in a2_engine.at_weight(mu)]
    for x in elements:
        for y in elements:
            delta = calculator.delta_pair(x, y)
            if delta is not None:
                assert (delta == 0) == calculator.commutes(x, y)[0], (x.exponent, y.exponent)
