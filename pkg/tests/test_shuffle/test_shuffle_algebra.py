"""Tests for the quantum shuffle product."""

import itertools
from collections import Counter

import numpy as np
import pytest

from cuspidal_shadow.exceptions import DomainError
from cuspidal_shadow.laurent import LaurentPoly, q
from cuspidal_shadow.shuffle import ShuffleAlgebra, ShuffleElt, shuffle_mul, word_from_str, word_to_str


def elt(terms, rank=2):
    return ShuffleElt(terms, rank)


def test_letters_shuffle_with_cartan_twist(a2_algebra):
    x1, x2 = a2_algebra.letter(1), a2_algebra.letter(2)
    assert a2_algebra.mul(x2, x1) == elt({(1, 2): 1, (2, 1): q})
    assert a2_algebra.mul(x1, x2) == elt({(2, 1): 1, (1, 2): q})


def test_equal_letters(a1):
    algebra = ShuffleAlgebra(a1)
    x = algebra.letter(1)
    assert algebra.mul(x, x) == ShuffleElt({(1, 1): 1 + q**-2}, 1)
    assert algebra.power(x, 3) == ShuffleElt({(1, 1, 1): LaurentPoly.q_factorial(3) * q**-3}, 1)


def test_unit(a2_algebra):
    x = elt({(1, 2): q, (2, 1): 2})
    assert a2_algebra.mul(a2_algebra.one(), x) == x
    assert a2_algebra.mul(x, a2_algebra.one()) == x


def test_word_times_letter(a2_algebra):
    product = a2_algebra.mul(elt({(2, 1): 1}), a2_algebra.letter(1))
    assert product == elt({(1, 2, 1): 1, (2, 1, 1): q + q**-1})


def test_associativity(a2_algebra):
    x, y, z = elt({(1,): 1}), elt({(2, 1): 1, (1, 2): q}), elt({(2,): 1})
    left = a2_algebra.mul(a2_algebra.mul(x, y), z)
    right = a2_algebra.mul(x, a2_algebra.mul(y, z))
    assert left == right


def test_bar_twists_products(a2_algebra):
    x, y = elt({(1,): 1}), elt({(1, 2): q, (2, 1): 1})
    t = a2_algebra.bar_twist(x, y)
    assert t == 1
    expected = a2_algebra.mul(y.bar(), x.bar()).scale(q**t)
    assert a2_algebra.mul(x, y).bar() == expected


def test_wt_pair_and_weight(a2_algebra):
    x = elt({(1, 2, 1): 1})
    assert x.weight == (2, 1)
    assert a2_algebra.wt_pair(x, a2_algebra.letter(2)) == 0
    assert a2_algebra.wt_pair(x, a2_algebra.letter(1)) == 3


def test_inhomogeneous_elements_are_rejected(a2_algebra):
    x = elt({(1,): 1, (2,): 1})
    assert not x.is_homogeneous
    with pytest.raises(DomainError):
        x.bar()
    with pytest.raises(DomainError):
        a2_algebra.wt_pair(x, x)


def test_letter_out_of_range(a2_algebra):
    with pytest.raises(DomainError):
        a2_algebra.letter(3)


def test_commutator(a2_algebra):
    x1, x2 = a2_algebra.letter(1), a2_algebra.letter(2)
    assert a2_algebra.commutator(x2, x1, 1) == elt({(1, 2): 1 - q**2})


def test_zero_coefficients_are_dropped():
    assert elt({(1,): 0}).is_zero()
    assert len(elt({(1,): q, (2,): 0})) == 1


def test_words_are_ordered_by_length_then_lex():
    x = elt({(2, 1, 1): 1, (1,): 1, (1, 2, 1): 1})
    assert x.words() == ((1,), (1, 2, 1), (2, 1, 1))


def test_json_form(a2_algebra):
    x = elt({(1, 2): q, (2, 1): 1})
    assert x.to_json() == {"1.2": "q{1}:1", "2.1": "q{0}:1"}
    assert ShuffleElt.from_json(x.to_json(), 2) == x
    assert x.dumps() == '{"1.2":"q{1}:1","2.1":"q{0}:1"}'


def test_word_strings():
    assert word_to_str((1, 2, 1)) == "1.2.1"
    assert word_from_str("1.2.1") == (1, 2, 1)
    assert word_from_str("") == ()


def test_shuffle_mul_of_two_letters(a2):
    algebra = ShuffleAlgebra(a2)
    assert shuffle_mul(algebra, algebra.letter(1), algebra.letter(2)) == elt({(2, 1): 1, (1, 2): q})


def classical_shuffles(u, v):
    """Multiset of interleavings of u and v."""
    n = len(u) + len(v)
    counts = Counter()
    for slots in itertools.combinations(range(n), len(u)):
        left, right = iter(u), iter(v)
        counts[tuple(next(left) if p in slots else next(right) for p in range(n))] += 1
    return counts


def random_word(rng, rank, length):
    return tuple(int(x) for x in rng.integers(1, rank + 1, size=length))


def test_product_at_q_equal_one_is_the_classical_shuffle(a3):
    algebra = ShuffleAlgebra(a3)
    rng = np.random.default_rng(1729)
    for _ in range(40):
        u = random_word(rng, 3, int(rng.integers(0, 4)))
        v = random_word(rng, 3, int(rng.integers(0, 4)))
        product = algebra.mul(ShuffleElt.word(u, 3), ShuffleElt.word(v, 3))
        assert product.evaluate_at_one() == dict(classical_shuffles(u, v)), (u, v)


def test_random_triples_associate_up_to_height_six(a3):
    algebra = ShuffleAlgebra(a3)
    rng = np.random.default_rng(1729)
    for _ in range(30):
        lengths = rng.multinomial(int(rng.integers(3, 7)), [1 / 3] * 3)
        x, y, z = (
            ShuffleElt({random_word(rng, 3, int(n)): 1, random_word(rng, 3, int(n)): q**-1}, 3) for n in lengths
        )
        left = algebra.mul(algebra.mul(x, y), z)
        right = algebra.mul(x, algebra.mul(y, z))
        assert left == right
