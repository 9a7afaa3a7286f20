"""Tests for dual PBW root vectors, monomials and exact expansion."""

import pytest

from cuspidal_shadow.exceptions import DomainError
from cuspidal_shadow.laurent import LaurentPoly, q
from cuspidal_shadow.liecore import (
    CartanDatum,
    beta_sequence,
    enumerate_reduced_words,
    kostant_partition_count,
    root_system,
    weights_up_to,
)
from cuspidal_shadow.pbw import (
    PbwBasis,
    dual_pbw_monomial,
    dual_root_vector,
    expand_in_pbw,
    exponent_weight,
    pbw_exponents,
)
from cuspidal_shadow.shuffle import ShuffleAlgebra, ShuffleElt


def elt(terms, rank=2):
    return ShuffleElt(terms, rank)


@pytest.fixture
def a2_pbw(a2):
    return PbwBasis(ShuffleAlgebra(a2), beta_sequence(a2, (1, 2, 1)))


def test_root_vectors_121(a2_pbw):
    assert a2_pbw.minimal_pair(2) == (1, 3)
    assert a2_pbw.root_vector(1) == elt({(1,): 1})
    assert a2_pbw.root_vector(2) == elt({(2, 1): 1})
    assert a2_pbw.root_vector(3) == elt({(2,): 1})


def test_root_vector_of_other_word(a2):
    pbw = PbwBasis(ShuffleAlgebra(a2), beta_sequence(a2, (2, 1, 2)))
    assert pbw.root_vector(2) == elt({(1, 2): 1})


def test_root_vector_index_out_of_range(a2_pbw):
    with pytest.raises(DomainError):
        a2_pbw.root_vector(4)


def test_divided_power_is_the_dual_power(a1):
    pbw = PbwBasis(ShuffleAlgebra(a1), beta_sequence(a1, (1,)))
    assert pbw.divided_power(1, 2) == ShuffleElt({(1, 1): q + q**-1}, 1)
    assert pbw.divided_power(1, 3) == ShuffleElt({(1, 1, 1): LaurentPoly.q_factorial(3)}, 1)
    for a in (2, 3, 4):
        power = pbw.divided_power(1, a)
        assert power.bar() == power


def test_monomial_puts_last_root_first(a2_pbw):
    assert a2_pbw.monomial((1, 0, 1)) == elt({(1, 2): 1, (2, 1): q})
    two = q + q**-1
    assert a2_pbw.monomial((2, 0, 1)) == elt({(2, 1, 1): two * q**2, (1, 2, 1): two * q, (1, 1, 2): two})
    assert a2_pbw.monomial((0, 0, 0)) == elt({(): 1})


@pytest.mark.parametrize("a", [(1, 0), (1, -1, 0)])
def test_monomial_rejects_bad_exponents(a2_pbw, a):
    with pytest.raises(DomainError):
        a2_pbw.monomial(a)


def test_exponents_of_a_weight(a2):
    seq = beta_sequence(a2, (1, 2, 1))
    assert pbw_exponents(seq, (1, 1)) == [(0, 1, 0), (1, 0, 1)]
    assert pbw_exponents(seq, (2, 1)) == [(1, 1, 0), (2, 0, 1)]
    assert exponent_weight(seq, (2, 0, 1)) == (2, 1)


def test_leading_words_are_distinct(a2_pbw):
    assert a2_pbw.basis_element((0, 1, 0)).leading_word == (2, 1)
    assert a2_pbw.basis_element((1, 0, 1)).leading_word == (1, 2)


def test_expand(a2_pbw):
    assert a2_pbw.expand(elt({(1, 2): 1})) == {(1, 0, 1): 1, (0, 1, 0): -q}
    assert a2_pbw.expand(elt({}, 2)) == {}


def test_expand_rejects_inhomogeneous(a2_pbw):
    with pytest.raises(DomainError):
        a2_pbw.expand(elt({(1,): 1, (2,): 1}))


def test_dump_tsv(a2_pbw):
    lines = a2_pbw.dump_tsv((1, 1)).splitlines()
    assert lines[0] == "exponent\tleading_word\telement"
    assert lines[1] == '0,1,0\t2.1\t{"2.1":"q{0}:1"}'


def test_every_a3_root_vector_is_bar_invariant(a3):
    for word in enumerate_reduced_words(a3, 4):
        pbw = PbwBasis(ShuffleAlgebra(a3), beta_sequence(a3, word))
        for k in range(1, len(root_system(a3)) + 1):
            vector = pbw.root_vector(k)
            assert vector.bar() == vector
            assert vector.weight == pbw.seq.beta(k)


def test_weight_space_dimension_matches_partition_count(a3):
    pbw = PbwBasis(ShuffleAlgebra(a3), beta_sequence(a3, (1, 2, 1, 3, 2, 1)))
    exponents, solver = pbw.weight_space((1, 2, 1))
    assert len(exponents) == len(solver) == kostant_partition_count(a3, (1, 2, 1))


def test_cartan_mismatch_is_rejected(a2, a3):
    with pytest.raises(DomainError):
        PbwBasis(ShuffleAlgebra(a3), beta_sequence(a2, (1, 2, 1)))


def test_d4_root_vectors(d4):
    word = enumerate_reduced_words(d4, 1).words[0]
    pbw = PbwBasis(ShuffleAlgebra(d4), beta_sequence(d4, word))
    highest = pbw.seq.position((1, 2, 1, 1))
    assert pbw.root_vector(highest).weight == (1, 2, 1, 1)


def test_module_level_operations(a2_pbw):
    assert dual_root_vector(a2_pbw, 2) == elt({(2, 1): 1})
    element = dual_pbw_monomial(a2_pbw, (1, 0, 1))
    assert element.value == elt({(1, 2): 1, (2, 1): q})
    assert expand_in_pbw(a2_pbw, element.value) == {(1, 0, 1): 1}


@pytest.mark.parametrize("word", [(1, 2, 1), (2, 1, 2)])
def test_a2_leading_words_separate_exponents(a2, word):
    pbw = PbwBasis(ShuffleAlgebra(a2), beta_sequence(a2, word))
    for mu in weights_up_to(a2, 4):
        assert pbw.leading_word_collisions(mu) == {}
        words = [pbw.leading_word(a) for a in pbw_exponents(pbw.seq, mu)]
        assert pbw.weight_space(mu)[1].leading_words == words


def test_a2_leading_word_shape(a2_pbw):
    # 1^{a1} (21)^{a2} 2^{a3} for w0 = s1 s2 s1
    assert a2_pbw.leading_word((2, 0, 1)) == (1, 1, 2)
    assert a2_pbw.leading_word((1, 1, 0)) == (1, 2, 1)
    assert a2_pbw.leading_word((1, 0, 2)) == (1, 2, 2)
    assert a2_pbw.leading_word((0, 1, 1)) == (2, 1, 2)


def test_a3_leading_words_follow_the_convex_order(a3):
    pbw = PbwBasis(ShuffleAlgebra(a3), beta_sequence(a3, (1, 3, 2, 1, 3, 2)))
    assert pbw.letter_rank() == {1: 1, 3: 2, 2: 6}
    words = {a: pbw.leading_word(a) for a in pbw_exponents(pbw.seq, (1, 1, 1))}
    assert words == {
        (0, 0, 1, 0, 0, 0): (2, 1, 3),
        (1, 0, 0, 1, 0, 0): (1, 2, 3),
        (0, 1, 0, 0, 1, 0): (3, 2, 1),
        (1, 1, 0, 0, 0, 1): (1, 3, 2),
    }


@pytest.mark.parametrize("word", [(1, 2, 1), (2, 1, 2), (1, 2, 1, 3, 2, 1), (1, 3, 2, 1, 3, 2)])
def test_root_vectors_q_commute_up_to_roots_in_between(word):
    C = CartanDatum.of_type("A", max(word))
    pbw = PbwBasis(ShuffleAlgebra(C), beta_sequence(C, word))
    ell = len(word)
    for j in range(1, ell + 1):
        for k in range(j + 1, ell + 1):
            ej, ek = pbw.root_vector(j), pbw.root_vector(k)
            twist = LaurentPoly.monomial(-C.pairing(pbw.seq.beta(j), pbw.seq.beta(k)))
            difference = pbw.algebra.mul(ej, ek) - pbw.algebra.mul(ek, ej).scale(twist)
            for a in pbw.expand(difference):
                assert all(a[m - 1] == 0 for m in range(1, ell + 1) if m <= j or m >= k), (j, k, a)


def test_braid_move_keeps_the_integral_span(a2):
    left = PbwBasis(ShuffleAlgebra(a2), beta_sequence(a2, (1, 2, 1)))
    right = PbwBasis(ShuffleAlgebra(a2), beta_sequence(a2, (2, 1, 2)))
    for mu in weights_up_to(a2, 4):
        for one, other in ((left, right), (right, left)):
            for a in pbw_exponents(one.seq, mu):
                # raises unless the monomial lies in the Z[q, q⁻¹]-span of the other basis
                assert other.expand(one.monomial(a))


def test_commutation_move_permutes_the_pbw_data(a3):
    pbw = PbwBasis(ShuffleAlgebra(a3), beta_sequence(a3, (1, 3, 2, 1, 3, 2)))
    swapped = PbwBasis(ShuffleAlgebra(a3), beta_sequence(a3, (3, 1, 2, 1, 3, 2)))
    assert swapped.seq.betas[2:] == pbw.seq.betas[2:]
    assert swapped.root_vector(1) == pbw.root_vector(2)
    assert swapped.root_vector(2) == pbw.root_vector(1)
    for k in range(3, 7):
        assert swapped.root_vector(k) == pbw.root_vector(k)
    for mu in weights_up_to(a3, 3):
        for a in pbw_exponents(pbw.seq, mu):
            assert swapped.monomial((a[1], a[0]) + a[2:]) == pbw.monomial(a)
