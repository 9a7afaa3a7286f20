"""
Quantum shuffle algebra.

The quantum unipotent coordinate ring is modelled on words over I₀ with the
q-shuffle product. This module is the single place where the q-power
convention lives; everything downstream only calls `ShuffleAlgebra.mul`,
`bar` and `wt_pair`.

Convention (one-step recursion on last letters):

    (u·a) ∗ (v·b) = (u ∗ v·b)·a + q^{−(wt(u·a), α_b)} (u·a ∗ v)·b

Equivalently, a shuffle of x and y carries q^{−Σ (α_a, α_b)} summed over the
letter pairs (a from x, b from y) in which a lands before b. The bar involution
is coefficient conjugation q ↦ q⁻¹ with words fixed, and it satisfies

    bar(x ∗ y) = q^{(wt x, wt y)} bar(y) ∗ bar(x).
"""
from __future__ import annotations

import json
import logging
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

from cuspidal_shadow.exceptions import DomainError
from cuspidal_shadow.laurent import ONE, ZERO, LaurentPoly, Scalar
from cuspidal_shadow.liecore import CartanDatum, RootVec

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


def word_key(word: Word) -> Tuple[int, Word]:
    """Total order on words: length first, then lexicographic."""
    return len(word), word


def word_to_str(word: Word) -> str:
    return ".".join(str(i) for i in word)


def word_from_str(text: str) -> Word:
    return tuple(int(part) for part in text.split(".")) if text else ()


class ShuffleElt:
    """Finite LaurentPoly-combination of words.

    Instances are immutable; zero coefficients are never stored.

    Attributes:
        rank: Size of the alphabet I₀ (needed to express weights)
    """

    __slots__ = ("rank", "_terms", "_weight")

    def __init__(self, terms: Mapping[Word, Scalar], rank: int):
        clean: Dict[Word, LaurentPoly] = {}
        for word, coefficient in terms.items():
            coefficient = LaurentPoly.coerce(coefficient)
            if coefficient:
                clean[tuple(word)] = coefficient
        self.rank = rank
        self._terms = clean
        self._weight: Optional[Union[RootVec, bool]] = None

    @classmethod
    def zero(cls, rank: int) -> ShuffleElt:
        return cls({}, rank)

    @classmethod
    def word(cls, word: Sequence[int], rank: int, coefficient: Scalar = 1) -> ShuffleElt:
        return cls({tuple(word): coefficient}, rank)

    def items(self) -> Iterator[Tuple[Word, LaurentPoly]]:
        return iter(sorted(self._terms.items(), key=lambda item: word_key(item[0])))

    def words(self) -> Tuple[Word, ...]:
        return tuple(sorted(self._terms, key=word_key))

    def coefficient(self, word: Sequence[int]) -> LaurentPoly:
        return self._terms.get(tuple(word), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _word_weight(self, word: Word) -> RootVec:
        counts = [0] * self.rank
        for letter in word:
            counts[letter - 1] += 1
        return tuple(counts)

    @property
    def is_homogeneous(self) -> bool:
        if self._weight is None:
            weights = {self._word_weight(w) for w in self._terms}
            self._weight = weights.pop() if len(weights) == 1 else (False if weights else tuple([0] * self.rank))
        return self._weight is not False

    @property
    def weight(self) -> RootVec:
        """Common weight of all words (the zero weight for the zero element).

        Raises:
            DomainError: If the element is not homogeneous
        """
        if not self.is_homogeneous:
            raise DomainError("weight", "element is not homogeneous")
        return self._weight

    def bar(self) -> ShuffleElt:
        """Coefficient conjugation q ↦ q⁻¹; see the module docstring for the twist rule.

        Raises:
            DomainError: If the element is not homogeneous
        """
        if not self.is_homogeneous:
            raise DomainError("bar", "bar involution is only defined on homogeneous elements")
        return ShuffleElt({w: c.bar() for w, c in self._terms.items()}, self.rank)

    def map_coefficients(self, fn) -> ShuffleElt:
        return ShuffleElt({w: fn(c) for w, c in self._terms.items()}, self.rank)

    def evaluate_at_one(self) -> Dict[Word, int]:
        return {w: c.evaluate_at_one() for w, c in self.items() if c.evaluate_at_one()}

    def __add__(self, other: ShuffleElt) -> ShuffleElt:
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, ZERO) + c
        return ShuffleElt(terms, self.rank)

    def __neg__(self) -> ShuffleElt:
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other: ShuffleElt) -> ShuffleElt:
        return self + (-other)

    def scale(self, scalar: Scalar) -> ShuffleElt:
        scalar = LaurentPoly.coerce(scalar)
        return self.map_coefficients(lambda c: c * scalar)

    __rmul__ = scale

    def exact_div(self, scalar: Scalar) -> ShuffleElt:
        return self.map_coefficients(lambda c: c.exact_div(scalar))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ShuffleElt):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._terms.items())))

    def to_json(self) -> Dict[str, str]:
        """Word-string → coefficient-string map, e.g. ``{"1.2": "q{0}:1"}``."""
        return {word_to_str(w): str(c) for w, c in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str], rank: int) -> ShuffleElt:
        return cls({word_from_str(w): LaurentPoly.parse(c) for w, c in data.items()}, rank)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*[{word_to_str(w)}]" for w, c in self.items()) or "0"
        return f"ShuffleElt({body})"


class ShuffleAlgebra:
    """The quantum shuffle algebra over the index set of a CartanDatum."""

    def __init__(self, cartan: CartanDatum):
        self.cartan = cartan
        self._word_products: Dict[Tuple[Word, Word], Dict[Word, LaurentPoly]] = {}

    @property
    def rank(self) -> int:
        return self.cartan.rank

    def one(self) -> ShuffleElt:
        return ShuffleElt.word((), self.rank)

    def letter(self, i: int) -> ShuffleElt:
        if i not in self.cartan.index_set:
            raise DomainError("letter", f"{i} is not in I₀ = 1..{self.rank}")
        return ShuffleElt.word((i,), self.rank)

    def _letter_pairing(self, word: Word, b: int) -> int:
        return sum(self.cartan.c(a, b) for a in word)

    def shuffle_words(self, u: Word, v: Word) -> Dict[Word, LaurentPoly]:
        """q-shuffle of two words; the convention point of the whole toolkit."""
        key = (u, v)
        cached = self._word_products.get(key)
        if cached is not None:
            return cached
        if not u:
            result = {v: ONE}
        elif not v:
            result = {u: ONE}
        else:
            result: Dict[Word, LaurentPoly] = {}
            a, b = u[-1], v[-1]
            for w, c in self.shuffle_words(u[:-1], v).items():
                word = w + (a,)
                result[word] = result.get(word, ZERO) + c
            twist = -self._letter_pairing(u, b)
            for w, c in self.shuffle_words(u, v[:-1]).items():
                word = w + (b,)
                result[word] = result.get(word, ZERO) + c.shift(twist)
            result = {w: c for w, c in result.items() if c}
        self._word_products[key] = result
        return result

    def mul(self, x: ShuffleElt, y: ShuffleElt) -> ShuffleElt:
        terms: Dict[Word, LaurentPoly] = {}
        for u, cu in x.items():
            for v, cv in y.items():
                scale = cu * cv
                for w, c in self.shuffle_words(u, v).items():
                    terms[w] = terms.get(w, ZERO) + c * scale
        return ShuffleElt(terms, self.rank)

    def power(self, x: ShuffleElt, n: int) -> ShuffleElt:
        result = self.one()
        for _ in range(n):
            result = self.mul(result, x)
        return result

    def bar(self, x: ShuffleElt) -> ShuffleElt:
        return x.bar()

    def wt_pair(self, x: ShuffleElt, y: ShuffleElt) -> int:
        """(wt x, wt y) under the symmetric form.

        Raises:
            DomainError: If either element is not homogeneous
        """
        if not (x.is_homogeneous and y.is_homogeneous):
            raise DomainError("wt_pair", "both elements must be homogeneous")
        return self.cartan.pairing(x.weight, y.weight)

    def bar_twist(self, x: ShuffleElt, y: ShuffleElt) -> int:
        """Exponent t in bar(x ∗ y) = q^t bar(y) ∗ bar(x)."""
        return self.wt_pair(x, y)

    def commutator(self, x: ShuffleElt, y: ShuffleElt, exponent: int) -> ShuffleElt:
        """x ∗ y − q^{exponent} y ∗ x."""
        return self.mul(x, y) - self.mul(y, x).scale(LaurentPoly.monomial(exponent))


def shuffle_mul(algebra: ShuffleAlgebra, x: ShuffleElt, y: ShuffleElt) -> ShuffleElt:
    return algebra.mul(x, y)


def bar(x: ShuffleElt) -> ShuffleElt:
    return x.bar()


def wt_pair(algebra: ShuffleAlgebra, x: ShuffleElt, y: ShuffleElt) -> int:
    return algebra.wt_pair(x, y)
