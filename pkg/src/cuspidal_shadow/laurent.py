"""
Exact Laurent polynomials in one variable q.

LaurentPoly is the coefficient ring of every other structure in the toolkit.
Coefficients are Python integers, so arithmetic never overflows and never
rounds.
"""
from __future__ import annotations

from typing import Dict, Iterator, Mapping, Tuple, Union

import sympy

Q = sympy.Symbol("q")

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    Only non-zero coefficients are stored, so two equal polynomials always have
    equal internal maps.

    Examples:
        >>> p = LaurentPoly({-2: 1, 0: 1})
        >>> str(p)
        'q{-2}:1,q{0}:1'
        >>> p.evaluate_at_one()
        2
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] = None):
        clean: Dict[int, int] = {}
        for exponent, coefficient in (terms or {}).items():
            if coefficient:
                clean[int(exponent)] = int(coefficient)
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPoly:
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, value: int) -> LaurentPoly:
        return cls({0: value})

    @classmethod
    def coerce(cls, value: Scalar) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"Cannot use {type(value).__name__} as a Laurent polynomial")

    @classmethod
    def q_integer(cls, n: int) -> LaurentPoly:
        """Balanced quantum integer [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}."""
        if n < 0:
            raise ValueError("q_integer is only defined for n >= 0")
        return cls({n - 1 - 2 * s: 1 for s in range(n)})

    @classmethod
    def q_factorial(cls, n: int) -> LaurentPoly:
        result = ONE
        for m in range(2, n + 1):
            result = result * cls.q_integer(m)
        return result

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Parse the canonical serialization produced by `str()`.

        Raises:
            ValueError: If the text is not in the canonical format
        """
        text = text.strip()
        if text == "0":
            return ZERO
        terms: Dict[int, int] = {}
        for chunk in text.split(","):
            head, _, coefficient = chunk.partition(":")
            if not (head.startswith("q{") and head.endswith("}")) or not coefficient:
                raise ValueError(f"Malformed Laurent term {chunk!r}")
            exponent = int(head[2:-1])
            if exponent in terms:
                raise ValueError(f"Repeated exponent {exponent} in {text!r}")
            terms[exponent] = int(coefficient)
        return cls(terms)

    @classmethod
    def from_sympy(cls, expr: sympy.Expr) -> LaurentPoly:
        """Convert a sympy expression in `q` with integer coefficients."""
        terms: Dict[int, int] = {}
        for term in sympy.Add.make_args(sympy.expand(expr)):
            if term == 0:
                continue
            coefficient, exponent = term.as_coeff_exponent(Q)
            if not (coefficient.is_Integer and exponent.is_Integer):
                raise ValueError(f"Not an integral Laurent term: {term}")
            key = int(exponent)
            terms[key] = terms.get(key, 0) + int(coefficient)
        return cls(terms)

    def to_sympy(self) -> sympy.Expr:
        return sympy.Add(*(sympy.Integer(c) * Q**e for e, c in self._terms.items()))

    # Structure

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        """True for a single term c·q^e with c = ±1."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def is_q_power(self) -> bool:
        """True for exactly q^e (coefficient +1)."""
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def monomial_exponent(self) -> int:
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a monomial")
        return next(iter(self._terms))

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("The zero polynomial has no degree")
        return min(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("The zero polynomial has no degree")
        return max(self._terms)

    def evaluate_at_one(self) -> int:
        return sum(self._terms.values())

    def bar(self) -> LaurentPoly:
        """The ring involution q ↦ q⁻¹."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def positive_part(self) -> LaurentPoly:
        return LaurentPoly({e: c for e, c in self._terms.items() if e > 0})

    def in_q_zq(self) -> bool:
        """True when every exponent is strictly positive (qZ[q])."""
        return all(e > 0 for e in self._terms)

    # Arithmetic

    def __add__(self, other: Scalar) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> LaurentPoly:
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        terms: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_monomial():
                raise ValueError(f"{self} is not invertible")
            e, c = next(iter(self._terms.items()))
            return LaurentPoly({e * n: c ** (-n)})
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def exact_div(self, divisor: Scalar) -> LaurentPoly:
        """Divide exactly in Z[q, q⁻¹].

        Raises:
            ZeroDivisionError: If the divisor is zero
            ValueError: If the quotient is not a Laurent polynomial
        """
        divisor = LaurentPoly.coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Division by the zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        top_d, lead_d = divisor.max_degree(), divisor._terms[divisor.max_degree()]
        floor = self.min_degree() - divisor.min_degree()
        remainder = self
        quotient: Dict[int, int] = {}
        while not remainder.is_zero():
            top_r = remainder.max_degree()
            lead_r = remainder._terms[top_r]
            exponent = top_r - top_d
            if exponent < floor or lead_r % lead_d:
                raise ValueError(f"{self} is not divisible by {divisor}")
            step = LaurentPoly.monomial(exponent, lead_r // lead_d)
            quotient[exponent] = quotient.get(exponent, 0) + lead_r // lead_d
            remainder = remainder - step * divisor
        return LaurentPoly(quotient)

    def gcd(self, other: LaurentPoly) -> LaurentPoly:
        """Greatest common divisor up to a unit, normalised to a polynomial with q∤g."""
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a = self.shift(-self.min_degree()).to_sympy()
        b = other.shift(-other.min_degree()).to_sympy()
        return LaurentPoly.from_sympy(sympy.gcd(a, b))

    # Comparison and display

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return ",".join(f"q{{{e}}}:{c}" for e, c in self.items())

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
q = LaurentPoly({1: 1})
