"""
Pair invariants Λ and δ read off the two ordered products of global basis elements.

For x, y in the global basis, x ∗ y and y ∗ x are expanded over the global
basis of their common weight. The head of x ∗ y is the unique constituent whose
coefficient has the smallest q-degree. If that constituent carries f₁ in x ∗ y
and f₂ = q^Λ f₁ in y ∗ x, then Λ(x, y) = Λ; otherwise Λ is undefined.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from cuspidal_shadow.exceptions import InvariantViolation
from cuspidal_shadow.gbasis import Coordinates, GlobalBasis, GlobalBasisElt, exponent_to_str
from cuspidal_shadow.laurent import LaurentPoly
from cuspidal_shadow.pbw import PbwExponent

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairInvariants:
    """Λ(x,y), Λ(y,x), δ(x,y) and (wt x, wt y); None marks an undefined value."""

    lambda_xy: Optional[int]
    lambda_yx: Optional[int]
    delta: Optional[int]
    wt_pair: int

    def to_dict(self) -> Dict[str, Optional[int]]:
        return {
            "lambda_xy": self.lambda_xy,
            "lambda_yx": self.lambda_yx,
            "delta": self.delta,
            "wt_pair": self.wt_pair,
        }


def _unit_ratio(numerator: LaurentPoly, denominator: LaurentPoly) -> Optional[int]:
    """e with numerator = q^e · denominator, if there is one."""
    if not numerator or not denominator:
        return None
    e = numerator.min_degree() - denominator.min_degree()
    return e if denominator.shift(e) == numerator else None


def _centre(f: LaurentPoly) -> Optional[int]:
    """c with f = q^c · g for a bar-invariant g, if there is one."""
    twice = f.max_degree() + f.min_degree()
    if twice % 2:
        return None
    c = twice // 2
    g = f.shift(-c)
    return c if g.bar() == g else None


def _head(product: Coordinates) -> Optional[PbwExponent]:
    lowest = min(c.min_degree() for c in product.values())
    heads = [a for a, c in product.items() if c.min_degree() == lowest]
    return heads[0] if len(heads) == 1 else None


class PairCalculator:
    """Expansions of ordered products, memoized per pair of exponents."""

    def __init__(self, engine: GlobalBasis):
        self.engine = engine
        self._products: Dict[Tuple[PbwExponent, PbwExponent], Coordinates] = {}

    def product(self, x: GlobalBasisElt, y: GlobalBasisElt) -> Coordinates:
        key = (x.exponent, y.exponent)
        cached = self._products.get(key)
        if cached is None:
            algebra = self.engine.pbw.algebra
            cached = self.engine.expand(algebra.mul(x.value, y.value))
            self._products[key] = cached
        return cached

    def commutes(self, x: GlobalBasisElt, y: GlobalBasisElt) -> Tuple[bool, Optional[int]]:
        """(True, c) when x ∗ y is q^c times a bar-invariant multiple of one global element."""
        product = self.product(x, y)
        if len(product) != 1:
            return False, None
        (coefficient,) = product.values()
        c = _centre(coefficient)
        if c is None or coefficient.evaluate_at_one() <= 0:
            return False, None
        return True, c

    def lambda_pair(self, x: GlobalBasisElt, y: GlobalBasisElt) -> Optional[int]:
        """Λ(x, y), or None unless both head coefficients are signed powers of q."""
        xy = self.product(x, y)
        yx = self.product(y, x)
        head = _head(xy)
        if head is None or head not in yx:
            return None
        if not (xy[head].is_monomial() and yx[head].is_monomial()):
            return None
        return _unit_ratio(yx[head], xy[head])

    def wt_pair(self, x: GlobalBasisElt, y: GlobalBasisElt) -> int:
        return self.engine.pbw.algebra.wt_pair(x.value, y.value)

    def delta_pair(self, x: GlobalBasisElt, y: GlobalBasisElt) -> Optional[int]:
        return self.pair_invariants(x, y).delta

    def pair_invariants(self, x: GlobalBasisElt, y: GlobalBasisElt) -> PairInvariants:
        """All pair invariants, with their internal consistency checked.

        Raises:
            InvariantViolation: On a parity failure or a negative δ
        """
        lambda_xy = self.lambda_pair(x, y)
        lambda_yx = self.lambda_pair(y, x)
        wt = self.wt_pair(x, y)
        label = f"({exponent_to_str(x.exponent)}), ({exponent_to_str(y.exponent)})"
        for value in (lambda_xy, lambda_yx):
            if value is not None and (value - wt) % 2:
                raise InvariantViolation("lambda-parity", f"Λ = {value} against (wt, wt) = {wt} for {label}")
        delta = None
        if lambda_xy is not None and lambda_yx is not None:
            delta = (lambda_xy + lambda_yx) // 2
            if delta < 0:
                raise InvariantViolation("delta-nonnegative", f"δ = {delta} for {label}")
        logger.debug(f"Pair {label}: Λ={lambda_xy}/{lambda_yx} δ={delta}")
        return PairInvariants(lambda_xy, lambda_yx, delta, wt)


def commutes(engine: GlobalBasis, x: GlobalBasisElt, y: GlobalBasisElt) -> Tuple[bool, Optional[int]]:
    return PairCalculator(engine).commutes(x, y)


def lambda_pair(engine: GlobalBasis, x: GlobalBasisElt, y: GlobalBasisElt) -> Optional[int]:
    return PairCalculator(engine).lambda_pair(x, y)


def delta_pair(engine: GlobalBasis, x: GlobalBasisElt, y: GlobalBasisElt) -> Optional[int]:
    return PairCalculator(engine).delta_pair(x, y)


def pair_invariants(engine: GlobalBasis, x: GlobalBasisElt, y: GlobalBasisElt) -> PairInvariants:
    return PairCalculator(engine).pair_invariants(x, y)
