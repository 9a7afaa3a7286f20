"""
Dual canonical (upper global) basis of the shuffle model.

Within one weight space the PBW monomials M(a) are ordered by the lexicographic
order on exponents, which extends the bi-lexicographic order. Going upwards,
each G(a) is obtained from M(a) by the Kazhdan-Lusztig correction

    G(a) = M(a) + Σ_{a' < a} p_{a',a} G(a'),   p_{a',a} ∈ qZ[q],

with p fixed by bar(G(a)) = G(a). Every step is exact; anything that would
break triangularity or bar-invariance raises InvariantViolation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple, Union

from cuspidal_shadow.affine import Order, bilex_compare
from cuspidal_shadow.exceptions import DomainError, InvariantViolation
from cuspidal_shadow.laurent import ONE, ZERO, LaurentPoly
from cuspidal_shadow.liecore import CartanDatum, ConvexSeq, RootVec, height
from cuspidal_shadow.pbw import PbwBasis, PbwExponent, exponent_weight
from cuspidal_shadow.shuffle import ShuffleAlgebra, ShuffleElt, word_to_str

if TYPE_CHECKING:
    from cuspidal_shadow.basis_cache import BasisCache

logger = logging.getLogger(__name__)

DEFAULT_HEIGHT_BOUND = 6

Coordinates = Dict[PbwExponent, LaurentPoly]


def exponent_to_str(a: Sequence[int]) -> str:
    return ",".join(str(x) for x in a)


def exponent_from_str(text: str) -> PbwExponent:
    return tuple(int(x) for x in text.split(",")) if text else ()


@dataclass(frozen=True)
class GlobalBasisElt:
    """One dual canonical basis element, labelled by its PBW leading exponent.

    Attributes:
        exponent: Leading PBW exponent (the cuspidal decomposition in this window)
        value: The element itself; bar-invariant
        pbw: Its PBW coordinates; 1 on `exponent`, qZ[q] below it
    """

    exponent: PbwExponent
    value: ShuffleElt
    pbw: Tuple[Tuple[PbwExponent, LaurentPoly], ...] = field(compare=False, repr=False)

    def to_json(self) -> Dict[str, object]:
        return {
            "exponent": exponent_to_str(self.exponent),
            "value": self.value.to_json(),
            "pbw": {exponent_to_str(a): str(c) for a, c in self.pbw},
        }

    @classmethod
    def from_json(cls, data: Dict[str, object], rank: int) -> GlobalBasisElt:
        pbw = tuple(
            sorted((exponent_from_str(a), LaurentPoly.parse(c)) for a, c in data["pbw"].items())
        )
        return cls(exponent_from_str(data["exponent"]), ShuffleElt.from_json(data["value"], rank), pbw)


@dataclass
class UnitriangularityReport:
    """Outcome of expanding E*(a) over the global basis.

    A failed clause is recorded in `failures`, never raised.
    """

    exponent: PbwExponent
    head_coefficient: LaurentPoly
    lower_terms: Dict[PbwExponent, LaurentPoly]
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, object]:
        return {
            "exponent": exponent_to_str(self.exponent),
            "head_coefficient": str(self.head_coefficient),
            "lower_terms": {exponent_to_str(a): str(c) for a, c in sorted(self.lower_terms.items())},
            "passed": self.passed,
            "failures": list(self.failures),
        }


class GlobalBasis:
    """Global basis engine for one convex order, memoized per weight.

    Attributes:
        pbw: Underlying dual PBW data
        height_bound: Largest weight height this engine will compute
        cache: Optional shared on-disk cache
    """

    def __init__(
        self,
        pbw: PbwBasis,
        height_bound: int = DEFAULT_HEIGHT_BOUND,
        cache: Optional[BasisCache] = None,
    ):
        self.pbw = pbw
        self.height_bound = height_bound
        self.cache = cache
        self._spaces: Dict[RootVec, List[GlobalBasisElt]] = {}

    @classmethod
    def for_word(
        cls,
        cartan: CartanDatum,
        seq: ConvexSeq,
        height_bound: int = DEFAULT_HEIGHT_BOUND,
        cache: Optional[BasisCache] = None,
    ) -> GlobalBasis:
        return cls(PbwBasis(ShuffleAlgebra(cartan), seq), height_bound, cache)

    @property
    def seq(self) -> ConvexSeq:
        return self.pbw.seq

    @property
    def rank(self) -> int:
        return self.seq.cartan.rank

    def _check_weight(self, mu: Sequence[int]) -> RootVec:
        mu = tuple(mu)
        if len(mu) != self.rank or any(x < 0 for x in mu):
            raise DomainError("dual_canonical_at_weight", f"{mu} is not a non-negative weight of rank {self.rank}")
        if height(mu) > self.height_bound:
            raise DomainError(
                "dual_canonical_at_weight",
                f"weight {mu} has height {height(mu)} above the configured bound {self.height_bound}",
            )
        return mu

    def _cache_key(self, mu: RootVec) -> str:
        return f"{self.seq.cartan.name}|{word_to_str(self.seq.word)}|{exponent_to_str(mu)}"

    def at_weight(self, mu: Sequence[int]) -> List[GlobalBasisElt]:
        """All G(a) of weight μ, ascending in exponent order.

        Raises:
            DomainError: If μ is not a weight or exceeds the height bound
            InvariantViolation: If the correction cannot be solved
        """
        mu = self._check_weight(mu)
        cached = self._spaces.get(mu)
        if cached is not None:
            return cached
        elements = None
        if self.cache is not None:
            stored = self.cache.get(self._cache_key(mu))
            if stored is not None:
                elements = [GlobalBasisElt.from_json(item, self.rank) for item in stored]
                logger.debug(f"Global basis {mu} for {self.seq.word} loaded from cache")
        if elements is None:
            elements = self._compute(mu)
            if self.cache is not None:
                self.cache.insert(self._cache_key(mu), [g.to_json() for g in elements])
        self._spaces[mu] = elements
        return elements

    def _compute(self, mu: RootVec) -> List[GlobalBasisElt]:
        exponents, _ = self.pbw.weight_space(mu)
        computed: List[GlobalBasisElt] = []
        by_exponent: Dict[PbwExponent, GlobalBasisElt] = {}
        for a in exponents:
            monomial = self.pbw.monomial(a)
            if len(exponents) == 1:
                g = GlobalBasisElt(a, monomial, ((a, ONE),))
            else:
                s = self._to_global(self.pbw.expand(monomial.bar() - monomial), by_exponent, a)
                pbw: Coordinates = {a: ONE}
                value = monomial
                for lower, coefficient in s.items():
                    if coefficient.bar() != -coefficient:
                        raise InvariantViolation("bar-transition", f"coefficient {coefficient} at {lower} below {a}")
                    p = coefficient.positive_part()
                    if not p:
                        continue
                    below = by_exponent[lower]
                    value = value + below.value.scale(p)
                    for b, c in below.pbw:
                        pbw[b] = pbw.get(b, ZERO) + p * c
                g = GlobalBasisElt(a, value, tuple(sorted((b, c) for b, c in pbw.items() if c)))
            if g.value.bar() != g.value:
                raise InvariantViolation("bar-invariance", f"G{a} is not bar-invariant")
            if any(b != a and not c.in_q_zq() for b, c in g.pbw):
                raise InvariantViolation("unitriangularity", f"G{a} has off-diagonal PBW terms outside qZ[q]")
            computed.append(g)
            by_exponent[a] = g
        logger.debug(f"Global basis {mu} for {self.seq.word}: {len(computed)} elements")
        return computed

    @staticmethod
    def _to_global(
        coordinates: Coordinates, known: Dict[PbwExponent, GlobalBasisElt], ceiling: Optional[PbwExponent]
    ) -> Coordinates:
        """Rewrite PBW coordinates over already-built G's by descending substitution."""
        remaining = {a: c for a, c in coordinates.items() if c}
        out: Coordinates = {}
        while remaining:
            top = max(remaining)
            if ceiling is not None and top >= ceiling:
                raise InvariantViolation("pbw-triangularity", f"term {top} not below {ceiling}")
            if top not in known:
                raise InvariantViolation("pbw-triangularity", f"no global element built for {top}")
            c = remaining[top]
            out[top] = c
            for b, coefficient in known[top].pbw:
                updated = remaining.get(b, ZERO) - c * coefficient
                if updated:
                    remaining[b] = updated
                else:
                    remaining.pop(b, None)
        return out

    def expand(self, x: ShuffleElt) -> Coordinates:
        """Exact coordinates of a homogeneous x over the global basis of its weight."""
        if not x.is_homogeneous:
            raise DomainError("expand_in_dual_canonical", "element is not homogeneous")
        if x.is_zero():
            return {}
        known = {g.exponent: g for g in self.at_weight(x.weight)}
        return self._to_global(self.pbw.expand(x), known, None)

    def transition_matrices(
        self, mu: Sequence[int]
    ) -> Tuple[Dict[PbwExponent, Coordinates], Dict[PbwExponent, Coordinates]]:
        """(global → PBW, PBW → global) coordinate maps for weight μ."""
        elements = self.at_weight(mu)
        to_pbw = {g.exponent: dict(g.pbw) for g in elements}
        to_global = {g.exponent: self.expand(self.pbw.monomial(g.exponent)) for g in elements}
        return to_pbw, to_global

    def weight_report(self, mu: Sequence[int]) -> Dict[str, object]:
        """JSON-ready dump of one weight space."""
        to_pbw, to_global = self.transition_matrices(mu)

        def matrix(rows: Dict[PbwExponent, Coordinates]) -> Dict[str, Dict[str, str]]:
            return {
                exponent_to_str(a): {exponent_to_str(b): str(c) for b, c in sorted(row.items())}
                for a, row in sorted(rows.items())
            }

        elements = self.at_weight(mu)
        return {
            "cartan": self.seq.cartan.name,
            "word": word_to_str(self.seq.word),
            "weight": list(mu),
            "exponents": [exponent_to_str(g.exponent) for g in elements],
            "elements": {exponent_to_str(g.exponent): g.value.to_json() for g in elements},
            "global_to_pbw": matrix(to_pbw),
            "pbw_to_global": matrix(to_global),
        }

    def element(self, a: Sequence[int]) -> GlobalBasisElt:
        a = tuple(a)
        for g in self.at_weight(exponent_weight(self.seq, a)):
            if g.exponent == a:
                return g
        raise DomainError("global_element", f"no exponent {a} for {self.seq.word}")

    def unitriangularity_report(self, a: Sequence[int]) -> UnitriangularityReport:
        a = tuple(a)
        coordinates = self.expand(self.pbw.monomial(a))
        head = coordinates.get(a, ZERO)
        lower = {b: c for b, c in coordinates.items() if b != a}
        report = UnitriangularityReport(a, head, lower)
        if head != ONE:
            report.failures.append(f"head coefficient of {a} is {head}, expected 1")
        for b, c in sorted(lower.items()):
            if bilex_compare(b, a) is not Order.LESS:
                report.failures.append(f"lower term {b} is not below {a} in the bi-lexicographic order")
            if c.evaluate_at_one() < 0:
                report.failures.append(f"coefficient {c} at {b} is negative at q=1")
        return report


def dual_canonical_at_weight(
    C: CartanDatum, seq: ConvexSeq, mu: Sequence[int], height_bound: int = DEFAULT_HEIGHT_BOUND
) -> List[GlobalBasisElt]:
    return GlobalBasis.for_word(C, seq, height_bound).at_weight(mu)


def expand_in_dual_canonical(engine: GlobalBasis, x: ShuffleElt) -> Coordinates:
    return engine.expand(x)


def cuspidal_decomposition_window(x: Union[GlobalBasisElt, ShuffleElt], pbw: PbwBasis) -> PbwExponent:
    """The window shadow of the cuspidal decomposition, read off the value alone.

    The value is expanded in the PBW basis; the answer is the exponent with
    coefficient exactly 1 that is bi-lexicographically above every other
    exponent in the expansion.

    Raises:
        DomainError: If the value is zero, not homogeneous, or has no such head
    """
    value = x.value if isinstance(x, GlobalBasisElt) else x
    coordinates = pbw.expand(value)
    heads = [
        a
        for a, c in coordinates.items()
        if c == ONE and all(bilex_compare(a, b) is Order.GREATER for b in coordinates if b != a)
    ]
    if len(heads) != 1:
        raise DomainError(
            "cuspidal_decomposition_window", f"no unique bi-lexicographic head among {sorted(coordinates)}"
        )
    return heads[0]


def unitriangularity_report(engine: GlobalBasis, a: Sequence[int]) -> UnitriangularityReport:
    return engine.unitriangularity_report(a)
