"""
Dual PBW root vectors and monomials attached to a convex order.

E*(β_k) is the letter (i) for a simple root and otherwise the q-commutator of
a minimal pair, made primitive and bar-invariant. PBW monomials are the
ordered products E*(β_ℓ)^{(a_ℓ)} ∗ ⋯ ∗ E*(β_1)^{(a_1)} of dual divided powers.
Each monomial has an intrinsic leading word: its smallest word once letters
are ranked by where α_i sits in the convex order. When those words are
distinct they serve as the pivots of `WeightSpaceSolver`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from cuspidal_shadow.elimination import WeightSpaceSolver
from cuspidal_shadow.exceptions import DomainError, InvariantViolation
from cuspidal_shadow.laurent import LaurentPoly
from cuspidal_shadow.liecore import ConvexSeq, RootVec, root_system
from cuspidal_shadow.shuffle import ShuffleAlgebra, ShuffleElt, Word, word_to_str

logger = logging.getLogger(__name__)

PbwExponent = Tuple[int, ...]


def exponent_weight(seq: ConvexSeq, a: Sequence[int]) -> RootVec:
    """Σ a_k β_k."""
    total = [0] * seq.cartan.rank
    for count, beta in zip(a, seq.betas):
        for n, x in enumerate(beta):
            total[n] += count * x
    return tuple(total)


def exponent_order_key(a: PbwExponent) -> PbwExponent:
    """Linear extension of the bi-lexicographic order used inside a weight space."""
    return tuple(a)


def pbw_exponents(seq: ConvexSeq, mu: Sequence[int]) -> List[PbwExponent]:
    """All exponents a with Σ a_k β_k = μ, ascending in `exponent_order_key`."""
    mu = tuple(mu)
    ell = len(seq)
    out: List[PbwExponent] = []

    def fill(k: int, remaining: Tuple[int, ...], prefix: List[int]) -> None:
        if k == ell:
            if not any(remaining):
                out.append(tuple(prefix))
            return
        beta = seq.betas[k]
        count = 0
        rest = remaining
        while all(x >= 0 for x in rest):
            fill(k + 1, rest, prefix + [count])
            count += 1
            rest = tuple(r - b for r, b in zip(rest, beta))

    fill(0, mu, [])
    return sorted(out, key=exponent_order_key)


@dataclass(frozen=True)
class PbwBasisElt:
    """A dual PBW monomial E*(a) together with its intrinsic leading word."""

    exponent: PbwExponent
    value: ShuffleElt
    leading_word: Word

    def tsv_row(self) -> str:
        exponent = ",".join(str(x) for x in self.exponent)
        return f"{exponent}\t{word_to_str(self.leading_word)}\t{self.value.dumps()}"


class PbwBasis:
    """Dual PBW data for one reduced word of w₀; every construction is memoized.

    Attributes:
        algebra: Shuffle algebra used for all products
        seq: Convex order β_1..β_ℓ
    """

    def __init__(self, algebra: ShuffleAlgebra, seq: ConvexSeq):
        if algebra.cartan != seq.cartan:
            raise DomainError("PbwBasis", "algebra and convex order use different Cartan data")
        self.algebra = algebra
        self.seq = seq
        self._roots = root_system(seq.cartan)
        self._root_vectors: Dict[int, ShuffleElt] = {}
        self._powers: Dict[Tuple[int, int], ShuffleElt] = {}
        self._monomials: Dict[PbwExponent, ShuffleElt] = {}
        self._spaces: Dict[RootVec, Tuple[List[PbwExponent], WeightSpaceSolver]] = {}

    @property
    def ell(self) -> int:
        return len(self.seq)

    def minimal_pair(self, k: int) -> Tuple[int, int]:
        """(j, l) with j < k < l, β_j + β_l = β_k, smallest l − j, then smallest j."""
        target = self.seq.beta(k)
        best = None
        for j in range(1, k):
            rest = tuple(t - b for t, b in zip(target, self.seq.beta(j)))
            if rest not in self._roots:
                continue
            l = self.seq.position(rest)
            if l <= k:
                continue
            if best is None or (l - j, j) < (best[1] - best[0], best[0]):
                best = (j, l)
        if best is None:
            raise InvariantViolation("minimal-pair", f"no pair around β_{k} = {target} in {self.seq.word}")
        return best

    def root_vector(self, k: int) -> ShuffleElt:
        """E*(β_k), 1-based k."""
        if not 1 <= k <= self.ell:
            raise DomainError("dual_root_vector", f"k={k} outside 1..{self.ell}")
        cached = self._root_vectors.get(k)
        if cached is not None:
            return cached
        beta = self.seq.beta(k)
        simple = self._roots.simple_index(beta)
        if simple:
            vector = self.algebra.letter(simple)
        else:
            j, l = self.minimal_pair(k)
            gamma, delta = self.seq.beta(j), self.seq.beta(l)
            raw = self.algebra.commutator(
                self.root_vector(j), self.root_vector(l), -self.seq.cartan.pairing(gamma, delta)
            )
            vector = _normalise_bar_invariant(raw, f"E*(β_{k})")
        self._root_vectors[k] = vector
        logger.debug(f"E*(β_{k}) for {self.seq.word}: {len(vector)} words")
        return vector

    def divided_power(self, k: int, a: int) -> ShuffleElt:
        """q_β^{a(a−1)/2} E*(β_k)^{∗a}, the bar-invariant dual divided power.

        No [a]! is divided out: in the dual basis the power itself is the
        integral element, e.g. (1)^{(2)} = (q + q⁻¹)(11) in A₁.
        """
        key = (k, a)
        cached = self._powers.get(key)
        if cached is not None:
            return cached
        if a == 0:
            value = self.algebra.one()
        elif a == 1:
            value = self.root_vector(k)
        else:
            beta = self.seq.beta(k)
            d = self.seq.cartan.pairing(beta, beta) // 2
            raw = self.algebra.mul(self.divided_power(k, a - 1), self.root_vector(k))
            value = raw.scale(LaurentPoly.monomial(d * (a - 1)))
        self._powers[key] = value
        return value

    def monomial(self, a: Sequence[int]) -> ShuffleElt:
        """E*(β_ℓ)^{(a_ℓ)} ∗ ⋯ ∗ E*(β_1)^{(a_1)}; the k=ℓ factor is leftmost."""
        a = tuple(a)
        if len(a) != self.ell:
            raise DomainError("dual_pbw_monomial", f"exponent length {len(a)} differs from ℓ = {self.ell}")
        if any(x < 0 for x in a):
            raise DomainError("dual_pbw_monomial", f"exponent {a} has negative entries")
        cached = self._monomials.get(a)
        if cached is not None:
            return cached
        value = self.algebra.one()
        for k in range(1, self.ell + 1):
            if a[k - 1]:
                value = self.algebra.mul(self.divided_power(k, a[k - 1]), value)
        self._monomials[a] = value
        return value

    def letter_rank(self) -> Dict[int, int]:
        """Letter i ranked by the position of α_i in the convex order."""
        C = self.seq.cartan
        return {i: self.seq.position(C.simple_root(i)) for i in C.index_set}

    def leading_word(self, a: Sequence[int]) -> Word:
        """Smallest word in the support of E*(a), letters compared by `letter_rank`."""
        rank = self.letter_rank()
        return min((w for w, _ in self.monomial(a).items()), key=lambda w: tuple(rank[x] for x in w))

    def leading_word_collisions(self, mu: Sequence[int]) -> Dict[Word, List[PbwExponent]]:
        """Leading words shared by two or more monomials of weight μ (empty when all are distinct)."""
        shared: Dict[Word, List[PbwExponent]] = {}
        for a in pbw_exponents(self.seq, mu):
            shared.setdefault(self.leading_word(a), []).append(a)
        return {w: group for w, group in shared.items() if len(group) > 1}

    def weight_space(self, mu: Sequence[int]) -> Tuple[List[PbwExponent], WeightSpaceSolver]:
        """Exponents of weight μ and the exact solver over their monomials."""
        mu = tuple(mu)
        cached = self._spaces.get(mu)
        if cached is not None:
            return cached
        exponents = pbw_exponents(self.seq, mu)
        vectors = [dict(self.monomial(a).items()) for a in exponents]
        words = [self.leading_word(a) for a in exponents]
        solver = None
        if len(set(words)) == len(words):
            try:
                solver = WeightSpaceSolver(vectors, pivots=words)
            except InvariantViolation:
                logger.warning(f"Leading words at {mu} for {self.seq.word} give a singular pivot block")
        else:
            logger.warning(f"Leading words collide at {mu} for {self.seq.word}; using elimination pivots")
        if solver is None:
            solver = WeightSpaceSolver(vectors)
        self._spaces[mu] = (exponents, solver)
        logger.debug(f"PBW weight space {mu} for {self.seq.word}: dim={len(exponents)}")
        return exponents, solver

    def basis_element(self, a: Sequence[int]) -> PbwBasisElt:
        a = tuple(a)
        return PbwBasisElt(a, self.monomial(a), self.leading_word(a))

    def expand(self, x: ShuffleElt) -> Dict[PbwExponent, LaurentPoly]:
        """Exact PBW coordinates of a homogeneous element (zero coefficients omitted).

        Raises:
            DomainError: If x is not homogeneous
            InvariantViolation: If x is outside the span of the PBW monomials
        """
        if not x.is_homogeneous:
            raise DomainError("expand_in_pbw", "element is not homogeneous")
        if x.is_zero():
            return {}
        exponents, solver = self.weight_space(x.weight)
        coefficients = solver.coordinates(dict(x.items()))
        return {a: c for a, c in zip(exponents, coefficients) if c}

    def dump_tsv(self, mu: Sequence[int]) -> str:
        exponents, _ = self.weight_space(mu)
        lines = ["exponent\tleading_word\telement"]
        lines.extend(self.basis_element(a).tsv_row() for a in exponents)
        return "\n".join(lines) + "\n"


def _normalise_bar_invariant(raw: ShuffleElt, label: str) -> ShuffleElt:
    """Divide out the content, then fix the unit ±q^t by bar-invariance and positivity."""
    if raw.is_zero():
        raise InvariantViolation("root-vector", f"{label}: q-commutator vanished")
    content = LaurentPoly()
    for _, c in raw.items():
        content = content.gcd(c)
    primitive = raw.exact_div(content)
    _, sample = next(primitive.items())
    # bar(q^t p) = q^t p forces 2t = −(max + min) on every coefficient
    twice_t = -(sample.max_degree() + sample.min_degree())
    if twice_t % 2:
        raise InvariantViolation("root-vector", f"{label}: no bar-invariant normalisation")
    value = primitive.scale(LaurentPoly.monomial(twice_t // 2))
    if value.bar() != value:
        raise InvariantViolation("root-vector", f"{label}: normalised vector is not bar-invariant")
    _, lead = next(value.items())
    if lead.evaluate_at_one() < 0:
        value = -value
    return value


def dual_root_vector(basis: PbwBasis, k: int) -> ShuffleElt:
    return basis.root_vector(k)


def dual_pbw_monomial(basis: PbwBasis, a: Sequence[int]) -> PbwBasisElt:
    return basis.basis_element(a)


def expand_in_pbw(basis: PbwBasis, x: ShuffleElt) -> Dict[PbwExponent, LaurentPoly]:
    return basis.expand(x)


__all__ = [
    "PbwBasis",
    "PbwBasisElt",
    "PbwExponent",
    "dual_pbw_monomial",
    "dual_root_vector",
    "expand_in_pbw",
    "exponent_order_key",
    "exponent_weight",
    "pbw_exponents",
]
