"""
Fraction-free elimination over Z[q, q⁻¹].

A weight space is handed over as a list of basis vectors (word → LaurentPoly
maps). `WeightSpaceSolver` takes one pivot word per basis vector, either
supplied by the caller or picked by Bareiss elimination in (length, lex) word
order, inverts the square pivot block up to
its determinant, and then solves any number of targets exactly. Every
division performed here is exact by Sylvester's identity; a failed division
or a residual that does not vanish is reported as an InvariantViolation.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from cuspidal_shadow.exceptions import InvariantViolation
from cuspidal_shadow.laurent import ONE, ZERO, LaurentPoly
from cuspidal_shadow.shuffle import Word, word_key

logger = logging.getLogger(__name__)

Vector = Mapping[Word, LaurentPoly]


def _exact(numerator: LaurentPoly, denominator: LaurentPoly, check: str) -> LaurentPoly:
    try:
        return numerator.exact_div(denominator)
    except (ValueError, ZeroDivisionError) as e:
        raise InvariantViolation(check, f"{numerator} / {denominator}: {e}") from e


def pivot_words(basis: Sequence[Vector]) -> List[Word]:
    """Distinct pivot word for each basis vector, in basis order.

    Raises:
        InvariantViolation: If the vectors are linearly dependent
    """
    columns = sorted(set().union(*(v.keys() for v in basis)), key=word_key) if basis else []
    rows: List[Dict[Word, LaurentPoly]] = [dict(v) for v in basis]
    owner = list(range(len(basis)))
    pivots: Dict[int, Word] = {}
    previous = ONE
    r = 0
    for column in columns:
        if r == len(rows):
            break
        candidate = next((i for i in range(r, len(rows)) if rows[i].get(column)), None)
        if candidate is None:
            continue
        rows[r], rows[candidate] = rows[candidate], rows[r]
        owner[r], owner[candidate] = owner[candidate], owner[r]
        pivot_row = rows[r]
        pivot = pivot_row[column]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            factor = row.get(column, ZERO)
            updated = {}
            for word in set(row) | set(pivot_row):
                if word_key(word) <= word_key(column):
                    continue
                value = pivot * row.get(word, ZERO) - factor * pivot_row.get(word, ZERO)
                if value:
                    updated[word] = _exact(value, previous, "bareiss-echelon")
            rows[i] = updated
        pivots[owner[r]] = column
        previous = pivot
        r += 1
    if r < len(rows):
        raise InvariantViolation("basis-independence", f"only {r} of {len(rows)} vectors are independent")
    return [pivots[n] for n in range(len(basis))]


def bareiss_solve(
    matrix: List[List[LaurentPoly]], rhs: List[List[LaurentPoly]]
) -> Tuple[LaurentPoly, List[List[LaurentPoly]]]:
    """Solve A·X = B fraction-free.

    Returns:
        (D, Y) with D the last Bareiss pivot and Y = D·X, both exact

    Raises:
        InvariantViolation: If A is singular
    """
    n = len(matrix)
    m = len(rhs[0]) if rhs else 0
    aug = [list(matrix[i]) + list(rhs[i]) for i in range(n)]
    previous = ONE
    for k in range(n):
        candidate = next((i for i in range(k, n) if aug[i][k]), None)
        if candidate is None:
            raise InvariantViolation("square-solve", f"pivot block is singular at column {k}")
        aug[k], aug[candidate] = aug[candidate], aug[k]
        for i in range(k + 1, n):
            factor = aug[i][k]
            for j in range(k + 1, n + m):
                aug[i][j] = _exact(aug[k][k] * aug[i][j] - factor * aug[k][j], previous, "bareiss-forward")
            aug[i][k] = ZERO
        previous = aug[k][k]
    det = aug[n - 1][n - 1] if n else ONE
    solution = [[ZERO] * m for _ in range(n)]
    for t in range(m):
        for i in reversed(range(n)):
            acc = det * aug[i][n + t]
            for j in range(i + 1, n):
                acc = acc - aug[i][j] * solution[j][t]
            solution[i][t] = _exact(acc, aug[i][i], "bareiss-back-substitution")
    return det, solution


class WeightSpaceSolver:
    """Exact coordinates with respect to a fixed basis of one weight space.

    Attributes:
        leading_words: Pivot word of each basis vector; pairwise distinct
    """

    def __init__(self, basis: Sequence[Vector], pivots: Optional[Sequence[Word]] = None):
        self.basis = [dict(v) for v in basis]
        if pivots is None:
            self.leading_words = pivot_words(self.basis)
        else:
            if len(pivots) != len(self.basis) or len(set(pivots)) != len(pivots):
                raise InvariantViolation(
                    "pivot-words", f"{len(set(pivots))} distinct pivots for {len(self.basis)} vectors"
                )
            self.leading_words = list(pivots)
        n = len(self.basis)
        # A[j][i] = coefficient of basis vector i on pivot word j, so A·c = target restricted to pivots
        block = [[self.basis[i].get(self.leading_words[j], ZERO) for i in range(n)] for j in range(n)]
        identity = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        self._det, self._scaled_inverse = bareiss_solve(block, identity)
        logger.debug(f"Weight space solver ready: dim={n}, det={self._det}")

    def __len__(self) -> int:
        return len(self.basis)

    def coordinates(self, target: Vector) -> List[LaurentPoly]:
        """Coefficients c with Σ c_i·basis_i = target.

        Raises:
            InvariantViolation: If the target is outside the Z[q, q⁻¹]-span of the basis
        """
        n = len(self.basis)
        restricted = [target.get(word, ZERO) for word in self.leading_words]
        coefficients = []
        for i in range(n):
            acc = ZERO
            for j in range(n):
                if restricted[j]:
                    acc = acc + self._scaled_inverse[i][j] * restricted[j]
            coefficients.append(_exact(acc, self._det, "integral-coordinates"))
        residual: Dict[Word, LaurentPoly] = {w: c for w, c in target.items() if c}
        for c, vector in zip(coefficients, self.basis):
            if not c:
                continue
            for word, value in vector.items():
                updated = residual.get(word, ZERO) - c * value
                if updated:
                    residual[word] = updated
                else:
                    residual.pop(word, None)
        if residual:
            sample = sorted(residual, key=word_key)[0]
            raise InvariantViolation("weight-space-span", f"target not spanned; residual at word {sample}")
        return coefficients
