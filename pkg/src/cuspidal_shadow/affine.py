"""
Label-level bookkeeping for fundamental modules of untwisted affine types A and D.

Denominator zeros are stored as exponents e, meaning (−q)^e is a root of
d_{i,j}(z). δ between two labels counts the matching zeros in both directions.
The right dual acts on labels by `qdata.dshift_label`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from cuspidal_shadow.exceptions import ConfigurationError, RangeError, UnsupportedFeatureError
from cuspidal_shadow.liecore import CartanDatum, ReducedWord, RootVec, beta_sequence, involution_and_coxeter
from cuspidal_shadow.qdata import QData, VertexLabel, ar_quiver, dshift_label, is_adapted, root_coordinate_bijection

logger = logging.getLogger(__name__)

# multiples of h scanned on each side by root_module_check
ROOT_MODULE_SCAN = 3

FundLabel = VertexLabel


@dataclass(frozen=True)
class DenomTable:
    """Zero exponents of every d_{i,j}(z) for one affine type."""

    series: str
    n: int
    zeros: Mapping[Tuple[int, int], Tuple[int, ...]] = field(repr=False)

    def __call__(self, i: int, j: int) -> Tuple[int, ...]:
        return self.zeros[(i, j)]

    def multiplicity(self, i: int, j: int, e: int) -> int:
        return self.zeros[(i, j)].count(e)


def _type_a_zeros(n: int, i: int, j: int) -> List[int]:
    return [abs(i - j) + 2 * s for s in range(1, min(i, j, n + 1 - i, n + 1 - j) + 1)]


def _type_d_zeros(n: int, i: int, j: int) -> List[int]:
    k, l = sorted((i, j))
    spin = (n - 1, n)
    if l <= n - 2:
        out = []
        for s in range(1, k + 1):
            out += [l - k + 2 * s, 2 * n - 2 - k - l + 2 * s]
        return out
    if k <= n - 2:
        return [n - k - 1 + 2 * s for s in range(1, k + 1)]
    if (k, l) == spin:
        return [4 * s for s in range(1, (n - 1) // 2 + 1)]
    return [4 * s - 2 for s in range(1, n // 2 + 1)]


@lru_cache(maxsize=None)
def denominator_table(series: str, n: int) -> DenomTable:
    """
    Raises:
        UnsupportedFeatureError: For the E series
        ConfigurationError: For an invalid series/rank pair
    """
    if series == "E":
        raise UnsupportedFeatureError("denominators", "E-series denominator tables are not implemented")
    if series == "A" and n >= 1:
        builder = _type_a_zeros
    elif series == "D" and n >= 4:
        builder = _type_d_zeros
    else:
        raise ConfigurationError("cartan", f"{series}{n}", "no affine denominator table")
    zeros = {(i, j): tuple(sorted(builder(n, i, j))) for i in range(1, n + 1) for j in range(1, n + 1)}
    return DenomTable(series, n, zeros)


def denominator_zeros(series: str, n: int, i: int, j: int) -> Tuple[int, ...]:
    if not (1 <= i <= n and 1 <= j <= n):
        raise ConfigurationError("index", (i, j), f"outside 1..{n}")
    return denominator_table(series, n)(i, j)


def delta_fund(C: CartanDatum, x: FundLabel, y: FundLabel) -> int:
    """δ(V_x, V_y) from the denominator zeros of the affine type of C."""
    table = denominator_table(C.series, C.rank)
    return table.multiplicity(x.i, y.i, y.p - x.p) + table.multiplicity(y.i, x.i, x.p - y.p)


def dshift_power(C: CartanDatum, x: FundLabel, k: int) -> FundLabel:
    """D^k on labels; negative k uses the inverse (i, p) ↦ (i*, p − h)."""
    star, h = involution_and_coxeter(C)
    i = x.i if k % 2 == 0 else star[x.i]
    return FundLabel(i, x.p + k * h)


def root_module_check(C: CartanDatum, x: FundLabel) -> bool:
    """δ(x, D^k x) = 1 exactly for k = ±1, scanned over |k| ≤ 3h."""
    _, h = involution_and_coxeter(C)
    reach = ROOT_MODULE_SCAN * h
    return all(delta_fund(C, x, dshift_power(C, x, k)) == int(abs(k) == 1) for k in range(-reach, reach + 1))


def c0_labels(C: CartanDatum, p_min: int, p_max: int) -> List[FundLabel]:
    """All labels (i, p) of C⁰ with p_min ≤ p ≤ p_max."""
    return [
        FundLabel(i, p)
        for i in C.index_set
        for p in range(p_min, p_max + 1)
        if FundLabel(i, p).in_c0(C)
    ]


@dataclass
class DatumReport:
    """Result of a strong duality datum check; failures are data, not exceptions."""

    root_failures: List[int]
    pair_failures: List[Tuple[int, int, int, int]]
    recovered: Tuple[Tuple[int, ...], ...]
    target: Tuple[Tuple[int, ...], ...]

    @property
    def passed(self) -> bool:
        return not self.root_failures and not self.pair_failures and self.recovered == self.target

    def to_dict(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "root_failures": self.root_failures,
            "pair_failures": [list(f) for f in self.pair_failures],
            "recovered": [list(row) for row in self.recovered],
        }


def strong_datum_check(
    labels: Mapping[int, FundLabel], target: CartanDatum, affine_type: Optional[CartanDatum] = None
) -> DatumReport:
    """Check that {L_i} is a strong duality datum realising `target`.

    Pair failures are recorded as (i, j, k, δ(L_i, D^k L_j)).
    """
    affine_type = affine_type or target
    _, h = involution_and_coxeter(affine_type)
    index = sorted(labels)
    root_failures = [i for i in index if not root_module_check(affine_type, labels[i])]
    pair_failures = []
    recovered = []
    for i in index:
        row = []
        for j in index:
            if i == j:
                row.append(2)
                continue
            row.append(-delta_fund(affine_type, labels[i], labels[j]))
            for k in range(-h, h + 1):
                value = delta_fund(affine_type, labels[i], dshift_power(affine_type, labels[j], k))
                expected = -target.c(i, j) if k == 0 else 0
                if value != expected:
                    pair_failures.append((i, j, k, value))
        recovered.append(tuple(row))
    report = DatumReport(root_failures, pair_failures, tuple(recovered), target.matrix)
    logger.debug(f"Strong datum check for {target.name}: passed={report.passed}")
    return report


def simple_root_labels(q: QData) -> Dict[int, FundLabel]:
    """L_i = the AR vertex of α_i."""
    forward, _ = root_coordinate_bijection(ar_quiver(q))
    return {i: forward[q.cartan.simple_root(i)] for i in q.cartan.index_set}


@dataclass(frozen=True)
class CuspParam:
    """Finitely supported a: Z → Z≥0, stored as sorted (k, a_k) pairs with a_k > 0."""

    entries: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if any(a < 0 for _, a in self.entries):
            raise ConfigurationError("param", self.entries, "multiplicities must be non-negative")
        clean = tuple(sorted((k, a) for k, a in self.entries if a))
        if len({k for k, _ in clean}) != len(clean):
            raise ConfigurationError("param", self.entries, "repeated index")
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_mapping(cls, values: Mapping[int, int]) -> CuspParam:
        return cls(tuple(values.items()))

    @classmethod
    def from_window(cls, a: Sequence[int], offset: int = 0) -> CuspParam:
        """Window exponent (a_1..a_ℓ) placed at k = offset + 1 .. offset + ℓ."""
        return cls(tuple((offset + n, x) for n, x in enumerate(a, start=1)))

    @classmethod
    def parse(cls, text: str) -> CuspParam:
        """Parse "1:1,3:1"; the empty string is the zero parameter."""
        entries = []
        for chunk in filter(None, (part.strip() for part in text.split(","))):
            k, sep, a = chunk.partition(":")
            try:
                entries.append((int(k), int(a)))
            except ValueError:
                raise ConfigurationError("param", text, f"entry {chunk!r} is not k:a") from None
            if not sep:
                raise ConfigurationError("param", text, f"entry {chunk!r} is not k:a")
        return cls(tuple(entries))

    def __getitem__(self, k: int) -> int:
        return dict(self.entries).get(k, 0)

    @property
    def support(self) -> List[int]:
        return [k for k, _ in self.entries]

    def __str__(self) -> str:
        return ",".join(f"{k}:{a}" for k, a in self.entries)


class Order(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _as_param(a: Union[CuspParam, Sequence[int]]) -> CuspParam:
    return a if isinstance(a, CuspParam) else CuspParam.from_window(a)


def bilex_compare(a: Union[CuspParam, Sequence[int]], b: Union[CuspParam, Sequence[int]]) -> Order:
    """Bi-lexicographic comparison; window exponents are read as parameters on 1..ℓ."""
    a, b = _as_param(a), _as_param(b)
    differences = sorted(k for k in set(a.support) | set(b.support) if a[k] != b[k])
    if not differences:
        return Order.EQUAL
    left, right = differences[0], differences[-1]
    if a[left] < b[left] and a[right] < b[right]:
        return Order.LESS
    if a[left] > b[left] and a[right] > b[right]:
        return Order.GREATER
    return Order.INCOMPARABLE


@dataclass(frozen=True)
class ShadowClass:
    """Formal cuspidal class D^shift(E*(β_index)) for a word that is not adapted."""

    index: int
    shift: int
    root: RootVec

    def __str__(self) -> str:
        return f"D^{self.shift}E*(β_{self.index})"


CuspEntry = Union[FundLabel, ShadowClass]


@dataclass
class CuspLine:
    """Cuspidal labels S_k for k in `k_range`."""

    qdata: QData
    word: ReducedWord
    k_range: range
    adapted: bool
    entries: Dict[int, CuspEntry]

    def __getitem__(self, k: int) -> CuspEntry:
        if k not in self.k_range:
            raise RangeError([k], self.k_range)
        return self.entries[k]

    def to_json(self) -> Dict[str, object]:
        def entry(value: CuspEntry) -> object:
            if isinstance(value, ShadowClass):
                return {"index": value.index, "shift": value.shift, "root": list(value.root)}
            return {"i": value.i, "p": value.p}

        return {
            "cartan": self.qdata.cartan.name,
            "word": list(self.word),
            "adapted": self.adapted,
            "k_range": [self.k_range.start, self.k_range.stop - 1],
            "line": {str(k): entry(self.entries[k]) for k in self.k_range},
        }


def cuspidal_line(q: QData, w: Sequence[int], k_range: range) -> CuspLine:
    """S_{mℓ + r} = D^m(S_r) with the window S_1..S_ℓ read off the AR quiver when w is adapted.

    Raises:
        InvalidWordError: If w is not a reduced word of w₀
    """
    seq = beta_sequence(q.cartan, w)
    ell = len(seq)
    adapted = is_adapted(seq.word, q)
    window: Dict[int, FundLabel] = {}
    if adapted:
        forward, _ = root_coordinate_bijection(ar_quiver(q))
        window = {r: forward[seq.beta(r)] for r in range(1, ell + 1)}
    entries: Dict[int, CuspEntry] = {}
    for k in k_range:
        m, r = divmod(k - 1, ell)
        r += 1
        if adapted:
            entries[k] = dshift_power(q.cartan, window[r], m)
        else:
            entries[k] = ShadowClass(r, m, seq.beta(r))
    logger.debug(f"Cuspidal line for {seq.word} over {k_range}: adapted={adapted}")
    return CuspLine(q, seq.word, k_range, adapted, entries)


def _require_labels(line: CuspLine, operation: str) -> None:
    if not line.adapted:
        raise UnsupportedFeatureError(operation, "the line only carries shadow classes")


def unmixed_check(line: CuspLine) -> bool:
    """δ(S_j, D S_k) = 0 for all j < k in the line's range."""
    _require_labels(line, "unmixed_check")
    C = line.qdata.cartan
    ks = list(line.k_range)
    shifted = {k: dshift_label(C, line.entries[k]) for k in ks}
    return all(delta_fund(C, line.entries[j], shifted[k]) == 0 for n, j in enumerate(ks) for k in ks[n + 1:])


def line_root_module_failures(line: CuspLine) -> List[int]:
    """Indices k whose S_k is not a root module."""
    _require_labels(line, "line_root_module_failures")
    C = line.qdata.cartan
    return [k for k in line.k_range if not root_module_check(C, line.entries[k])]


@dataclass(frozen=True)
class StdDescriptor:
    """Factors of the standard module, descending in k."""

    factors: Tuple[Tuple[int, CuspEntry, int], ...]

    def __len__(self) -> int:
        return len(self.factors)

    def to_json(self) -> List[Dict[str, object]]:
        out = []
        for k, entry, multiplicity in self.factors:
            label = str(entry) if isinstance(entry, ShadowClass) else {"i": entry.i, "p": entry.p}
            out.append({"k": k, "label": label, "multiplicity": multiplicity})
        return out


def standard_descriptor(line: CuspLine, a: CuspParam) -> StdDescriptor:
    """
    Raises:
        RangeError: If the support of a leaves the line's range
    """
    if any(k not in line.k_range for k in a.support):
        raise RangeError(a.support, line.k_range)
    return StdDescriptor(tuple((k, line.entries[k], a[k]) for k in sorted(a.support, reverse=True)))


def window_params(ell: int, total: int) -> Iterable[Tuple[int, ...]]:
    """Window exponents (a_1..a_ℓ) with Σ a_k ≤ total."""

    def fill(prefix: Tuple[int, ...], remaining: int):
        if len(prefix) == ell:
            yield prefix
            return
        for x in range(remaining + 1):
            yield from fill(prefix + (x,), remaining - x)

    yield from fill((), total)
