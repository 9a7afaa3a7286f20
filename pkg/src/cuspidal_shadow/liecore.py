"""
Simply-laced Cartan data and root systems.

This module builds ADE Cartan data, closes the simple roots under the Weyl
reflections to obtain the positive roots, enumerates reduced words of the
longest Weyl group element and turns them into convex orders on the positive
roots.

Roots are tuples of integers (coefficients on the simple roots). Indices of
simple roots are 1-based everywhere, matching I₀ = {1, ..., rank}.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple

import networkx as nx
import numpy as np

from cuspidal_shadow.exceptions import ConfigurationError, DomainError, InvalidWordError

logger = logging.getLogger(__name__)

RootVec = Tuple[int, ...]
ReducedWord = Tuple[int, ...]

SERIES = ("A", "D", "E")


def dynkin_edges(series: str, rank: int) -> List[Tuple[int, int]]:
    """Edges of the Dynkin diagram in Bourbaki labelling.

    Raises:
        ConfigurationError: If (series, rank) is not a finite ADE type
    """
    if series == "A" and rank >= 1:
        return [(i, i + 1) for i in range(1, rank)]
    if series == "D" and rank >= 4:
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    if series == "E" and rank in (6, 7, 8):
        return [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, rank)]
    raise ConfigurationError("cartan", f"{series}{rank}", "not a simply-laced finite type (A_n, D_n≥4, E6-8)")


def parse_cartan(text: str) -> Tuple[str, int]:
    """Parse a Cartan type name such as ``"A2"`` or ``"D4"``."""
    text = text.strip().upper()
    if len(text) < 2 or text[0] not in SERIES or not text[1:].isdigit():
        raise ConfigurationError("cartan", text, "expected a name like A3, D4 or E6")
    series, rank = text[0], int(text[1:])
    dynkin_edges(series, rank)
    return series, rank


def _classify_tree(graph: nx.Graph) -> Tuple[str, int]:
    """Identify the ADE type of a Dynkin graph, ignoring labels."""
    n = graph.number_of_nodes()
    if n == 0 or not nx.is_connected(graph) or not nx.is_tree(graph):
        raise ConfigurationError("matrix", n, "Dynkin graph must be a connected tree")
    branches = [v for v, d in graph.degree() if d >= 3]
    if not branches:
        return "A", n
    if len(branches) > 1 or graph.degree(branches[0]) != 3:
        raise ConfigurationError("matrix", n, "Dynkin graph is not of ADE shape")
    centre = branches[0]
    pruned = graph.copy()
    pruned.remove_node(centre)
    arms = sorted(len(component) for component in nx.connected_components(pruned))
    if arms[0] == 1 and arms[1] == 1:
        return "D", n
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return "E", n
    raise ConfigurationError("matrix", n, f"Dynkin graph with arms {arms} is not of ADE shape")


@dataclass(frozen=True)
class CartanDatum:
    """A simply-laced finite Cartan matrix, which is also the symmetric form on roots.

    Attributes:
        series: One of "A", "D", "E"
        rank: Number of simple roots
        matrix: Rows of c_{i,j}, indexed from 0 for i = 1
    """

    series: str
    rank: int
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        m = self.matrix
        if len(m) != self.rank or any(len(row) != self.rank for row in m):
            raise ConfigurationError("matrix", m, f"expected a {self.rank}x{self.rank} matrix")
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.rank + 1))
        for i in range(self.rank):
            if m[i][i] != 2:
                raise ConfigurationError("matrix", m, f"diagonal entry c_{i + 1},{i + 1} must be 2")
            for j in range(self.rank):
                if i == j:
                    continue
                if m[i][j] not in (0, -1) or m[i][j] != m[j][i]:
                    raise ConfigurationError("matrix", m, f"off-diagonal entry c_{i + 1},{j + 1} invalid")
                if m[i][j] == -1:
                    graph.add_edge(i + 1, j + 1)
        if _classify_tree(graph) != (self.series, self.rank):
            raise ConfigurationError("matrix", m, f"graph is not of type {self.series}{self.rank}")

    @classmethod
    def of_type(cls, series: str, rank: int) -> CartanDatum:
        matrix = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        for i, j in dynkin_edges(series, rank):
            matrix[i - 1][j - 1] = matrix[j - 1][i - 1] = -1
        return cls(series, rank, tuple(tuple(row) for row in matrix))

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def index_set(self) -> range:
        return range(1, self.rank + 1)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.index_set)
        graph.add_edges_from(dynkin_edges(self.series, self.rank))
        return graph

    def c(self, i: int, j: int) -> int:
        return self.matrix[i - 1][j - 1]

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        """Symmetric form (u, v) with (α_i, α_j) = c_{i,j}."""
        return int(np.asarray(u, dtype=np.int64) @ self.array @ np.asarray(v, dtype=np.int64))

    def simple_root(self, i: int) -> RootVec:
        if i not in self.index_set:
            raise DomainError("simple_root", f"index {i} is not in I₀ = 1..{self.rank}")
        return tuple(1 if j == i else 0 for j in self.index_set)

    def neighbours(self, i: int) -> List[int]:
        return sorted(self.graph.neighbors(i))

    def __str__(self) -> str:
        return self.name


def height(v: Sequence[int]) -> int:
    return int(sum(v))


def root_key(v: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Canonical ordering of roots and weights: height first, then lexicographic."""
    return height(v), tuple(v)


def is_positive(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v) and any(x > 0 for x in v)


def reflection(C: CartanDatum, i: int, v: Sequence[int]) -> RootVec:
    """r_i(v) = v − (v, α_i) α_i."""
    coefficient = int(np.asarray(v, dtype=np.int64) @ C.array[:, i - 1])
    out = list(v)
    out[i - 1] -= coefficient
    return tuple(int(x) for x in out)


class RootSystem:
    """Positive roots of a CartanDatum, built by closing the simple roots under reflections."""

    def __init__(self, cartan: CartanDatum):
        self.cartan = cartan
        found = {cartan.simple_root(i) for i in cartan.index_set}
        frontier = list(found)
        while frontier:
            root = frontier.pop()
            for i in cartan.index_set:
                image = reflection(cartan, i, root)
                if is_positive(image) and image not in found:
                    found.add(image)
                    frontier.append(image)
        self.positive_roots: Tuple[RootVec, ...] = tuple(sorted(found, key=root_key))
        self._positions = {root: n for n, root in enumerate(self.positive_roots)}
        logger.debug(f"Built {len(self.positive_roots)} positive roots for {cartan}")

    def __len__(self) -> int:
        return len(self.positive_roots)

    def __iter__(self) -> Iterator[RootVec]:
        return iter(self.positive_roots)

    def __contains__(self, v: object) -> bool:
        return tuple(v) in self._positions

    def simple_index(self, v: Sequence[int]) -> int:
        """Index i with v = α_i, or 0 when v is not simple."""
        if height(v) == 1 and tuple(v) in self._positions:
            return list(v).index(1) + 1
        return 0


@lru_cache(maxsize=None)
def root_system(cartan: CartanDatum) -> RootSystem:
    return RootSystem(cartan)


def build_root_system(series: str, rank: int) -> Tuple[CartanDatum, List[RootVec]]:
    """Cartan matrix and positive roots ordered by (height, lexicographic coords).

    Raises:
        ConfigurationError: If (series, rank) is not a valid ADE pair
    """
    cartan = CartanDatum.of_type(series, rank)
    return cartan, list(root_system(cartan).positive_roots)


# Weyl group elements are represented by the images of the simple roots.
WeylImages = Tuple[RootVec, ...]


def identity_images(C: CartanDatum) -> WeylImages:
    return tuple(C.simple_root(i) for i in C.index_set)


def right_multiply(C: CartanDatum, images: WeylImages, i: int) -> WeylImages:
    """Images of the simple roots under w·r_i, given those under w."""
    pivot = images[i - 1]
    return tuple(
        tuple(a - C.c(i, j) * b for a, b in zip(images[j - 1], pivot)) for j in C.index_set
    )


def weyl_act(C: CartanDatum, word: Sequence[int], v: Sequence[int]) -> RootVec:
    """Apply r_{i_1} ⋯ r_{i_m} to v (rightmost reflection first)."""
    out = tuple(v)
    for i in reversed(word):
        out = reflection(C, i, out)
    return out


def _check_letters(C: CartanDatum, word: Sequence[int]) -> None:
    bad = [i for i in word if i not in C.index_set]
    if bad:
        raise InvalidWordError(word, f"letters {bad} are not in 1..{C.rank}")


def is_reduced(C: CartanDatum, word: Sequence[int]) -> bool:
    """Descent criterion: each new letter must send its simple root to a positive root."""
    _check_letters(C, word)
    images = identity_images(C)
    for i in word:
        if not is_positive(images[i - 1]):
            return False
        images = right_multiply(C, images, i)
    return True


@dataclass(frozen=True)
class ConvexSeq:
    """The positive roots β_1..β_ℓ in the convex order attached to a reduced word of w₀."""

    cartan: CartanDatum
    word: ReducedWord
    betas: Tuple[RootVec, ...]

    def __len__(self) -> int:
        return len(self.betas)

    def beta(self, k: int) -> RootVec:
        """β_k with 1-based k."""
        return self.betas[k - 1]

    def position(self, root: Sequence[int]) -> int:
        """1-based index k with β_k = root."""
        return self.betas.index(tuple(root)) + 1


def beta_sequence(C: CartanDatum, w: Sequence[int]) -> ConvexSeq:
    """β_k = r_{i_1} ⋯ r_{i_{k−1}}(α_{i_k}) for a reduced word of w₀.

    Raises:
        InvalidWordError: If w is not reduced or not of maximal length
    """
    w = tuple(w)
    _check_letters(C, w)
    ell = len(root_system(C))
    if len(w) != ell:
        raise InvalidWordError(w, f"length {len(w)} differs from ℓ(w₀) = {ell}")
    images = identity_images(C)
    betas = []
    for k, i in enumerate(w, start=1):
        beta = images[i - 1]
        if not is_positive(beta):
            raise InvalidWordError(w, f"not reduced at position {k}")
        betas.append(beta)
        images = right_multiply(C, images, i)
    return ConvexSeq(C, w, tuple(betas))


@dataclass(frozen=True)
class WordEnumeration:
    """Result of enumerate_reduced_words: the words and whether the cap cut the list short."""

    words: Tuple[ReducedWord, ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[ReducedWord]:
        return iter(self.words)


def _reduced_words(C: CartanDatum) -> Iterator[ReducedWord]:
    ell = len(root_system(C))
    successors: Dict[Tuple[WeylImages, int], WeylImages] = {}

    def step(images: WeylImages, i: int) -> WeylImages:
        key = (images, i)
        if key not in successors:
            successors[key] = right_multiply(C, images, i)
        return successors[key]

    def dfs(images: WeylImages, prefix: List[int]) -> Iterator[ReducedWord]:
        if len(prefix) == ell:
            yield tuple(prefix)
            return
        for i in C.index_set:
            if is_positive(images[i - 1]):
                prefix.append(i)
                yield from dfs(step(images, i), prefix)
                prefix.pop()

    yield from dfs(identity_images(C), [])


def enumerate_reduced_words(C: CartanDatum, cap: int) -> WordEnumeration:
    """Depth-first, lexicographically ordered reduced words of w₀, at most `cap` of them.

    Raises:
        ConfigurationError: If cap < 1
    """
    if cap < 1:
        raise ConfigurationError("word_cap", cap, "must be at least 1")
    words = []
    truncated = False
    for word in _reduced_words(C):
        if len(words) == cap:
            truncated = True
            break
        words.append(word)
    if truncated:
        logger.info(f"Reduced-word enumeration for {C} truncated at {cap} words")
    return WordEnumeration(tuple(words), truncated)


def convexity_check(C: CartanDatum, s: Sequence[Sequence[int]]) -> bool:
    """True iff every root sum β_a + β_b (a < b) sits strictly between a and b.

    Raises:
        DomainError: If an entry is not a positive root or entries repeat
    """
    roots = root_system(C)
    seq = [tuple(v) for v in s]
    for v in seq:
        if v not in roots:
            raise DomainError("convexity_check", f"{v} is not a positive root of {C}")
    if len(set(seq)) != len(seq):
        raise DomainError("convexity_check", "entries must be distinct")
    position = {v: n for n, v in enumerate(seq)}
    for a, b in product(range(len(seq)), repeat=2):
        if a >= b:
            continue
        total = tuple(x + y for x, y in zip(seq[a], seq[b]))
        if total in roots:
            c = position.get(total)
            if c is None or not a < c < b:
                return False
    return True


@lru_cache(maxsize=None)
def longest_element_images(C: CartanDatum) -> WeylImages:
    """w₀(α_i) for every i, computed from the first reduced word of w₀."""
    images = identity_images(C)
    for i in next(_reduced_words(C)):
        images = right_multiply(C, images, i)
    return images


@lru_cache(maxsize=None)
def involution_and_coxeter(C: CartanDatum) -> Tuple[Dict[int, int], int]:
    """The diagram involution i ↦ i* (w₀(α_i) = −α_{i*}) and the Coxeter number h."""
    star = {}
    for i, image in zip(C.index_set, longest_element_images(C)):
        star[i] = C.index_set[[-x for x in image].index(1)]
    h = 2 * len(root_system(C)) // C.rank
    return star, h


def dynkin_distance(C: CartanDatum, i: int, j: int) -> int:
    return nx.shortest_path_length(C.graph, i, j)


def weights_up_to(C: CartanDatum, bound: int) -> List[RootVec]:
    """Non-zero weights Σ c_i α_i (c_i ≥ 0) of height at most `bound`, canonically ordered."""
    out = []

    def fill(prefix: List[int], remaining: int) -> None:
        if len(prefix) == C.rank:
            if any(prefix):
                out.append(tuple(prefix))
            return
        for c in range(remaining + 1):
            fill(prefix + [c], remaining - c)

    fill([], bound)
    return sorted(out, key=root_key)


def kostant_partition_count(C: CartanDatum, mu: Sequence[int]) -> int:
    """Number of ways to write μ as a multiset of positive roots."""
    roots = root_system(C).positive_roots

    @lru_cache(maxsize=None)
    def count(target: RootVec, start: int) -> int:
        if not any(target):
            return 1
        total = 0
        for n in range(start, len(roots)):
            rest = tuple(t - r for t, r in zip(target, roots[n]))
            if all(x >= 0 for x in rest):
                total += count(rest, n)
        return total

    return count(tuple(mu), 0)
