"""
Dynkin quivers, Q-data and their Auslander-Reiten quivers.

Convention points:

- A Q-datum is (Q, φ) with φ(1) even and φ(i) = φ(j) + 1 for every arrow i → j.
- The AR quiver is knitted upwards. Row i starts at the projective (i, φ(i)),
  labelled Σ α_j over the vertices j reachable from i, and continues with
  dim(i, p) = Σ_{j ~ i} dim(j, p − 1) − dim(i, p − 2) until the first
  non-positive vector. Arrows run (i, p) → (j, p + 1).
- Adaptedness is sink adaptedness: each letter must be a sink of the quiver
  reflected at all previous letters.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from cuspidal_shadow.exceptions import ConfigurationError, InvariantViolation
from cuspidal_shadow.liecore import (
    CartanDatum,
    ReducedWord,
    RootVec,
    dynkin_distance,
    identity_images,
    involution_and_coxeter,
    is_positive,
    is_reduced,
    right_multiply,
    root_key,
    root_system,
)

logger = logging.getLogger(__name__)

Arrow = Tuple[int, int]


def parse_arrows(text: str) -> List[Arrow]:
    """Parse "2>1,3>2" into [(2, 1), (3, 2)].

    Raises:
        ConfigurationError: If an arrow is malformed
    """
    arrows = []
    for chunk in filter(None, (part.strip() for part in text.split(","))):
        head, sep, tail = chunk.partition(">")
        if not sep or not head.strip().isdigit() or not tail.strip().isdigit():
            raise ConfigurationError("quiver", text, f"arrow {chunk!r} is not of the form i>j")
        arrows.append((int(head), int(tail)))
    return arrows


@dataclass(frozen=True)
class DynkinQuiver:
    """An orientation of the Dynkin graph: exactly one arrow per edge."""

    cartan: CartanDatum
    arrows: FrozenSet[Arrow]

    def __post_init__(self):
        edges = {frozenset(e) for e in self.cartan.graph.edges}
        seen = set()
        for i, j in self.arrows:
            edge = frozenset((i, j))
            if edge not in edges:
                raise ConfigurationError("quiver", f"{i}>{j}", f"not an edge of the {self.cartan.name} diagram")
            if edge in seen:
                raise ConfigurationError("quiver", f"{i}>{j}", "edge oriented twice")
            seen.add(edge)
        if seen != edges:
            missing = sorted(tuple(sorted(e)) for e in edges - seen)
            raise ConfigurationError("quiver", sorted(self.arrows), f"edges {missing} carry no arrow")

    @classmethod
    def from_arrows(cls, cartan: CartanDatum, arrows: Iterable[Arrow]) -> DynkinQuiver:
        return cls(cartan, frozenset(tuple(a) for a in arrows))

    @classmethod
    def parse(cls, cartan: CartanDatum, text: str) -> DynkinQuiver:
        return cls.from_arrows(cartan, parse_arrows(text))

    @property
    def digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.cartan.index_set)
        graph.add_edges_from(self.arrows)
        return graph

    def is_sink(self, i: int) -> bool:
        return all(source != i for source, _ in self.arrows)

    def sinks(self) -> List[int]:
        return [i for i in self.cartan.index_set if self.is_sink(i)]

    def reflect(self, i: int) -> DynkinQuiver:
        """Reverse every arrow at i."""
        return DynkinQuiver(
            self.cartan,
            frozenset((b, a) if i in (a, b) else (a, b) for a, b in self.arrows),
        )

    def path_targets(self, i: int) -> List[int]:
        """All j with a path i ⇝ j, including i itself."""
        return sorted(nx.descendants(self.digraph, i) | {i})

    def __str__(self) -> str:
        return ",".join(f"{a}>{b}" for a, b in sorted(self.arrows))


def dynkin_quivers(C: CartanDatum) -> List[DynkinQuiver]:
    """Every orientation of the Dynkin graph."""
    edges = sorted(tuple(sorted(e)) for e in C.graph.edges)
    quivers = []
    for flips in itertools.product((False, True), repeat=len(edges)):
        arrows = [(j, i) if flip else (i, j) for (i, j), flip in zip(edges, flips)]
        quivers.append(DynkinQuiver.from_arrows(C, arrows))
    return quivers


@dataclass(frozen=True)
class QData:
    """A Dynkin quiver with a height function φ (entry n is φ(n + 1))."""

    quiver: DynkinQuiver
    phi: Tuple[int, ...]

    @property
    def cartan(self) -> CartanDatum:
        return self.quiver.cartan

    def height(self, i: int) -> int:
        return self.phi[i - 1]

    def reflect_at(self, i: int) -> QData:
        """Reflect at a sink i; φ(i) grows by 2 so the datum stays valid.

        Raises:
            ConfigurationError: If i is not a sink
        """
        if not self.quiver.is_sink(i):
            raise ConfigurationError("reflect_at", i, f"vertex is not a sink of {self.quiver}")
        phi = list(self.phi)
        phi[i - 1] += 2
        return QData(self.quiver.reflect(i), tuple(phi))


def height_functions(quiver: DynkinQuiver, count: int = 1, base: int = 0) -> List[QData]:
    """The valid Q-data on `quiver` with φ(1) = base, base + 2, ...

    Raises:
        ConfigurationError: If base is odd
    """
    if base % 2:
        raise ConfigurationError("phi_base", base, "φ(1) must be even")
    offsets = {1: 0}
    for u, v in nx.bfs_edges(quiver.cartan.graph, 1):
        # arrow u → v means φ(u) = φ(v) + 1
        offsets[v] = offsets[u] - 1 if (u, v) in quiver.arrows else offsets[u] + 1
    out = []
    for t in range(count):
        phi = tuple(base + 2 * t + offsets[i] for i in quiver.cartan.index_set)
        out.append(QData(quiver, phi))
    return out


def validate_qdata(q: QData) -> List[str]:
    """All violated axioms; an empty list means the datum is valid."""
    violations = []
    if len(q.phi) != q.cartan.rank:
        return [f"φ has {len(q.phi)} values for rank {q.cartan.rank}"]
    if q.height(1) % 2:
        violations.append(f"φ(1) odd: φ(1) = {q.height(1)}")
    for i, j in sorted(q.quiver.arrows):
        if q.height(i) != q.height(j) + 1:
            violations.append(
                f"arrow {i}→{j} needs φ({i}) = φ({j}) + 1, got φ({i}) = {q.height(i)}, φ({j}) = {q.height(j)}"
            )
    return violations


@dataclass(frozen=True, order=True)
class VertexLabel:
    """A coordinate (i, p) of the AR quiver; (i, p) stands for a fundamental label."""

    i: int
    p: int

    def in_c0(self, C: CartanDatum) -> bool:
        """p ≡ d(1, i) (mod 2)."""
        return (self.p - dynkin_distance(C, 1, self.i)) % 2 == 0

    def __str__(self) -> str:
        return f"({self.i},{self.p})"


@dataclass
class ARQuiver:
    """Knitted AR quiver: root label per vertex and the arrows between vertices."""

    qdata: QData
    labels: Dict[VertexLabel, RootVec]
    graph: nx.DiGraph = field(repr=False)

    @property
    def vertices(self) -> List[VertexLabel]:
        return sorted(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def to_json(self) -> Dict[str, object]:
        return {
            "cartan": self.qdata.cartan.name,
            "quiver": str(self.qdata.quiver),
            "phi": list(self.qdata.phi),
            "vertices": [{"i": v.i, "p": v.p, "root": list(self.labels[v])} for v in self.vertices],
            "arrows": [[[u.i, u.p], [v.i, v.p]] for u, v in sorted(self.graph.edges)],
        }

    def tsv_grid(self) -> str:
        """Rows i, columns p; each cell is the root label or '.'."""
        ps = range(min(v.p for v in self.labels), max(v.p for v in self.labels) + 1)
        lines = ["i\\p\t" + "\t".join(str(p) for p in ps)]
        for i in self.qdata.cartan.index_set:
            cells = []
            for p in ps:
                root = self.labels.get(VertexLabel(i, p))
                cells.append(",".join(str(x) for x in root) if root else ".")
            lines.append(f"{i}\t" + "\t".join(cells))
        return "\n".join(lines) + "\n"


def ar_quiver(q: QData) -> ARQuiver:
    """Knit the AR quiver of a valid Q-datum.

    Row i is anchored at (i, φ(i)) with Σ α_j over the j reachable from i, and
    each mesh step raises p by 2. For A₂ with 2→1 this puts α₁ at (1, φ(1)).

    Raises:
        ConfigurationError: If the datum fails validation
        InvariantViolation: If knitting leaves Φ⁺ or misses a root
    """
    violations = validate_qdata(q)
    if violations:
        raise ConfigurationError("qdata", q.phi, "; ".join(violations))
    C = q.cartan
    roots = root_system(C)
    labels: Dict[VertexLabel, RootVec] = {}
    closed = set()
    bottom = min(q.phi)
    top = max(q.phi) + 2 * len(roots) + 2
    for p in range(bottom, top + 1):
        for i in C.index_set:
            if i in closed or p < q.height(i) or (p - q.height(i)) % 2:
                continue
            if p == q.height(i):
                vector = tuple(int(j in q.quiver.path_targets(i)) for j in C.index_set)
            else:
                total = [0] * C.rank
                for j in C.neighbours(i):
                    for n, x in enumerate(labels.get(VertexLabel(j, p - 1), (0,) * C.rank)):
                        total[n] += x
                lower = labels[VertexLabel(i, p - 2)]
                vector = tuple(t - u for t, u in zip(total, lower))
            if not any(vector) or not is_positive(vector):
                closed.add(i)
                continue
            if vector not in roots:
                raise InvariantViolation("ar-knitting", f"vertex ({i},{p}) got non-root {vector}")
            labels[VertexLabel(i, p)] = vector
        if len(closed) == C.rank:
            break
    if sorted(labels.values(), key=root_key) != list(roots):
        raise InvariantViolation("ar-bijection", f"knitted {len(labels)} vertices for {len(roots)} positive roots")
    graph = nx.DiGraph()
    graph.add_nodes_from(labels)
    for v in labels:
        for j in C.neighbours(v.i):
            target = VertexLabel(j, v.p + 1)
            if target in labels:
                graph.add_edge(v, target)
    logger.debug(f"AR quiver for {q.quiver} φ={q.phi}: {len(labels)} vertices")
    return ARQuiver(q, labels, graph)


def root_coordinate_bijection(ar: ARQuiver) -> Tuple[Dict[RootVec, VertexLabel], Dict[VertexLabel, RootVec]]:
    """(root → (i, p), (i, p) → root)."""
    inverse = dict(ar.labels)
    forward = {root: v for v, root in inverse.items()}
    if len(forward) != len(inverse):
        raise InvariantViolation("ar-bijection", "two vertices share a root label")
    return forward, inverse


def is_adapted(w: Sequence[int], q: QData) -> bool:
    """Sink adaptedness of a reduced word of w₀."""
    quiver = q.quiver
    for i in w:
        if not quiver.is_sink(i):
            return False
        quiver = quiver.reflect(i)
    return True


def adapted_word(q: QData) -> ReducedWord:
    """A reduced word of w₀ adapted to q, found by depth-first search over sinks.

    Raises:
        InvariantViolation: If no adapted word exists
    """
    C = q.cartan
    ell = len(root_system(C))

    def search(quiver: DynkinQuiver, images, prefix: List[int]) -> Optional[ReducedWord]:
        if len(prefix) == ell:
            return tuple(prefix)
        for i in quiver.sinks():
            if not is_positive(images[i - 1]):
                continue
            found = search(quiver.reflect(i), right_multiply(C, images, i), prefix + [i])
            if found:
                return found
        return None

    word = search(q.quiver, identity_images(C), [])
    if word is None or not is_reduced(C, word):
        raise InvariantViolation("adapted-word", f"no adapted reduced word for {q.quiver}")
    return word


def adapted_words(q: QData) -> Iterator[ReducedWord]:
    """Every reduced word of w₀ adapted to q."""
    C = q.cartan
    ell = len(root_system(C))

    def search(quiver: DynkinQuiver, images, prefix: List[int]) -> Iterator[ReducedWord]:
        if len(prefix) == ell:
            yield tuple(prefix)
            return
        for i in quiver.sinks():
            if is_positive(images[i - 1]):
                yield from search(quiver.reflect(i), right_multiply(C, images, i), prefix + [i])

    yield from search(q.quiver, identity_images(C), [])


def dshift_label(C: CartanDatum, v: VertexLabel) -> VertexLabel:
    """(i, p) ↦ (i*, p + h)."""
    star, h = involution_and_coxeter(C)
    return VertexLabel(star[v.i], v.p + h)
