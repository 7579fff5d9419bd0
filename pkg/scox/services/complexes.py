"""
Singular Coxeter Complexes

Cox_J has one vertex per (J,I)-coset over all finitary I, an edge p → q
whenever the one-step expression [p, q] is reduced, and a 2-cell for each
braid relation whose two sides are both edge paths. Edges point away from
the identity vertex, so every edge strictly increases the coset length.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from scox.bounds import DEFAULT_BOUNDS, SearchBounds, check_bound
from scox.core.system import CoxeterSystem, GenSubset
from scox.exceptions import InvariantViolation, NoRotationError
from scox.monitoring.metrics import time_operation, track_enumeration
from scox.services.cosets import DoubleCoset, all_cosets, coset_of, finitary_subsets, identity_coset
from scox.services.expressions import DOWN, UP, Expression, Step
from scox.services.relations import RelationCalculus, RelationKind, relation_calculus
from scox.utils import notation

logger = logging.getLogger(__name__)

VertexPath = Tuple[DoubleCoset, ...]


@dataclass(frozen=True)
class ComplexEdge:
    source: DoubleCoset
    target: DoubleCoset
    sign: int       # UP or DOWN
    generator: int


@dataclass(frozen=True)
class TwoCell:
    """The two sides of one braid relation, as parallel edge paths"""
    kind: RelationKind
    first: VertexPath
    second: VertexPath

    @property
    def boundary(self) -> frozenset:
        return frozenset((self.first, self.second))


@dataclass
class ComplexGraph:
    """2-skeleton of Cox_J"""
    system: CoxeterSystem
    left: GenSubset
    vertices: List[DoubleCoset]
    edges: List[ComplexEdge]
    two_cells: List[TwoCell]
    graph: nx.DiGraph = field(repr=False)

    @property
    def left_label(self) -> str:
        return notation.format_subset(self.system, self.left)

    @property
    def identity(self) -> DoubleCoset:
        return identity_coset(self.system, self.left)

    def vertex_label(self, p: DoubleCoset) -> str:
        return f"{notation.format_subset(self.system, p.right)}:{notation.format_word(self.system, p.min.word())}"

    def grading(self, p: DoubleCoset) -> int:
        return p.length

    def has_edge(self, p: DoubleCoset, q: DoubleCoset) -> bool:
        return self.graph.has_edge(p, q)


def vertex_order(p: DoubleCoset) -> tuple:
    return (p.length, tuple(sorted(p.right)), p.min.word())


# ============================================================================
# EDGES AND PATHS
# ============================================================================

def step_target(p: DoubleCoset, step: Step) -> Optional[DoubleCoset]:
    """
    The vertex reached from p by a reduced step, or None when the step is
    not reduced. Down-steps keep the maximum; up-steps must keep both the
    minimum and the left redundancy.
    """
    sign, g = step
    system = p.system
    if sign == DOWN:
        return coset_of(system, p.left, p.max, p.right - {g})
    target = coset_of(system, p.left, p.min, p.right | {g})
    if target.min != p.min or target.left_redundancy != p.left_redundancy:
        return None
    return target


def walk(p: DoubleCoset, steps: Sequence[Step]) -> Optional[VertexPath]:
    path = [p]
    for step in steps:
        nxt = step_target(path[-1], step)
        if nxt is None:
            return None
        path.append(nxt)
    return tuple(path)


def _relation_patterns(
    system: CoxeterSystem,
    subset: GenSubset,
    calculus: RelationCalculus,
) -> List[Tuple[RelationKind, Expression, Expression]]:
    """Both sides of every braid relation starting at `subset`."""
    patterns = []
    outside = [g for g in system.generators if g not in subset]
    for s in outside:
        for t in outside:
            if s < t and system.is_finitary(subset | {s, t}):
                patterns.append((
                    RelationKind.UP_UP,
                    Expression(system, subset, ((UP, s), (UP, t))),
                    Expression(system, subset, ((UP, t), (UP, s))),
                ))
    inside = sorted(subset)
    for s in inside:
        for t in inside:
            if s < t:
                patterns.append((
                    RelationKind.DOWN_DOWN,
                    Expression(system, subset, ((DOWN, s), (DOWN, t))),
                    Expression(system, subset, ((DOWN, t), (DOWN, s))),
                ))
    for s in outside:
        big = subset | {s}
        if not system.is_finitary(big):
            continue
        for t in sorted(big):
            try:
                relation = calculus.switchback(system, subset, s, t)
            except NoRotationError:
                continue
            patterns.append((RelationKind.SWITCHBACK, relation.lhs, relation.rhs))
    return patterns


# ============================================================================
# CONSTRUCTION
# ============================================================================

@time_operation("build_complex")
def build_complex(
    system: CoxeterSystem,
    left: Iterable[int] = (),
    bounds: Optional[SearchBounds] = None,
    calculus: Optional[RelationCalculus] = None,
) -> ComplexGraph:
    """
    Build the 2-skeleton of Cox_J.

    Raises:
        DomainError: if J is not finitary
        ResourceBoundError: when the vertex count passes SCOX_MAX_VERTICES
    """
    bounds = bounds or DEFAULT_BOUNDS
    calculus = calculus or relation_calculus
    left = system.require_finitary(frozenset(left))
    track_enumeration("complex")

    vertices: List[DoubleCoset] = []
    for right in finitary_subsets(system):
        vertices.extend(all_cosets(system, left, right, bounds))
        check_bound(len(vertices), bounds.rex.max_vertices, "SCOX_MAX_VERTICES")
    vertices.sort(key=vertex_order)

    graph = nx.DiGraph()
    graph.add_nodes_from(vertices)
    edges: List[ComplexEdge] = []
    for p in vertices:
        for g in system.generators:
            sign = DOWN if g in p.right else UP
            if sign == UP and not system.is_finitary(p.right | {g}):
                continue
            q = step_target(p, (sign, g))
            if q is None:
                continue
            if q.length <= p.length:
                raise InvariantViolation(f"edge {p} → {q} does not increase the length")
            edges.append(ComplexEdge(p, q, sign, g))
            graph.add_edge(p, q, sign=sign, generator=g)

    cells: Dict[frozenset, TwoCell] = {}
    patterns: Dict[GenSubset, list] = {}
    for p in vertices:
        if p.right not in patterns:
            patterns[p.right] = _relation_patterns(system, p.right, calculus)
        for kind, lhs, rhs in patterns[p.right]:
            first = walk(p, lhs.steps)
            if first is None:
                continue
            second = walk(p, rhs.steps)
            if second is None or second[-1] != first[-1]:
                raise InvariantViolation(f"{kind.value} at {p}: the two sides are not parallel edge paths")
            cell = TwoCell(kind, first, second)
            cells.setdefault(cell.boundary, cell)

    two_cells = sorted(
        cells.values(),
        key=lambda c: (vertex_order(c.first[0]), c.kind.value, [vertex_order(v) for v in c.first], [vertex_order(v) for v in c.second]),
    )
    logger.info(
        f"🕸️ [Complex] Cox_{notation.format_subset(system, left)}({system.name}): "
        f"{len(vertices)} vertices, {len(edges)} edges, {len(two_cells)} 2-cells"
    )
    return ComplexGraph(system, left, vertices, edges, two_cells, graph)


def oriented_paths(complex_graph: ComplexGraph, p: DoubleCoset) -> List[Expression]:
    """Every oriented path from the identity vertex to p, read as an expression."""
    system = complex_graph.system
    source = complex_graph.identity
    if p == source:
        return [Expression(system, source.right)]
    result = []
    for path in nx.all_simple_paths(complex_graph.graph, source, p):
        result.append(Expression.from_subsets(system, [v.right for v in path]))
    return sorted(result, key=lambda e: (e.width, str(e)))


def sinks(complex_graph: ComplexGraph) -> List[DoubleCoset]:
    return [p for p in complex_graph.vertices if complex_graph.graph.out_degree(p) == 0]


def sources(complex_graph: ComplexGraph) -> List[DoubleCoset]:
    return [p for p in complex_graph.vertices if complex_graph.graph.in_degree(p) == 0]


# ============================================================================
# EMBEDDING INTO Cox_∅
# ============================================================================

@dataclass
class EmbeddingReport:
    """Checks of the embedding Cox_J → Cox_∅, q ↦ (∅,I)-coset of q̄"""
    vertices: int = 0
    edges: int = 0
    two_cells: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "two_cells": self.two_cells,
            "ok": self.ok,
            "failures": list(self.failures),
        }


def embed_vertex(q: DoubleCoset) -> DoubleCoset:
    return coset_of(q.system, (), q.max, q.right)


def embed_check(
    system: CoxeterSystem,
    left: Iterable[int],
    bounds: Optional[SearchBounds] = None,
) -> EmbeddingReport:
    """
    The map must be injective with image {p : J ⊆ λ(p̄)}, and must carry
    edges to edges and 2-cells to 2-cells.
    """
    left = system.require_finitary(frozenset(left))
    source = build_complex(system, left, bounds)
    target = build_complex(system, (), bounds) if left else source
    report = EmbeddingReport(
        vertices=len(source.vertices),
        edges=len(source.edges),
        two_cells=len(source.two_cells),
    )

    image = {q: embed_vertex(q) for q in source.vertices}
    if len(set(image.values())) != len(image):
        report.failures.append("vertex map is not injective")
    for q, p in image.items():
        if p.max != q.max:
            report.failures.append(f"{source.vertex_label(q)} maps to a coset with another maximum")
    expected = {p for p in target.vertices if left <= p.max.left_descents()}
    if set(image.values()) != expected:
        report.failures.append("image differs from {p : J ⊆ λ(p̄)}")

    for edge in source.edges:
        if not target.has_edge(image[edge.source], image[edge.target]):
            report.failures.append(
                f"edge {source.vertex_label(edge.source)} → {source.vertex_label(edge.target)} is not preserved"
            )

    target_cells: Set[frozenset] = {c.boundary for c in target.two_cells}
    for cell in source.two_cells:
        mapped = frozenset(tuple(image[v] for v in side) for side in (cell.first, cell.second))
        if mapped not in target_cells:
            report.failures.append(f"{cell.kind.value} cell at {source.vertex_label(cell.first[0])} is not preserved")

    logger.info(
        f"🔍 [Embed] Cox_{source.left_label}({system.name}) → Cox_∅: "
        f"{report.vertices} vertices, {len(report.failures)} failure(s)"
    )
    return report


# ============================================================================
# HALF-SPACE CRITERION
# ============================================================================

@dataclass
class HalfspaceReport:
    """Reducedness of one-step pairs against the root-hyperplane criterion"""
    pairs: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"pairs": self.pairs, "ok": self.ok, "failures": list(self.failures)}


def halfspace_check(system: CoxeterSystem, bounds: Optional[SearchBounds] = None) -> HalfspaceReport:
    """
    For every (∅,I′)-coset q and every (∅,I)-coset p ⊂ q with I′ = Is:

    - [p, q] is reduced iff p lies in no positive half-space H₊ of a
      reflection fixing q;
    - [q, p] is reduced iff p lies in no negative half-space H₋.

    The reflections fixing q are q̲ r q̲⁻¹ for r a reflection of W_{I′}; p
    lies on the hyperplane of h when h p̲ ∈ p̲ W_I, and otherwise in H₊ when
    ℓ(h p̲) < ℓ(p̲) and in H₋ when ℓ(h p̲) > ℓ(p̲).
    """
    bounds = bounds or DEFAULT_BOUNDS
    limit = bounds.enumeration.max_elements
    report = HalfspaceReport()
    for wider in finitary_subsets(system):
        if not wider:
            continue
        parabolic = system.elements_of_parabolic(wider, limit=limit)
        reflections = system.reflections(wider, limit=limit)
        for q in all_cosets(system, (), wider, bounds):
            fixing = [q.min * r * q.min.inverse() for r in reflections]
            for s in sorted(wider):
                narrower = wider - {s}
                parts = {coset_of(system, (), q.min * x, narrower) for x in parabolic}
                for p in sorted(parts, key=vertex_order):
                    report.pairs += 1
                    positive = negative = False
                    for h in fixing:
                        moved = h * p.min
                        if coset_of(system, (), moved, narrower) == p:
                            continue
                        if moved.length < p.min.length:
                            positive = True
                        else:
                            negative = True
                    up_reduced = step_target(p, (UP, s)) is not None
                    down_reduced = step_target(q, (DOWN, s)) == p
                    if up_reduced == positive:
                        report.failures.append(f"up-step {p} → {q} disagrees with the half-space test")
                    if down_reduced == negative:
                        report.failures.append(f"down-step {q} → {p} disagrees with the half-space test")
    logger.info(f"🔍 [Halfspace] {system.name}: {report.pairs} pair(s), {len(report.failures)} failure(s)")
    return report
