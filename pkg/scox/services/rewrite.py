"""
Rewriting and Reduced-Expression Search

normalize() turns any expression into a reduced one using braid relations
and the ∗-quadratic relation in its length-reducing direction only; the
trace it records can be replayed on its own. rex_set() lists every reduced
expression of a coset, rex_graph() connects them by braid relations, and
matsumoto_verify() checks that every such graph is connected.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

from scox.bounds import DEFAULT_BOUNDS, SearchBounds, check_bound
from scox.config import settings
from scox.core.system import CoxeterSystem, GenSubset
from scox.exceptions import InvariantViolation
from scox.monitoring.metrics import time_operation, track_enumeration, track_rewrite, track_rex_set
from scox.services.constructions import final_step_candidates
from scox.services.cosets import DoubleCoset, all_cosets, finitary_subsets
from scox.services.expressions import DOWN, UP, Expression, Step, evaluate
from scox.services.relations import (
    Direction,
    RelationCalculus,
    RelationInstance,
    RelationKind,
    relation_calculus,
)
from scox.services.renderer import diagram_renderer
from scox.utils import notation

logger = logging.getLogger(__name__)


# ============================================================================
# TRACES
# ============================================================================

@dataclass(frozen=True)
class TraceStep:
    relation: RelationInstance  # position is absolute in the host expression
    expression: Expression      # host expression after the application


@dataclass
class RewriteTrace:
    """A derivation from `start` to a reduced expression"""
    start: Expression
    steps: List[TraceStep] = field(default_factory=list)

    @property
    def final(self) -> Expression:
        return self.steps[-1].expression if self.steps else self.start

    def to_lines(self) -> List[str]:
        return [
            f"step {k}: {step.relation.describe()}  {step.expression}"
            for k, step in enumerate(self.steps, start=1)
        ]

    def to_dict(self) -> dict:
        return {
            "start": str(self.start),
            "final": str(self.final),
            "steps": [
                {
                    "kind": step.relation.kind.value,
                    "position": step.relation.position,
                    "direction": step.relation.direction.value,
                    "expression": str(step.expression),
                }
                for step in self.steps
            ],
        }


def replay(trace: RewriteTrace, calculus: Optional[RelationCalculus] = None) -> Expression:
    """
    Re-apply every recorded relation from the start expression.

    Raises:
        InvariantViolation: when a step disagrees with its record, the
            ∗-quadratic relation is used to lengthen, or the final
            expression is not a reduced expression for the start's coset
    """
    calculus = calculus or relation_calculus
    current = trace.start
    target = evaluate(trace.start)
    for k, step in enumerate(trace.steps, start=1):
        relation = step.relation
        if relation.kind == RelationKind.STAR_QUADRATIC and relation.direction != Direction.FORWARD:
            raise InvariantViolation(f"step {k} expands a ∗-quadratic pattern")
        current = calculus.apply(current, relation)
        if current != step.expression:
            raise InvariantViolation(f"step {k} does not reproduce the recorded expression")
    if current != trace.final or not current.is_reduced or evaluate(current) != target:
        raise InvariantViolation("replayed trace does not end in a reduced expression for the start")
    return current


# ============================================================================
# NORMALIZATION
# ============================================================================

class _RewriteRun:
    """Mutable state of one normalize() call."""

    def __init__(self, normalizer: "Normalizer", start: Expression):
        self.normalizer = normalizer
        self.current = start
        self.trace = RewriteTrace(start)

    def apply(self, relation: RelationInstance) -> None:
        self.current = self.normalizer.calculus.apply(self.current, relation)
        self.trace.steps.append(TraceStep(relation, self.current))
        logger.debug(f"🔁 [Rewrite] {relation.describe()} → {self.current}")

    def reduce(self, lo: int, hi: int) -> int:
        """Reduce the subword [I_lo, …, I_hi] in place; returns its new right end."""
        if hi - lo <= 1:
            return hi
        hi = self.reduce(lo, hi - 1) + 1
        while True:
            if self.current.subword(lo, hi).is_reduced:
                return hi
            sign, t = self.current.steps[hi - 1]
            if sign != UP:
                raise InvariantViolation("a reduced prefix followed by a down-step must be reduced")
            prefix = self.current.subword(lo, hi - 1)
            q = prefix.coset
            missing = prefix.end - q.right_redundancy
            if missing:
                # q has a rex ending in +s; commuting +s past +t leaves a non-reduced prefix
                end = self.surface(lo, prefix, (UP, min(missing)))
                self.apply(self.commute_additions(end - 1))
                before = self.current.subword(lo, end).length
                shorter = self.reduce(lo, end)
                if self.current.subword(lo, shorter).length >= before:
                    raise InvariantViolation("commuting the final additions did not shorten the prefix")
                hi = shorter + 1
                continue
            if t in q.max.right_descents():
                end = self.surface(lo, prefix, (DOWN, t))
                self.apply(self.cancel(end - 1))
                return end - 1
            raise InvariantViolation(
                "non-reduced expression with full right redundancy and no descent at the added generator",
                details={"expression": str(self.current), "window": [lo, hi]},
            )

    def surface(self, lo: int, prefix: Expression, last: Step) -> int:
        """
        Move a reduced prefix, by braid relations, to a rex ending in `last`.

        Switchbacks change the width, so the prefix's new right end is returned.
        """
        path = self.normalizer.braid_path(prefix, lambda e: bool(e.steps) and e.steps[-1] == last)
        width = prefix.width
        for relation in path:
            self.apply(relation.at(relation.position + lo))
            width += relation.replacement.width - relation.match.width
        return lo + width

    def commute_additions(self, position: int) -> RelationInstance:
        """Swap the two up-steps [I, I+s, I+s+t] starting at `position`."""
        system = self.current.system
        here = self.current.subsets[position]
        window = self.current.subword(position, position + 2)
        (sign_s, s), (sign_t, t) = window.steps
        if sign_s != UP or sign_t != UP:
            raise InvariantViolation(f"expected two up-steps at {position}, found {window}")
        swapped = Expression(system, here, ((UP, t), (UP, s)))
        if s < t:
            return RelationInstance(RelationKind.UP_UP, position, Direction.FORWARD, window, swapped)
        return RelationInstance(RelationKind.UP_UP, position, Direction.BACKWARD, swapped, window)

    def cancel(self, position: int) -> RelationInstance:
        """Contract the window [J, J−t, J] starting at `position` to [J]."""
        window = self.current.subword(position, position + 2)
        (sign_out, out), (sign_in, back) = window.steps
        if sign_out != DOWN or sign_in != UP or out != back:
            raise InvariantViolation(f"expected -t +t at {position}, found {window}")
        collapsed = Expression(self.current.system, self.current.subsets[position])
        return RelationInstance(RelationKind.STAR_QUADRATIC, position, Direction.FORWARD, window, collapsed)


class Normalizer:
    """
    Reduce expressions with braid relations and length-reducing ∗-quadratic
    relations.

    The strategy reduces every prefix first. With a reduced prefix for a
    (J,I)-coset q and a final step +t: if the right redundancy of q misses
    some s ∈ I, a rex of q ending in +s is reached and +s, +t are commuted;
    otherwise t is a right descent of q̄, a rex ending in −t is reached and
    −t +t cancels.
    """

    def __init__(self, calculus: Optional[RelationCalculus] = None, bounds: Optional[SearchBounds] = None):
        self.calculus = calculus or relation_calculus
        self.bounds = bounds or DEFAULT_BOUNDS

    def normalize(self, e: Expression) -> RewriteTrace:
        run = _RewriteRun(self, e)
        run.reduce(0, e.width)
        final = run.current
        if not final.is_reduced or evaluate(final) != evaluate(e):
            raise InvariantViolation("normalization did not reach a reduced expression for the same coset")
        track_rewrite(bool(run.trace.steps))
        logger.info(f"🔁 [Rewrite] {e} → {final} in {len(run.trace.steps)} step(s)")
        return run.trace

    def braid_path(self, start: Expression, goal: Callable[[Expression], bool]) -> List[RelationInstance]:
        """Shortest sequence of braid relations from `start` to an expression satisfying `goal`."""
        if goal(start):
            return []
        limit = self.bounds.rewrite.max_bfs_vertices
        parents: Dict[Expression, Optional[Tuple[Expression, RelationInstance]]] = {start: None}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for relation in self.calculus.enumerate_redexes(current, include_expansions=False):
                if not relation.is_braid:
                    continue
                end = relation.position + relation.match.width
                successor = current.splice(relation.position, end, relation.replacement)
                if successor in parents:
                    continue
                parents[successor] = (current, relation)
                check_bound(len(parents), limit, "SCOX_MAX_VERTICES")
                if goal(successor):
                    path = []
                    node = successor
                    while parents[node] is not None:
                        node, step = parents[node]
                        path.append(step)
                    return list(reversed(path))
                queue.append(successor)
        raise InvariantViolation(f"no braid path from {start} reaches the requested form")


# Singleton instance
normalizer = Normalizer()


def normalize(e: Expression) -> RewriteTrace:
    return normalizer.normalize(e)


# ============================================================================
# REDUCED EXPRESSIONS
# ============================================================================

def rex_set(
    p: DoubleCoset,
    bounds: Optional[SearchBounds] = None,
    max_width: Optional[int] = None,
) -> Tuple[Expression, ...]:
    """
    Every reduced expression of p, sorted by width then text.

    Built backward: the last step of any rex is one of the candidates of
    final_step_candidates(p), and the rest is a rex of the predecessor.

    Raises:
        ResourceBoundError: when more than SCOX_MAX_VERTICES partial
            expressions are generated
    """
    bounds = bounds or DEFAULT_BOUNDS
    limit = bounds.rex.max_vertices
    track_enumeration("rex_set")
    memo: Dict[DoubleCoset, List[Tuple[Step, ...]]] = {}
    generated = 0

    def tails(q: DoubleCoset) -> List[Tuple[Step, ...]]:
        nonlocal generated
        if q.length == 0:
            return [()]
        if q in memo:
            return memo[q]
        result = []
        for step, predecessor in final_step_candidates(q):
            for prefix in tails(predecessor):
                result.append(prefix + (step,))
        generated += len(result)
        check_bound(generated, limit, "SCOX_MAX_VERTICES")
        memo[q] = result
        return result

    expressions = [Expression(p.system, p.left, steps) for steps in tails(p)]
    if max_width is not None:
        expressions = [e for e in expressions if e.width <= max_width]
    expressions.sort(key=lambda e: (e.width, str(e)))
    track_rex_set(len(expressions))
    return tuple(expressions)


@dataclass
class RexGraph:
    """Reduced expressions of a coset joined by braid relations"""
    coset: DoubleCoset
    vertices: Tuple[Expression, ...]
    graph: nx.Graph  # nodes are indices into `vertices`; edges carry multiplicity and kinds

    def is_connected(self) -> bool:
        return len(self.vertices) <= 1 or nx.is_connected(self.graph)

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def multiplicity(self, u: int, v: int) -> int:
        return self.graph.edges[u, v]["multiplicity"] if self.graph.has_edge(u, v) else 0

    def to_dict(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "edges": [
                {"source": u, "target": v, "multiplicity": d["multiplicity"], "kinds": sorted(d["kinds"])}
                for u, v, d in sorted(self.graph.edges(data=True))
            ],
            "connected": self.is_connected(),
        }

    def to_dot(self) -> str:
        return diagram_renderer.render_rex_graph(self)


def rex_graph(
    p: DoubleCoset,
    bounds: Optional[SearchBounds] = None,
    calculus: Optional[RelationCalculus] = None,
) -> RexGraph:
    """
    Raises:
        InvariantViolation: when a braid relation leaves the rex set
    """
    calculus = calculus or relation_calculus
    vertices = rex_set(p, bounds)
    index = {e: i for i, e in enumerate(vertices)}
    graph = nx.Graph()
    graph.add_nodes_from(range(len(vertices)))
    for i, e in enumerate(vertices):
        for relation in calculus.enumerate_redexes(e, include_expansions=False):
            if not relation.is_braid:
                continue
            end = relation.position + relation.match.width
            target = e.splice(relation.position, end, relation.replacement)
            j = index.get(target)
            if j is None:
                raise InvariantViolation(f"{relation.describe()} on {e} leaves the reduced expressions of {p}")
            if j <= i:
                continue
            if graph.has_edge(i, j):
                graph.edges[i, j]["multiplicity"] += 1
                graph.edges[i, j]["kinds"].add(relation.kind.value)
            else:
                graph.add_edge(i, j, multiplicity=1, kinds={relation.kind.value})
    return RexGraph(p, vertices, graph)


def is_connected(g: RexGraph) -> bool:
    return g.is_connected()


# ============================================================================
# MATSUMOTO VERIFICATION
# ============================================================================

@dataclass(frozen=True)
class MatsumotoEntry:
    left: Tuple[str, ...]
    right: Tuple[str, ...]
    min_word: str
    rex_count: int
    edge_count: int
    connected: bool

    def to_dict(self) -> dict:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "min": self.min_word,
            "rex_count": self.rex_count,
            "edges": self.edge_count,
            "connected": self.connected,
        }


@dataclass
class MatsumotoReport:
    system_name: str
    entries: List[MatsumotoEntry] = field(default_factory=list)

    @property
    def failures(self) -> List[MatsumotoEntry]:
        return [e for e in self.entries if not e.connected]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "system": self.system_name,
            "cosets": len(self.entries),
            "failures": len(self.failures),
            "entries": [e.to_dict() for e in self.entries],
        }


def _verify_pair(
    system: CoxeterSystem,
    left: GenSubset,
    right: GenSubset,
    bounds: SearchBounds,
) -> List[MatsumotoEntry]:
    entries = []
    for p in all_cosets(system, left, right, bounds):
        graph = rex_graph(p, bounds)
        entries.append(MatsumotoEntry(
            left=tuple(notation.subset_labels(system, left)),
            right=tuple(notation.subset_labels(system, right)),
            min_word=notation.format_word(system, p.min.word()),
            rex_count=len(graph.vertices),
            edge_count=graph.edge_count,
            connected=graph.is_connected(),
        ))
    return entries


@time_operation("matsumoto_verify")
def matsumoto_verify(
    system: CoxeterSystem,
    max_subset_size: Optional[int] = None,
    threads: Optional[int] = None,
    bounds: Optional[SearchBounds] = None,
) -> MatsumotoReport:
    """
    Check that the rex graph of every (J,I)-coset is connected.

    Args:
        system: a finite Coxeter system
        max_subset_size: only use J, I with at most this many generators
        threads: worker threads, one (J,I) pair per task (SCOX_THREADS by default)
        bounds: search bounds

    Returns:
        MatsumotoReport: one entry per coset in (J, I, min) order
    """
    bounds = bounds or DEFAULT_BOUNDS
    threads = threads or settings.SCOX_THREADS
    track_enumeration("matsumoto")
    subsets = finitary_subsets(system, max_subset_size)
    pairs = list(product(subsets, subsets))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda pair: _verify_pair(system, pair[0], pair[1], bounds), pairs))
    else:
        results = [_verify_pair(system, left, right, bounds) for left, right in pairs]

    report = MatsumotoReport(system.name)
    for entries in results:
        report.entries.extend(entries)
    logger.info(
        f"🔗 [Matsumoto] {system.name}: {len(report.entries)} coset(s), "
        f"{len(report.failures)} disconnected"
    )
    return report
