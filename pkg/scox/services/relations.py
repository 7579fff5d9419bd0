"""
Relation Calculus

The four relation families between singular expressions:

    ∗-quadratic   [J − s + s] ≗ [J]
    up-up         [J + s + t] ≗ [J + t + s]
    down-down     [J − s − t] ≗ [J − t − s]
    switchback    [J + s − t] ≗ [J − u₁ + s − u₂ + u₁ − … − t + u_{δ−1}]

Switchback data comes from the rotation sequence of (J, s, t), which is
regenerated from the group on demand and cached per context.
"""

import logging
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from scox.bounds import DEFAULT_BOUNDS, SearchBounds
from scox.core.system import CoxeterSystem, GenSubset
from scox.exceptions import (
    DomainError,
    InvariantViolation,
    NoRotationError,
    ResourceBoundError,
    StaleRedexError,
    ValidationError,
)
from scox.monitoring.metrics import track_relation_applied, track_rotation_cache
from scox.services.expressions import DOWN, UP, Expression, evaluate

logger = logging.getLogger(__name__)


class RelationKind(str, Enum):
    STAR_QUADRATIC = "StarQuadratic"
    UP_UP = "UpUp"
    DOWN_DOWN = "DownDown"
    SWITCHBACK = "Switchback"


class Direction(str, Enum):
    FORWARD = "forward"    # lhs → rhs
    BACKWARD = "backward"  # rhs → lhs


BRAID_KINDS = frozenset({RelationKind.UP_UP, RelationKind.DOWN_DOWN, RelationKind.SWITCHBACK})


@dataclass(frozen=True)
class RotationSequence:
    """One period u_{−1}, u₀, …, u_{2δ} of the rotation sequence of (J, s, t)"""
    system: CoxeterSystem = field(compare=False, repr=False)
    left: GenSubset   # J
    s: int
    t: int
    terms: Tuple[int, ...]  # u_{−1} .. u_{2δ}
    delta: int

    @property
    def period(self) -> int:
        return 2 * (self.delta + 1)

    def u_at(self, i: int) -> int:
        """u_i for any integer i."""
        return self.terms[(i + 1) % self.period]

    @property
    def c(self) -> Tuple[int, ...]:
        """u₁ … u_{δ−1}: the new letters of the switchback rhs."""
        return tuple(self.u_at(i) for i in range(1, self.delta))

    @property
    def minimal_period(self) -> int:
        n = self.period
        for p in range(1, n + 1):
            if n % p == 0 and all(self.u_at(i) == self.u_at(i + p) for i in range(n)):
                return p
        return n

    def alternating_expression(self, k: Optional[int] = None) -> Expression:
        """[I₀, L₁, I₁, …, L_k, I_k] with I_i = Js∖u_i; k = δ by default."""
        k = self.delta if k is None else k
        steps = []
        for i in range(1, k + 1):
            steps += [(DOWN, self.u_at(i)), (UP, self.u_at(i - 1))]
        return Expression(self.system, self.left, tuple(steps))


@dataclass(frozen=True)
class RelationInstance:
    """One applicable relation at a position of a host expression"""
    kind: RelationKind
    position: int       # index of the subset where the matched subword starts
    direction: Direction
    lhs: Expression
    rhs: Expression
    rotation: Optional[RotationSequence] = None  # switchback only

    @property
    def match(self) -> Expression:
        return self.lhs if self.direction == Direction.FORWARD else self.rhs

    @property
    def replacement(self) -> Expression:
        return self.rhs if self.direction == Direction.FORWARD else self.lhs

    @property
    def is_braid(self) -> bool:
        return self.kind in BRAID_KINDS

    @property
    def length_change(self) -> int:
        return self.replacement.length - self.match.length

    def at(self, position: int) -> "RelationInstance":
        return RelationInstance(self.kind, position, self.direction, self.lhs, self.rhs, self.rotation)

    def describe(self) -> str:
        return f"{self.kind.value}@{self.position}"


class RelationCalculus:
    """
    Rotation sequences, switchbacks and redex handling, with a per-context
    rotation cache that is safe under concurrent first computation.
    """

    def __init__(self, bounds: SearchBounds = None):
        """
        Args:
            bounds: search bounds (uses DEFAULT_BOUNDS if not provided)
        """
        self.bounds = bounds if bounds else DEFAULT_BOUNDS
        self._lock = threading.Lock()
        self._rotations: Dict[tuple, object] = {}

    # ------------------------------------------------------------------
    # Rotation sequences
    # ------------------------------------------------------------------

    def rotation_sequence(self, system: CoxeterSystem, left, s: int, t: int) -> RotationSequence:
        left = frozenset(left)
        key = (system, left, s, t)
        cached = self._rotations.get(key)
        if cached is not None:
            track_rotation_cache(hit=True)
            if isinstance(cached, NoRotationError):
                raise cached
            return cached
        track_rotation_cache(hit=False)
        try:
            result = self._compute_rotation(system, left, s, t)
        except NoRotationError as exc:
            with self._lock:
                self._rotations.setdefault(key, exc)
            raise
        with self._lock:
            self._rotations.setdefault(key, result)
        return result

    def _compute_rotation(self, system: CoxeterSystem, left: GenSubset, s: int, t: int) -> RotationSequence:
        labels = system.labels
        if s in left:
            raise ValidationError(f"{labels[s]} must lie outside J", field="s")
        big = left | {s}
        if t not in big:
            raise ValidationError(f"{labels[t]} must lie in J ∪ {{{labels[s]}}}", field="t")
        if not system.is_finitary(big):
            raise DomainError("J ∪ {s} is not finitary")

        before = system.conjugate_by_longest(big, t)
        if before == s:
            raise NoRotationError(
                f"[J+{labels[s]}-{labels[t]}] has a unique reduced expression",
                context={"J": [labels[g] for g in sorted(left)], "s": labels[s], "t": labels[t]},
            )

        terms = [before, s]  # u_{-1}, u_0

        def next_term() -> int:
            # u_{i+1} = w_{I_i} u_{i-1} w_{I_i} with I_i = Js∖u_i
            return system.conjugate_by_longest(big - {terms[-1]}, terms[-2])

        max_steps = self.bounds.rewrite.max_rotation_steps
        steps: List[Tuple[int, int]] = []
        delta = 0
        while True:
            if delta >= max_steps:
                raise ResourceBoundError(
                    "rotation sequence did not terminate",
                    bound_name="SCOX_MAX_ROTATION_STEPS",
                    limit=max_steps,
                )
            terms.append(next_term())
            k = delta + 1
            candidate = steps + [(DOWN, terms[k + 1]), (UP, terms[k])]
            if not Expression(system, left, tuple(candidate)).is_reduced:
                terms.pop()
                break
            steps = candidate
            delta = k

        while len(terms) < 2 * delta + 2:
            terms.append(next_term())
        rotation = RotationSequence(system, left, s, t, tuple(terms), delta)
        self._cross_check(system, big, rotation, terms)
        logger.debug(
            f"🔄 [Rotation] J={sorted(left)} s={s} t={t}: delta={delta}, "
            f"c={[labels[g] for g in rotation.c]}"
        )
        return rotation

    def _cross_check(self, system: CoxeterSystem, big: GenSubset, rotation: RotationSequence, terms: List[int]) -> None:
        if rotation.u_at(rotation.delta) != rotation.t:
            raise InvariantViolation("rotation sequence does not reach t at delta", details={"delta": rotation.delta})
        if rotation.u_at(rotation.delta + 1) != system.conjugate_by_longest(big, rotation.s):
            raise InvariantViolation("u_{δ+1} differs from w_{Js} s w_{Js}")
        if evaluate(rotation.alternating_expression()).max != system.longest_element(big):
            raise InvariantViolation("alternating expression does not reach w_{Js}")
        extended = list(terms)
        for _ in range(2):
            extended.append(system.conjugate_by_longest(big - {extended[-1]}, extended[-2]))
        if extended[-2:] != extended[:2]:
            raise InvariantViolation("rotation sequence is not 2(δ+1)-periodic")

    # ------------------------------------------------------------------
    # Relation instances
    # ------------------------------------------------------------------

    def switchback(self, system: CoxeterSystem, left, s: int, t: int) -> RelationInstance:
        """[J+s−t] ≗ [J −u₁ +s −u₂ +u₁ … −t +u_{δ−1}], verified by evaluation."""
        rotation = self.rotation_sequence(system, left, s, t)
        left = rotation.left
        lhs = Expression(system, left, ((UP, s), (DOWN, t)))
        rhs = rotation.alternating_expression()
        if evaluate(lhs) != evaluate(rhs):
            raise InvariantViolation("switchback sides evaluate differently")
        return RelationInstance(RelationKind.SWITCHBACK, 0, Direction.FORWARD, lhs, rhs, rotation)

    def enumerate_redexes(self, e: Expression, include_expansions: bool = True) -> List[RelationInstance]:
        """Every position where a relation side matches a contiguous subword."""
        system = e.system
        steps, subsets = e.steps, e.subsets
        found: Dict[tuple, RelationInstance] = {}

        def add(instance: RelationInstance) -> None:
            key = (instance.kind, instance.position, instance.match, instance.replacement)
            found.setdefault(key, instance)

        for i in range(e.width + 1):
            here = subsets[i]
            if include_expansions:
                for s in sorted(here):
                    expanded = Expression(system, here, ((DOWN, s), (UP, s)))
                    add(RelationInstance(RelationKind.STAR_QUADRATIC, i, Direction.BACKWARD,
                                         expanded, Expression(system, here)))
            if i + 2 > e.width:
                continue
            (sign_a, a), (sign_b, b) = steps[i], steps[i + 1]
            window = e.subword(i, i + 2)

            if sign_a == DOWN and sign_b == UP and a == b:
                add(RelationInstance(RelationKind.STAR_QUADRATIC, i, Direction.FORWARD,
                                     window, Expression(system, here)))
            elif sign_a == sign_b:
                kind = RelationKind.UP_UP if sign_a == UP else RelationKind.DOWN_DOWN
                swapped = Expression(system, here, ((sign_b, b), (sign_a, a)))
                if a < b:
                    add(RelationInstance(kind, i, Direction.FORWARD, window, swapped))
                else:
                    add(RelationInstance(kind, i, Direction.BACKWARD, swapped, window))
            elif sign_a == UP and sign_b == DOWN:
                try:
                    relation = self.switchback(system, here, a, b)
                except NoRotationError:
                    relation = None
                if relation is not None:
                    add(relation.at(i))

            if sign_a == DOWN and sign_b == UP:
                for relation in self._backward_switchbacks(e, i):
                    add(relation)

        return sorted(found.values(), key=lambda r: (r.position, r.kind.value, r.direction.value, str(r.match), str(r.replacement)))

    def _backward_switchbacks(self, e: Expression, i: int) -> List[RelationInstance]:
        """Switchback right-hand sides starting at subset i."""
        system = e.system
        left = e.subsets[i]
        s = e.steps[i + 1][1]
        if s in left:
            return []
        big = left | {s}
        if not system.is_finitary(big):
            return []
        matches = []
        for t in sorted(big):
            try:
                relation = self.switchback(system, left, s, t)
            except NoRotationError:
                continue
            width = relation.rhs.width
            if i + width <= e.width and e.steps[i:i + width] == relation.rhs.steps:
                matches.append(RelationInstance(
                    RelationKind.SWITCHBACK, i, Direction.BACKWARD,
                    relation.lhs, relation.rhs, relation.rotation,
                ))
        return matches

    def apply(self, e: Expression, relation: RelationInstance) -> Expression:
        """Replace the matched subword; evaluation must not change."""
        match = relation.match
        end = relation.position + match.width
        if end > e.width or e.subword(relation.position, end) != match:
            raise StaleRedexError(
                f"{relation.describe()} no longer matches",
                position=relation.position,
                kind=relation.kind.value,
            )
        result = e.splice(relation.position, end, relation.replacement)
        if evaluate(result) != evaluate(e):
            raise InvariantViolation(f"{relation.describe()} changed the evaluation")
        track_relation_applied(relation.kind.value)
        return result


# Singleton instance
relation_calculus = RelationCalculus()


def rotation_sequence(system: CoxeterSystem, left, s: int, t: int) -> RotationSequence:
    return relation_calculus.rotation_sequence(system, left, s, t)


def switchback(system: CoxeterSystem, left, s: int, t: int) -> RelationInstance:
    return relation_calculus.switchback(system, left, s, t)


def enumerate_redexes(e: Expression, include_expansions: bool = True) -> List[RelationInstance]:
    return relation_calculus.enumerate_redexes(e, include_expansions)


def apply(e: Expression, relation: RelationInstance) -> Expression:
    return relation_calculus.apply(e, relation)
