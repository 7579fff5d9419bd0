"""
Constructive Reduced Expressions

Builds reduced expressions for a given coset: a general backward-greedy
construction, the high road through λ(p̄) and ρ(p̄), the low road through
the core, and extensions of reduced expressions by embeddings and by
completion to the longest element.
"""

import logging
from typing import Iterator, List, Optional, Sequence, Tuple

from scox.core.system import GenSubset
from scox.exceptions import DomainError, InvariantViolation, ValidationError
from scox.services.cosets import DoubleCoset, coset_of
from scox.services.expressions import DOWN, UP, Expression, Step, concat

logger = logging.getLogger(__name__)


def final_step_candidates(p: DoubleCoset) -> Iterator[Tuple[Step, DoubleCoset]]:
    """
    Every valid last step of a reduced expression for p, with the coset the
    remaining prefix must express.

    "-t" (t ∉ I, It finitary, t ∈ ρ(p̄)) comes before "+t" (t ∈ I∖L), each in
    generator order.
    """
    system = p.system
    right = p.right
    top_descents = p.max.right_descents()
    for t in system.generators:
        if t in right or t not in top_descents:
            continue
        wider = right | {t}
        if system.is_finitary(wider):
            yield (DOWN, t), coset_of(system, p.left, p.max, wider)
    redundant = p.right_redundancy
    for t in sorted(right):
        if t not in redundant:
            yield (UP, t), coset_of(system, p.left, p.min, right - {t})


def some_rex(p: DoubleCoset) -> Expression:
    """A reduced expression for p, found backward-greedily."""
    steps: List[Step] = []
    current = p
    while current.length > 0:
        candidate = next(final_step_candidates(current), None)
        if candidate is None:
            raise InvariantViolation(f"no valid final step for {current}")
        step, predecessor = candidate
        if predecessor.length >= current.length:
            raise InvariantViolation(f"final step {step} does not shorten {current}")
        steps.append(step)
        current = predecessor
    if not current.is_identity():
        raise InvariantViolation(f"greedy search ended at a non-identity coset {current}")
    return Expression(p.system, current.left, tuple(reversed(steps)))


def add_leg(system, start: GenSubset, target: GenSubset) -> Expression:
    """[[J, M]] for J ⊆ M, adding in generator order."""
    return Expression(system, start, tuple((UP, g) for g in sorted(target - start)))


def remove_leg(system, start: GenSubset, target: GenSubset) -> Expression:
    """[[N, I]] for N ⊇ I, removing in generator order."""
    return Expression(system, start, tuple((DOWN, g) for g in sorted(start - target)))


def _chain(*parts: Expression) -> Expression:
    result = parts[0]
    for part in parts[1:]:
        result = concat(result, part).expression
    return result


def high_road(p: DoubleCoset) -> Expression:
    """[[J, λ(p̄)]] ∘ rex of the (λ(p̄), ρ(p̄))-coset of p̄ ∘ [[ρ(p̄), I]]"""
    system = p.system
    top = p.max
    left, right = top.left_descents(), top.right_descents()
    middle = some_rex(coset_of(system, left, top, right))
    return _chain(add_leg(system, p.left, left), middle, remove_leg(system, right, p.right))


def low_road(p: DoubleCoset) -> Expression:
    """[[J, K]] ∘ rex of the core ∘ [[L, I]]"""
    system = p.system
    middle = some_rex(p.core())
    return _chain(
        remove_leg(system, p.left, p.left_redundancy),
        middle,
        add_leg(system, p.right_redundancy, p.right),
    )


def extension_bound(e: Expression) -> GenSubset:
    """K = ρ(w_J p̄⁻¹ w_S) for J the final subset of e."""
    system = e.system
    w = (
        system.longest_element(e.end)
        * e.coset.max.inverse()
        * system.longest_element(system.all_generators)
    )
    return w.right_descents()


def extend_to_longest(e: Expression, target: Sequence[int] = ()) -> Expression:
    """
    Extend a reduced expression to one ending at K′ whose coset contains w_S.

    Raises:
        DomainError: when K′ ⊄ ρ(w_J p̄⁻¹ w_S), so no such extension exists
    """
    system = e.system
    target = frozenset(target)
    if not e.is_reduced:
        raise ValidationError("only reduced expressions can be extended", field="expression")
    bound = extension_bound(e)
    if not target <= bound:
        raise DomainError(
            "requested final subset is not contained in ρ(w_J p̄⁻¹ w_S)",
            details={
                "requested": [system.labels[g] for g in sorted(target)],
                "allowed": [system.labels[g] for g in sorted(bound)],
            },
        )
    w = (
        system.longest_element(e.end)
        * e.coset.max.inverse()
        * system.longest_element(system.all_generators)
    )
    tail = some_rex(coset_of(system, e.end, w, target))
    return concat(e, tail).expression


def _check_order(subset: GenSubset, order: Sequence[int]) -> None:
    if len(order) != len(subset) or set(order) != set(subset):
        raise ValidationError("order must enumerate the subset exactly once", field="order")


def iota_embed(e: Expression, order: Optional[Sequence[int]] = None) -> Expression:
    """ι_J: prepend [∅, s₁, s₁s₂, …, J] following `order`."""
    order = sorted(e.start) if order is None else list(order)
    _check_order(e.start, order)
    prefix = tuple((UP, g) for g in order)
    return Expression(e.system, frozenset(), prefix + e.steps)


def kappa_embed(e: Expression, order: Optional[Sequence[int]] = None) -> Expression:
    """κ_J: append [J, J∖s₁, …, ∅] following `order`."""
    order = sorted(e.end) if order is None else list(order)
    _check_order(e.end, order)
    suffix = tuple((DOWN, g) for g in order)
    return Expression(e.system, e.start, e.steps + suffix)
