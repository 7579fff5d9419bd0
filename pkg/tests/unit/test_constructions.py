"""
Unit tests for reduced expression constructions.
"""
import pytest

from scox.core.system import named_system
from scox.exceptions import DomainError, ValidationError
from scox.services.constructions import (
    extend_to_longest,
    final_step_candidates,
    high_road,
    iota_embed,
    kappa_embed,
    low_road,
    some_rex,
)
from scox.services.cosets import all_cosets, coset_of, finitary_subsets
from scox.services.expressions import DOWN, UP, Expression

S, T, U = 0, 1, 2


def subsets(*groups):
    return tuple(frozenset(g) for g in groups)


@pytest.mark.unit
class TestSomeRex:
    """Backward-greedy reduced expressions."""

    @pytest.mark.parametrize("name", ["A2", "B2", "A1×A1", "G2"])
    def test_every_coset_of_rank_two(self, name):
        """some_rex(p) is reduced and evaluates to p for every coset."""
        system = named_system(name)
        subsets_ = finitary_subsets(system)
        for left in subsets_:
            for right in subsets_:
                for p in all_cosets(system, left, right):
                    e = some_rex(p)
                    assert e.is_reduced, repr(p)
                    assert e.coset == p
                    assert e.start == p.left and e.end == p.right

    def test_identity_coset_has_empty_rex(self, a2):
        p = coset_of(a2, {S}, a2.identity(), {S})
        assert some_rex(p).width == 0

    def test_final_steps_of_longest(self, a2):
        """The (∅,∅)-coset of w₀ can end in -s or -t."""
        p = coset_of(a2, (), a2.longest_element(a2.all_generators), ())
        steps = [step for step, _ in final_step_candidates(p)]
        assert steps == [(DOWN, S), (DOWN, T)]

    def test_final_up_step(self, a2):
        """(∅,s)-coset of e can only end by adding s."""
        p = coset_of(a2, (), a2.identity(), {S})
        steps = [step for step, _ in final_step_candidates(p)]
        assert steps == [(UP, S)]


@pytest.mark.unit
class TestRoads:
    """High road through the descents, low road through the core."""

    def test_high_road_of_longest(self, a2):
        p = coset_of(a2, (), a2.longest_element(a2.all_generators), ())
        e = high_road(p)
        assert e.subsets == subsets((), (S,), (S, T), (T,), ())
        assert e.is_reduced
        assert e.coset == p

    def test_low_road_through_core(self, a3):
        """The (st,st)-coset of su has core ({s},{s}) of u."""
        p = coset_of(a3, {S, T}, a3.from_word([S, U]), {S, T})
        assert p.left_redundancy == p.right_redundancy == {S}
        e = low_road(p)
        assert e.subsets == subsets((S, T), (S,), (S, U), (S,), (S, T))
        assert e.is_reduced
        assert e.coset == p

    def test_roads_agree_on_cosets_of_a3(self, a3):
        for left in ({S}, {S, T}, {T, U}):
            for right in ({U}, {S, U}):
                for p in all_cosets(a3, left, right):
                    assert high_road(p).coset == p
                    assert low_road(p).coset == p
                    assert high_road(p).is_reduced and low_road(p).is_reduced


@pytest.mark.unit
class TestExtensions:
    """Embeddings and completion to w_S."""

    def test_extend_to_longest(self, a2):
        e = Expression.parse(a2, "[∅,s]")
        full = extend_to_longest(e)
        assert full.subsets[:2] == e.subsets
        assert full.end == frozenset()
        assert full.is_reduced
        assert full.coset.max == a2.longest_element(a2.all_generators)

    def test_extension_target_outside_bound(self, a2):
        """After [∅,s,∅] only s is a right descent of s·w₀."""
        e = Expression.parse(a2, "[∅,s,∅]")
        assert extend_to_longest(e, [S]).coset.max == a2.longest_element(a2.all_generators)
        with pytest.raises(DomainError):
            extend_to_longest(e, [T])

    def test_extension_needs_reduced_input(self, a2):
        with pytest.raises(ValidationError):
            extend_to_longest(Expression.parse(a2, "[∅,s,∅,s,∅]"))

    def test_iota_and_kappa(self, a2):
        assert iota_embed(Expression.parse(a2, "[s,∅]")).subsets == subsets((), (S,), ())
        assert kappa_embed(Expression.parse(a2, "[∅,s]")).subsets == subsets((), (S,), ())
        ordered = iota_embed(Expression.parse(a2, "[st]"), order=[T, S])
        assert ordered.subsets == subsets((), (T,), (S, T))
        assert ordered.is_reduced

    def test_embedding_order_must_match(self, a2):
        with pytest.raises(ValidationError):
            iota_embed(Expression.parse(a2, "[st]"), order=[S])
