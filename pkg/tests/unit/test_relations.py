"""
Unit tests for rotation sequences, switchbacks and redexes.
"""
import pytest

from scox.core.system import named_system
from scox.exceptions import NoRotationError, StaleRedexError, ValidationError
from scox.services.expressions import Expression, evaluate
from scox.services.relations import (
    Direction,
    RelationCalculus,
    RelationKind,
    apply,
    enumerate_redexes,
    rotation_sequence,
    switchback,
)

S, T, U = 0, 1, 2


def subsets(*groups):
    return tuple(frozenset(g) for g in groups)


def one_based(rotation, first, last):
    return tuple(rotation.u_at(i) + 1 for i in range(first, last + 1))


@pytest.mark.unit
class TestRotationSequences:
    """u_{i+1} = w_{Js∖u_i} u_{i−1} w_{Js∖u_i}"""

    def test_a9(self):
        """J = S∖s3, s = s3, t = s6 in A9: δ = 2 with u₁ = s9."""
        system = named_system("A9")
        rotation = rotation_sequence(system, system.all_generators - {2}, 2, 5)
        assert rotation.delta == 2
        assert rotation.u_at(-1) == 3
        assert rotation.u_at(0) == 2
        assert rotation.u_at(1) == 8
        assert rotation.u_at(2) == 5
        assert rotation.c == (8,)
        assert rotation.period == 6

    def test_a2_square(self, a2):
        """J = t, s = t′ = s: the square [t,st,t] ≗ [t,∅,s,∅,t]."""
        rotation = rotation_sequence(a2, {T}, S, S)
        assert rotation.delta == 2
        assert rotation.c == (T,)
        assert rotation.alternating_expression().subsets == subsets((T,), (), (S,), (), (T,))

    def test_periodicity(self, b3):
        rotation = rotation_sequence(b3, {T, U}, S, T)
        for i in range(-2, 2 * rotation.period):
            assert rotation.u_at(i) == rotation.u_at(i + rotation.period)

    @pytest.mark.slow
    @pytest.mark.parametrize("a,b,terms,period", [
        (1, 5, (1, 5, 2, 4, 2, 5), 6),
        (2, 3, (2, 6, 5, 7, 3), None),
        (4, 6, (4, 6, 4, 6, 4, 6), 2),
    ])
    def test_e7(self, a, b, terms, period):
        system = named_system("E7")
        rotation = rotation_sequence(system, system.all_generators - {a - 1}, a - 1, b - 1)
        assert one_based(rotation, 0, rotation.delta) == terms
        if period is not None:
            assert rotation.minimal_period == period

    def test_unique_rex_has_no_rotation(self, a2):
        """s = w₀ t w₀ leaves [J+s−t] alone."""
        with pytest.raises(NoRotationError):
            rotation_sequence(a2, {T}, S, T)

    def test_s_inside_j(self, a2):
        with pytest.raises(ValidationError):
            rotation_sequence(a2, {S, T}, S, T)

    def test_t_outside_js(self, a3):
        with pytest.raises(ValidationError):
            rotation_sequence(a3, {T}, S, U)

    def test_cache_returns_same_sequence(self, b2):
        calculus = RelationCalculus()
        first = calculus.rotation_sequence(b2, {T}, S, T)
        assert calculus.rotation_sequence(b2, {T}, S, T) is first

    def test_cached_failure_is_raised_again(self, a2):
        calculus = RelationCalculus()
        for _ in range(2):
            with pytest.raises(NoRotationError):
                calculus.rotation_sequence(a2, {T}, S, T)


@pytest.mark.unit
class TestSwitchback:
    """[J+s−t] ≗ [J −u₁ +s −u₂ +u₁ … −t +u_{δ−1}]"""

    def test_sides_evaluate_equally(self, a2):
        relation = switchback(a2, {T}, S, S)
        assert relation.kind == RelationKind.SWITCHBACK
        assert relation.lhs.subsets == subsets((T,), (S, T), (T,))
        assert evaluate(relation.lhs) == evaluate(relation.rhs)
        assert relation.is_braid
        assert relation.length_change == 0

    @pytest.mark.parametrize("name", ["B3", "H3", "A1×A1", "G2"])
    def test_every_context(self, name):
        """Every switchback of small systems is a sound braid relation."""
        system = named_system(name)
        for s in system.generators:
            left = system.all_generators - {s}
            for t in system.generators:
                try:
                    relation = switchback(system, left, s, t)
                except NoRotationError:
                    continue
                assert relation.lhs.is_reduced and relation.rhs.is_reduced
                assert evaluate(relation.lhs) == evaluate(relation.rhs)


@pytest.mark.unit
class TestRedexes:
    """Finding and applying relation instances."""

    def test_switchback_both_directions(self, a2):
        e = Expression.parse(a2, "[t,st,t]")
        forward = [r for r in enumerate_redexes(e, include_expansions=False)
                   if r.kind == RelationKind.SWITCHBACK]
        assert len(forward) == 1
        assert forward[0].direction == Direction.FORWARD
        rewritten = apply(e, forward[0])
        assert rewritten.subsets == subsets((T,), (), (S,), (), (T,))

        backward = [r for r in enumerate_redexes(rewritten, include_expansions=False)
                    if r.kind == RelationKind.SWITCHBACK]
        assert [(r.position, r.direction) for r in backward] == [(0, Direction.BACKWARD)]
        assert apply(rewritten, backward[0]) == e

    def test_up_up(self, a2):
        e = Expression.parse(a2, "[∅,s,st]")
        (relation,) = [r for r in enumerate_redexes(e) if r.kind == RelationKind.UP_UP]
        assert apply(e, relation).subsets == subsets((), (T,), (S, T))

    def test_star_quadratic_contraction(self, a2):
        e = Expression.parse(a2, "[s,∅,s]")
        (relation,) = [r for r in enumerate_redexes(e, include_expansions=False)
                       if r.kind == RelationKind.STAR_QUADRATIC]
        assert relation.length_change == -2
        assert not relation.is_braid
        assert apply(e, relation).width == 0

    def test_star_quadratic_expansion(self, a2):
        e = Expression.parse(a2, "[s]")
        (relation,) = enumerate_redexes(e)
        assert relation.direction == Direction.BACKWARD
        assert relation.length_change == 2
        assert apply(e, relation).subsets == subsets((S,), (), (S,))

    def test_stale_redex(self, a2):
        relation = switchback(a2, {T}, S, S)
        with pytest.raises(StaleRedexError):
            apply(Expression.parse(a2, "[t,∅,t]"), relation)

    def test_redexes_preserve_evaluation(self, random_expressions, b2):
        for e in random_expressions(b2, 20, 5, seed=7):
            for relation in enumerate_redexes(e):
                assert evaluate(apply(e, relation)) == evaluate(e)
