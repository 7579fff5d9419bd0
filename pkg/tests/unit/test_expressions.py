"""
Unit tests for singular expressions, evaluation and the reducedness criteria.
"""
import pytest

from scox.core.system import named_system
from scox.exceptions import UsageError, ValidationError
from scox.services.cosets import coset_of, finitary_subsets
from scox.services.expressions import (
    DOWN,
    UP,
    Expression,
    MultistepExpression,
    concat,
    drop_final_down_step,
    drop_initial_down_step,
    drop_initial_up_step,
    evaluate,
    evaluate_multistep,
    expr_lengths,
    forward_path,
    is_addable,
    is_reduced_multistep,
    is_reduced_forward,
    multistep_to_singlestep,
    plus_expression,
    reduced_at,
    reducedness_certificate,
    reverse,
    singlestep_to_multistep,
    subexpression_maxima_check,
)

S, T, U = 0, 1, 2
E = frozenset()


def subsets(*groups):
    return tuple(frozenset(g) for g in groups)


def all_expressions(system, max_width):
    """Every expression of width at most max_width, from every finitary start."""
    found = []

    def extend(e):
        found.append(e)
        if e.width == max_width:
            return
        for g in system.generators:
            sign = DOWN if g in e.end else UP
            following = e.end ^ {g}
            if system.is_finitary(following):
                extend(Expression(system, e.start, e.steps + ((sign, g),)))

    for start in finitary_subsets(system):
        extend(Expression(system, start))
    return found


@pytest.mark.unit
class TestParsing:
    """Bracket and step spellings."""

    def test_bracket_and_step_forms_agree(self, a2):
        bracket = Expression.parse(a2, "[∅,s,st]")
        steps = Expression.parse(a2, "[] +s +t")
        assert bracket == steps
        assert bracket.subsets == subsets((), (S,), (S, T))
        assert bracket.steps == ((UP, S), (UP, T))

    def test_formatting_uses_labels(self, a2):
        e = Expression.parse(a2, "[∅,s,st]")
        assert str(e) == "[∅,s1,s1s2]"
        assert e.step_form() == "[] +s1 +s2"
        assert e.to_dict() == {"start": [], "steps": [["+", "s1"], ["+", "s2"]]}

    def test_step_form_with_start(self, a3):
        e = Expression.parse(a3, "[st] -s +u -s +t")
        assert e.subsets == subsets((S, T), (T,), (T, U), (T, U, S), (T, U))
        assert e.width == 4

    def test_not_a_single_step(self, a2):
        with pytest.raises(ValidationError):
            Expression.parse(a2, "[s,t]")

    def test_adding_present_generator(self, a2):
        with pytest.raises(ValidationError):
            Expression(a2, {S}, ((UP, S),))

    def test_removing_absent_generator(self, a2):
        with pytest.raises(ValidationError):
            Expression(a2, (), ((DOWN, T),))

    def test_non_finitary_subset(self):
        """{s,t} generates an infinite group in I2(∞)."""
        system = named_system("I2(inf)")
        with pytest.raises(ValidationError):
            Expression(system, (), ((UP, S), (UP, T)))


@pytest.mark.unit
class TestEvaluation:
    """Evaluation through the Demazure product."""

    def test_merge_split(self, a2):
        """[∅,s,∅] evaluates to {s}."""
        e = Expression.parse(a2, "[∅,s,∅]")
        assert evaluate(e) == coset_of(a2, (), a2.generator(S), ())
        assert e.is_reduced
        assert e.length == 2 == e.coset.length

    def test_bigon_evaluates_to_same_coset(self, a2):
        """[∅,s,∅,s,∅] evaluates to {s} but is not reduced."""
        e = Expression.parse(a2, "[∅,s,∅,s,∅]")
        assert e.coset == coset_of(a2, (), a2.generator(S), ())
        assert not e.is_reduced
        assert e.length == 4 > e.coset.length

    def test_longest_element(self, a2):
        e = Expression.parse(a2, "[∅,s,st,t,∅]")
        assert e.coset.max == a2.longest_element(a2.all_generators)
        assert e.is_reduced

    def test_forward_path(self, a2):
        """Up-steps keep the minimum, down-steps keep the maximum."""
        path = forward_path(Expression.parse(a2, "[∅,s,∅,t]"))
        assert [p.right for p in path.cosets] == [E, {S}, E, {T}]
        assert path.cosets[2].max == a2.generator(S)
        assert path.end.min == a2.generator(S)
        assert path.redundancies == (E, E, E, E)

    def test_reverse_is_inverse(self, a2):
        e = Expression.parse(a2, "[∅,s,st,t]")
        assert reverse(e).coset == e.coset.inverse()
        assert reverse(e).subsets == tuple(reversed(e.subsets))

    def test_lengths_split(self, a2):
        """Up-steps add ℓ(I_{i+1}) − ℓ(I_i), down-steps the reverse."""
        lengths = expr_lengths(Expression.parse(a2, "[∅,s,st,t]"))
        assert (lengths.plus, lengths.minus) == (3, 2)


@pytest.mark.unit
class TestReducedness:
    """Certificate, forward-path and multistep criteria."""

    def test_first_failure_of_merge_split_twice(self, a2):
        e = Expression.parse(a2, "[∅,s,∅,s,∅]")
        assert reduced_at(e, 0)
        assert reduced_at(e, 1)
        assert not reduced_at(e, 2)
        assert not is_reduced_forward(e)

    def test_split_then_merge_same_generator(self, a2):
        """[s,∅,s] fails at its up-step: the redundancy grows."""
        e = Expression.parse(a2, "[s,∅,s]")
        assert reduced_at(e, 0)
        assert not reduced_at(e, 1)
        assert not e.is_reduced

    def test_failure_after_a_reduced_prefix(self, a2):
        """[s,∅,t,st] is reduced up to I₂ and fails at the last step."""
        e = Expression.parse(a2, "[s,∅,t,st]")
        assert reduced_at(e, 0) and reduced_at(e, 1)
        assert not reduced_at(e, 2)
        assert not e.is_reduced

    def test_step_index_out_of_range(self, a2):
        with pytest.raises(ValidationError):
            reduced_at(Expression.parse(a2, "[∅,s]"), 1)

    def test_certificate(self, a2):
        cert = reducedness_certificate(Expression.parse(a2, "[∅,s,st,t]"))
        assert cert.lengths_add
        assert cert.a0 == a2.from_word([S, T, S])
        assert cert.center(0) == cert.a0
        assert cert.lengths_add_at(0)

    @pytest.mark.parametrize("name,width", [("A2", 6), ("B2", 5), ("A1×A1", 5), ("A3", 4)])
    def test_criteria_agree(self, name, width):
        """All criteria give the same verdict on every expression up to the width."""
        system = named_system(name)
        for e in all_expressions(system, width):
            verdict = e.is_reduced
            assert is_reduced_forward(e) == verdict, str(e)
            assert is_reduced_multistep(singlestep_to_multistep(e)) == verdict, str(e)
            assert (e.length == e.coset.length) == verdict, str(e)
            assert e.length >= e.coset.length


@pytest.mark.unit
class TestStructuralOperations:
    """Concatenation, subwords, splicing and truncation."""

    def test_concat_reduced(self, a2):
        result = concat(Expression.parse(a2, "[∅,s]"), Expression.parse(a2, "[s,∅]"))
        assert result.reduced
        assert result.expression == Expression.parse(a2, "[∅,s,∅]")

    def test_concat_not_reduced(self, a2):
        merge_split = Expression.parse(a2, "[∅,s,∅]")
        assert not concat(merge_split, merge_split).reduced

    def test_concat_mismatch(self, a2):
        with pytest.raises(UsageError):
            concat(Expression.parse(a2, "[∅,s]"), Expression.parse(a2, "[∅,t]"))

    def test_subword_and_splice(self, a2):
        e = Expression.parse(a2, "[∅,s,st,t]")
        middle = e.subword(1, 3)
        assert middle.subsets == subsets((S,), (S, T), (T,))
        assert e.splice(1, 3, middle) == e
        with pytest.raises(UsageError):
            e.splice(1, 3, Expression.parse(a2, "[s,∅]"))

    def test_drop_steps(self, a2):
        e = Expression.parse(a2, "[∅,s,∅]")
        assert drop_initial_up_step(e).subsets == subsets((S,), ())
        assert drop_final_down_step(e).subsets == subsets((), (S,))
        with pytest.raises(ValidationError):
            drop_initial_down_step(e)

    def test_subexpression_maxima(self, a2):
        e = Expression.parse(a2, "[∅,s,st,t]")
        assert subexpression_maxima_check(e, 1)

    def test_addability(self, a2):
        verdict = is_addable(Expression.parse(a2, "[∅,s,∅]"), S, T)
        assert not verdict.with_s
        assert verdict.with_t
        assert not verdict.with_both

    def test_addability_needs_new_generators(self, a2):
        with pytest.raises(UsageError):
            is_addable(Expression.parse(a2, "[∅,s]"), S, T)

    def test_plus_expression(self, a2):
        """Extending by J in a product keeps reducedness."""
        lifted = plus_expression(Expression.parse(a2, "[∅,s]"), named_system("A1"), {0})
        assert lifted.system.rank == 3
        assert lifted.start == {2}
        assert lifted.end == {S, 2}
        assert lifted.is_reduced


@pytest.mark.unit
class TestMultistep:
    """[[I₀ ⊆ K₁ ⊇ I₁ …]] expressions."""

    def test_longest_leg(self, a2):
        m = MultistepExpression(a2, subsets((), (S, T), ()))
        assert m.legs == 1
        single = multistep_to_singlestep(m)
        assert single.subsets == subsets((), (S,), (S, T), (S,), ())
        assert is_reduced_multistep(m)
        assert evaluate_multistep(m).max == a2.longest_element(a2.all_generators)

    def test_grouping_round_trip(self, a2):
        e = Expression.parse(a2, "[∅,s,st,t,∅]")
        assert singlestep_to_multistep(e).chain == subsets((), (S, T), ())

    def test_even_chain_rejected(self, a2):
        with pytest.raises(ValidationError):
            MultistepExpression(a2, subsets((), (S,)))

    def test_chain_must_contain(self, a2):
        with pytest.raises(ValidationError):
            MultistepExpression(a2, subsets((S,), (), (T,)))

    def test_not_reduced(self, a2):
        """[[∅,s,∅,s,∅]] repeats the merge-split."""
        m = MultistepExpression(a2, subsets((), (S,), (), (S,), ()))
        assert not is_reduced_multistep(m)
