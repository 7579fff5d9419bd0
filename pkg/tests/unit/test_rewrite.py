"""
Unit tests for normalization, rex sets, rex graphs and Matsumoto checks.
"""
import pytest

from scox.bounds import RexSearchBounds, SearchBounds
from scox.core.system import named_system
from scox.exceptions import InvariantViolation, ResourceBoundError
from scox.services.cosets import coset_of
from scox.services.expressions import Expression, evaluate
from scox.services.relations import RelationKind
from scox.services.rewrite import (
    Normalizer,
    _RewriteRun,
    RewriteTrace,
    matsumoto_verify,
    normalize,
    replay,
    rex_graph,
    rex_set,
)

S, T, U = 0, 1, 2


def longest_coset(system):
    return coset_of(system, (), system.longest_element(system.all_generators), ())


@pytest.mark.unit
class TestNormalize:
    """Braid relations plus ∗-quadratic contraction."""

    def test_merge_split_twice(self, a2):
        e = Expression.parse(a2, "[∅,s,∅,s,∅]")
        trace = normalize(e)
        assert trace.final == Expression.parse(a2, "[∅,s,∅]")
        assert any(step.relation.kind == RelationKind.STAR_QUADRATIC for step in trace.steps)
        assert replay(trace) == trace.final

    def test_reduced_input_is_unchanged(self, a2):
        e = Expression.parse(a2, "[∅,s,st,t,∅]")
        trace = normalize(e)
        assert trace.steps == []
        assert trace.final == e

    @pytest.mark.parametrize("name,width", [("A2", 8), ("B2", 7), ("A1×A1", 6), ("A3", 10), ("B3", 10)])
    def test_random_expressions(self, random_expressions, name, width):
        """normalize always ends in a reduced expression that replays."""
        system = named_system(name)
        for e in random_expressions(system, 200, width, seed=11):
            trace = normalize(e)
            assert trace.final.is_reduced, str(e)
            assert evaluate(trace.final) == evaluate(e)
            assert replay(trace) == trace.final

    @pytest.mark.parametrize(
        "name,text",
        [
            ("A3", "[s1,s1s2,s2,s2s3,s2,s2s3,s2,s2s3,s2,s1s2]"),
            ("A3", "[s1s2,s2,∅,s3,∅,s2,∅,s3,s1s3,s1]"),
            ("B3", "[s1s2,s2,∅,s3,∅,s2,∅,s3,s1s3,s1]"),
            ("A3", "[s1,∅,s2,∅,s3,s1s3,s3,s2s3,s2,s1s2]"),
        ],
    )
    def test_switchback_widens_the_prefix(self, name, text):
        """Braid moves that change the width of the prefix before a contraction."""
        e = Expression.parse(named_system(name), text)
        trace = normalize(e)
        assert trace.final.is_reduced
        assert evaluate(trace.final) == evaluate(e)
        assert trace.final.length == e.coset.length
        assert replay(trace) == trace.final

    @pytest.mark.slow
    @pytest.mark.parametrize("name,seed", [("A3", 101), ("B3", 103)])
    def test_many_random_expressions(self, random_expressions, name, seed):
        system = named_system(name)
        for e in random_expressions(system, 10_000, 10, seed=seed):
            trace = normalize(e)
            assert trace.final.is_reduced, str(e)
            assert evaluate(trace.final) == evaluate(e), str(e)

    def test_trace_serialization(self, a2):
        trace = normalize(Expression.parse(a2, "[∅,s,∅,s,∅]"))
        data = trace.to_dict()
        assert data["start"] == "[∅,s1,∅,s1,∅]"
        assert data["final"] == "[∅,s1,∅]"
        assert set(data["steps"][0]) == {"kind", "position", "direction", "expression"}
        assert len(trace.to_lines()) == len(trace.steps)

    def test_replay_rejects_unreduced_end(self, a2):
        trace = RewriteTrace(start=Expression.parse(a2, "[∅,s,∅,s,∅]"))
        with pytest.raises(InvariantViolation):
            replay(trace)

    def test_cancel_needs_a_down_up_pair(self, a2):
        run = _RewriteRun(Normalizer(), Expression.parse(a2, "[∅,s,st]"))
        with pytest.raises(InvariantViolation):
            run.cancel(0)

    def test_cancel_needs_the_same_generator(self, a2):
        run = _RewriteRun(Normalizer(), Expression.parse(a2, "[s,∅,t]"))
        with pytest.raises(InvariantViolation):
            run.cancel(0)

    def test_cancel_contracts(self, a2):
        run = _RewriteRun(Normalizer(), Expression.parse(a2, "[s,∅,s]"))
        relation = run.cancel(0)
        assert relation.kind == RelationKind.STAR_QUADRATIC
        assert relation.replacement == Expression.parse(a2, "[s]")

    def test_commute_needs_two_up_steps(self, a2):
        run = _RewriteRun(Normalizer(), Expression.parse(a2, "[s,∅,t]"))
        with pytest.raises(InvariantViolation):
            run.commute_additions(0)


@pytest.mark.unit
class TestRexSets:
    """All reduced expressions of a coset."""

    def test_longest_element_of_a2(self, a2):
        """{sts} has four rexes of width 4 and two of width 6."""
        rexes = rex_set(longest_coset(a2))
        assert len(rexes) == 6
        assert [e.width for e in rexes] == [4, 4, 4, 4, 6, 6]
        assert all(e.is_reduced for e in rexes)

    def test_max_width(self, a2):
        assert len(rex_set(longest_coset(a2), max_width=4)) == 4

    def test_identity_coset(self, a2):
        rexes = rex_set(coset_of(a2, {S}, a2.identity(), {S}))
        assert rexes == (Expression(a2, {S}),)

    def test_vertex_bound(self, a2):
        bounds = SearchBounds(rex=RexSearchBounds(max_vertices=2))
        with pytest.raises(ResourceBoundError) as info:
            rex_set(longest_coset(a2), bounds)
        assert info.value.exit_code == 2

    def test_rex_graph_is_connected(self, a2):
        graph = rex_graph(longest_coset(a2))
        assert len(graph.vertices) == 6
        assert graph.is_connected()
        data = graph.to_dict()
        assert data["connected"]
        assert len(data["vertices"]) == 6
        assert "Switchback" in {kind for edge in data["edges"] for kind in edge["kinds"]}

    def test_rex_graph_dot(self, a2):
        dot = rex_graph(longest_coset(a2)).to_dot()
        assert dot.lstrip().startswith(("graph", "strict graph"))


@pytest.mark.unit
class TestMatsumoto:
    """Braid relations connect every rex graph."""

    @pytest.mark.parametrize("name", ["A2", "A1×A1", "B2", "I2(5)", "I2(6)", "I2(7)", "I2(8)"])
    def test_small_systems(self, name):
        report = matsumoto_verify(named_system(name), threads=1)
        assert report.ok
        assert report.to_dict()["failures"] == 0

    def test_threads_give_same_entries(self, b2):
        single = matsumoto_verify(b2, max_subset_size=1, threads=1)
        pooled = matsumoto_verify(b2, max_subset_size=1, threads=3)
        assert single.entries == pooled.entries
        assert single.ok

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["A3", "B3", "H3"])
    def test_rank_three(self, name):
        assert matsumoto_verify(named_system(name), threads=2).ok
