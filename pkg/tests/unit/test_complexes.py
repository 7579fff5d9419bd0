"""
Unit tests for singular Coxeter complexes and their export.
"""
import json

import pytest

from scox.bounds import RexSearchBounds, SearchBounds
from scox.core.system import CoxeterSystem, named_system
from scox.exceptions import DomainError, ResourceBoundError, UsageError
from scox.services.complex_export import export
from scox.services.complexes import (
    build_complex,
    embed_check,
    halfspace_check,
    oriented_paths,
    sinks,
    sources,
)
from scox.services.cosets import coset_of
from scox.services.rewrite import rex_set

S, T, U = 0, 1, 2


@pytest.mark.unit
class TestBuildComplex:
    """Vertices, edges and 2-cells of Cox_J."""

    @pytest.mark.parametrize("left,count", [((), 13), ((S,), 8), ((S, T), 4)])
    def test_vertex_counts_for_s3(self, a2, left, count):
        """Cox_∅ has 6+3+3+1 vertices, Cox_s has 3+2+2+1, Cox_st one per I."""
        assert len(build_complex(a2, left).vertices) == count

    def test_st_vertices_are_the_whole_group(self, a2):
        for p in build_complex(a2, (S, T)).vertices:
            assert len(p.elements()) == 6

    def test_edges_increase_length(self, a2):
        g = build_complex(a2)
        assert g.edges
        for edge in g.edges:
            assert g.grading(edge.target) > g.grading(edge.source)

    def test_down_step_keeps_maximum(self, a2):
        """{e,s} → {s} is an edge, {e,s} → {e} is not."""
        g = build_complex(a2)
        merged = coset_of(a2, (), a2.identity(), {S})
        assert g.has_edge(merged, coset_of(a2, (), a2.generator(S), ()))
        assert not g.has_edge(merged, coset_of(a2, (), a2.identity(), ()))

    def test_source_and_sink(self, a2):
        g = build_complex(a2)
        assert sources(g) == [g.identity]
        assert sinks(g) == [coset_of(a2, (), a2.longest_element(a2.all_generators), ())]

    def test_two_cells(self, a2):
        kinds = {cell.kind.value for cell in build_complex(a2).two_cells}
        assert {"UpUp", "DownDown", "Switchback"} <= kinds

    def test_oriented_paths_are_the_rexes(self, a2):
        g = build_complex(a2)
        top = coset_of(a2, (), a2.longest_element(a2.all_generators), ())
        paths = oriented_paths(g, top)
        assert len(paths) == 6
        assert set(paths) == set(rex_set(top))

    def test_non_finitary_base(self):
        system = CoxeterSystem([[1, "inf"], ["inf", 1]])
        with pytest.raises(DomainError):
            build_complex(system, (S, T))

    def test_vertex_bound(self, a2):
        bounds = SearchBounds(rex=RexSearchBounds(max_vertices=5))
        with pytest.raises(ResourceBoundError):
            build_complex(a2, (), bounds)


@pytest.mark.unit
class TestExport:
    """JSON and DOT output."""

    def test_json(self, a2):
        data = json.loads(export(build_complex(a2), "json"))
        assert data["system"] == "A2"
        assert data["left"] == []
        assert len(data["vertices"]) == 13
        assert data["vertices"][0]["id"] == "∅:e"
        assert data["vertices"][0]["length"] == 0
        assert {c["kind"] for c in data["two_cells"]} >= {"Switchback"}

    def test_dot(self, a2):
        dot = export(build_complex(a2, (S,)), "dot")
        assert dot.startswith("digraph")
        assert "rankdir=BT" in dot

    def test_output_is_stable(self, a2):
        assert export(build_complex(a2), "json") == export(build_complex(a2), "json")
        assert export(build_complex(a2), "dot") == export(build_complex(a2), "dot")

    def test_unknown_format(self, a2):
        with pytest.raises(UsageError):
            export(build_complex(a2), "svg")


@pytest.mark.unit
class TestComplexChecks:
    """Embedding into Cox_∅ and the half-space criterion."""

    def test_embed_a2(self, a2):
        report = embed_check(a2, (S,))
        assert report.ok, report.failures
        assert report.vertices == 8

    def test_embed_a3(self, a3):
        report = embed_check(a3, (S, T))
        assert report.ok, report.failures
        assert report.to_dict()["ok"]

    @pytest.mark.parametrize("name", ["A2", "B2", "A1×A1"])
    def test_halfspace(self, name):
        report = halfspace_check(named_system(name))
        assert report.ok, report.failures
        assert report.pairs > 0

    @pytest.mark.slow
    def test_halfspace_a3(self, a3):
        assert halfspace_check(a3).ok
