"""
Integration tests for the scox command line.

Commands are run in-process through scox.cli.run, capturing stdout/stderr.
"""
import json

import pytest

from scox.bounds import DEFAULT_BOUNDS
from scox.cli import run


def lines(capsys):
    return capsys.readouterr().out.splitlines()


@pytest.mark.integration
class TestSystemCommands:
    """classify and coset."""

    def test_classify_product(self, capsys):
        """A reducible type lists its components."""
        assert run(["classify", "--type", "A2xA1"]) == 0
        assert lines(capsys) == ["A2×A1", "  s1,s2: A2", "  s3: A1"]

    def test_classify_json_matrix_file(self, tmp_path, capsys):
        """An affine triangle read from JSON is of infinite type."""
        path = tmp_path / "affine.json"
        path.write_text(json.dumps([[1, 3, 3], [3, 1, 3], [3, 3, 1]]))
        assert run(["classify", "--matrix", str(path)]) == 0
        assert lines(capsys) == ["infinite-type"]

    def test_classify_toml_matrix_file(self, tmp_path, capsys):
        path = tmp_path / "a2.toml"
        path.write_text('matrix = [[1, 3], [3, 1]]\nlabels = ["x", "y"]\n')
        assert run(["classify", "--matrix", str(path), "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["name"] == "A2"
        assert data["generators"] == ["x", "y"]

    def test_coset_text(self, capsys):
        assert run(["coset", "--type", "A2", "--left", "s", "--right", "s", "--word", "sts"]) == 0
        output = lines(capsys)
        assert "min: s2" in output
        assert "max: s1s2s1" in output

    def test_coset_json(self, capsys):
        assert run(["coset", "--type", "A2", "--right", "s", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["min"] == []
        assert data["max"] == ["s1"]


@pytest.mark.integration
class TestExpressionCommands:
    """rex, reduce, switchback and table."""

    def test_rex_enumerate(self, capsys):
        """{sts} in A2 has six reduced expressions."""
        assert run(["rex", "enumerate", "--type", "A2", "--word", "sts"]) == 0
        output = lines(capsys)
        assert len(output) == 6
        assert output[0].startswith("[∅,")

    def test_rex_graph_dot(self, capsys):
        assert run(["rex", "enumerate", "--type", "A2", "--word", "sts", "--format", "dot"]) == 0
        assert capsys.readouterr().out.lstrip().startswith("graph")

    def test_low_road(self, capsys):
        assert run(["rex", "low", "--type", "A3", "--left", "st", "--right", "st", "--word", "su"]) == 0
        assert lines(capsys) == ["[s1s2,s1,s1s3,s1,s1s2]"]

    def test_reduce(self, capsys):
        assert run(["reduce", "--type", "A2", "--expr", "[∅,s,∅,s,∅]"]) == 0
        output = lines(capsys)
        assert output[0] == "start: [∅,s1,∅,s1,∅]"
        assert output[-1] == "reduced: [∅,s1,∅]"

    def test_reduce_json(self, capsys):
        assert run(["reduce", "--type", "A2", "--expr", "[] +s -s +s -s", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["final"] == "[∅,s1,∅]"
        assert data["steps"]

    def test_switchback(self, capsys):
        assert run(["switchback", "--type", "H3", "--a", "1", "--b", "3"]) == 0
        assert lines(capsys) == ["c = 2,1,3,2"]

    @pytest.mark.slow
    def test_switchback_e8(self, capsys):
        assert run(["switchback", "--type", "E8", "--a", "3", "--b", "8"]) == 0
        assert lines(capsys) == ["c = 2,7,2,3"]

    def test_switchback_without_rotation(self, capsys):
        """s1 = w₀ s3 w₀ in A3."""
        assert run(["switchback", "--type", "A3", "--a", "1", "--b", "3"]) == 1
        assert "NO_ROTATION" in capsys.readouterr().err

    def test_table(self, capsys):
        assert run(["table", "--type", "H3"]) == 0
        output = lines(capsys)
        assert output[0].split() == ["a", "b", "c"]
        assert len(output) == 4

    def test_matsumoto(self, capsys):
        assert run(["matsumoto", "--type", "A2", "--verify"]) == 0
        assert "0 disconnected" in capsys.readouterr().out


@pytest.mark.integration
class TestComplexAndChecks:
    """complex, karoubi, halfspace and embed."""

    def test_complex_defaults_to_dot(self, capsys):
        assert run(["complex", "--type", "A2", "--left", "s"]) == 0
        assert capsys.readouterr().out.startswith("digraph")

    def test_complex_json(self, capsys):
        assert run(["complex", "--type", "A2", "--format", "json"]) == 0
        assert len(json.loads(capsys.readouterr().out)["vertices"]) == 13

    @pytest.mark.parametrize("command", [
        ["karoubi", "--type", "A2"],
        ["halfspace", "--type", "B2"],
        ["embed", "--type", "A2", "--left", "s"],
    ])
    def test_checks_pass(self, capsys, command):
        assert run(command) == 0
        assert lines(capsys)[0].endswith(": ok")


@pytest.mark.integration
class TestWebCommands:
    """webs evaluate, relate, hom-count and classes."""

    def test_evaluate(self, capsys):
        assert run(["webs", "evaluate", "(1,2) ; merge@1(1,2) ; split@1(1,2)"]) == 0
        output = lines(capsys)
        assert "degree: 4" in output
        assert "expression: [s2,s1s2,s2]" in output

    def test_relate(self, capsys):
        assert run(["webs", "relate", "(5) ; split@1(2,3) ; merge@1(2,3)", "--relation", "bigon", "--at", "1"]) == 0
        assert lines(capsys) == ["(5)"]

    def test_relate_no_match(self, capsys):
        assert run(["webs", "relate", "(1,1) ; merge@1(1,1)", "--relation", "bigon", "--at", "1"]) == 1
        assert "NO_MATCH" in capsys.readouterr().err

    def test_hom_count(self, capsys):
        assert run(["webs", "hom-count", "--bottom", "1,1", "--top", "2"]) == 0
        assert lines(capsys) == ["1"]

    def test_classes(self, capsys):
        assert run(["webs", "classes", "--bottom", "1,1", "--top", "1,1"]) == 0
        output = lines(capsys)
        assert "classes: 2" in output
        assert "hom count: 2" in output


@pytest.mark.integration
class TestExitCodes:
    """1 for bad input, 2 for exceeded search bounds."""

    def test_missing_system(self, capsys):
        with pytest.raises(SystemExit) as info:
            run(["classify"])
        assert info.value.code == 1

    def test_matsumoto_needs_verify(self, capsys):
        with pytest.raises(SystemExit) as info:
            run(["matsumoto", "--type", "A2"])
        assert info.value.code == 1

    def test_unknown_type(self, capsys):
        assert run(["classify", "--type", "Q7"]) == 1
        assert capsys.readouterr().err.startswith("scox: VALIDATION_ERROR")

    def test_format_not_available(self, capsys):
        assert run(["classify", "--type", "A2", "--format", "dot"]) == 1
        assert "USAGE_ERROR" in capsys.readouterr().err

    def test_missing_matrix_file(self, tmp_path, capsys):
        assert run(["classify", "--matrix", str(tmp_path / "none.json")]) == 1

    def test_search_bound(self, mocker, capsys):
        mocker.patch.object(DEFAULT_BOUNDS.rex, "max_vertices", 2)
        assert run(["rex", "enumerate", "--type", "A2", "--word", "sts"]) == 2
        assert "RESOURCE_BOUND_EXCEEDED" in capsys.readouterr().err
