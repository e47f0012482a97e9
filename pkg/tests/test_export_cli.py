"""Serialization contract and command line behavior."""

import json

import pytest

from quadlattice import basic_layer, hasse, layer_n, make_context, split_data
from quadlattice.cli import main
from quadlattice.export import from_json, lattice_document, to_dot, to_json


def build_doc(d, f, layers=1, depth=3):
    ctx = make_context(d, f)
    sd = split_data(ctx)
    basic = basic_layer(ctx, sd, depth)
    nodes = []
    for n in range(1, layers + 1):
        nodes.extend(layer_n(ctx, basic, n))
    graph = hasse(ctx, nodes)
    return lattice_document(ctx, sd, graph)


class TestJsonContract:
    def test_top_level_keys(self):
        doc = build_doc(-1, 5)
        assert list(doc) == ["d", "f", "splitting", "tau", "m", "nodes", "edges"]
        assert doc["splitting"] == "split"
        assert doc["tau"] == 2
        assert doc["m"] == 1

    def test_m_is_null_outside_split(self):
        assert build_doc(-1, 3)["m"] is None
        assert build_doc(-1, 2)["m"] is None

    def test_node_keys(self):
        doc = build_doc(-1, 3)
        for node in doc["nodes"]:
            assert list(node) == [
                "id", "hnf", "label", "layer", "normExp",
                "dModule", "invertible", "principal",
            ]

    def test_generator_rendering(self):
        doc = build_doc(-1, 3)
        principals = {n["label"]: n["principal"] for n in doc["nodes"]}
        assert principals["fO"] == "3+0*w"
        assert principals["J_0"] == "0+3*w"
        assert principals["F"] is None

    def test_round_trip(self):
        doc = build_doc(-1, 5, layers=2)
        text = to_json(doc)
        parsed = from_json(text)
        assert parsed == doc
        assert to_json(parsed) == text

    def test_ramified_p3_label(self):
        doc = build_doc(-1, 2)
        labels = {n["label"] for n in doc["nodes"]}
        assert "P^3" in labels

    def test_from_json_rejects_missing_keys(self):
        with pytest.raises(ValueError):
            from_json(json.dumps({"d": -1}))


class TestDot:
    def test_deterministic(self):
        assert to_dot(build_doc(-1, 3, layers=2)) == to_dot(build_doc(-1, 3, layers=2))

    def test_rank_groups(self):
        dot = to_dot(build_doc(-1, 3, layers=2))
        assert dot.count("rank=same") == 4  # (layer, norm exponent) classes
        assert "n0 ->" in dot

    def test_inert_figure_shape(self):
        doc = build_doc(-1, 3, layers=2)
        dot = to_dot(doc)
        # 1 + 4 + 1 + 4 nodes over four ranks
        sizes = sorted(line.count(";") - 1 for line in dot.splitlines() if "rank=same" in line)
        assert sizes == [1, 1, 4, 4]


class TestCli:
    def test_classify(self, capsys):
        assert main(["classify", "--d", "-1", "--f", "5", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["splitting"] == "split"
        assert doc["m"] == 1
        assert doc["beta"] == "2+1*w"
        assert doc["tau"] == 2

    def test_classify_inert(self, capsys):
        assert main(["classify", "--d", "-1", "--f", "3", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["splitting"] == "inert"
        assert doc["tau"] == 2

    def test_classify_invalid_d(self, capsys):
        assert main(["classify", "--d", "12", "--f", "3"]) == 2

    def test_classify_composite_f_needs_flag(self, capsys):
        assert main(["classify", "--d", "-1", "--f", "6"]) == 2
        assert main(["classify", "--d", "-1", "--f", "6", "--factor-only"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert [c["primary"] for c in doc["components"]] == [[2, 0, 1], [3, 0, 1]]

    def test_lattice_json(self, capsys, tmp_path):
        out = tmp_path / "lat.json"
        code = main([
            "lattice", "--d", "-1", "--f", "2", "--layers", "1",
            "--format", "json", "--output", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert any(n["label"] == "P^3" for n in doc["nodes"])

    def test_lattice_dot(self, capsys):
        assert main(["lattice", "--d", "-1", "--f", "3", "--layers", "2", "--format", "dot"]) == 0
        dot = capsys.readouterr().out
        assert dot.startswith("digraph lattice")

    def test_lattice_layers_zero_is_usage_error(self):
        assert main(["lattice", "--d", "-1", "--f", "3", "--layers", "0"]) == 2

    def test_lattice_include_top(self, capsys):
        code = main([
            "lattice", "--d", "-1", "--f", "3", "--layers", "1",
            "--format", "json", "--include-top",
        ])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        top = doc["nodes"][0]
        assert top["label"] == "O" and top["layer"] == 0
        assert [0, 1] in doc["edges"]

    def test_verify_passes(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code = main([
            "verify", "--d", "-5", "--f", "3", "--k", "4", "--oracle",
            "--output", str(out),
        ])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["passed"] is True

    def test_verify_ramified(self, tmp_path):
        out = tmp_path / "report.json"
        assert main([
            "verify", "--d", "-1", "--f", "2", "--k", "5", "--oracle",
            "--output", str(out),
        ]) == 0

    def test_sweep(self, capsys, tmp_path):
        out = tmp_path / "sweep.json"
        code = main([
            "sweep", "--d=-1,-3", "--f", "2,3", "--k", "3", "--oracle",
            "--output", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["allPassed"] is True
        assert len(doc["cells"]) == 4

    def test_sweep_empty_grid(self, capsys, tmp_path):
        out = tmp_path / "sweep.json"
        assert main(["sweep", "--d", "", "--f", "2", "--output", str(out)]) == 0
        assert json.loads(out.read_text())["cells"] == []

    def test_sweep_parallel_jobs(self, tmp_path):
        out = tmp_path / "sweep.json"
        code = main([
            "sweep", "--d=-1,-5", "--f", "3", "--k", "3", "--jobs", "2",
            "--output", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert len(doc["cells"]) == 2 and doc["allPassed"]

    def test_sweep_thirty_two_cell_matrix(self, tmp_path):
        out = tmp_path / "sweep.json"
        code = main([
            "sweep", "--d=-1,-2,-3,-5,-7,2,3,5", "--f", "2,3,5,7",
            "--k", "4", "--oracle", "--output", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert len(doc["cells"]) == 32
        assert doc["allPassed"] is True

    def test_unknown_command_usage_error(self):
        assert main(["frobnicate"]) == 2

    def test_sweep_reports_failing_cell(self, tmp_path, monkeypatch):
        # a starved budget makes the cell error out, which must surface as a
        # failed cell and exit code 1
        monkeypatch.setenv("QUADLATTICE_BUDGET", "2")
        out = tmp_path / "sweep.json"
        code = main([
            "sweep", "--d=-1", "--f", "3", "--k", "3", "--oracle",
            "--output", str(out),
        ])
        assert code == 1
        doc = json.loads(out.read_text())
        assert doc["allPassed"] is False
        assert doc["cells"][0]["failedChecks"]

    def test_verify_starved_budget_is_input_error(self, tmp_path):
        out = tmp_path / "report.json"
        code = main([
            "verify", "--d", "-1", "--f", "3", "--k", "3", "--oracle",
            "--budget", "2", "--output", str(out),
        ])
        assert code == 2
