#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command line and instance documents
"""

import json

import numpy as np
import pytest
from omegaconf import OmegaConf

from cftw.cli import (InstanceSchemaError, instance_digest, load_document,
                      parse_document, parse_instance, parse_tolerances,
                      save_document, serialize_instance)
from cftw.cli.commands import (EXIT_INVALID, EXIT_NOT_OPTIMAL, EXIT_OK,
                               get_tolerances, run_command)
from cftw.core import Tolerances
from cftw.utils import load_config

COLLINEAR = {
    "dim": 2,
    "anchors": [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]],
    "weights": [1.0, 1.0, 1.0],
    "constraint": {"type": "free"},
}


def valid_document() -> dict:
    return {
        "dim": 2,
        "anchors": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
        "weights": [1.0, 2.0, 1.0],
        "constraint": {"type": "box", "lower": [0.2, 0.2], "upper": [1.0, 1.0]},
    }


def write(tmp_path, document: dict, name: str = "instance.json") -> str:
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


class TestSolveCommand:
    def test_equilateral(self, capsys):
        assert run_command(["solve", "equilateral", "--tol", "1e-10"]) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        np.testing.assert_allclose(result["x"], [0.5, 0.28867513459481287], atol=1e-6)
        assert result["status"] == "converged"
        assert result["feasible"]
        assert result["certificate"]["verdict"] == "optimal"
        assert len(result["instance_digest"]) == 32

    def test_heavy_anchor(self, capsys):
        assert run_command(["solve", "heavy_anchor"]) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result["status"] == "anchor_optimal"
        assert result["anchor_index"] == 0
        assert result["x"] == [0.0, 0.0]

    def test_output_is_reproducible(self, tmp_path, capsys):
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        assert run_command(["solve", "square_halfspace", "--out", str(first)]) == EXIT_OK
        assert run_command(["solve", "square_halfspace", "--out", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_trace(self, tmp_path):
        trace = tmp_path / "trace.csv"
        assert run_command(["solve", "equilateral", "--trace", str(trace)]) == EXIT_OK
        lines = trace.read_text().splitlines()
        assert lines[0] == "iter,f,step_norm,residual"
        assert len(lines) > 1

    def test_compressed_instance(self, tmp_path, capsys):
        path = str(tmp_path / "instance.json.gz")
        save_document(path, valid_document())
        assert load_document(path) == valid_document()
        assert run_command(["solve", path]) == EXIT_OK

    def test_x0(self, capsys):
        assert run_command(["solve", "square_halfspace", "--x0", "0.3,0.7"]) == EXIT_OK
        assert run_command(["solve", "square_halfspace", "--x0", "0,0"]) == EXIT_INVALID
        assert run_command(["solve", "square_halfspace", "--x0", "0,1,2"]) == EXIT_INVALID

    def test_budget_exhausted(self, capsys):
        code = run_command(["solve", "square_halfspace", "--max-iter", "2", "--tol", "1e-14"])
        assert code == EXIT_NOT_OPTIMAL
        assert json.loads(capsys.readouterr().out)["status"] == "max_iterations"

    def test_collinear(self, tmp_path, capsys):
        path = write(tmp_path, COLLINEAR)
        assert run_command(["solve", path]) == EXIT_INVALID
        assert run_command(["solve", path, "--allow-collinear"]) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result["anchor_index"] == 1

    def test_config_file(self, tmp_path, capsys):
        config = tmp_path / "cftw.yaml"
        config.write_text("tolerances:\n  max_iter: 2\n  epsilon: 1.0e-14\n")
        assert run_command(["solve", "square_halfspace", "--config", str(config)]) == EXIT_NOT_OPTIMAL

    def test_log_dir(self, tmp_path, capsys):
        assert run_command(["solve", "equilateral", "--log-dir", str(tmp_path), "--tol", "1e-9"]) == EXIT_OK
        assert (tmp_path / "logs" / "cftw.log").exists()
        saved = OmegaConf.load(tmp_path / "tolerances.yaml")
        assert saved.epsilon == 1e-9
        assert saved.max_iter == Tolerances().max_iter


class TestCertifyCommand:
    def test_anchor(self, capsys):
        assert run_command(["certify", "heavy_anchor", "--point", "0,0"]) == EXIT_OK
        certificate = json.loads(capsys.readouterr().out)
        assert certificate["kind"] == "anchor_case"
        assert certificate["anchor_index"] == 0
        assert certificate["margin"] == pytest.approx(3 - np.sqrt(2))

    def test_not_optimal(self, capsys):
        assert run_command(["certify", "square_halfspace", "--point", "0,0.9"]) == EXIT_NOT_OPTIMAL

    def test_variational_inequality(self, capsys):
        code = run_command(
            ["certify", "square_halfspace", "--point", "0,0.5", "--kind", "variational_inequality"]
        )
        assert code == EXIT_OK

    def test_infeasible(self, capsys):
        assert run_command(["certify", "square_halfspace", "--point", "0,0"]) == EXIT_INVALID


class TestOtherCommands:
    def test_stability(self, tmp_path, capsys):
        out = tmp_path / "report.csv"
        code = run_command(
            ["stability", "equilateral", "--deltas", "0.01,0.001", "--dirs", "2", "--out", str(out), "--gradient"]
        )
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "delta,dir,dM,dm,flag"
        assert len(lines) == 5

    def test_stability_anchor_solution(self, capsys):
        assert run_command(["stability", "heavy_anchor", "--dirs", "1", "--deltas", "0.01", "--gradient"]) == EXIT_OK

    def test_compare(self, capsys):
        assert run_command(["compare", "square_halfspace", "--iters", "30000"]) == EXIT_OK
        out = capsys.readouterr().out
        for method in ("weiszfeld", "subgradient", "grid"):
            assert method in out

    def test_compare_collinear(self, tmp_path, capsys):
        assert run_command(["compare", write(tmp_path, COLLINEAR)]) == EXIT_INVALID


class TestInvalidInput:
    def test_unknown_flag(self, capsys):
        assert run_command(["solve", "equilateral", "--frobnicate"]) == EXIT_INVALID

    def test_no_command(self, capsys):
        assert run_command([]) == EXIT_INVALID

    def test_missing_file(self, tmp_path, capsys):
        assert run_command(["solve", str(tmp_path / "missing.json")]) == EXIT_INVALID

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert run_command(["solve", str(path)]) == EXIT_INVALID

    def test_negative_weight(self, tmp_path, capsys):
        document = valid_document()
        document["weights"] = [1.0, -1.0, 1.0]
        assert run_command(["solve", write(tmp_path, document)]) == EXIT_INVALID
        assert "weights[1]" in capsys.readouterr().err


class TestDocuments:
    @pytest.mark.parametrize(
        "field, value, path",
        [
            ("weights", [1.0, 0.0, 1.0], "weights[1]"),
            ("weights", [1.0, 1.0], "weights"),
            ("anchors", [[0.0, 0.0], [1.0], [0.0, 1.0]], "anchors[1]"),
            ("anchors", [[0.0, 0.0], [1.0, "a"], [0.0, 1.0]], "anchors[1][1]"),
            ("constraint", {"type": "ellipse"}, "constraint.type"),
            ("constraint", {"type": "ball", "center": [0.0, 0.0]}, "constraint.radius"),
            ("tolerances", {"epsilon": -1.0}, "tolerances.epsilon"),
            ("tolerances", {"speed": 1.0}, "tolerances.speed"),
            ("tolerances", {"max_iter": 2.7}, "tolerances.max_iter"),
            ("tolerances", {"max_iter": 0}, "tolerances.max_iter"),
            ("tolerances", {"max_iter": True}, "tolerances.max_iter"),
            ("dim", 0, "dim"),
            ("extra", 1, "extra"),
        ],
    )
    def test_error_path(self, field, value, path):
        document = valid_document()
        document[field] = value
        with pytest.raises(InstanceSchemaError) as error:
            parse_document(document)
        assert error.value.path == path

    def test_missing_field(self):
        document = valid_document()
        del document["constraint"]
        with pytest.raises(InstanceSchemaError) as error:
            parse_document(document)
        assert error.value.path == "constraint"

    def test_round_trip(self):
        instance = parse_document(valid_document())
        text = serialize_instance(instance)
        assert serialize_instance(parse_instance(text.encode("utf-8"))) == text
        assert instance_digest(parse_instance(text)) == instance_digest(instance)

    def test_invalid_utf8(self):
        with pytest.raises(InstanceSchemaError) as error:
            parse_instance(b'{"dim": 2, "anchors": "\xff\xfe"}')
        assert error.value.path == "$"

    def test_integer_max_iter(self):
        document = valid_document()
        document["tolerances"] = {"max_iter": 25, "epsilon": 1e-9}
        assert parse_tolerances(document) == {"max_iter": 25, "epsilon": 1e-9}

    def test_merged_anchors(self):
        document = valid_document()
        document["anchors"][2] = [0.0, 0.0]
        instance = parse_document(document)
        assert instance.m == 2
        assert instance.weights.tolist() == [2.0, 2.0]


class TestTolerancePrecedence:
    def test_layers(self, tmp_path):
        path = tmp_path / "user.yaml"
        path.write_text("tolerances:\n  epsilon: 1.0e-06\n  max_iter: 500\n")
        config = load_config(str(path))

        tol = get_tolerances(config, {})
        assert tol.epsilon == 1e-6
        assert tol.max_iter == 500
        assert tol.eta_anchor == 1e-12

        assert get_tolerances(config, {"epsilon": 1e-10}).epsilon == 1e-10
        assert get_tolerances(config, {"epsilon": 1e-10}, epsilon=1e-7).epsilon == 1e-7
