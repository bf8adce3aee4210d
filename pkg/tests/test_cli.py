import json
import os

import pytest

from twistedzhu.cli import main
from twistedzhu.voacore import builtin, export_modefile


def run(args, tmp_path):
    return main(args + ["--out", str(tmp_path)])


def test_lemmas_command(tmp_path):
    assert run(["lemmas", "--T", "1,2", "--box", "3", "--lmax", "4", "--samples", "5"], tmp_path) == 0
    doc = json.loads((tmp_path / "lemmas.json").read_text())
    assert doc["schema"] == "twistedzhu-report/1"
    assert doc["passed"] is True
    assert doc["seed"] == 0
    assert len(doc["checks"]) == 6


def test_reports_byte_stable(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out in (a, b):
        assert main(["lemmas", "--T", "1,2", "--box", "2", "--lmax", "3", "--samples", "4",
                     "--out", str(out)]) == 0
    assert (a / "lemmas.json").read_bytes() == (b / "lemmas.json").read_bytes()


def test_zhu_command(tmp_path):
    assert run(["zhu", "--builtin", "heisenberg", "--g", "theta", "--n", "0", "--window", "6"],
               tmp_path) == 0
    doc = json.loads((tmp_path / "zhu.json").read_text())
    assert doc["algebra"]["dim"] == 1
    assert doc["algebra"]["omega"] == {"1": "1/16"}


def test_bimodule_command(tmp_path):
    assert run(["bimodule", "--n", "0", "--m", "0", "--window", "6", "--mwindow", "4"], tmp_path) == 0
    doc = json.loads((tmp_path / "bimodule.json").read_text())
    assert doc["bimodule"]["dim"] == 1
    assert doc["bimodule"]["sandwich"]["span_rank"] <= doc["bimodule"]["sandwich"]["kernel_rank"]
    assert doc["sandwich_ok"] is True


def test_config_error_exit_code(tmp_path):
    assert run(["zhu", "--builtin", "nonsense"], tmp_path) == 2
    assert run(["axioms", "--builtin", "heisenberg", "--module", "/does/not/exist.json"], tmp_path) == 2


def test_axioms_failure_exit_code(tmp_path):
    voa = builtin("heisenberg", 5)
    doc = export_modefile(voa, 5)
    for entry in doc["modes"]:
        if entry["a"] == "h[-1]" and entry["b"] == "h[-1]" and entry["n"] == "1/1":
            entry["out"] = [["1", "2/1"]]
            break
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code = main(["axioms", "--modefile", str(bad), "--module", "self", "--window", "2",
                 "--mwindow", "2", "--vwt", "1", "--grid", "1", "--out", str(tmp_path)])
    assert code == 1


def test_insufficient_table_exit_code(tmp_path):
    # a window too small to express the products it asks for
    code = main(["induce", "--maxN", "3", "--window", "4", "--rel-window", "3",
                 "--report-window", "4", "--alg-window", "4", "--alg-report", "4",
                 "--out", str(tmp_path)])
    assert code == 3


def test_out_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("TWISTEDZHU_OUT", str(tmp_path))
    assert main(["lemmas", "--T", "1", "--box", "2", "--lmax", "2", "--samples", "2"]) == 0
    assert (tmp_path / "lemmas.json").exists()
