"""Command-line behaviour, mostly exit codes and report files."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from enriqueslab import cli

SCHEMA = json.loads((Path(__file__).resolve().parent.parent / "schemas" / "report.schema.json").read_text())
FAST = ["--skip", "smooth_models"]


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_query_inline_and_file(tmp_path, capsys):
    code, out, _ = run(["query", "-e", "space P(1)*P(2); integrate (h+2a)^3;"], capsys)
    assert code == 0 and out.splitlines()[-1] == "integrate (h + 2 * a)^3;  =>  12"
    script = tmp_path / "q.enq"
    script.write_text("space P(2);\nintegrate a^2;\n")
    code, out, _ = run(["query", str(script), "--format", "structured"], capsys)
    assert code == 0
    assert json.loads(out)[-1] == {"statement": "integrate a^2;", "result": "1"}


def test_query_errors(capsys):
    code, _, err = run(["query", "-e", "integrate a^;"], capsys)
    assert code == 1 and "1:13" in err
    code, _, err = run(["query"], capsys)
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["verify", "--prime", "2"],
    ["verify", "--prime", "91"],
    ["verify", "--prime", "x"],
    ["verify", "--jobs", "0"],
    ["verify", "--budget", "-5"],
    ["verify", "--format", "xml"],
    ["verify", "--skip", "nonsense"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_3(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(cli.main(argv))
    assert exc.value.code == 3


def test_verify_with_congruence_skipped(tmp_path, capsys):
    out_dir = tmp_path / "rep"
    code, out, _ = run(["verify", "--prime", "101", *FAST, "--skip", "congruence",
                        "--output", str(out_dir)], capsys)
    assert code == 2
    assert "verdict: not established" in out
    doc = json.loads((out_dir / "report.json").read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["verdict"] == "not established"
    assert (out_dir / "summary.txt").read_text().strip() == out.strip()
    timing = json.loads((out_dir / "timing.json").read_text())
    assert "twelve_planes@101" in timing
    assert "timing" not in json.dumps(doc)


def test_structured_output_is_deterministic(capsys):
    argv = ["verify", "--prime", "101", "--prime", "211", *FAST, "--format", "structured"]
    c1, o1, _ = run(argv, capsys)
    c2, o2, _ = run(argv, capsys)
    assert c1 == c2 == 2 and o1 == o2
    doc = json.loads(o1)
    assert [i["prime"] for i in doc["instances"]] == [101, 211]


def test_budget_from_environment(monkeypatch, capsys):
    monkeypatch.setenv(cli.BUDGET_ENV, "123456")
    code, out, _ = run(["verify", "--prime", "101", *FAST, "--format", "structured"], capsys)
    assert json.loads(out)["config"]["budget"] == 123456
    code, out, _ = run(["verify", "--prime", "101", *FAST, "--budget", "777", "--format", "structured"], capsys)
    assert json.loads(out)["config"]["budget"] == 777
    monkeypatch.setenv(cli.BUDGET_ENV, "lots")
    code, _, _ = run(["verify", "--prime", "101", *FAST], capsys)
    assert code == 3


def test_instance_dump_and_load(tmp_path, capsys):
    path = tmp_path / "inst.json"
    assert run(["instance", "dump", "--prime", "211", "--seed", "3", "-o", str(path)], capsys)[0] == 0
    doc = json.loads(path.read_text())
    assert doc["prime"] == 211 and doc["seed"] == 3
    code, out, _ = run(["instance", "load", str(path)], capsys)
    assert code == 0 and "reduction identity holds" in out
    code, out, _ = run(["instance", "load", str(path), "--verify", *FAST, "--format", "structured"], capsys)
    assert code == 2 and json.loads(out)["instances"] == [{"prime": 211, "seed": 3, "retries": 0}]
    path.write_text("{not json")
    assert run(["instance", "load", str(path)], capsys)[0] == 3
    assert run(["instance", "load", str(tmp_path / "missing.json")], capsys)[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "enriqueslab", "query", "-e", "space P(2); integrate a^2;"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip().endswith("=>  1")
    proc = subprocess.run([sys.executable, "-m", "enriqueslab", "verify", "--prime", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 3
