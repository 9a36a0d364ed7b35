"""Command line: exit codes, reports and file transforms."""

import json

import pytest
from typer.testing import CliRunner

from grc import __version__
from grc.cli import app

runner = CliRunner()


def flat(text: str) -> str:
    """Collapse rich's line wrapping."""
    return " ".join(text.split())


def run(*args):
    return runner.invoke(app, ["-q", *[str(a) for a in args]])


@pytest.fixture
def split_file(write_circuit):
    half = {"u": "1/2", "v": "1/2"}
    return write_circuit({
        "spaces": {
            "a": {"elements": ["a0", "a1"], "partition": [["a0", "a1"]]},
            "uv": {"elements": ["u", "v"]},
        },
        "gates": {"split": {"dom": "a", "cod": "uv", "rows": {"a0": half, "a1": half}}},
        "context": {"space": "a", "dist": {"a0": "1/2", "a1": "1/2"}},
        "pipeline": ["split"],
    }, "split.json")


class TestAnalyze:
    def test_landauer_exits_one(self, landauer_file):
        result = run("analyze", landauer_file)
        assert result.exit_code == 1
        assert "Ejecting steps" in result.stdout

    def test_landauer_json(self, landauer_file):
        result = run("analyze", landauer_file, "--json")
        assert result.exit_code == 1
        report = json.loads(result.stdout)
        (step,) = report["steps"]
        assert step["delta_h_nc"] == pytest.approx(1.0, abs=1e-9)
        assert step["flags"]["nee"] is False
        assert step["flags"]["condrev"] is False
        assert step["flags"]["fundamental_agree"] is True
        assert list(report) == ["source", "tolerance", "base", "steps", "summary"]

    def test_zero_block_is_clean(self, landauer_zero_file):
        result = run("analyze", landauer_zero_file, "--json")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["summary"]["ejecting_steps"] == 0

    def test_cnot_table(self, cnot_file):
        result = run("analyze", cnot_file)
        assert result.exit_code == 0
        assert "cnot" in result.stdout

    def test_options_reach_report(self, cnot_file):
        result = run("analyze", cnot_file, "--json", "--tol", "1e-6", "--base", "4")
        report = json.loads(result.stdout)
        assert report["tolerance"] == 1e-6
        assert report["base"] == 4.0

    @pytest.mark.parametrize("option", [
        ("--base", "1"),
        ("--base", "0.5"),
        ("--tol=-1",),
        ("--tol", "0"),
    ])
    def test_bad_option_values(self, cnot_file, option):
        result = run("analyze", cnot_file, *option)
        assert result.exit_code == 2
        assert "Error:" in result.output

    def test_missing_file(self, tmp_path):
        result = run("analyze", tmp_path / "missing.json")
        assert result.exit_code == 2
        assert "cannot read" in flat(result.output)

    def test_invalid_file(self, write_circuit):
        result = run("analyze", write_circuit("{ not json"))
        assert result.exit_code == 2
        assert "Error:" in result.output

    def test_strict_rejects_nondeterministic_aggregate(self, split_file):
        result = run("analyze", split_file)
        assert result.exit_code == 2
        assert "--lenient" in flat(result.output)

    def test_lenient(self, split_file):
        result = run("analyze", split_file, "--json", "--lenient")
        assert result.exit_code == 0
        flags = json.loads(result.stdout)["steps"][0]["flags"]
        assert flags["condrev"] is None
        assert flags["fundamental_agree"] is None

    def test_lenient_from_config(self, split_file, grc_home):
        grc_home.mkdir(parents=True)
        (grc_home / "config.yml").write_text("analysis:\n  lenient: true\n")
        assert run("analyze", split_file).exit_code == 0


class TestLaws:
    def test_small_run(self):
        result = run("laws", "--only", "cdu.closed", "--cases", "5", "--json")
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["cases"] == 5
        assert [r["id"] for r in report["laws"]][0] == "cdu.closed.deterministic"

    def test_table(self):
        result = run("laws", "--only", "core", "--cases", "3", "--max-dim", "3")
        assert result.exit_code == 0
        assert "laws passed" in result.stdout

    def test_list(self):
        result = run("laws", "--list", "--json", "--only", "rev")
        assert result.exit_code == 0
        ids = [w["id"] for w in json.loads(result.stdout)]
        assert "rev.fundamental" in ids
        assert all(i.startswith("rev.") for i in ids)

    def test_unknown_prefix(self):
        result = run("laws", "--only", "nope")
        assert result.exit_code == 2
        assert "no law matches" in flat(result.output)

    def test_invalid_override(self):
        assert run("laws", "--cases", "0").exit_code == 2
        assert run("laws", "--max-dim", "1").exit_code == 2


class TestTransforms:
    def test_aggregate_to_stdout(self, landauer_file):
        result = run("aggregate", landauer_file)
        assert result.exit_code == 0
        doc = json.loads(result.stdout)
        assert doc["context"]["dist"] == {"0": "1/2", "1": "1/2"}

    def test_lift_round_trip(self, landauer_file, tmp_path):
        computational = tmp_path / "comp.json"
        physical = tmp_path / "phys.json"
        assert run("aggregate", landauer_file, "-o", computational).exit_code == 0
        assert run("lift", computational, "-m", "3", "-o", physical).exit_code == 0
        lifted = json.loads(physical.read_text())
        assert lifted["spaces"]["bit"]["partition"][0] == ["0", "0~1", "0~2"]
        again = run("aggregate", physical)
        assert again.stdout == computational.read_text()

    def test_lift_needs_multiplicity(self, landauer_file):
        assert run("lift", landauer_file).exit_code != 0

    def test_lift_rejects_bad_multiplicity(self, landauer_file):
        result = run("lift", landauer_file, "-m", "0")
        assert result.exit_code == 2
        assert "multiplicity" in flat(result.output)


class TestMisc:
    def test_version(self):
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.stdout

    def test_gates_json(self):
        result = run("gates", "--json", "--tag", "reversible")
        names = [g["name"] for g in json.loads(result.stdout)]
        assert names == ["cnot", "fredkin", "id", "not", "toffoli"]

    def test_gates_table(self):
        result = run("gates")
        assert result.exit_code == 0
        assert "erase" in result.stdout

    def test_config_init_and_show(self, grc_home):
        result = run("config", "init")
        assert result.exit_code == 0
        assert (grc_home / "config.yml").exists()

        again = run("config", "init")
        assert "already exists" in flat(again.output)

        shown = run("config", "show", "--json")
        assert json.loads(shown.stdout)["laws"]["seed"] == 42

    def test_config_path(self, grc_home):
        result = run("config", "path")
        assert result.stdout.strip() == str(grc_home / "config.yml")

    def test_broken_config(self, grc_home, cnot_file):
        grc_home.mkdir(parents=True)
        (grc_home / "config.yml").write_text("laws:\n  cases: -3\n")
        result = runner.invoke(app, ["analyze", str(cnot_file)])
        assert result.exit_code == 2
        assert "invalid config" in flat(result.output)
