import json

import pytest

from app import cli

HILBERT = ["hilbert", "--type", "A", "--rank", "1", "--weight", "1", "--degree", "4"]


def _json(output: str) -> dict:
    return json.loads(output[output.index("{") :])


class TestCommands:
    def test_hilbert_csv(self, runner):
        """Test the Hilbert table of the quantum plane as CSV."""
        result = runner.invoke(cli, [*HILBERT, "--no-cache", "--format", "csv"])
        assert result.exit_code == 0
        lines = [line for line in result.stdout.splitlines() if "," in line]
        assert lines[0] == "degree,symmetric,exterior,classical_symmetric,classical_exterior"
        assert [int(line.split(",")[1]) for line in lines[1:]] == [1, 2, 3, 4, 5]
        assert [int(line.split(",")[2]) for line in lines[1:]] == [1, 2, 1, 0, 0]

    def test_hilbert_json(self, runner):
        """Test the status and verifications of the JSON report."""
        result = runner.invoke(cli, [*HILBERT, "--no-cache"])
        assert result.exit_code == 0
        report = _json(result.stdout)
        assert report["status"] == "ok"
        assert report["command"] == "hilbert"
        assert report["results"]["symmetric"] == [1, 2, 3, 4, 5]
        assert all(v["passed"] for v in report["verifications"])

    def test_roots(self, runner):
        """Test the root data of G2."""
        result = runner.invoke(cli, ["roots", "--type", "G", "--rank", "2", "--no-cache"])
        assert result.exit_code == 0
        results = _json(result.stdout)["results"]
        assert results["highest_root"] == [3, 2]
        assert len(results["longest_word"]) == 6

    def test_no_cominuscule_nodes(self, runner):
        """Test that F4 reports no cominuscule node."""
        result = runner.invoke(cli, ["cominuscule", "--type", "F", "--rank", "4", "--no-cache"])
        assert result.exit_code == 0
        assert _json(result.stdout)["results"]["nodes"] == []

    def test_cominuscule_a3(self, runner):
        """Test the nodes and radical dimensions of A3."""
        result = runner.invoke(cli, ["cominuscule", "--type", "A", "--rank", "3", "--no-cache"])
        assert result.exit_code == 0
        results = _json(result.stdout)["results"]
        assert results["nodes"] == [1, 2, 3]
        assert [p["N"] for p in results["parabolics"]] == [3, 4, 3]

    def test_pretty_format(self, runner):
        """Test the indented text rendering."""
        result = runner.invoke(cli, [*HILBERT, "--no-cache", "--format", "pretty"])
        assert result.exit_code == 0
        assert "status: ok" in result.stdout

    def test_clifford_star_sweep(self, runner):
        """Test the per-preset star sweep in the Clifford report of the projective plane."""
        arguments = ["clifford", "--type", "A", "--rank", "2", "--s", "1", "--no-cache"]
        result = runner.invoke(cli, arguments)
        assert result.exit_code == 0
        sweep = _json(result.stdout)["results"]["star_sweep"]
        assert [(p["preset"], p["alpha"], p["degree"]) for p in sweep] == [
            ("standard", "1", 4),
            ("rescaled", "q^-1", 4),
        ]


class TestFailures:
    @pytest.mark.parametrize(
        "arguments",
        [
            ["roots", "--type", "A", "--rank", "0"],
            ["roots", "--type", "H", "--rank", "3"],
            ["roots", "--type", "E", "--rank", "5"],
            ["hilbert", "--type", "A", "--rank", "2", "--weight", "1"],
            ["dirac", "--type", "A", "--rank", "2", "--s", "3"],
        ],
    )
    def test_invalid_config(self, runner, arguments):
        """Test that invalid options give a config failure record and exit code 1."""
        result = runner.invoke(cli, [*arguments, "--no-cache"])
        assert result.exit_code == 1
        record = _json(result.stdout)
        assert record["status"] == "failed"
        assert record["invariant"] == "config"

    def test_not_cominuscule(self, runner):
        """Test the failure record of a non-cominuscule node."""
        arguments = ["clifford", "--type", "B", "--rank", "3", "--s", "2", "--no-cache"]
        result = runner.invoke(cli, arguments)
        assert result.exit_code == 1
        record = _json(result.stdout)
        assert record["invariant"] == "cominuscule-node"
        assert record["inputs"]["node"] == "2"

    def test_missing_node(self, runner):
        """Test that the Clifford command needs a node."""
        result = runner.invoke(cli, ["clifford", "--type", "A", "--rank", "2", "--no-cache"])
        assert result.exit_code == 1
        assert _json(result.stdout)["invariant"] == "cominuscule-node"

    def test_bad_option_type(self, runner):
        """Test that an option click cannot convert gives a config failure record."""
        result = runner.invoke(cli, ["roots", "--type", "A", "--rank", "x", "--no-cache"])
        assert result.exit_code == 1
        record = _json(result.stdout)
        assert record["invariant"] == "config"
        assert "rank" in record["inputs"]

    def test_unknown_suite(self, runner):
        """Test that only the reference suites are accepted."""
        result = runner.invoke(cli, ["report", "everything", "--no-cache"])
        assert result.exit_code == 1
        assert _json(result.stdout)["invariant"] == "config"


class TestCaching:
    def test_second_run_is_cached(self, runner, cache_dir):
        """Test that a rerun reads the stored report and prints the same output."""
        arguments = [*HILBERT, "--cache-dir", str(cache_dir)]
        first = runner.invoke(cli, arguments)
        assert first.exit_code == 0
        stored = sorted(path.name.split("-")[0] for path in cache_dir.glob("*.json"))
        assert stored == ["module", "report"]
        second = runner.invoke(cli, arguments)
        assert second.exit_code == 0
        assert _json(second.stdout) == _json(first.stdout)


@pytest.mark.slow
class TestExamples:
    def test_examples_suite(self, runner):
        """Test that every reference example passes."""
        result = runner.invoke(cli, ["report", "examples", "--no-cache"])
        assert result.exit_code == 0
        report = _json(result.stdout)
        assert report["status"] == "ok"
        assert report["results"]["non_flat"]["hilbert"][3] == 16

    def test_suite_alias(self, runner):
        """Test that the suite alias runs the same suite for (A, 2, s = 1)."""
        arguments = ["report", "paper-examples", "--type", "A", "--rank", "2", "--s", "1"]
        result = runner.invoke(cli, [*arguments, "--no-cache"])
        assert result.exit_code == 0
        report = _json(result.stdout)
        assert report["status"] == "ok"
        assert "cp2" in report["results"]
