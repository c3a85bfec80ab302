import json

import pytest
from click.testing import CliRunner

import qgraph.cli as cli_module
from qgraph.catalog.campaigns import SearchReport
from qgraph.cli import EXIT_INCOMPLETE, EXIT_INPUT, EXIT_OK, EXIT_VERIFICATION, cli

FIVE_QUBIT_TEXT = "XZZXI\nIXZZX\nXIXZZ\nZXIXZ\n"

STEANE_TEXT = "IIIXXXX\nIXXIIXX\nXIXIXIX\nIIIZZZZ\nIZZIIZZ\nZIZIZIZ\n"


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, ["--threads", "1", *args])


@pytest.fixture
def five_file(tmp_path):
    path = tmp_path / "five.txt"
    path.write_text(FIVE_QUBIT_TEXT)
    return str(path)


@pytest.fixture
def eq5_file(tmp_path, eq5_clique):
    path = tmp_path / "eq5.json"
    path.write_text(json.dumps(eq5_clique.to_json("l5_662")))
    return str(path)


def test_search_clique(runner):
    result = invoke(runner, "search-clique", "-g", "loop:5", "-d", "2")
    assert result.exit_code == EXIT_OK
    data = json.loads(result.stdout)
    assert [code["K"] for code in data["codes"]] == [6]
    assert data["codes"][0]["clique"][0] == []
    assert data["log"][0]["stage"] == "input"


def test_search_clique_graph6_and_table(runner):
    result = invoke(runner, "search-clique", "-g", "g6:Dhc", "-d", "2", "--mode", "all_max", "--table")
    assert result.exit_code == EXIT_OK
    assert "K=6" in result.stdout


@pytest.mark.parametrize("args", [
    ["search-clique", "-g", "loop:5", "-d", "2", "--mode", "biggest"],
    ["search-clique", "-g", "loop:5", "-d", "9"],
    ["search-clique", "-g", "wheel:5", "-d", "2"],
    ["search-group", "-g", "loop:5", "-d", "3", "-k", "7"],
])
def test_bad_input_exits_two(runner, args):
    assert invoke(runner, *args).exit_code == EXIT_INPUT


def test_search_group(runner):
    result = invoke(runner, "search-group", "-g", "loop:5", "-d", "3", "-k", "1")
    assert result.exit_code == EXIT_OK
    cliques = [code["clique"] for code in json.loads(result.stdout)["codes"]]
    assert [[], [1, 2, 3, 4, 5]] in cliques


def test_incomplete_search_exits_three(runner, monkeypatch, l5):
    def stopped(g, d, **kwargs):
        return SearchReport(g, d, "max", [], complete=False)

    monkeypatch.setattr(cli_module, "run_search", stopped)
    result = invoke(runner, "search-clique", "-g", "loop:5", "-d", "2")
    assert result.exit_code == EXIT_INCOMPLETE
    assert json.loads(result.stdout)["complete"] is False


def test_verify(runner, eq5_file):
    result = invoke(runner, "verify", eq5_file)
    assert result.exit_code == EXIT_OK
    data = json.loads(result.stdout)
    assert data["accepted"] and data["pure"]
    assert (data["K"], data["distance"]) == (6, 2)

    rejected = invoke(runner, "verify", eq5_file, "-d", "3")
    assert rejected.exit_code == EXIT_VERIFICATION
    assert json.loads(rejected.stdout)["kl"]["accepted"] is False
    assert invoke(runner, "verify", eq5_file, "-d", "0").exit_code == EXIT_INPUT
    assert json.loads(invoke(runner, "verify", eq5_file, "-d", "1").stdout)["d"] == 1


def test_verify_catalog_and_missing_file(runner, tmp_path):
    assert invoke(runner, "verify", "catalog:pentagon_513").exit_code == EXIT_OK
    assert invoke(runner, "verify", str(tmp_path / "none.json")).exit_code == EXIT_INPUT
    assert invoke(runner, "verify", "catalog:unknown").exit_code == EXIT_INPUT


def test_weights(runner, tmp_path):
    result = invoke(runner, "weights", "catalog:pentagon_513")
    data = json.loads(result.stdout)
    assert data["weights"] == [1, 0, 0, 0, 15, 0]
    assert data["sum"] == 16
    steane = tmp_path / "steane.txt"
    steane.write_text(STEANE_TEXT)
    result = invoke(runner, "weights", "--stabilizer", str(steane))
    data = json.loads(result.stdout)
    assert data["stabilizer_weights"] == [1, 0, 0, 0, 21, 0, 42, 0]
    assert data["weights"] == data["stabilizer_weights"]


def test_weights_rationals(runner, eq5_file):
    data = json.loads(invoke(runner, "weights", eq5_file).stdout)
    assert data["sum"] == "16/3"


def test_freq(runner):
    result = invoke(runner, "freq", "catalog:pentagon_513", "-d", "4")
    assert result.exit_code == EXIT_OK
    series = json.loads(result.stdout)["frequency"]["4"]
    assert series[0] == [15]
    assert series[1] == [12] * 5
    assert invoke(runner, "freq", "catalog:pentagon_513", "-d", "8").exit_code == EXIT_INPUT


def test_lc(runner):
    result = invoke(runner, "lc", "catalog:l5_662", "--vertex", "1")
    assert result.exit_code == EXIT_OK
    data = json.loads(result.stdout)
    assert data["K"] == 6
    assert len(data["graph"]["edges"]) == 6
    assert [1, 2, 3, 4, 5] in data["clique"]
    assert invoke(runner, "lc", "catalog:l5_662", "--vertex", "6").exit_code == EXIT_INPUT


def test_standard_form(runner, five_file):
    result = invoke(runner, "standard-form", five_file)
    assert result.exit_code == EXIT_OK
    data = json.loads(result.stdout)
    assert (data["r"], data["k"]) == (4, 1)
    assert len(data["generators"]) == 4


def test_to_graph(runner, five_file):
    result = invoke(runner, "to-graph", five_file)
    assert result.exit_code == EXIT_OK
    code = json.loads(result.stdout)["code"]
    assert (code["n"], code["K"], code["d"], code["kind"]) == (5, 2, 3, "group")
    assert invoke(runner, "to-graph", five_file, "--f-matrix", "[[1]]").exit_code == EXIT_OK
    assert invoke(runner, "to-graph", five_file, "--f-matrix", "[[0,1],[1").exit_code == EXIT_INPUT
    assert invoke(runner, "to-graph", five_file, "--f-matrix", "[[0,1],[1,0]]").exit_code == EXIT_INPUT


def test_to_graph_rejects_anticommuting(runner, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("XI\nZI\n")
    assert invoke(runner, "to-graph", str(path)).exit_code == EXIT_INPUT


def test_catalog(runner):
    listing = json.loads(invoke(runner, "catalog").stdout)
    assert {"name": "l5_662", "description": "((5,6,2)) on the 5-cycle"} in listing
    entry = json.loads(invoke(runner, "catalog", "l5_662").stdout)
    assert entry["name"] == "l5_662" and entry["K"] == 6
    assert invoke(runner, "catalog", "star_family(1)", "--table").exit_code == EXIT_OK
    assert invoke(runner, "catalog", "g10_2433").exit_code == EXIT_INPUT


def test_classify(runner):
    result = invoke(runner, "classify", "-n", "5", "-k", "1", "-d", "3")
    assert result.exit_code == EXIT_OK
    data = json.loads(result.stdout)
    assert len(data["classes"]) == 1
    assert data["classes"][0]["weights_text"] == "(15_4)"


def test_bad_config_file(runner, tmp_path):
    config = tmp_path / "config.json"
    config.write_text("{not json")
    result = runner.invoke(cli, ["--config", str(config), "catalog"])
    assert result.exit_code == EXIT_INPUT


def test_info(runner):
    result = runner.invoke(cli, ["info"])
    assert result.exit_code == EXIT_OK
