import csv
import json

import pytest

from src.cli import main

LAURENT = {"rank": 1, "p": 3, "terms": [{"character": [0], "coefficient": "1"}, {"character": [1], "coefficient": "3"}]}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def write_input(tmp_path, payload, name="input.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for suffix in ("P", "REP", "LEVEL", "LEVEL_CAP", "WINDOW", "SEED", "SAMPLES", "WORKERS", "BIT_CAP"):
        monkeypatch.delenv(f"ULTRASTAB_{suffix}", raising=False)


def test_usage_errors_exit_with_two(capsys):
    assert main(["bogus"]) == 2
    assert main(["tree"]) == 2
    assert main(["tree", "distance", "--no-such-flag"]) == 2
    assert "usage" in capsys.readouterr().err


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "selftest" in capsys.readouterr().out


def test_gauss(capsys, tmp_path):
    path = write_input(tmp_path, {"f": LAURENT, "lambda": ["-2"]})
    code, record = run(capsys, "tropical", "eval", "--input", path)
    assert code == 0
    assert record["status"] == "OK"
    assert record["result"]["valuation"] == "-1/1"
    assert record["result"]["active_pieces"] == [{"offset": "1/1", "slope": [1]}]
    assert record["manifest"]["command"] == "tropical eval"
    assert record["manifest"]["config_hash"] is None


def test_pieces_with_csv_grid(capsys, tmp_path):
    path = write_input(tmp_path, {"f": LAURENT})
    grid = tmp_path / "grid.csv"
    code, record = run(capsys, "tropical", "pieces", "--input", path, "--csv", str(grid), "--grid", "-2", "2", "4")
    assert code == 0
    assert record["result"]["breakpoints"] == ["-1/1"]
    assert record["manifest"]["outputs"] == {"csv": str(grid)}
    with open(grid, newline="") as file:
        rows = list(csv.DictReader(file))
    assert len(rows) == 5
    assert rows[0] == {"lambda": "-2/1", "valuation": "-1/1"}


def test_missing_input_is_a_config_error(capsys):
    code, record = run(capsys, "tropical", "eval")
    assert code == 2
    assert record["status"] == "ERROR"
    assert record["precondition"] == "config"


def test_tree_distance(capsys, tmp_path):
    path = write_input(tmp_path, {"u": {"a": 0, "b": "0", "p": 3}, "v": {"a": 2, "b": "0", "p": 3}})
    dot = tmp_path / "geodesic.dot"
    code, record = run(capsys, "tree", "distance", "--input", path, "--dot", str(dot))
    assert code == 0
    assert record["result"]["distance"] == 2
    assert len(record["result"]["geodesic"]) == 3
    assert dot.read_text().startswith("graph geodesic {")


def test_tree_distance_rejects_mixed_primes(capsys, tmp_path):
    path = write_input(tmp_path, {"u": {"a": 0, "b": "0", "p": 3}, "v": {"a": 1, "b": "0", "p": 5}})
    code, record = run(capsys, "tree", "distance", "--input", path)
    assert code == 1
    assert record["status"] == "ERROR"
    assert record["precondition"] == "same_prime"


def test_tree_path(capsys, tmp_path):
    path = write_input(tmp_path, {"u": {"a": 0, "b": "0", "p": 3}, "v": {"a": 2, "b": "1", "p": 3}})
    code, record = run(capsys, "tree", "path", "--input", path)
    assert code == 0
    assert record["result"]["length"] == 2
    assert record["result"]["path"][0] == {"a": 0, "b": "0/1", "p": 3}
    assert record["manifest"]["command"] == "tree path"


def test_tree_fixed(capsys, tmp_path):
    path = write_input(tmp_path, {"vertices": [{"a": 1, "b": "0", "p": 3}, {"a": 1, "b": "1", "p": 3}]})
    code, record = run(capsys, "tree", "fixed", "--input", path)
    assert code == 0
    assert record["result"]["hull_size"] == 3
    assert not record["result"]["fixed_point"]["midpoint"]

    path = write_input(tmp_path, {"vertex": {"a": 2, "b": "1", "p": 5}, "group": "torus"}, "orbit.json")
    code, record = run(capsys, "tree", "fixed", "--input", path)
    assert code == 0
    assert record["result"]["group"]["kind"] == "torus"


def test_older_action_names_still_work(capsys, tmp_path):
    path = write_input(tmp_path, {"polynomial": LAURENT, "point": ["-2"]})
    code, record = run(capsys, "tropical", "gauss", "--input", path)
    assert code == 0
    assert record["result"]["valuation"] == "-1/1"
    assert record["manifest"]["command"] == "tropical eval"
    code, record = run(capsys, "rep", "weights")
    assert record["manifest"]["command"] == "rep decompose"


@pytest.mark.parametrize(
    "action, payload",
    [
        ("tree distance", {"u": {"a": "x", "b": 0, "p": 3}, "v": {"a": 0, "b": 0, "p": 3}}),
        ("tree distance", {"u": {"a": 0, "b": 0}, "v": {"a": 0, "b": 0, "p": 3}}),
        ("tropical eval", {"f": {"rank": "one", "p": 3, "terms": []}, "lambda": ["0"]}),
        ("tropical pieces", {"f": {"rank": 1, "p": 3, "terms": [{"character": 5}]}}),
    ],
)
def test_malformed_input_is_a_config_error(capsys, tmp_path, action, payload):
    path = write_input(tmp_path, payload)
    code, record = run(capsys, *action.split(), "--input", path)
    assert code == 2
    assert record["status"] == "ERROR"
    assert record["precondition"] == "config"


def test_max_bits_flag(capsys):
    code, default = run(capsys, "stability", "constants")
    code, capped = run(capsys, "stability", "constants", "--max-bits", "8192")
    assert code == 0
    assert capped["manifest"]["parameters"]["max_bits"] == 8192
    assert capped["manifest"]["config_hash"] != default["manifest"]["config_hash"]
    code, record = run(capsys, "stability", "constants", "--max-bits", "8")
    assert code == 2
    assert record["precondition"] == "config"


def test_tree_hull_and_orbit(capsys, tmp_path):
    path = write_input(tmp_path, {"vertices": [{"a": 1, "b": "0", "p": 3}, {"a": 1, "b": "1", "p": 3}]})
    code, record = run(capsys, "tree", "hull", "--input", path)
    assert code == 0
    assert record["result"]["size"] == 3

    path = write_input(tmp_path, {"vertex": {"a": 2, "b": "1", "p": 5}, "group": "torus"}, "orbit.json")
    code, record = run(capsys, "tree", "orbit", "--input", path)
    assert code == 0
    assert record["result"]["fixed_point"]["vertex"] is not None
    assert len(record["result"]["orbit"]) > 1


def test_tree_window_follows_the_prime(capsys):
    code, record = run(capsys, "tree", "window")
    assert code == 0
    assert record["result"]["size"] == 9
    code, record = run(capsys, "tree", "window", "--p", "5")
    assert record["result"]["size"] == 3
    assert record["manifest"]["parameters"]["p"] == 5


def test_tree_membership_of_identity(capsys, tmp_path):
    path = write_input(tmp_path, {"y": [["1", "0"], ["0", "1"]]})
    code, record = run(capsys, "tree", "ymember", "--input", path)
    assert code == 0
    assert record["result"]["member"]


def test_rep_commands(capsys, tmp_path):
    code, record = run(capsys, "rep", "star")
    assert code == 0
    assert record["result"]["star"]["holds"]

    code, record = run(capsys, "rep", "decompose", "--rep", "adjoint")
    assert record["result"]["weights"]["rep"]["dimension"] == 4
    assert record["result"]["complement"]["holds"]

    path = write_input(tmp_path, {"y": [["1", "1"], ["0", "1"]], "v": ["1", "2"], "phi": ["1", "0"]})
    code, record = run(capsys, "rep", "reynolds", "--input", path)
    assert code == 0
    assert record["result"]["identity_holds"]
    assert record["result"]["projection"] == "1/1"


def test_stability_constants(capsys):
    code, record = run(capsys, "stability", "constants")
    assert code == 0
    assert record["result"]["c1_log"] == "0/1"
    assert record["result"]["c2_log"] == "-1/1"
    assert record["result"]["window_size"] == 9
    assert len(record["manifest"]["config_hash"]) == 64


def test_stability_decompose_translation(capsys, tmp_path):
    path = write_input(tmp_path, {"g": [["27", "0"], ["0", "1/27"]]})
    code, record = run(capsys, "stability", "decompose", "--input", path)
    assert code == 0
    assert record["result"]["exponent"] == 3
    assert record["result"]["membership"]["member"]


def test_stability_decompose_rejects_non_special_linear(capsys, tmp_path):
    path = write_input(tmp_path, {"g": [["2", "0"], ["0", "1"]]})
    code, record = run(capsys, "stability", "decompose", "--input", path)
    assert code == 1
    assert record["precondition"] == "special_linear"


def test_verify_is_reproducible(capsys, tmp_path):
    config = write_input(tmp_path, {"prime": 3, "samples": 4, "chain_samples": 2, "translation_units": [1, 2]}, "run.json")
    margins = tmp_path / "margins.csv"
    code, first = run(capsys, "stability", "verify", "--config", config, "--seed", "7", "--csv", str(margins))
    assert code == 0
    code, second = run(capsys, "stability", "verify", "--config", config, "--seed", "7", "--csv", str(margins))
    assert first == second
    assert first["result"]["violations"] == 0
    assert first["manifest"]["seed"] == 7
    with open(margins, newline="") as file:
        assert len(list(csv.DictReader(file))) == 4


def test_json_written_to_out(capsys, tmp_path):
    out = tmp_path / "nested" / "constants.json"
    code = main(["stability", "constants", "--out", str(out)])
    assert code == 0
    assert capsys.readouterr().out == ""
    record = json.loads(out.read_text())
    assert record["manifest"]["outputs"] == {"json": str(out)}


def test_config_errors_exit_with_two(capsys, tmp_path):
    code, record = run(capsys, "stability", "constants", "--config", str(tmp_path / "missing.yaml"))
    assert code == 2
    assert record["precondition"] == "config"
    code, record = run(capsys, "rep", "star", "--p", "4")
    assert code == 2
    code, record = run(capsys, "rep", "star", "--profile", "nope")
    assert code == 2


def test_csv_unavailable_for_action(capsys, tmp_path):
    code, record = run(capsys, "rep", "star", "--csv", str(tmp_path / "x.csv"))
    assert code == 2


def test_selftest(capsys, tmp_path):
    out = tmp_path / "selftest.json"
    code, table = run(capsys, "selftest", "--p", "3", "--samples", "2", "--out", str(out))
    assert code == 0
    assert "main_inequality" in table
    assert "FAIL" not in table
    record = json.loads(out.read_text())
    assert record["status"] == "OK"
    assert record["result"]["passed"]
