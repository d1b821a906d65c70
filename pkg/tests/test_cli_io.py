import json
import shutil
import subprocess
from fractions import Fraction

import pytest

from zeckgame import io
from zeckgame.analysis import length_distribution
from zeckgame.cli import main
from zeckgame.engine import parse_game, validate_game
from zeckgame.strategies import longest_game

ENVELOPE = {"version", "n", "command", "params"}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert out.endswith("\n")
    doc = json.loads(out)
    assert ENVELOPE <= set(doc)
    return code, doc


def test_zeck(capsys):
    code, doc = run_json(capsys, "zeck", 12)
    assert code == 0 and doc["n"] == 12 and doc["command"] == "zeck"
    assert doc["indices"] == [5, 3, 1] and doc["z_count"] == 3


@pytest.mark.parametrize("strategy,length", [("shortest", 9), ("longest", 17), ("length=12", 12), ("type-a", None)])
def test_play(capsys, strategy, length):
    code, doc = run_json(capsys, "play", 12, "--strategy", strategy)
    assert code == 0
    game = parse_game(doc["game"])
    assert validate_game(12, game.moves, trace=False)
    assert doc["length"] == len(game)
    if length is not None:
        assert len(game) == length
    assert doc["combines"] == 12 - 3


def test_play_bad_length_exits_2(capsys):
    code, _ = run(capsys, "play", 12, "--strategy", "length=100")
    assert code == 2


def test_distribution_json(capsys):
    code, doc = run_json(capsys, "distribution", 5, "--measure", "random")
    assert code == 0
    assert doc["measure"] == "random" and doc["weight_kind"] == "rational"
    assert doc["weights"] == {"4": "3/4", "5": "1/4"}
    assert {"mean", "variance", "skewness", "excess_kurtosis", "ks_to_normal"} <= set(doc["moments"])
    code, doc = run_json(capsys, "distribution", 5, "--measure", "uniform")
    assert doc["weights"] == {"4": 2, "5": 1} and doc["total_games"] == 3


def test_distribution_csv_stdout(capsys):
    code, out = run(capsys, "distribution", 5, "--measure", "random", "--csv", "-")
    assert code == 0
    assert out == "length,weight\n4,3/4\n5,1/4\n"


def test_distribution_csv_file(capsys, tmp_path):
    path = tmp_path / "d.csv"
    code, doc = run_json(capsys, "distribution", 9, "--measure", "uniform", "--csv", path)
    dist = io.read_distribution_csv(path.read_text(), 9, "uniform", "count", doc["total_games"])
    assert dist.weights == length_distribution(9, "uniform").weights


@pytest.mark.parametrize("measure", ["uniform", "random"])
def test_csv_round_trip(measure):
    for N in (1, 5, 12, 20):
        d = length_distribution(N, measure)
        back = io.read_distribution_csv(io.distribution_csv(d), N, measure, d.weight_kind, d.total_games)
        assert back.weights == d.weights and back.probabilities() == d.probabilities()


def test_csv_round_trip_double():
    d = length_distribution(15, "random", exact=False)
    back = io.read_distribution_csv(io.distribution_csv(d), 15, "random", "double")
    assert back.weights == d.weights


def test_json_fractions_round_trip():
    d = length_distribution(10, "random")
    doc = json.loads(io.dumps(io.distribution_json(d)))
    assert {int(k): Fraction(v) for k, v in doc["weights"].items()} == d.weights


def test_game_serialization_round_trip():
    for N in (1, 2, 12, 50, 200):
        g = longest_game(N)
        assert parse_game(str(g)) == g


def test_simulate(capsys, tmp_path):
    path = tmp_path / "len.csv"
    code, doc = run_json(capsys, "simulate", 30, "--seed", 7, "--count", 50, "--lengths-csv", path)
    assert code == 0 and doc["count"] == 50 and doc["params"]["seed"] == 7
    rows = path.read_text().splitlines()
    assert rows[0] == "index,length" and len(rows) == 51
    _, again = run_json(capsys, "simulate", 30, "--seed", 7, "--count", 50, "--threads", 3)
    assert again["summary"] == doc["summary"]


def test_simulate_rejects_bad_seed(capsys):
    with pytest.raises(SystemExit):
        main(["simulate", "5", "--seed", str(1 << 64)])


def test_odds(capsys):
    code, doc = run_json(capsys, "odds", 5, "--measure", "uniform")
    assert code == 0
    assert doc["residues"] == {"0": "2/3", "1": "1/3"}
    assert doc["player1_wins"] == "1/3"
    _, doc = run_json(capsys, "odds", 8, "--measure", "random", "--mod", 3)
    assert sum(Fraction(v) for v in doc["residues"].values()) == 1


@pytest.mark.parametrize("scheme", ["basic", "prefix", "suffix"])
def test_partition(capsys, scheme):
    code, doc = run_json(capsys, "partition", 7, "--scheme", scheme, "--measure", "random")
    assert code == 0
    recs = doc["classes"]
    assert recs == sorted(recs, key=lambda r: r["rep"])
    assert sum(Fraction(r["class_prob"]) for r in recs) == 1
    for r in recs:
        assert {"rep", "scheme", "m", "class_size", "p_i", "ks", "class_prob"} <= set(r)
        assert len(r["p_i"]) == r["m"] or scheme != "basic"


def test_partition_example(capsys):
    _, doc = run_json(capsys, "partition", 5, "--scheme", "basic", "--measure", "uniform")
    by = {r["rep"]: r for r in doc["classes"]}
    assert by["5:C1,C1,C2,C3"]["class_size"] == 2
    assert abs(by["5:C1,C1,C2,C3"]["ks"] - 0.3413447) < 1e-6
    assert by["5:C1,C2,C1,C3"]["ks"] is None


def test_verify_exit_code(capsys):
    code, doc = run_json(capsys, "verify", "--suite", "shortest", "--max-n", 50)
    assert code == 0 and doc["passed"] is True
    assert all(c["passed"] for c in doc["checks"])


def test_verify_failure_exit_code(capsys, monkeypatch):
    from zeckgame import verify

    monkeypatch.setitem(verify.SUITES, "shortest", lambda max_n, **_: [verify.Check("shortest", "x", False)])
    code, doc = run_json(capsys, "verify", "--suite", "shortest")
    assert code == 1 and doc["passed"] is False


def test_state_budget_error_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("ZECKGAME_STATE_BUDGET", "10")
    code, _ = run(capsys, "distribution", 30)
    assert code == 2


def test_output_is_stable(capsys):
    _, a = run(capsys, "distribution", 11, "--measure", "random")
    _, b = run(capsys, "distribution", 11, "--measure", "random")
    assert a == b


@pytest.mark.skipif(shutil.which("zeckgame") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["zeckgame", "zeck", "5"], capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["indices"] == [4]
