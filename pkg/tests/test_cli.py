import json
import math

import pytest

from copchase import parse_instance, solve_iterative
from copchase.cli import main
from conftest import CHAIN_EDGE_LIST, CHAIN_JSON


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(CHAIN_JSON)
    return str(path)


def test_solve_both_json_matches_solver(chain_file, capsys):
    assert main(["solve", chain_file, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["algorithm"] == "both"
    assert doc["agreement"] is True
    g, gamble = parse_instance(CHAIN_JSON)
    sol = solve_iterative(g, gamble)
    parsed_times = [
        math.inf if rec["time"] == "inf" else rec["time"] for rec in doc["vertices"]
    ]
    assert parsed_times == list(sol.times)  # bit-identical round trip
    assert [rec["next"] for rec in doc["vertices"]] == ["v1", "v1", "v1", "v2"]
    assert doc["vertices"][0]["chase_path"] == ["v0", "v1"]
    assert doc["vertices"][3]["chase_path"] == ["v3", "v2", "v1"]


def test_solve_table_format(chain_file, capsys):
    assert main(["solve", chain_file, "--algorithm", "iterative"]) == 0
    out = capsys.readouterr().out
    assert "algorithm: iterative" in out
    assert "v0" in out and "chase_path" in out


def test_solve_edge_list_instance(tmp_path, capsys):
    path = tmp_path / "chain.txt"
    path.write_text(CHAIN_EDGE_LIST)
    assert main(["solve", str(path), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [rec["label"] for rec in doc["vertices"]] == ["v0", "v1", "v2", "v3"]


def test_solve_malformed_json_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"directed": false,')
    assert main(["solve", str(path)]) == 2
    err = capsys.readouterr().err
    assert "line" in err and "column" in err


def test_solve_missing_file_exits_2(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.json")]) == 2


def test_solve_all_zero_gamble_permissive(tmp_path, capsys):
    path = tmp_path / "zeros.json"
    path.write_text(
        '{"directed": false, "vertices": ["a","b"], "edges": [["a","b"]], '
        '"gamble": {"a": 0.0, "b": 0.0}}'
    )
    assert main(["solve", str(path)]) == 2  # strict rejects
    assert main(["solve", str(path), "--permissive", "--format", "json"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out.splitlines()[-1])
    assert [rec["time"] for rec in doc["vertices"]] == ["inf", "inf"]


def test_check_chain_passes(chain_file, capsys):
    assert main(["check", chain_file]) == 0
    out = capsys.readouterr().out
    assert "strategies enumerated: 36" in out
    assert "PASS" in out


def test_check_single_vertex(tmp_path, capsys):
    path = tmp_path / "one.json"
    path.write_text('{"directed": false, "vertices": ["a"], "edges": [], "gamble": {"a": 1.0}}')
    assert main(["check", str(path)]) == 0
    assert "strategies enumerated: 1" in capsys.readouterr().out


def test_check_cap_exceeded_exits_4(tmp_path, capsys):
    n = 12
    labels = [f"u{i}" for i in range(n)]
    doc = {
        "directed": False,
        "vertices": labels,
        "edges": [[labels[u], labels[v]] for u in range(n) for v in range(u + 1, n)],
        "gamble": {x: 1 / n for x in labels},
    }
    path = tmp_path / "k12.json"
    path.write_text(json.dumps(doc))
    assert main(["check", str(path)]) == 4
    assert str(12**12) in capsys.readouterr().err


def test_check_cap_override(tmp_path, capsys):
    path = tmp_path / "p2.json"
    path.write_text('{"directed": false, "vertices": ["a","b"], "edges": [["a","b"]], '
                    '"gamble": {"a": 0.5, "b": 0.5}}')
    assert main(["check", str(path), "--cap", "3"]) == 4
    assert main(["check", str(path), "--cap", "4"]) == 0


def test_simulate_solved_chain(chain_file, capsys):
    assert main(["simulate", chain_file, "--start", "v0", "--trials", "20000",
                 "--seed", "42"]) == 0
    out = capsys.readouterr().out
    fields = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert fields["theoretical"] == "2.0"
    assert abs(float(fields["z"])) <= 4
    assert fields["truncated"] == "0"


def test_simulate_stay_strategy_references_stay_value(chain_file, capsys):
    assert main(["simulate", chain_file, "--start", "v0", "--trials", "20000",
                 "--seed", "42", "--strategy", "stay"]) == 0
    fields = dict(
        line.split(": ", 1) for line in capsys.readouterr().out.strip().splitlines()
    )
    assert float(fields["theoretical"]) == pytest.approx(10 / 3, abs=1e-12)
    assert abs(float(fields["z"])) <= 4


def test_simulate_point_mass_mean_exactly_one(tmp_path, capsys):
    path = tmp_path / "point.json"
    path.write_text('{"directed": false, "vertices": ["a","b"], "edges": [["a","b"]], '
                    '"gamble": {"a": 1.0, "b": 0.0}}')
    assert main(["simulate", str(path), "--start", "a", "--trials", "500",
                 "--seed", "1"]) == 0
    fields = dict(
        line.split(": ", 1) for line in capsys.readouterr().out.strip().splitlines()
    )
    assert fields["mean"] == "1.0"
    assert fields["z"] == "0.0"


def test_simulate_unknown_label_exits_2(chain_file, capsys):
    assert main(["simulate", chain_file, "--start", "zz"]) == 2


def test_simulate_permissive_gamble_exits_5(tmp_path, capsys):
    path = tmp_path / "sub.json"
    path.write_text('{"directed": false, "vertices": ["a","b"], "edges": [["a","b"]], '
                    '"gamble": {"a": 0.25, "b": 0.25}}')
    assert main(["simulate", str(path), "--permissive", "--start", "a",
                 "--trials", "10"]) == 5


def test_bench_writes_csv_and_reports(tmp_path, capsys):
    out_path = tmp_path / "bench.csv"
    assert main(["bench", "--sizes", "6,9", "--densities", "2n,0.5",
                 "--gamble-modes", "uniform,dirichlet", "--seed", "4",
                 "--out", str(out_path)]) == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "n,m,gamble_mode,algorithm,wall_time_ns,iterations,max_residual,agreement"
    assert len(lines) == 1 + 2 * 2 * 2 * 2
    assert all(line.endswith("true") for line in lines[1:])
    assert "wrote" in capsys.readouterr().out


def test_bench_csv_deterministic_apart_from_wall_time(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert main(["bench", "--sizes", "8", "--densities", "0.3,2n",
                     "--gamble-modes", "sparse_support", "--seed", "11",
                     "--out", str(path)]) == 0
    capsys.readouterr()

    def strip_wall(path):
        rows = [line.split(",") for line in path.read_text().splitlines()]
        return [row[:4] + row[5:] for row in rows]

    assert strip_wall(paths[0]) == strip_wall(paths[1])


def test_bench_single_algorithm_blank_agreement(tmp_path, capsys):
    out_path = tmp_path / "solo.csv"
    assert main(["bench", "--sizes", "5", "--densities", "0.5", "--algorithm",
                 "priority", "--out", str(out_path)]) == 0
    lines = out_path.read_text().splitlines()
    assert all(line.split(",")[3] == "priority" for line in lines[1:])
    assert all(line.endswith(",") for line in lines[1:])
