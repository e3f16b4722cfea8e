"""Exit codes, output formats, determinism of the command line front end."""
from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from prefaxiom import parse_profile, serialize_profile, tally
from prefaxiom.cli import main

PARADOX = {
    "candidates": ["y1", "y2", "y3"],
    "voters": [
        {"id": "v1", "ranking": ["y1", "y2", "y3"]},
        {"id": "v2", "ranking": ["y2", "y3", "y1"]},
        {"id": "v3", "ranking": ["y3", "y1", "y2"]},
    ],
}
FOUR_VOTER = {
    "candidates": ["y1", "y2", "y3"],
    "voters": [
        {"id": "v1", "ranking": ["y1", "y2", "y3"]},
        {"id": "v2", "ranking": ["y1", "y2", "y3"]},
        {"id": "v3", "ranking": ["y2", "y3", "y1"]},
        {"id": "v4", "ranking": ["y3", "y1", "y2"]},
    ],
}


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, doc, name="profile.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_tally_markdown(runner, tmp_path):
    res = runner.invoke(main, ["tally", _write(tmp_path, PARADOX)])
    assert res.exit_code == 0
    assert "| y1 | - | 2/3 | 1/3 |" in res.output


def test_tally_json_schema_field(runner, tmp_path):
    res = runner.invoke(main, ["tally", _write(tmp_path, PARADOX), "--format", "json"])
    doc = json.loads(res.output)
    assert doc["schema"] == 1
    assert doc["props"][0][1] == "2/3"


def test_tally_csv(runner, tmp_path):
    res = runner.invoke(main, ["tally", _write(tmp_path, PARADOX), "--format", "csv"])
    lines = res.output.strip().splitlines()
    assert lines[0] == "winner,loser,wins,losses,prop"
    assert "y1,y2,2,1,2/3" in lines


def test_rank_borda_json(runner, tmp_path):
    res = runner.invoke(
        main, ["rank", _write(tmp_path, FOUR_VOTER), "--rule", "borda", "--format", "json"]
    )
    doc = json.loads(res.output)
    assert doc["ranking"] == [["y1"], ["y2"], ["y3"]]
    assert doc["scores"] == {"y1": "5/4", "y2": "1", "y3": "3/4"}


def test_rank_mle_reports_solver_and_softmax(runner, tmp_path):
    res = runner.invoke(
        main,
        ["rank", _write(tmp_path, FOUR_VOTER), "--rule", "mle-standard", "--format", "json"],
    )
    doc = json.loads(res.output)
    assert doc["solver"]["status"] == "converged"
    assert abs(doc["softmax"]["y1"] - 0.451831670186) < 1e-9
    assert abs(sum(doc["solver"]["rewards"])) < 1e-9


def test_rank_mle_divergence_reported(runner, tmp_path):
    doc = {
        "candidates": ["a", "b", "c"],
        "voters": [{"id": "v1", "ranking": ["a", "b", "c"]}],
    }
    res = runner.invoke(
        main, ["rank", _write(tmp_path, doc), "--rule", "mle-copeland", "--format", "json"]
    )
    out = json.loads(res.output)
    assert out["solver"]["status"] == "diverged"
    assert out["solver"]["drift_up"] == ["a"]
    assert out["solver"]["drift_down"] == ["c"]
    assert out["ranking"] == [["a"], ["b"], ["c"]]


def test_axioms_exit_code_on_violation(runner, tmp_path):
    res = runner.invoke(
        main, ["axioms", _write(tmp_path, FOUR_VOTER), "--rule", "mle-standard"]
    )
    assert res.exit_code == 4
    assert "| gpm | true | false |" in res.output


def test_axioms_all_pass_exit_zero(runner, tmp_path):
    res = runner.invoke(main, ["axioms", _write(tmp_path, PARADOX), "--rule", "borda"])
    assert res.exit_code == 0


def test_axioms_rejects_impossible_check(runner, tmp_path):
    res = runner.invoke(
        main,
        ["axioms", _write(tmp_path, PARADOX), "--rule", "borda", "--checks", "gpm"],
    )
    assert res.exit_code == 2


def test_gpmd_exact_output(runner, tmp_path):
    res = runner.invoke(
        main, ["gpmd", _write(tmp_path, FOUR_VOTER), "--epsilon", "limit", "--format", "json"]
    )
    doc = json.loads(res.output)
    assert doc["distribution"] == {"y1": "1/2", "y2": "1/4", "y3": "1/4"}


def test_gpmd_finite_epsilon(runner, tmp_path):
    res = runner.invoke(
        main, ["gpmd", _write(tmp_path, FOUR_VOTER), "--epsilon", "0.25", "--format", "json"]
    )
    doc = json.loads(res.output)
    # voter v1 contributes (9/13, 3/13, 1/13) etc.; exact fractions survive
    assert all("/" in v or v == "0" for v in doc["distribution"].values())


def test_schema_error_exit_two(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    res = runner.invoke(main, ["tally", str(bad)])
    assert res.exit_code == 2
    res2 = runner.invoke(main, ["tally", str(tmp_path / "missing.json")])
    assert res2.exit_code == 2


def test_disconnected_exit_three(runner, tmp_path):
    doc = {
        "candidates": ["a", "b", "c", "d"],
        "voters": [
            {"id": "v1", "comparisons": [["a", "b"]]},
            {"id": "v2", "comparisons": [["c", "d"]]},
        ],
    }
    res = runner.invoke(
        main, ["rank", _write(tmp_path, doc), "--rule", "mle-standard"]
    )
    assert res.exit_code == 3


def test_search_space_too_large_exit_five(runner):
    res = runner.invoke(
        main,
        ["search", "--rule", "borda", "--axiom", "condorcet", "--space", "exhaustive-complete:n=4,m=6"],
    )
    assert res.exit_code == 5


def test_search_requires_seed_for_random(runner):
    res = runner.invoke(
        main,
        ["search", "--rule", "borda", "--axiom", "condorcet", "--space", "random-complete:n=3,m=3,trials=5"],
    )
    assert res.exit_code == 2


def test_search_writes_counterexample(runner, tmp_path):
    out_path = tmp_path / "found.json"
    res = runner.invoke(
        main,
        [
            "search",
            "--rule",
            "borda",
            "--axiom",
            "condorcet",
            "--space",
            "exhaustive-complete:n=3,m=3",
            "--output",
            str(out_path),
            "--format",
            "json",
        ],
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["found"] and doc["index"] == 3
    profile = parse_profile(out_path.read_bytes())
    assert profile.m == 3
    assert doc["profile"]["voters"][2]["ranking"] == ["y2", "y3", "y1"]


def test_search_exhausted(runner):
    res = runner.invoke(
        main,
        ["search", "--rule", "copeland", "--axiom", "condorcet", "--space", "exhaustive-complete:n=3,m=3", "--format", "json"],
    )
    doc = json.loads(res.output)
    assert res.exit_code == 0 and not doc["found"] and doc["examined"] == 216


def test_search_unknown_space_exit_two(runner):
    res = runner.invoke(
        main, ["search", "--rule", "borda", "--axiom", "condorcet", "--space", "weird:n=3"]
    )
    assert res.exit_code == 2


def test_experiment_cycles_deterministic_across_jobs(runner):
    args = ["experiment-cycles", "--n-list", "3", "--m", "3", "--trials", "400", "--seed", "7", "--format", "json"]
    a = runner.invoke(main, args + ["--jobs", "1"])
    b = runner.invoke(main, args + ["--jobs", "4"])
    assert a.output == b.output
    doc = json.loads(a.output)
    assert doc["rows"][0]["trials"] == 400


def test_experiment_cycles_seed_required(runner):
    res = runner.invoke(main, ["experiment-cycles", "--n-list", "3"])
    assert res.exit_code == 2


def test_demo_outputs_are_deterministic(runner):
    for name in ("condorcet-paradox", "single-voter-cycle", "borda-vs-copeland"):
        a = runner.invoke(main, ["demo", name, "--format", "json"])
        b = runner.invoke(main, ["demo", name, "--format", "json"])
        assert a.exit_code == 0, name
        assert a.output == b.output


def test_demo_paradox_content(runner):
    res = runner.invoke(main, ["demo", "condorcet-paradox"])
    assert "3 log 2" in res.output or "2.07944154168" in res.output


def test_byte_identical_reports_across_runs(runner, tmp_path):
    path = _write(tmp_path, FOUR_VOTER)
    for fmt in ("markdown", "json", "csv"):
        outs = {
            runner.invoke(main, ["rank", path, "--rule", "mle-standard", "--format", fmt]).output
            for _ in range(3)
        }
        assert len(outs) == 1


def test_round_trip_serialization_matches_cli_input(tmp_path):
    profile = parse_profile(json.dumps(FOUR_VOTER).encode())
    assert tally(profile).wins[0][1] == 3
    assert serialize_profile(profile).endswith(b"\n")


def test_version_flag(runner):
    res = runner.invoke(main, ["--version"])
    assert res.exit_code == 0 and "prefaxiom" in res.output
