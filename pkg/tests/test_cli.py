import json
from fractions import Fraction as F

import pytest

from cakecut.cli import main
from cakecut import parse_division, parse_instance


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def intro_dir(tmp_path):
    out = tmp_path / "intro"
    assert run("generate", "intro", "--out", out) == 0
    return out


def test_generate_intro_files(intro_dir):
    inst = parse_instance((intro_dir / "instance.json").read_text())
    assert inst.n == 2 and inst.label == "intro-two-player"
    partial = parse_division((intro_dir / "canonical_partial.json").read_text())
    assert partial.n == 2
    bundle = json.loads((intro_dir / "bundle.json").read_text())
    names = {(p["division"], p["welfare"]): p["exact"] for p in bundle["predictions"]}
    assert names[("complete", "utilitarian")] == "1/1"
    assert names[("partial", "utilitarian")] == "299/200"


def test_generate_param_error(tmp_path):
    assert run("generate", "utilitarian", "--k", 1, "--t", 1, "--out", tmp_path) == 2


def test_generate_pareto(tmp_path):
    assert run("generate", "pareto", "--n", 4, "--out", tmp_path) == 0
    inst = parse_instance((tmp_path / "instance.json").read_text())
    assert inst.n == 4


def test_generate_tight_predictions(tmp_path):
    assert run("generate", "egalitarian-tight", "--n", 3, "--eps", "1/100",
               "--out", tmp_path) == 0
    bundle = json.loads((tmp_path / "bundle.json").read_text())
    preds = {(p["division"], p["welfare"]): p["exact"] for p in bundle["predictions"]}
    assert preds[("partial", "egalitarian")] == "49/100"


def test_verify_exit_codes(intro_dir, tmp_path):
    inst = intro_dir / "instance.json"
    assert run("verify", inst, intro_dir / "canonical_complete.json") == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"pieces": [
        {"left": "0", "right": "1/4"}, {"left": "1/4", "right": "1"}]}))
    assert run("verify", inst, bad) == 1
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{broken")
    assert run("verify", inst, garbage) == 2
    assert run("verify", inst, tmp_path / "missing.json") == 2


def test_verify_report_files(intro_dir, tmp_path):
    out = tmp_path / "rep"
    assert run("verify", intro_dir / "instance.json",
               intro_dir / "canonical_partial.json", "--out", out) == 0
    report = json.loads((out / "report.json").read_text())
    results = {r["name"]: r["exact"] for r in report["results"]}
    assert results["utilitarian"] == "299/200"
    tsv = (out / "report.tsv").read_text().splitlines()
    assert tsv[0] == "name\texact\tapprox"
    assert (out / "division.svg").exists()


def test_paradox_report(intro_dir, tmp_path):
    out = tmp_path / "paradox"
    assert run("paradox", intro_dir / "instance.json", "--welfare", "utilitarian",
               "--out", out) == 0
    report = json.loads((out / "report.json").read_text())
    results = {r["name"]: r["exact"] for r in report["results"]}
    assert results["complete_optimum"] == "1/1"
    assert results["partial_optimum"] == "299/200"
    assert results["alpha"] == "299/200"
    for name in ("complete_witness.json", "partial_witness.json",
                 "complete_witness.svg", "partial_witness.svg", "report.tsv"):
        assert (out / name).exists()
    # round-trip of the emitted rationals
    for r in report["results"]:
        assert parse_division is not None
        num, den = r["exact"].split("/")
        assert int(den) > 0


def test_paradox_budget_exit(tmp_path):
    assert run("generate", "utilitarian", "--k", 8, "--t", 2, "--out", tmp_path) == 0
    code = run("paradox", tmp_path / "instance.json", "--welfare", "utilitarian",
               "--budget", 60)
    assert code == 3


def test_paradox_grid(intro_dir, tmp_path):
    out = tmp_path / "grid"
    assert run("paradox", intro_dir / "instance.json", "--welfare", "utilitarian",
               "--grid", 50, "--out", out) == 0
    report = json.loads((out / "report.json").read_text())
    results = {r["name"]: r["exact"] for r in report["results"]}
    assert F(results["partial_optimum"].split("/")[0]) is not None


def test_solve_command(intro_dir, tmp_path):
    out = tmp_path / "solve"
    assert run("solve", intro_dir / "instance.json", "--mode", "partial",
               "--objective", "utilitarian", "--out", out) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["results"][0]["exact"] == "299/200"
    witness = parse_division((out / "witness.json").read_text())
    assert witness.n == 2


def test_pareto_check_exit_codes(tmp_path):
    assert run("generate", "pareto", "--n", 4, "--out", tmp_path) == 0
    inst = tmp_path / "instance.json"
    assert run("pareto-check", inst, tmp_path / "canonical_complete.json") == 0
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"pieces": [{"left": "0", "right": "0"}] * 4}))
    assert run("pareto-check", inst, empty) == 1


def test_oracle_command(intro_dir, tmp_path):
    out = tmp_path / "oracle"
    assert run("oracle", intro_dir / "instance.json", "--mode", "complete",
               "--objective", "utilitarian", "--resolution", 64, "--out", out) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["results"][0]["name"] == "oracle_value"


def test_generate_random(tmp_path):
    assert run("generate", "random", "--seed", 5, "--out", tmp_path) == 0
    inst = parse_instance((tmp_path / "instance.json").read_text())
    assert inst.n in (2, 3)
    assert run("generate", "random", "--out", tmp_path) == 2  # seed required


def test_render_missing_file(tmp_path):
    assert run("render", tmp_path / "nope.json", tmp_path / "x.svg") == 2


def test_paradox_grid_no_complete_grid_division(tmp_path):
    # three identical uniform players: the only envy-free complete division
    # cuts at exact thirds, which no 1/64 grid point hits
    inst = tmp_path / "uniform3.json"
    inst.write_text(json.dumps({
        "label": "u3", "n": 3, "params": {},
        "players": [{"segments": [{"left": "0", "right": "1", "mass": "1"}]}] * 3,
    }))
    assert run("paradox", inst, "--welfare", "utilitarian", "--grid", 64) == 1
    assert run("paradox", inst, "--welfare", "utilitarian", "--grid", 66) == 0


def test_solve_single_player_objective(tmp_path):
    assert run("generate", "pareto", "--n", 3, "--out", tmp_path) == 0
    out = tmp_path / "cap"
    assert run("solve", tmp_path / "instance.json", "--mode", "complete",
               "--objective", "player", "--player", 3, "--out", out) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["results"][0]["exact"] == "1/3"
    assert run("solve", tmp_path / "instance.json", "--mode", "complete",
               "--objective", "player", "--player", 9) == 2
