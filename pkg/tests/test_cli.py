"""Command line surface: reports, scenario files, exit codes, output files."""
import os

import pytest

from robustgames.cli import main
from robustgames.core import format_game, parse_game
from robustgames.instances import curated_game


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_curated_lemma_game(capsys):
    code, out, _ = run(
        capsys,
        "analyze",
        "--curated",
        "leximin-proof-game",
        "--concepts",
        "loss-averse,multi-leximin",
    )
    assert code == 0
    assert "concept loss-averse\nactions a b\n" in out
    assert "concept multi-leximin\nactions b\n" in out
    assert "agentgame v1" in out


def test_analyze_formats(capsys):
    code, out, _ = run(capsys, "analyze", "--curated", "aim-big", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "concept,actions"
    assert "loss-averse,S" in out
    code, out, _ = run(capsys, "analyze", "--curated", "aim-big", "--format", "table")
    assert code == 0
    assert out.splitlines()[0].startswith("concept")


def test_analyze_game_file_round_trip(tmp_path, capsys):
    game = curated_game("dominant-leximin")
    path = tmp_path / "g.game"
    path.write_text(format_game(game))
    code, out, _ = run(capsys, "analyze", "--game", str(path), "--concepts", "weakly-dominant")
    assert code == 0
    assert "concept weakly-dominant\nactions a\n" in out


def test_analyze_rejects_auction_instances_and_unknown_concepts(capsys):
    code, _, err = run(capsys, "analyze", "--curated", "example-e1")
    assert code == 3 and "vcg run" in err
    code, _, err = run(capsys, "analyze", "--curated", "aim-big", "--concepts", "nope")
    assert code == 3 and "unknown concept" in err
    code, _, err = run(capsys, "analyze")
    assert code == 2


def test_dfpa_report_contract_values(capsys):
    code, out, _ = run(capsys, "auction", "dfpa", "--value", "1", "--epsilon", "3/10")
    assert code == 0
    assert "loss-averse-bid 9/10" in out
    assert "min-max-regret-bids 3/10" in out
    assert "leximin-bids 0" in out
    assert "engine-loss-averse 9/10" in out


def test_dfpa_decimal_column_is_display_only(capsys):
    code, out, _ = run(
        capsys, "auction", "dfpa", "--value", "1", "--epsilon", "3/10", "--decimal", "2"
    )
    assert code == 0
    assert "loss-averse-bid 9/10 (approx 0.90, display only)" in out


def test_allpay_and_witness_reports(capsys):
    code, out, _ = run(
        capsys, "auction", "allpay", "--value", "1", "--epsilon", "1/4", "--cap", "2"
    )
    assert code == 0 and "loss-averse-bid 0" in out
    code, out, _ = run(capsys, "auction", "fpa-witness", "--value", "1", "--bid", "1/2")
    assert code == 0 and "verified strict" in out
    code, _, _ = run(capsys, "auction", "dfpa", "--value", "1")
    assert code == 2


def test_vcg_run_contract_allocation(capsys):
    code, out, _ = run(capsys, "vcg", "run", "--curated", "example-e1", "--payment-rule", "clarke")
    assert code == 0
    assert "allocation A1 a,b payment 18" in out
    assert "allocation A2 c,d payment 18" in out
    assert "real-welfare 3/5" in out  # 6 grid steps at the default 1/10
    assert "source-discrepancy" in out
    code, out, _ = run(capsys, "vcg", "run", "--curated", "example-e1", "--payment-rule", "paper")
    assert "payment 20" in out


def test_vcg_run_singleton_split(capsys):
    code, out, _ = run(capsys, "vcg", "run", "--curated", "example-e2")
    assert code == 0
    assert "classification underbidding" in out
    assert "attack-utility 1/5" in out
    assert "truth-utility 1/10" in out


def _write_scenario(tmp_path, text):
    path = tmp_path / "case.scn"
    path.write_text(text)
    return str(path)


def test_vcg_scenario_classify_and_adversary(tmp_path, capsys):
    path = _write_scenario(
        tmp_path,
        "scenario v1\nkind: vcg-attack\nitems: 2\nepsilon: 1\n"
        "valuation: 0 0 1 0\nbid: 0 0 1 1\n",
    )
    code, out, _ = run(capsys, "vcg", "classify", "--scenario", path)
    assert code == 0
    assert "classification overbidding" in out
    assert "classification-witness a,b" in out
    code, out, _ = run(capsys, "vcg", "adversary", "--scenario", path)
    assert code == 0
    assert "adversary-refuted yes" in out
    assert "attack-utility -1/2" in out
    shadowed = _write_scenario(
        tmp_path,
        "scenario v1\nkind: vcg-attack\nitems: 2\nepsilon: 1\n"
        "valuation: 0 0 2 0\nbid: 0 0 2 1\n",
    )
    code, out, _ = run(capsys, "vcg", "adversary", "--scenario", shadowed)
    assert code == 0
    assert "adversary-refuted no" in out
    assert "outcome-equivalent" in out


def test_vcg_scenario_run_with_nature(tmp_path, capsys):
    path = _write_scenario(
        tmp_path,
        "scenario v1\nkind: vcg-attack\nitems: 2\nepsilon: 1\n"
        "valuation: 0 1 1 2\nbid: 0 1 0 1\nbid: 0 0 1 1\nnature: 0 0 0 1\n",
    )
    code, out, _ = run(capsys, "vcg", "run", "--scenario", path)
    assert code == 0
    assert "classification exact-bidding" in out
    assert "allocation A1 a" in out
    assert "allocation A2 b" in out
    assert "agent-utility A 2" in out


def test_scenario_dispatch_and_error_codes(tmp_path, capsys):
    dfpa = _write_scenario(
        tmp_path, "scenario v1\nkind: dfpa\nvalue: 1\nepsilon: 3/10\nformat: csv\n"
    )
    code, out, _ = run(capsys, "analyze", "--scenario", dfpa)
    assert code == 0 and "loss-averse,9/10" in out
    bad_field = _write_scenario(tmp_path, "scenario v1\nkind: dfpa\nvalue: 1\nepsilon: 1\nx: 2\n")
    assert run(capsys, "analyze", "--scenario", bad_field)[0] == 3
    missing = _write_scenario(tmp_path, "scenario v1\nkind: dfpa\nvalue: 1\n")
    assert run(capsys, "analyze", "--scenario", missing)[0] == 2
    bad_kind = _write_scenario(tmp_path, "scenario v1\nkind: wat\nvalue: 1\n")
    assert run(capsys, "analyze", "--scenario", bad_kind)[0] == 3
    no_header = _write_scenario(tmp_path, "kind: dfpa\n")
    assert run(capsys, "analyze", "--scenario", no_header)[0] == 2
    assert run(capsys, "analyze", "--scenario", str(tmp_path / "absent.scn"))[0] == 2
    wrong_command = _write_scenario(tmp_path, "scenario v1\nkind: dfpa\nvalue: 1\nepsilon: 1\n")
    assert run(capsys, "vcg", "run", "--scenario", wrong_command)[0] == 3


def test_scenario_curated_and_voting_kinds(tmp_path, capsys):
    curated = _write_scenario(
        tmp_path, "scenario v1\nkind: curated\nname: minmaxreg-safety\nconcepts: min-max-regret\n"
    )
    code, out, _ = run(capsys, "analyze", "--scenario", curated)
    assert code == 0 and "concept min-max-regret\nactions b\n" in out
    voting = _write_scenario(
        tmp_path, "scenario v1\nkind: voting\nrule: plurality\nutilities: 1 1/2 0\n"
    )
    code, out, _ = run(capsys, "analyze", "--scenario", voting, "--concepts", "loss-averse")
    assert code == 0 and "concept loss-averse\nactions 1,0,0 0,1,0\n" in out


def test_facility_and_voting_reports(capsys):
    code, out, _ = run(capsys, "facility", "--agents", "3", "--type", "1/2")
    assert code == 0
    assert "closed-form-report 1/2" in out
    assert "worst-case-welfare-loss 1" in out
    code, out, _ = run(capsys, "voting", "--rule", "plurality", "--utilities", "1,1/2,0")
    assert code == 0
    assert "mixed-loss-averse 0,1,0:2/3 1,0,0:1/3" in out
    assert "pivotal-expected-utility 1/3" in out
    assert "min-max-regret-ballot 1,0,0" in out
    code, out, _ = run(capsys, "voting", "--rule", "approval", "--utilities", "1,9/10,1/10,0")
    assert code == 0
    assert "min-max-regret-top-k 2" in out


def test_export_round_trips_bit_exactly(capsys):
    for name in ("aim-big", "leximin-proof-game"):
        code, out, _ = run(capsys, "export", "--curated", name)
        assert code == 0
        assert out == format_game(curated_game(name))
        assert parse_game(out) == curated_game(name)


def test_out_file_and_directory_variable(tmp_path, capsys, monkeypatch):
    target = tmp_path / "direct.game"
    code, out, _ = run(capsys, "export", "--curated", "aim-big", "--out", str(target))
    assert code == 0
    assert parse_game(target.read_text()) == curated_game("aim-big")
    monkeypatch.setenv("ROBUSTGAMES_OUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "export", "--curated", "aim-big", "--out", "nested/x.game")
    assert code == 0
    assert (tmp_path / "nested" / "x.game").exists()
    assert "wrote" in out


def test_byte_stable_reports(capsys):
    first = run(capsys, "vcg", "run", "--curated", "example-e1")[1]
    second = run(capsys, "vcg", "run", "--curated", "example-e1")[1]
    assert first == second
    first = run(capsys, "analyze", "--curated", "safety-wrong-monotone")[1]
    second = run(capsys, "analyze", "--curated", "safety-wrong-monotone")[1]
    assert first == second
