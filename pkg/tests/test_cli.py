"""Command line interface: subcommands, exit codes, and stable output."""

import json

import pytest

from exclusion import (
    EXIT_CAPACITY,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_UNSUPPORTED_DEGREE,
    EXIT_WRONG_DIRECTION,
    check_derivation,
    derivation_from_json,
    parse_team_csv,
)
from exclusion.cli import main

TABLE_PAIR = "x,y\n0,0\n1,2\n"
TABLE_QUAD = "x,u,y,v\n0,1,0,1\n0,2,0,2\n1,2,2,1\n"


@pytest.fixture
def sigma_file(tmp_path):
    def write(text):
        path = tmp_path / "sigma.txt"
        path.write_text(text)
        return str(path)

    return write


@pytest.fixture
def team_file(tmp_path):
    def write(text):
        path = tmp_path / "team.csv"
        path.write_text(text)
        return str(path)

    return write


class TestCheck:
    def test_arity_switch_holds(self, sigma_file, capsys):
        code = main(
            ["check", sigma_file("excl(x1 w1 w2 ; y1 w1 w2)"), "excl(z1 z1 ; x1 y1)"]
        )
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "holds: true" in out
        assert "witness: a6-cover" in out
        assert "time:" in out

    def test_failing_goal_reports_false(self, sigma_file, capsys):
        code = main(["check", sigma_file(""), "excl(x1 ; y1)"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "holds: false" in out

    def test_true_certificate_written(self, sigma_file, tmp_path, capsys):
        cert = tmp_path / "derivation.json"
        code = main(
            [
                "check",
                sigma_file("excl(x1 ; y1)"),
                "excl[1/4](x1 u1 ; y1 v1)",
                "--certificate",
                str(cert),
            ]
        )
        assert code == EXIT_OK
        derivation = derivation_from_json(json.loads(cert.read_text()))
        assert check_derivation(derivation).ok
        rules = [s.rule.value for s in derivation.steps]
        assert rules == ["HYP", "A3", "A7"]

    def test_false_certificate_is_team_csv(self, sigma_file, tmp_path, capsys):
        cert = tmp_path / "counterexample.csv"
        code = main(
            ["check", sigma_file(""), "excl(x1 ; y1)", "--certificate", str(cert)]
        )
        assert code == EXIT_OK
        team, duplicates = parse_team_csv(cert.read_text())
        assert duplicates == 0
        assert team.size == 2

    def test_json_output_is_stable(self, sigma_file, capsys):
        argv = ["check", sigma_file("excl(x ; y)"), "excl(x ; y)", "--json"]
        assert main(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert main(argv) == EXIT_OK
        second = capsys.readouterr().out
        assert first == second
        payload = json.loads(first)
        assert payload["format"] == 1
        assert payload["holds"] is True
        assert payload["witness"] == "membership"
        assert "time" not in payload

    def test_unsupported_degree_band(self, sigma_file, capsys):
        code = main(["check", sigma_file(""), "excl[3/4](x1 ; y1)"])
        err = capsys.readouterr().err
        assert code == EXIT_UNSUPPORTED_DEGREE
        assert "error:" in err

    def test_degree_one_goal_holds(self, sigma_file, capsys):
        code = main(["check", sigma_file(""), "excl[1](x ; x)"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "holds: true" in out
        assert "witness: vacuous-degree" in out

    def test_parse_error_in_goal(self, sigma_file, capsys):
        code = main(["check", sigma_file(""), "excl(broken"])
        assert code == EXIT_PARSE

    def test_missing_sigma_file(self, tmp_path, capsys):
        code = main(["check", str(tmp_path / "absent.txt"), "excl(x ; y)"])
        assert code == EXIT_PARSE


class TestEval:
    def test_pair_table_satisfied(self, team_file, capsys):
        code = main(["eval", team_file(TABLE_PAIR), "excl[1/2](x ; y)"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "satisfied: true" in out
        assert "min_removal: 1" in out
        assert "min_degree: 1/2" in out

    def test_quad_table_falsified(self, team_file, capsys):
        code = main(["eval", team_file(TABLE_QUAD), "excl[1/2](x u ; y v)"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "satisfied: false" in out
        assert "min_removal: 2" in out
        assert "min_degree: 2/3" in out

    def test_empty_team_skips_min_degree(self, team_file, capsys):
        code = main(["eval", team_file("x,y\n"), "excl(x ; y)"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "satisfied: true" in out
        assert "min_removal: 0" in out
        assert "min_degree" not in out

    def test_duplicate_rows_warn_on_stderr(self, team_file, capsys):
        code = main(["eval", team_file("x\n0\n0\n"), "excl(x ; x)"])
        captured = capsys.readouterr()
        assert code == EXIT_OK
        assert "1 duplicate" in captured.err

    def test_json_payload(self, team_file, capsys):
        code = main(["eval", team_file(TABLE_QUAD), "excl[1/2](x u ; y v)", "--json"])
        payload = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert payload["satisfied"] is False
        assert payload["min_removal"] == 2
        assert payload["min_degree"] == "2/3"

    def test_unknown_variable(self, team_file, capsys):
        code = main(["eval", team_file(TABLE_PAIR), "excl(z ; y)"])
        assert code == EXIT_PARSE


class TestCounterexample:
    def test_writes_separating_team(self, sigma_file, tmp_path, capsys):
        out_csv = tmp_path / "team.csv"
        code = main(
            [
                "counterexample",
                sigma_file("excl[1/3](x1 ; y1)"),
                "excl(x1 ; y1)",
                str(out_csv),
            ]
        )
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "l=1 k=3" in out
        team, _ = parse_team_csv(out_csv.read_text())
        assert team.size == 3

    def test_two_row_team_without_premises(self, sigma_file, tmp_path, capsys):
        out_csv = tmp_path / "team.csv"
        code = main(
            ["counterexample", sigma_file(""), "excl(x1 ; y1)", str(out_csv)]
        )
        assert code == EXIT_OK
        team, _ = parse_team_csv(out_csv.read_text())
        assert team.size == 2

    def test_holding_implication_refused(self, sigma_file, tmp_path, capsys):
        out_csv = tmp_path / "team.csv"
        code = main(
            ["counterexample", sigma_file("excl(x1 ; y1)"), "excl(x1 ; y1)", str(out_csv)]
        )
        out = capsys.readouterr().out
        assert code == EXIT_WRONG_DIRECTION
        assert "no counterexample" in out
        assert not out_csv.exists()


class TestDerive:
    def test_arity_switch_derivation(self, sigma_file, tmp_path, capsys):
        out_json = tmp_path / "derivation.json"
        code = main(
            [
                "derive",
                sigma_file("excl(x1 w1 ; y1 w1)"),
                "excl(z1 z1 ; x1 y1)",
                str(out_json),
            ]
        )
        assert code == EXIT_OK
        derivation = derivation_from_json(json.loads(out_json.read_text()))
        assert check_derivation(derivation).ok
        rules = [s.rule.value for s in derivation.steps]
        assert rules == ["HYP", "A6"]

    def test_contradiction_derivation(self, sigma_file, tmp_path, capsys):
        out_json = tmp_path / "derivation.json"
        code = main(
            ["derive", sigma_file("excl(x1 ; x1)"), "excl(a ; b)", str(out_json)]
        )
        assert code == EXIT_OK
        derivation = derivation_from_json(json.loads(out_json.read_text()))
        rules = [s.rule.value for s in derivation.steps]
        assert rules == ["HYP", "A1"]

    def test_non_implication_refused(self, sigma_file, tmp_path, capsys):
        out_json = tmp_path / "derivation.json"
        code = main(["derive", sigma_file(""), "excl(x1 ; y1)", str(out_json)])
        assert code == EXIT_WRONG_DIRECTION
        assert not out_json.exists()


class TestOracleCheck:
    def test_agreement_on_holding_instance(self, sigma_file, capsys):
        code = main(
            [
                "oracle-check",
                sigma_file("excl(x1 w1 w2 ; y1 w1 w2)"),
                "excl(z1 z1 ; x1 y1)",
                "--max-rows",
                "2",
                "--domain",
                "11",
            ]
        )
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "decision: holds=true" in out
        assert "agree" in out

    def test_agreement_on_failing_instance(self, sigma_file, capsys):
        code = main(
            [
                "oracle-check",
                sigma_file(""),
                "excl(x1 ; y1)",
                "--max-rows",
                "2",
                "--domain",
                "3",
            ]
        )
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "decision: holds=false" in out
        assert "agree" in out

    def test_planned_bounds_fill_in(self, sigma_file, capsys):
        code = main(["oracle-check", sigma_file(""), "excl(x1 ; y1)"])
        assert code == EXIT_OK
        assert "agree" in capsys.readouterr().out

    def test_budget_exhaustion(self, sigma_file, capsys):
        code = main(
            [
                "oracle-check",
                sigma_file("excl(x ; y)"),
                "excl(x ; y)",
                "--max-rows",
                "3",
                "--domain",
                "9",
                "--budget",
                "5",
            ]
        )
        assert code == EXIT_CAPACITY


class TestArgumentErrors:
    def test_no_subcommand(self, capsys):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
