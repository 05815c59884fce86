import json

import pytest

from cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, main

SABOTAGED = json.dumps({"m": 3, "divisors": [3, 3], "omega": [[0, 1], [1, 0]]})


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


class TestEval:
    def test_identity(self, capsys):
        assert main(["eval", "--module", "Z3^2", "--g", "[[1,0],[0,1]]"]) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert (result["c"], result["eps"], result["complex"]) == (9, "+1", "3")
        assert result["order_of_g"] == 1

    def test_minus_one(self, capsys):
        assert main(["eval", "--module", "Z3^2", "--g", "[[2,0],[0,2]]"]) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert (result["c"], result["eps"], result["complex"]) == (1, "-1", "-1")

    def test_unipotent_both_methods(self, capsys):
        assert main(["eval", "--module", "Z3^2", "--g", "[[1,1],[0,1]]", "--method", "both"]) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert (result["c"], result["eps"]) == (3, "-i")
        assert result["residual"] < 1e-6
        assert result["|V(1-g)|"] == 3

    def test_oracle_only(self, capsys):
        assert main(["eval", "--module", "Z5^2", "--g", "[[0,1],[4,0]]", "--method", "oracle"]) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert (result["c"], result["eps"]) == (1, "-1")

    def test_inline_module(self, capsys):
        module = json.dumps({"m": 9, "hyperbolic": [3, 9]})
        assert main(["eval", "--module", module, "--g", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["c"] == 729

    def test_twisted_character(self, capsys):
        assert main(["eval", "--module", "Z3^2", "--g", "[[1,1],[0,1]]", "--lambda-s", "2"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["eps"] == "+i"


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["eval", "--module", "Z3^2", "--g", "[[1,1],[0,1]"],
            ["eval", "--module", "Z3^2", "--g", "[[1,0,0],[0,1,0]]"],
            ["eval", "--module", "Z3^2", "--g", "[[1,0],[0,1]]", "--lambda-s", "3"],
            ["eval", "--module", '{"m": 4, "divisors": [4, 4]}', "--g", "[[1,0],[0,1]]"],
            ["eval", "--module", "Z7^2", "--g", "[[1,0],[0,1]]"],
        ],
    )
    def test_rejected_input(self, argv, capsys):
        assert main(argv) == EXIT_USAGE
        assert capsys.readouterr().out == ""

    def test_no_command(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_missing_module(self):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--g", "[[1,0],[0,1]]"])
        assert exc.value.code == EXIT_USAGE

    def test_sabotaged_omega(self, capsys):
        assert main(["eval", "--module", SABOTAGED, "--g", "[[1,0],[0,1]]"]) == EXIT_FAILED
        assert "error" in capsys.readouterr().err

    def test_non_symplectic_element(self, capsys):
        assert main(["eval", "--module", "Z3^2", "--g", "[[2,0],[0,1]]"]) == EXIT_FAILED


class TestTable:
    def test_enumerate_csv(self, capsys):
        assert main(["table", "--module", "Z3^2", "--enumerate"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "g,order,c,eps,psi"
        assert len(lines) == 25

    def test_sample_json(self, capsys):
        assert main(["table", "--module", "H(3,3)", "--sample", "4", "--seed", "2", "--format", "json"]) == EXIT_OK
        rows = _json_lines(capsys.readouterr().out)
        assert len(rows) == 4
        assert set(rows[0]) == {"g", "order", "c", "eps", "psi"}

    def test_sample_is_deterministic(self, capsys):
        main(["table", "--module", "Z5^2", "--sample", "3", "--seed", "8"])
        first = capsys.readouterr().out
        main(["table", "--module", "Z5^2", "--sample", "3", "--seed", "8"])
        assert capsys.readouterr().out == first

    def test_enumeration_refused_on_large_module(self, capsys):
        assert main(["table", "--module", "H(3,9)", "--enumerate"]) == EXIT_FAILED


class TestVerify:
    def test_json_lines(self, capsys):
        assert main(["verify", "--module", "Z3^2", "--seed", "4", "--samples", "3"]) == EXIT_OK
        entries = _json_lines(capsys.readouterr().out)
        assert entries
        assert all(set(e) == {"check", "params", "expected", "got", "residual", "pass"} for e in entries)
        assert all(e["pass"] for e in entries)

    def test_csv(self, capsys):
        assert main(["verify", "--module", "Z3^2", "--seed", "4", "--samples", "2", "--format", "csv"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "check,params,expected,got,residual,pass"


def test_parser_defaults():
    args = build_parser().parse_args(["eval", "--module", "Z3^2", "--g", "[[1,0],[0,1]]"])
    assert (args.method, args.lambda_s, args.fmt) == ("formula", 1, "json")
