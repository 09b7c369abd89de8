"""CLI contract: parsing, formats, exit codes."""

import json

import pytest

from zqadd.cli import (
    EXIT_BUDGET,
    EXIT_COUNTEREXAMPLE,
    EXIT_ERROR,
    EXIT_OK,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestXi:
    def test_example_value(self, capsys):
        code, out, _ = run(capsys, "xi", "--q", "7", "--set", "0,1,3", "--n", "2")
        assert code == EXIT_OK
        assert json.loads(out)["value"] == 5

    def test_set_literal_form(self, capsys):
        code, out, _ = run(capsys, "xi", "--set", "q=7;{0,1,3}", "--n", "2")
        assert code == EXIT_OK and json.loads(out)["value"] == 5

    def test_json_set_form(self, capsys):
        code, out, _ = run(
            capsys, "xi", "--set", '{"q": 7, "elements": [0, 1, 3]}', "--n", "2"
        )
        assert code == EXIT_OK and json.loads(out)["value"] == 5

    def test_budget_exit(self, capsys):
        code, out, _ = run(
            capsys,
            "xi", "--q", "20", "--set", ",".join(map(str, range(10))),
            "--n", "6", "--budget-nodes", "3",
        )
        assert code == EXIT_BUDGET
        assert json.loads(out)["exact"] is False


class TestErrors:
    def test_bare_list_without_q(self, capsys):
        code, _, err = run(capsys, "xi", "--set", "0,1,3", "--n", "2")
        assert code == EXIT_ERROR
        assert "--q" in err

    def test_malformed_literal(self, capsys):
        code, _, err = run(capsys, "xi", "--set", "q=;{1}", "--n", "1")
        assert code == EXIT_ERROR and "error" in err

    def test_element_out_of_range(self, capsys):
        code, _, err = run(capsys, "alpha", "--q", "5", "--set", "0,9")
        assert code == EXIT_ERROR

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit):
            main(["frobnicate"])


class TestFormats:
    def test_alpha_profile_csv(self, capsys):
        code, out, _ = run(
            capsys, "alpha", "--q", "10", "--set", "0,1,2,5,6", "--format", "csv"
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "alpha,q,t"
        assert len(lines) == 10  # header + 9 differences

    def test_pretty(self, capsys):
        code, out, _ = run(
            capsys, "mu", "--p", "5", "--format", "pretty"
        )
        assert code == EXIT_OK and "mu: 4" in out


class TestSubcommands:
    def test_decomp(self, capsys):
        code, out, _ = run(capsys, "decomp", "--q", "12", "--set", "0,1,2,7,8", "--d1", "1")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["alpha"] == 2 and data["progressions"] == [[0, 3], [7, 2]]

    def test_stability(self, capsys):
        code, out, _ = run(capsys, "stability", "--q", "20", "--set", "0,1,2,3,4,5")
        assert code == EXIT_OK and json.loads(out)["status"] == "stable"

    def test_uniqueness(self, capsys):
        elems = ",".join(map(str, list(range(5)) + [50, 51, 52]))
        code, out, _ = run(capsys, "uniqueness", "--q", "101", "--set", elems)
        assert code == EXIT_OK
        assert json.loads(out)["classification"] == "unique_pm_d"

    def test_digital_check(self, capsys):
        code, out, _ = run(capsys, "digital", "check", "--q", "8", "--set", "0,3")
        assert code == EXIT_OK and json.loads(out)["digital"] is True

    def test_digital_enumerate(self, capsys):
        code, out, _ = run(capsys, "digital", "enumerate", "--q", "4", "--m", "2")
        assert code == EXIT_OK and len(out.strip().splitlines()) == 4

    def test_carries(self, capsys):
        code, out, _ = run(capsys, "carries", "--q", "9", "--set", "0,1,2")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["distinct_carries"] == [0, 1] and data["nonzero_pair_count"] == 3

    def test_carries_non_digital(self, capsys):
        code, _, err = run(capsys, "carries", "--q", "8", "--set", "0,2")
        assert code == EXIT_ERROR and "digital" in err

    def test_construct(self, capsys):
        code, out, _ = run(capsys, "construct", "--m", "3")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["size"] == 36 and data["prime"] == 67
        assert data["chain_conditions_hold"] is True

    def test_mu(self, capsys):
        code, out, _ = run(capsys, "mu", "--p", "7")
        assert code == EXIT_OK and json.loads(out)["mu"] == 4

    def test_chains_counterexample_exit(self, capsys):
        # an interval has no valid chain family for these differences
        code, out, _ = run(
            capsys, "chains", "--q", "12", "--set", "0,1,2,3,4,5", "--d1", "1", "--d2", "5"
        )
        assert code == EXIT_COUNTEREXAMPLE
        assert json.loads(out)["violations"]


class TestVerify:
    def test_single_suite(self, capsys):
        code, out, _ = run(
            capsys, "verify", "mu", "--profile", "smoke", "--seed", "42"
        )
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["passed"] is True
        assert [s["suite"] for s in report["suites"]] == ["mu"]

    def test_pretty_report(self, capsys):
        code, out, _ = run(
            capsys, "verify", "construction", "--profile", "smoke", "--format", "pretty"
        )
        assert code == EXIT_OK and "construction: pass" in out
