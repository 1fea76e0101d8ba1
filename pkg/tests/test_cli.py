import io
import json
from fractions import Fraction
from unittest import mock

import pytest

from stieltjes_lab.arith import INFINITY, ZERO, Poly, RationalFunction
from stieltjes_lab.cli import JobParseError, load_job, main, parse_tau, resolve_job
from stieltjes_lab.constants import EXIT_CODES
from stieltjes_lab.polysys import IdentityCheck, IdentityReport


def run_cli(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def run_json(capsys, *argv):
    status, out, _ = run_cli(capsys, *argv)
    return status, json.loads(out)


class TestParseTau:
    @pytest.mark.parametrize("text,expected", [["zero", ZERO], ["Infinity", INFINITY]])
    def test_keywords(self, text, expected):
        assert parse_tau(text) is expected

    def test_coefficient_lists(self):
        assert parse_tau("1;0,1") == RationalFunction(Poly.constant(1), Poly.z())

    def test_default_denominator(self):
        assert parse_tau("1/2") == RationalFunction(Poly.constant(Fraction(1, 2)), Poly.constant(1))

    @pytest.mark.parametrize(
        "text,numer,denom",
        [["1/0,1", (1,), (0, 1)], ["1/2,3", (1,), (2, 3)], ["-4,2/2", (-4, 2), (2,)]],
    )
    def test_slash_form(self, text, numer, denom):
        assert parse_tau(text) == RationalFunction(Poly(numer), Poly(denom))

    @pytest.mark.parametrize("text", ["1/2,1/3", "1,2/1/2", "1/2/3"])
    def test_ambiguous_slashes(self, text):
        with pytest.raises(ValueError):
            parse_tau(text)

    def test_record(self):
        assert parse_tau({"numer": ["3"], "denom": ["2", "1"]}) == RationalFunction(
            Poly.constant(3), Poly((2, 1))
        )

    def test_zero_denominator(self):
        with pytest.raises(ValueError):
            parse_tau("1;0")


class TestJobParsing:
    def test_invalid_json_position(self):
        with pytest.raises(JobParseError, match="line 2 column"):
            load_job('{\n  "command": }')

    def test_unknown_nested_field(self):
        with pytest.raises(JobParseError, match="unknown field 'options.x'"):
            load_job('{"command": "analyze", "options": {"x": 1}}')

    def test_unknown_pair_field(self):
        text = '{"command": "moments", "input": {"s_fraction": [{"m": ["1"], "q": "1"}]}}'
        with pytest.raises(JobParseError, match=r"input.s_fraction\[0\].q"):
            load_job(text)

    def test_bad_value_names_field(self):
        with pytest.raises(JobParseError, match="options.N"):
            resolve_job({"command": "fractions", "options": {"N": "two"}})

    @pytest.mark.parametrize("value", ["false", 0, "yes"])
    def test_strict_flags(self, value):
        with pytest.raises(JobParseError, match="options.emit"):
            resolve_job({"command": "fractions", "options": {"emit": value}})

    def test_negative_laguerre_count(self):
        with pytest.raises(JobParseError, match="input.laguerre"):
            resolve_job({"command": "polys", "input": {"laguerre": {"alpha": "0", "count": -1}}})

    def test_unknown_command(self):
        with pytest.raises(JobParseError, match="command"):
            resolve_job({"command": "solve"})

    def test_resolved_values(self):
        job = resolve_job(
            {
                "command": "resolvent",
                "input": {"moments": ["1", "1", "2", "6"]},
                "options": {"N": 1, "parity": "odd", "tau": "infinity"},
            }
        )
        assert job.moments.moments == (1, 1, 2, 6)
        assert job.N == 1
        assert job.parity == "odd"
        assert job.tau is INFINITY
        assert job.has_input


class TestCommands:
    def test_analyze_laguerre(self, capsys):
        status, report = run_json(capsys, "analyze", "--alpha=-3/2")
        assert status == EXIT_CODES.OK
        assert report["kappa"] == 1
        assert report["k"] == 0
        assert report["regular"] is True
        assert report["s_fraction"][0] == {"m": ["-1"], "l": "2"}
        assert report["index_budget"][0] == {"N": 1, "kappa_N": 1, "k_N": 0, "k_N_plus": 0}

    def test_pade(self, capsys):
        status, report = run_json(capsys, "pade", "--moments", "1,1,2,6", "--j", "2")
        assert status == EXIT_CODES.OK
        assert report["numer"] == ["3", "-1"]
        assert report["denom"] == ["2", "-4", "1"]
        assert report["verified_order"] == 4

    def test_resolvent_with_parameter(self, capsys):
        status, report = run_json(
            capsys, "resolvent", "--moments", "1,1,2,6", "--N", "1", "--tau", "zero"
        )
        assert status == EXIT_CODES.OK
        assert report["W"] == {
            "w11": ["1"],
            "w12": ["1"],
            "w21": ["0", "-1"],
            "w22": ["1", "-1"],
        }
        assert report["det"] == ["1"]
        assert report["candidate"]["matched_order"] >= 2

    def test_verify_demos(self, capsys):
        status, report = run_json(capsys, "verify")
        assert status == EXIT_CODES.OK
        assert set(report["suites"]) == {"laguerre-0", "laguerre-3/2"}
        assert report["passed"] is True

    def test_laguerre_demo(self, capsys):
        status, report = run_json(capsys, "laguerre-demo", "--alpha=-5/2", "--count", "3")
        assert status == EXIT_CODES.OK
        assert report["gamma_sign"] == 1
        assert all(report["closed_forms_agree"].values())

    def test_emit_round_trip(self, capsys, tmp_path):
        status, emitted = run_json(capsys, "fractions", "--moments", "1,1,2,6", "--emit")
        assert status == EXIT_CODES.OK
        assert emitted["command"] == "moments"
        job_file = tmp_path / "fraction.json"
        job_file.write_text(json.dumps(emitted))
        status, report = run_json(capsys, "moments", "--from-fraction", str(job_file))
        assert status == EXIT_CODES.OK
        assert report == {"moments": ["1", "1", "2", "6"], "truncated": False}

    def test_job_from_stdin(self, capsys):
        job = json.dumps({"command": "analyze", "input": {"moments": ["1", "1", "2", "6"]}})
        with mock.patch("sys.stdin", io.StringIO(job)):
            status, report = run_json(capsys, "analyze", "--input", "-")
        assert status == EXIT_CODES.OK
        assert report["dets"] == {"1": "1", "2": "1"}

    def test_flags_override_job(self, capsys, tmp_path):
        job_file = tmp_path / "job.json"
        job_file.write_text(
            json.dumps({"command": "pade", "input": {"moments": ["1", "1", "2", "6"]}})
        )
        status, report = run_json(capsys, "pade", "--input", str(job_file), "--j", "1")
        assert status == EXIT_CODES.OK
        assert report["j"] == 1

    def test_probe_csv(self, capsys):
        status, out, _ = run_cli(
            capsys,
            "probe",
            "--alpha",
            "0",
            "--count",
            "4",
            "--N-list",
            "1,2",
            "--points",
            "1",
            "--format",
            "csv",
        )
        assert status == EXIT_CODES.OK
        lines = out.splitlines()
        assert lines[0] == "N,point,w11,w12,w21,w22"
        assert lines[1] == "1,1,1,1,-1,0"
        assert len(lines) == 3

    def test_text_format(self, capsys):
        status, out, _ = run_cli(capsys, "analyze", "--moments", "1,1,2,6", "--format", "text")
        assert status == EXIT_CODES.OK
        assert "kappa: 0" in out.splitlines()
        assert "regular: true" in out.splitlines()

    def test_deterministic_output(self, capsys):
        _, first, _ = run_cli(capsys, "polys", "--alpha=-3/2", "--count", "3")
        _, second, _ = run_cli(capsys, "polys", "--alpha=-3/2", "--count", "3")
        assert first == second


class TestExitCodes:
    def test_bad_json_on_stdin(self, capsys):
        with mock.patch("sys.stdin", io.StringIO("{oops")):
            status, out, err = run_cli(capsys, "analyze", "--input", "-")
        assert status == EXIT_CODES.PARSE
        assert "line 1" in err
        assert out == ""

    def test_unknown_field(self, capsys, tmp_path):
        job_file = tmp_path / "job.json"
        job_file.write_text('{"command": "analyze", "options": {"colour": "red"}}')
        status, _, err = run_cli(capsys, "analyze", "--input", str(job_file))
        assert status == EXIT_CODES.PARSE
        assert "options.colour" in err

    def test_command_mismatch(self, capsys, tmp_path):
        job_file = tmp_path / "job.json"
        job_file.write_text('{"command": "pade"}')
        status, _, _ = run_cli(capsys, "analyze", "--input", str(job_file))
        assert status == EXIT_CODES.PARSE

    def test_csv_outside_probe(self, capsys):
        status, _, _ = run_cli(capsys, "analyze", "--moments", "1,1,2,6", "--format", "csv")
        assert status == EXIT_CODES.PARSE

    def test_missing_input(self, capsys):
        status, _, _ = run_cli(capsys, "analyze")
        assert status == EXIT_CODES.PARSE

    def test_not_regular(self, capsys):
        status, report = run_json(capsys, "fractions", "--moments", "1,0,1,0")
        assert status == EXIT_CODES.DOMAIN
        assert report["error"]["type"] == "NotRegularError"
        assert report["error"]["step"] == 1

    def test_insufficient_moments(self, capsys):
        status, report = run_json(capsys, "pade", "--moments", "1,1,2,6", "--j", "3")
        assert status == EXIT_CODES.DOMAIN
        assert report["error"]["type"] == "InsufficientMomentsError"

    def test_negative_count(self, capsys):
        status, _, err = run_cli(capsys, "laguerre-demo", "--alpha=-3/2", "--count=-1")
        assert status == EXIT_CODES.PARSE
        assert "input.laguerre" in err

    def test_gamma_pole(self, capsys):
        status, report = run_json(capsys, "laguerre-demo", "--alpha=-2")
        assert status == EXIT_CODES.DOMAIN
        assert report["error"]["type"] == "GammaPoleError"

    def test_parameter_class(self, capsys):
        status, report = run_json(
            capsys, "resolvent", "--moments", "1,1,2,6", "--N", "1", "--tau", "infinity"
        )
        assert status == EXIT_CODES.DOMAIN
        assert report["error"]["type"] == "ParameterClassError"

    def test_failed_identity(self, capsys):
        failing = IdentityReport([IdentityCheck("l_sum", 1, Fraction(1), Fraction(2))])
        with mock.patch("stieltjes_lab.cli.verify_identities", return_value=failing):
            status, report = run_json(capsys, "verify", "--moments", "1,1,2,6")
        assert status == EXIT_CODES.CONSISTENCY
        suite = report["suites"]["input"]
        assert suite["checks"]["identities"] is False
        assert suite["identity_failures"] == [
            {"name": "l_sum", "index": 1, "lhs": "1", "rhs": "2", "passed": False}
        ]

    def test_closed_form_disagreement(self, capsys):
        with mock.patch(
            "stieltjes_lab.cli.laguerre_checks", return_value={"s_fraction": False}
        ):
            status, report = run_json(capsys, "laguerre-demo", "--alpha=-3/2")
        assert status == EXIT_CODES.CONSISTENCY
        assert report["error"]["type"] == "ConsistencyError"
