import json

import pytest

from cohomolab.cli import main

QSQRT2 = "fixtures/qsqrt2.alg"
ATOMIC3 = "fixtures/atomic3.alg"
Q = "fixtures/q.alg"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys):
    code, out, err = run_cli(capsys, "validate", QSQRT2)
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["valid"] is True
    assert payload["algebra"] == "qsqrt2"
    assert payload["domain_status"] == "asserted"
    assert payload["violations"] == []


def test_validate_reports_violations(capsys, tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("name b\ndim 2\nunit 1 1\norder atomic\n"
                   "mult 0 0 = 1 0\nmult 1 1 = 1 0\n")
    code, out, _ = run_cli(capsys, "validate", str(bad))
    assert code == 1
    payload = json.loads(out)
    assert payload["valid"] is False
    assert payload["violations"]
    laws = {v["law"] for v in payload["violations"]}
    assert laws & {"atomic", "unit"}


def test_missing_file(capsys):
    code, out, err = run_cli(capsys, "validate", "fixtures/nope.alg")
    assert code == 1 and out == "" and "error:" in err


def test_usage_error(capsys):
    assert run_cli(capsys, "cohomology", QSQRT2)[0] == 2  # missing --degree
    assert run_cli(capsys, "frobnicate", QSQRT2)[0] == 2
    assert run_cli(capsys, "--help")[0] == 0


def test_cohomology_output(capsys):
    code, out, _ = run_cli(capsys, "cohomology", QSQRT2, "--degree", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["convention"] == "shifted"
    assert (payload["dim_cocycles"], payload["dim_coboundaries"],
            payload["dim_H"]) == (6, 4, 2)
    assert len(payload["representatives"]) == 2
    assert all(isinstance(x, str) for row in payload["representatives"]
               for x in row)


def test_cohomology_band_complex(capsys):
    code, out, _ = run_cli(capsys, "cohomology", ATOMIC3, "--degree", "0",
                           "--complex", "band")
    assert code == 0
    assert json.loads(out)["dim_H"] == 0
    # band complex needs atomic order
    code, _, err = run_cli(capsys, "cohomology", QSQRT2, "--degree", "0",
                           "--complex", "band")
    assert code == 1 and "error:" in err


def test_degree_cap_exit_code(capsys):
    code, out, err = run_cli(capsys, "cohomology", QSQRT2, "--degree", "9")
    assert code == 3 and out == "" and "error:" in err
    code, _, _ = run_cli(capsys, "--degree-cap", "8",
                         "cohomology", QSQRT2, "--degree", "6")
    assert code == 0


def test_degree_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("COHOMOLAB_MAX_DEGREE", "2")
    code, _, _ = run_cli(capsys, "cohomology", QSQRT2, "--degree", "2")
    assert code == 3
    # the explicit flag outranks the environment
    code, _, _ = run_cli(capsys, "--degree-cap", "5",
                         "cohomology", QSQRT2, "--degree", "2")
    assert code == 0
    monkeypatch.setenv("COHOMOLAB_MAX_DEGREE", "zzz")
    code, _, err = run_cli(capsys, "cohomology", QSQRT2, "--degree", "1")
    assert code == 1 and "COHOMOLAB_MAX_DEGREE" in err


def test_classify_output(capsys):
    code, out, _ = run_cli(capsys, "classify", QSQRT2)
    assert code == 0
    payload = json.loads(out)
    assert payload["kadison"]["verdict"] == "no"
    assert payload["kadison"]["witness"] == [["1", "0"], ["0", "-1"]]
    assert payload["h0mc_dim"] == 2
    assert payload["wickstead"] == "not_applicable"
    code, out, _ = run_cli(capsys, "classify", ATOMIC3)
    payload = json.loads(out)
    assert payload["kadison"]["verdict"] == "yes"
    assert payload["wickstead"]["verdict"] == "yes"
    assert (payload["h0mc_dim"], payload["h0oo_dim"]) == (6, 0)


def test_audit_output(capsys):
    code, out, _ = run_cli(capsys, "audit", QSQRT2, "--map", "J")
    assert code == 0
    payload = json.loads(out)
    assert payload["cocycle_preservation"]["pass"] is True
    assert payload["coboundary_preservation"]["pass"] is True
    assert payload["injectivity"]["pass"] is True
    assert payload["evaluator_agreement"] is True
    assert payload["target_degree"] == 2

    code, out, _ = run_cli(capsys, "audit", QSQRT2, "--map", "K")
    payload = json.loads(out)
    assert payload["cocycle_preservation"]["pass"] is False
    assert payload["cocycle_preservation"]["witness"] is not None
    assert payload["target_degree"] == 1


def test_verify_complex(capsys):
    code, out, _ = run_cli(capsys, "verify-complex", QSQRT2,
                           "--max-degree", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_zero"] is True
    assert [r["n"] for r in payload["results"]] == [0, 1, 2]
    assert all(r["zero"] and r["first_nonzero"] is None
               for r in payload["results"])
    code, out, _ = run_cli(capsys, "verify-complex", ATOMIC3,
                           "--max-degree", "1", "--complex", "band")
    assert code == 0 and json.loads(out)["all_zero"] is True


def test_json_output_deterministic(capsys):
    outs = set()
    for _ in range(2):
        code, out, _ = run_cli(capsys, "classify", QSQRT2)
        assert code == 0
        outs.add(out)
    assert len(outs) == 1
    payload = json.loads(next(iter(outs)))
    # canonical formatting: sorted keys, two-space indent, trailing newline
    assert next(iter(outs)) == json.dumps(payload, sort_keys=True, indent=2) + "\n"


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "--format", "text", "validate", Q)
    assert code == 0
    lines = out.splitlines()
    assert lines == sorted(lines)
    assert any(line.startswith("valid: true") for line in lines)


def test_seed_recorded(capsys):
    _, out, _ = run_cli(capsys, "--seed", "9", "validate", Q)
    assert json.loads(out)["seed"] == 9
