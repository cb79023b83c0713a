import json
import subprocess
import sys

import pytest

from overcubic.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_passing_claim(capsys):
    code, out = run_cli(
        capsys, "verify", "--family", "overcubic-triple", "--progression", "8,7",
        "--mod", "64", "--n-limit", "50"
    )
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert report["parameters"]["order"] == 8 * 50 + 7 + 1


def test_verify_failing_claim_exits_one(capsys):
    code, out = run_cli(
        capsys, "verify", "--family", "overcubic-triple", "--progression", "4,1",
        "--mod", "4", "--n-limit", "10"
    )
    assert code == 1
    report = json.loads(out)
    assert report["records"][0]["first_violation"] == 0


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--family", "no-such-family", "--progression", "1,0",
              "--mod", "2", "--n-limit", "1"])
    assert exc.value.code == 2


def test_bad_progression_value_exits_two(capsys):
    code = main(["verify", "--family", "overcubic-triple", "--progression", "4,9",
                 "--mod", "4", "--n-limit", "1"])
    assert code == 2


def test_identity_catalog_by_packaged_name(capsys):
    code, out = run_cli(
        capsys, "identity", "--catalog", "identities/lemma_dissections.json",
        "--order", "400"
    )
    assert code == 0
    report = json.loads(out)
    assert len(report["records"]) == 4 and report["passed"]


def test_reports_are_byte_identical(capsys):
    args = ("identity", "--catalog", "identities/theta_dissections.json", "--order", "300")
    _, first = run_cli(capsys, *args)
    _, second = run_cli(capsys, *args)
    assert first == second


def test_expand_family_mod(capsys):
    code, out = run_cli(
        capsys, "expand", "--family", "overcubic-triple", "--order", "8", "--mod", "4"
    )
    assert code == 0
    report = json.loads(out)
    assert report["coefficients"] == [1, 2, 2, 0, 2, 0, 0, 0]


def test_expand_explicit_factors(capsys):
    code, out = run_cli(
        capsys, "expand", "--factors", "1:-1", "--order", "6"
    )
    assert code == 0
    assert json.loads(out)["coefficients"] == [1, 1, 2, 3, 5, 7]


def test_coeffs_progression_csv(capsys):
    code, out = run_cli(
        capsys, "coeffs", "--family", "overcubic-triple", "--progression", "8,7",
        "--n-limit", "3", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,coefficient"
    assert lines[1] == "7,9792"


def test_dissect_subcommand(capsys):
    code, out = run_cli(
        capsys, "dissect", "--family", "overcubic-triple", "--m", "2", "--j", "0",
        "--order", "5", "--mod", "4"
    )
    assert code == 0
    report = json.loads(out)
    assert report["coefficients"] == [1, 2, 2, 0, 2][: len(report["coefficients"])]


def test_scan_subcommand(capsys):
    code, out = run_cli(
        capsys, "scan", "--family", "partition", "--max-m", "5", "--moduli", "5,7",
        "--n-min", "150"
    )
    assert code == 0
    report = json.loads(out)
    assert {(r["m"], r["j"], r["modulus"]) for r in report["records"]} == {(5, 4, 5)}


def test_certificate_subcommand(capsys):
    code, out = run_cli(capsys, "certificate", "--order", "100")
    assert code == 0
    assert json.loads(out)["records"][0]["claimed_common_factor"] == 64


def test_density_subcommand(capsys):
    code, out = run_cli(
        capsys, "density", "--family", "overcubic-triple", "--mod", "4",
        "--x-grid", "100"
    )
    assert code == 0
    row = json.loads(out)["report"]["rows"][0]
    assert row["count"] == 83 and row["delta"] == "83/100"


def test_oracle_subcommand_csv(capsys):
    code, out = run_cli(
        capsys, "oracle", "--family", "overcubic", "--max-n", "4", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines() == ["n,count", "0,1", "1,2", "2,6", "3,12", "4,26"]


def test_paper_suite_theorem1(capsys):
    code, out = run_cli(capsys, "paper-suite", "--theorem", "1", "--n-limit", "60")
    assert code == 0
    report = json.loads(out)
    assert len(report["records"]) == 10


def test_paper_suite_conjecture_is_labeled(capsys):
    code, out = run_cli(
        capsys, "paper-suite", "--theorem", "conjecture-1", "--n-limit", "10",
        "--alpha-limit", "1"
    )
    assert code == 0
    report = json.loads(out)
    assert all(
        r["status"] == "conjectured, numerical evidence only" for r in report["records"]
    )


def test_job_file_fills_unset_flags(tmp_path, capsys):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"family": "overcubic-triple", "mod": 64,
                               "progression": "8,7", "n-limit": 25}))
    code, out = run_cli(capsys, "verify", "--job", str(job), "--mod", "4",
                        "--progression", "8,6")
    assert code == 0
    report = json.loads(out)
    # explicit flags won, job supplied the rest
    assert report["parameters"]["modulus"] == 4
    assert report["parameters"]["j"] == 6
    assert report["parameters"]["n_limit"] == 25


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "overcubic", "oracle", "--family", "partition",
         "--max-n", "5", "--format", "csv"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "5,7"


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run_cli(
        capsys, "verify", "--family", "overcubic-triple", "--progression", "4,3",
        "--mod", "4", "--n-limit", "10", "--output", str(target)
    )
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["passed"] is True
