"""End-to-end checks of the qfisher command line front end.

Everything drives cli.main() in-process; one test shells out to the installed
console script. Exit code contract: 0 bounds hold, 2 a bound is violated,
64 configuration error, 1 crash.
"""

import json
import subprocess

import pytest

from qfisher.cli import main
from qfisher.version import __version__

SUMMARY_KEYS = {
    "tool_version",
    "subcommand",
    "config_echo",
    "tolerances",
    "results",
    "exit_status",
}


def _summary(out_dir, name):
    with open(out_dir / name) as fh:
        return json.load(fh)


def test_version_flag(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_console_script_installed():
    proc = subprocess.run(["qfisher", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == f"qfisher {__version__}"


def test_missing_subcommand_is_config_error(capsys):
    assert main([]) == 64


def test_unknown_flag_is_config_error(capsys):
    assert main(["fisher", "--no-such-flag", "1"]) == 64


def test_unknown_config_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"beta": 2.0, "betaa": 3.0}))
    out = tmp_path / "out"
    rc = main(["divergence", "--config", str(cfg), "--out-dir", str(out)])
    assert rc == 64
    assert "betaa" in capsys.readouterr().err
    assert not out.exists()  # rejected before any artifact is written


def test_malformed_json_rejected(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    out = tmp_path / "out"
    assert main(["divergence", "--config", str(cfg), "--out-dir", str(out)]) == 64
    assert "config error" in capsys.readouterr().err
    assert not out.exists()


def test_config_subcommand_mismatch_rejected(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"subcommand": "fisher"}))
    assert main(["qcr-check", "--config", str(cfg), "--out-dir", str(tmp_path / "o")]) == 64


def test_type_errors_rejected(tmp_path, capsys):
    out = tmp_path / "out"
    for bad in ({"grid_points": 2.5}, {"grid_points": True}, {"beta": "two"}):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(bad))
        assert main(["divergence", "--config", str(cfg), "--out-dir", str(out)]) == 64
    assert not out.exists()


def test_domain_errors_rejected_before_output(tmp_path, capsys):
    out = tmp_path / "out"
    # conjugate exponent undefined at alpha <= 1
    assert main(["qcr-check", "--alpha", "0.5", "--out-dir", str(out)]) == 64
    # q-Gaussian shape parameters outside the admissible set
    assert main(["fisher", "--family", "qgauss", "--alpha", "0.5", "--out-dir", str(out)]) == 64
    assert not out.exists()


def test_flag_overrides_config_overrides_default(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps({"subcommand": "qcr-check", "q": 1.5, "density": "mixture",
                    "grid_points": 513, "half_width": 10.0})
    )
    out = tmp_path / "out"
    rc = main(["qcr-check", "--config", str(cfg), "--q", "1.2", "--out-dir", str(out)])
    assert rc == 0
    echo = _summary(out, "qcr_check_summary.json")["config_echo"]
    assert echo["q"] == 1.2  # flag beats config
    assert echo["grid_points"] == 513  # config beats default
    assert echo["alpha"] == 2.0  # untouched default
    assert echo["out_dir"] == str(out)


def test_divergence_summary_contract(tmp_path):
    out = tmp_path / "out"
    rc = main(["divergence", "--grid-points", "256", "--factor", "4", "--seed", "3",
               "--out-dir", str(out)])
    assert rc == 0
    s = _summary(out, "divergence_summary.json")
    assert set(s) == SUMMARY_KEYS
    assert s["tool_version"] == __version__
    assert s["subcommand"] == "divergence"
    assert s["exit_status"] == 0
    assert s["results"]["monotonicity_margin"] >= -1e-9
    assert s["results"]["value"] >= s["results"]["coarse_value"] - 1e-9


def test_seeded_runs_are_byte_identical(tmp_path):
    out = tmp_path / "out"
    argv = ["divergence", "--grid-points", "256", "--seed", "11", "--out-dir", str(out)]
    assert main(argv) == 0
    first = (out / "divergence_summary.json").read_bytes()
    assert main(argv) == 0
    assert (out / "divergence_summary.json").read_bytes() == first


def test_qcr_check_default_saturates(tmp_path):
    out = tmp_path / "out"
    assert main(["qcr-check", "--out-dir", str(out)]) == 0
    s = _summary(out, "qcr_check_summary.json")
    assert s["results"]["saturated"] is True
    assert abs(s["results"]["margin"]) < 1e-5

    lines = (out / "qcr_check_detail.csv").read_text().splitlines()
    assert lines[0] == "q,alpha,lhs,rhs,margin,saturated"
    q, alpha, lhs, rhs, margin, saturated = lines[1].split(",")
    assert float(q) == 1.5 and float(alpha) == 2.0
    assert saturated == "true"
    assert float(lhs) == pytest.approx(float(rhs), rel=1e-4)


def test_fisher_gaussian_defaults(tmp_path):
    out = tmp_path / "out"
    assert main(["fisher", "--grid", "1025", "--half-width", "10",
                 "--out-dir", str(out)]) == 0
    res = _summary(out, "fisher_summary.json")["results"]
    assert res["value"] == pytest.approx(1.0, rel=1e-6)
    assert res["family_value"] == pytest.approx(1.0, rel=1e-6)
    assert res["limit_check"]["converged"] is True
    assert res["limit_check"]["limit"] == pytest.approx(1.0, rel=1e-6)
    assert res["matrix"][0][0] == pytest.approx(1.0, rel=1e-6)


def test_minimize_writes_trace_and_density(tmp_path):
    out = tmp_path / "out"
    rc = main(["minimize", "--grid-points", "257", "--iters", "2000", "--tol", "1e-3",
               "--out-dir", str(out)])
    assert rc == 0
    s = _summary(out, "minimize_summary.json")
    assert s["results"]["converged"] is True
    assert 1.0 - 1e-6 <= s["results"]["final_objective"] <= 1.0 + 1e-2

    trace = (out / "minimize_trace.csv").read_text().splitlines()
    assert trace[0] == "iter,objective"
    assert len(trace) - 1 == s["results"]["n_iters"] + 1  # trace includes iter 0
    assert (out / "minimize_final_density.json").is_file()
    assert (out / "minimize_final_density.csv").is_file()


def test_debruijn_fine_grid_passes(tmp_path):
    out = tmp_path / "out"
    rc = main(["debruijn", "--points", "1024", "--sigma0", "0.3", "--half-width", "3",
               "--t-final", "0.05", "--n-checks", "3", "--t-burn", "0.01",
               "--out-dir", str(out)])
    assert rc == 0
    s = _summary(out, "debruijn_summary.json")
    assert s["results"]["worst_rel_err"] <= 2e-2
    lines = (out / "debruijn_series.csv").read_text().splitlines()
    assert lines[0] == "t,S_q,M_q,I_bq,lhs,rhs,rel_err"
    assert len(lines) == 1 + 3


def test_debruijn_coarse_grid_reports_violation(tmp_path):
    # 48 points cannot resolve the porous-medium edge; the identity check
    # fails loudly with exit 2 instead of papering over it
    out = tmp_path / "out"
    rc = main(["debruijn", "--points", "48", "--m", "2.0", "--sigma0", "0.3",
               "--half-width", "3", "--t-final", "0.05", "--n-checks", "3",
               "--t-burn", "0.01", "--out-dir", str(out)])
    assert rc == 2
    s = _summary(out, "debruijn_summary.json")
    assert s["exit_status"] == 2
    assert s["results"]["worst_rel_err"] > 2e-2


def test_uncertainty_saturating_profile(tmp_path):
    out = tmp_path / "out"
    assert main(["uncertainty", "--psi", "qgauss", "--q", "1.2",
                 "--out-dir", str(out)]) == 0
    s = _summary(out, "uncertainty_summary.json")
    assert s["results"]["saturated"] is True
    assert abs(s["results"]["margin"]) <= 1e-6 * s["results"]["rhs"]


@pytest.mark.filterwarnings("ignore::qfisher.errors.BoundaryMassWarning")
def test_strict_escalates_hygiene_warnings(tmp_path, capsys):
    # sigma 1.9 on the default box leaves just enough boundary mass to warn
    args = ["uncertainty", "--sigma", "1.9"]
    assert main(args + ["--out-dir", str(tmp_path / "a")]) == 0
    assert main(args + ["--strict", "--out-dir", str(tmp_path / "b")]) == 1
    assert "boundary" in capsys.readouterr().err


def test_summary_exit_status_matches_return_code(tmp_path):
    out = tmp_path / "out"
    rc = main(["uncertainty", "--out-dir", str(out)])
    assert rc == 0
    assert _summary(out, "uncertainty_summary.json")["exit_status"] == rc
