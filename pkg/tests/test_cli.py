import json
import math
import os
from pathlib import Path

import pytest

from ccr_forge import __version__
from ccr_forge.cli import EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK, main
from ccr_forge.config import EXPERIMENTS

GOLDEN = Path(__file__).parent / "golden" / "clock_report.json"
REF_SYSTEM = {"l": 1.0, "mu": 1.0, "gamma": math.pi / 4, "K": 8}


def write_config(tmp_path, name="cfg.json", **fields):
    raw = {"system": dict(REF_SYSTEM)}
    raw.update(fields)
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return str(path)


def run(tmp_path, *extra, **fields):
    out = tmp_path / "out"
    code = main(["run", write_config(tmp_path, **fields), "--out", str(out), *extra])
    return code, out


def test_version(capsys):
    assert main(["version"]) == EXIT_OK
    assert __version__ in capsys.readouterr().out


def test_clock_smoke(tmp_path, capsys):
    code, out = run(tmp_path, experiment="clock")
    assert code == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] and report["experiment"] == "clock"
    assert set(report["tolerances"]) >= {"clock", "hermitian"}
    lines = (out / "clock_series.csv").read_text().splitlines()
    assert lines[0] == "t,expect_closed,expect_numeric,product_closed,product_numeric"
    assert len(lines) == 1001
    assert "PASS" in capsys.readouterr().out


def _close(a, b, rtol=1e-9, atol=1e-12):
    if isinstance(a, dict):
        return a.keys() == b.keys() and all(_close(a[k], b[k]) for k in a)
    if isinstance(a, list):
        return len(a) == len(b) and all(_close(x, y) for x, y in zip(a, b))
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(a, b, rel_tol=rtol, abs_tol=atol)
    return a == b


def test_clock_golden(tmp_path):
    code, out = run(tmp_path, experiment="clock")
    assert code == EXIT_OK
    got = json.loads((out / "report.json").read_text())
    if os.environ.get("CCR_FORGE_REGEN_GOLDEN"):
        GOLDEN.write_text(json.dumps(got, indent=2, sort_keys=True) + "\n")
    want = json.loads(GOLDEN.read_text())
    # rounding-level error terms are compared by bound, not value
    for pair in got["results"]["pairs"] + want["results"]["pairs"]:
        for key in ("max_expectation_error", "max_product_error", "max_saturation_error",
                    "compression_error", "two_level_ccr_residual"):
            assert pair.pop(key) <= 1e-10
    assert _close(got, want)


def test_degenerate_spectrum_exit_2(tmp_path, capsys):
    system = dict(REF_SYSTEM, gamma=math.pi / 2)
    code, out = run(tmp_path, experiment="verify-dense", system=system)
    assert code == EXIT_INVALID
    err = capsys.readouterr().err
    assert "k=-1 and k=0" in err
    assert not out.exists()


def test_zero_gamma_rejected_for_arrival(tmp_path, capsys):
    code, _ = run(tmp_path, experiment="arrival", system=dict(REF_SYSTEM, gamma=0.0))
    assert code == EXIT_INVALID
    assert "gamma" in capsys.readouterr().err


def test_unknown_key_warns_or_fails(tmp_path, capsys):
    code, _ = run(tmp_path, experiment="defect", bogus=1)
    assert code == EXIT_OK
    assert "bogus" in capsys.readouterr().err
    code, _ = run(tmp_path, "--strict", experiment="defect", bogus=1)
    assert code == EXIT_INVALID


@pytest.mark.parametrize("fields", [
    {},
    {"experiment": "nope"},
    {"experiment": "clock", "quad_order": 1},
    {"experiment": "clock", "tolerances": {"clock": -1}},
    {"experiment": "clock", "system": {"l": 1, "mu": 1, "gamma": 4.0, "K": 8}},
])
def test_schema_violations(tmp_path, fields):
    assert run(tmp_path, **fields)[0] == EXIT_INVALID


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["run", str(p)]) == EXIT_INVALID
    assert main(["validate", str(tmp_path / "missing.json")]) == EXIT_INVALID


def test_validate(tmp_path, capsys):
    assert main(["validate", write_config(tmp_path, experiment="clock")]) == EXIT_OK
    assert "ok: clock" in capsys.readouterr().out
    bad = write_config(tmp_path, experiment="clock", pairs=[[0, 20]])
    assert main(["validate", bad]) == EXIT_INVALID


def test_failed_check_exit_1(tmp_path):
    code, out = run(tmp_path, experiment="verify-dense", tolerances={"dense_ccr": 1e-30})
    assert code == EXIT_CHECK_FAILED
    assert json.loads((out / "report.json").read_text())["passed"] is False


def test_under_resolved_kernel_exit_1(tmp_path, capsys):
    code, _ = run(tmp_path, experiment="crosscheck-toa", system=dict(REF_SYSTEM, K=40), quad_order=8)
    assert code == EXIT_CHECK_FAILED
    assert "quad_order" in capsys.readouterr().err


def test_thread_env(tmp_path, monkeypatch):
    monkeypatch.setenv("CCR_FORGE_THREADS", "many")
    assert run(tmp_path, experiment="defect")[0] == EXIT_INVALID
    monkeypatch.setenv("CCR_FORGE_THREADS", "4")
    code, out = run(tmp_path, experiment="defect")
    threaded = (out / "report.json").read_bytes()
    monkeypatch.setenv("CCR_FORGE_THREADS", "1")
    main(["run", write_config(tmp_path, experiment="defect"), "--out", str(tmp_path / "serial")])
    assert code == EXIT_OK and threaded == (tmp_path / "serial" / "report.json").read_bytes()


@pytest.mark.parametrize("experiment", EXPERIMENTS)
def test_every_experiment_runs_and_repeats(tmp_path, experiment):
    fields = {"experiment": experiment}
    if experiment == "verify-closed":
        fields["K_series"] = [16, 32]
    if experiment == "arrival":
        # the symmetric-collapse bound is only met from K = 64 up
        fields["system"] = dict(REF_SYSTEM, K=64)
    code, out = run(tmp_path, **fields)
    assert code == EXIT_OK
    again = tmp_path / "again"
    assert main(["run", write_config(tmp_path, **fields), "--out", str(again)]) == EXIT_OK
    for f in sorted(p.name for p in out.iterdir() if p.name != "timing.json"):
        assert (out / f).read_bytes() == (again / f).read_bytes(), f
