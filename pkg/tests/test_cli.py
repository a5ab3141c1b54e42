import json
import math
import os

import jsonschema
import pytest

from beurling.cli import EXIT_CAPABILITY, EXIT_OK, EXIT_REJECTED, run

SCHEMA_DIR = os.path.join(os.path.dirname(__file__), "..", "docs", "schemas")


def _schema(name):
    with open(os.path.join(SCHEMA_DIR, name)) as fh:
        return json.load(fh)


def _validate(doc, schema_name):
    jsonschema.validate(doc, _schema(schema_name))


def _read_manifest(path):
    with open(path) as fh:
        doc = json.load(fh)
    _validate(doc, "manifest.schema.json")
    return doc


# ---------------------------------------------------------------------------
# sieve
# ---------------------------------------------------------------------------


def test_sieve_csv(tmp_path, capsys):
    assert run(["sieve", "--limit", "10"]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "n,mu,mertens"
    assert len(out) == 11
    assert out[1] == "1,1,1"
    assert out[4] == "4,0,-1"
    assert out[10] == "10,1,-1"


def test_sieve_manifest_and_digest(tmp_path):
    target = tmp_path / "sieve.csv"
    assert run(["sieve", "--limit", "100", "--out", str(target)]) == EXIT_OK
    manifest = _read_manifest(str(target) + ".manifest.json")
    assert manifest["subcommand"] == "sieve"
    assert manifest["outputs"][0]["path"] == str(target)
    # Replay from the manifest argv: digests must be identical.
    replay = tmp_path / "replay.csv"
    argv = [a.replace(str(target), str(replay)) for a in manifest["argv"]]
    assert run(argv) == EXIT_OK
    replay_manifest = _read_manifest(str(replay) + ".manifest.json")
    assert replay_manifest["outputs"][0]["sha256"] == manifest["outputs"][0]["sha256"]


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------


def test_zeta_json(capsys):
    assert run(["zeta", "--sigma", "2", "--tau", "0"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    _validate(doc, "zeta.schema.json")
    assert abs(doc["re"] - math.pi**2 / 6) < 1e-10
    assert doc["abs_error_bound"] <= 1e-12


def test_zeta_pole_exit_code(capsys):
    assert run(["zeta", "--sigma", "1", "--tau", "0"]) == EXIT_REJECTED


def test_zeta_capability_exit_code(capsys):
    assert run(["zeta", "--sigma", "0.5", "--tau", "50000", "--error", "1e-14"]) == EXIT_CAPABILITY


# ---------------------------------------------------------------------------
# eval / distance
# ---------------------------------------------------------------------------


def test_eval_grid(capsys):
    assert run([
        "eval", "--kind", "natural", "--n", "2", "--x-grid", "0.4:0.4:1",
    ]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "x,value"
    x, value = out[1].split(",")
    assert float(value) == pytest.approx(0.25, abs=1e-12)


def test_eval_unknown_flag_is_usage_error(capsys):
    assert run(["eval", "--kind", "natural", "--frobnicate", "1"]) == EXIT_REJECTED


def test_distance_json_matches_library(tmp_path, capsys):
    assert run([
        "distance", "--kind", "regularized", "--eps", "0.2", "--n", "100",
        "--x-min", "1e-3",
    ]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    _validate(doc, "distance.schema.json")
    assert doc["distance"] > 0
    assert doc["error_estimate"] > 0

    from beurling.approximants import ApproximantKind, ApproximantSpec
    from beurling.arith import moebius_sieve
    from beurling.l2engine import QuadratureConfig, panel_integrate

    rep = panel_integrate(
        ApproximantSpec(ApproximantKind.REGULARIZED, n=100, eps=0.2),
        True,
        QuadratureConfig(x_min=1e-3),
        moebius_sieve(100),
    )
    assert doc["distance"] == rep.distance  # bit-for-bit


def test_distance_rejects_bad_kind(capsys):
    assert run(["distance", "--kind", "fancy", "--n", "2"]) == EXIT_REJECTED


# ---------------------------------------------------------------------------
# mellin
# ---------------------------------------------------------------------------


def test_mellin_both_paths(capsys):
    assert run([
        "mellin", "--kind", "regularized", "--n", "5", "--eps", "0.5",
        "--weight-eps", "0.25", "--tau", "0,3", "--mode", "both",
        "--x-min", "1e-5",
    ]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "tau,re,im,abs,provenance"
    rows = [ln.split(",") for ln in lines[1:]]
    numeric = {r[0]: complex(float(r[1]), float(r[2])) for r in rows if r[4] == "numeric_integral"}
    closed = {r[0]: complex(float(r[1]), float(r[2])) for r in rows if r[4] == "closed_form"}
    assert set(numeric) == set(closed)
    for tau, val in numeric.items():
        assert abs(val - closed[tau]) < 1e-5


# ---------------------------------------------------------------------------
# lemma
# ---------------------------------------------------------------------------


def test_lemma_zratio_summary(tmp_path):
    target = tmp_path / "zratio.csv"
    assert run([
        "lemma", "--which", "zratio", "--eps-list", "0,0.1",
        "--tau-grid", "0,1,10,100,1000", "--out", str(target),
    ]) == EXIT_OK
    summary_path = tmp_path / "zratio.summary.json"
    with open(summary_path) as fh:
        summary = json.load(fh)
    _validate(summary, "lemma_summary.schema.json")
    assert summary["which"] == "zratio"
    assert summary["sup_ratio"] >= 1.0
    manifest = _read_manifest(str(target) + ".manifest.json")
    paths = {o["path"] for o in manifest["outputs"]}
    assert str(target) in paths and str(summary_path) in paths


def test_lemma_bs_header_carries_hypothesis(capsys):
    assert run([
        "lemma", "--which", "bs", "--n-list", "100,1000",
        "--tau-grid", "0", "--table-limit", "1000",
    ]) == EXIT_OK
    out = capsys.readouterr().out
    assert "working assumption" in out


def test_lemma_cauchy(capsys):
    assert run([
        "lemma", "--which", "cauchy", "--eps", "0.25", "--n-list", "10,20,40",
        "--x-min", "1e-3",
    ]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "m,n,increment,error_estimate"
    assert len([ln for ln in out if not ln.startswith("#")]) == 3


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def test_report_eps_sweep(tmp_path):
    out_dir = tmp_path / "rep"
    assert run([
        "report", "--experiment", "eps-sweep", "--eps", "0.4,0.2",
        "--x-min", "1e-3", "--out-dir", str(out_dir),
    ]) == EXIT_OK
    with open(out_dir / "eps-sweep.summary.json") as fh:
        summary = json.load(fh)
    _validate(summary, "report_summary.schema.json")
    assert summary["monotone_nonincreasing"] is True
    manifest = _read_manifest(str(out_dir / "manifest.json"))
    assert len(manifest["outputs"]) == 3


def test_report_zratio_identity(tmp_path):
    out_dir = tmp_path / "repz"
    assert run([
        "report", "--experiment", "zratio", "--eps-list", "0",
        "--tau-grid", "0,1,10", "--out-dir", str(out_dir),
    ]) == EXIT_OK
    with open(out_dir / "zratio.summary.json") as fh:
        summary = json.load(fh)
    assert summary["sup_ratio"] == 1.0


def test_report_replay_determinism(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    argv = [
        "report", "--experiment", "slow-bound", "--n-list", "2,10",
        "--x-min", "1e-3",
    ]
    assert run(argv + ["--out-dir", str(out_a)]) == EXIT_OK
    manifest_a = _read_manifest(str(out_a / "manifest.json"))
    replay_argv = [tok.replace(str(out_a), str(out_b)) for tok in manifest_a["argv"]]
    assert run(replay_argv) == EXIT_OK
    manifest_b = _read_manifest(str(out_b / "manifest.json"))
    digests_a = [o["sha256"] for o in manifest_a["outputs"]]
    digests_b = [o["sha256"] for o in manifest_b["outputs"]]
    assert digests_a == digests_b
