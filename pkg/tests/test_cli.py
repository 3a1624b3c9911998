"""End-to-end CLI behavior: subcommands, exit codes, config files, output
artifacts, and determinism of generated files."""

import json
import os

import pytest

from flaglap.cli import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_REFUSED,
    EXIT_USAGE,
    main,
)


def run(args):
    return main(args)


def test_qbinom_prints_value(capsys):
    assert run(["qbinom", "--n", "4", "--k", "2", "--q", "2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "35"


def test_usage_error_exit_code(capsys):
    assert run(["spectrum", "--n", "3"]) == EXIT_USAGE
    assert run(["nonsense"]) == EXIT_USAGE


def test_spectrum_both_writes_reports(tmp_path):
    out = tmp_path / "out"
    code = run(["spectrum", "--n", "3", "--q", "2", "--source", "both",
                "--out-dir", str(out)])
    assert code == EXIT_OK
    names = {p.name for p in out.iterdir()}
    assert "spectrum-blocks-n3-q2.json" in names
    assert "spectrum-numeric-n3-q2.json" in names
    assert "reconcile-n3-q2.json" in names
    assert "manifest.json" in names
    blocks_report = json.loads((out / "spectrum-blocks-n3-q2.json").read_text())
    assert sum(e["multiplicity"] for e in blocks_report["eigenvalues"]) == 14
    reconcile = json.loads((out / "reconcile-n3-q2.json").read_text())
    assert reconcile["pass"] is True
    manifest = json.loads((out / "manifest.json").read_text())
    assert all(c["status"] != "fail" for c in manifest["checks"])


def test_spectrum_csv_format(tmp_path):
    out = tmp_path / "out"
    code = run(["spectrum", "--n", "4", "--q", "2", "--source", "blocks",
                "--out-dir", str(out), "--format", "csv"])
    assert code == EXIT_OK
    text = (out / "spectrum-blocks-n4-q2.csv").read_text()
    assert text.splitlines()[0].startswith("n,q,source,value_decimal")


def test_spectrum_numeric_cap_refusal(tmp_path):
    code = run(["spectrum", "--n", "4", "--q", "3", "--source", "numeric",
                "--out-dir", str(tmp_path / "o"), "--max-numeric", "10"])
    assert code == EXIT_REFUSED


def test_verify_identities_pass(tmp_path):
    out = tmp_path / "o"
    code = run(["verify", "--suite", "identities", "--n", "3", "--q", "2,3",
                "--out-dir", str(out)])
    assert code == EXIT_OK
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["checks"]
    assert all(c["status"] == "pass" for c in manifest["checks"])


def test_verify_blocks_pass(tmp_path):
    out = tmp_path / "o"
    code = run(["verify", "--suite", "blocks", "--n", "3", "--q", "2",
                "--out-dir", str(out)])
    assert code == EXIT_OK


def test_verify_rejects_composite_q(tmp_path):
    code = run(["verify", "--suite", "blocks", "--n", "3", "--q", "4",
                "--out-dir", str(tmp_path / "o")])
    assert code == EXIT_USAGE


def test_distinct_table(tmp_path, capsys):
    out = tmp_path / "o"
    code = run(["distinct", "--n", "3", "--q", "2,3", "--out-dir", str(out)])
    assert code == EXIT_OK
    rows = json.loads((out / "distinct.json").read_text())
    assert all(r["distinct"] <= r["bound"] for r in rows)
    assert any(r["first_equality_q"] == 2 for r in rows)
    assert "bound 4" in capsys.readouterr().out


def test_asymptotics_artifacts(tmp_path):
    out = tmp_path / "o"
    code = run(["asymptotics", "--n", "3", "--q", "2,3,5,7,11,13",
                "--out-dir", str(out)])
    assert code == EXIT_OK
    names = {p.name for p in out.iterdir()}
    assert "convergence-n3-k1.csv" in names
    assert "containment-n3.json" in names
    assert any(name.startswith("series-n3-k1") for name in names)
    containment = json.loads((out / "containment-n3.json").read_text())
    assert containment["empirical_q0"] is not None


def test_subspaces_dump(tmp_path, capsys):
    out = tmp_path / "o"
    code = run(["subspaces", "--n", "3", "--q", "2", "--k", "1",
                "--out-dir", str(out)])
    assert code == EXIT_OK
    lines = (out / "subspaces-n3-q2.txt").read_text().strip().splitlines()
    assert len(lines) == 7


def test_config_file_defaults_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n=3\nq=2\nout-dir=" + str(tmp_path / "from_cfg") + "\n")
    code = run(["--config", str(cfg), "distinct"])
    assert code == EXIT_OK
    assert (tmp_path / "from_cfg" / "distinct.json").exists()
    code = run(["--config", str(cfg), "distinct",
                "--out-dir", str(tmp_path / "override")])
    assert code == EXIT_OK
    assert (tmp_path / "override" / "distinct.json").exists()


def test_deterministic_outputs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["spectrum", "--n", "3", "--q", "2", "--source", "blocks",
                    "--out-dir", str(out)]) == EXIT_OK
    assert (a / "spectrum-blocks-n3-q2.json").read_bytes() == (
        b / "spectrum-blocks-n3-q2.json"
    ).read_bytes()


def test_no_stray_tmp_files(tmp_path):
    out = tmp_path / "o"
    run(["distinct", "--n", "3", "--q", "2", "--out-dir", str(out)])
    assert not [p for p in out.iterdir() if p.suffix == ".tmp"]
