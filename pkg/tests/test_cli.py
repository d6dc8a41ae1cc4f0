import json
import subprocess
import sys

import pytest

from hopfqt.cli import load_schema, main, validate_json


def run_cli(*argv, expect=0):
    rc = main(list(argv))
    assert rc == expect, f"exit {rc} != {expect} for {argv}"


def run_proc(*argv):
    return subprocess.run([sys.executable, "-m", "hopfqt.cli", *argv],
                          capture_output=True, text=True)


# ---------------------------------------------------------------------------


def test_construct_and_verify_roundtrip(tmp_path):
    dump = tmp_path / "a0.txt"
    report = tmp_path / "verify.json"
    run_cli("construct", "--family", "A", "--p", "7", "--q", "3",
            "--l", "0", "--out", str(dump))
    assert dump.exists()
    run_cli("verify", "--in", str(dump), "--out", str(report))
    doc = json.loads(report.read_text())
    validate_json(doc, load_schema("verify.schema.json"))
    assert doc["dim"] == 63
    assert doc["trace_S2"] == "63"
    assert doc["semisimple"] and doc["S2_is_id"] and doc["S4_is_id"]
    assert all(a["passed"] for a in doc["axioms"])


def test_construct_group_family(tmp_path):
    dump = tmp_path / "b1.txt"
    run_cli("construct", "--family", "beta1", "--p", "3", "--q", "5",
            "--out", str(dump))
    head = dump.read_text().splitlines()[:2]
    assert head[1] == "dim 75"


def test_construct_B_dump_dimension(tmp_path):
    dump = tmp_path / "b.txt"
    run_cli("construct", "--family", "B", "--p", "3", "--q", "7",
            "--lam", "1", "--out", str(dump))
    assert "dim 147" in dump.read_text().splitlines()[1]


def test_parameter_error_exit_code():
    run_cli("construct", "--family", "A", "--p", "7", "--q", "3",
            "--t", "3", expect=2)
    run_cli("construct", "--family", "beta3", "--p", "3", "--q", "5",
            "--m", "2", expect=2)
    run_cli("reproduce", "--p", "4", "--q", "3", expect=2)


def test_malformed_dump_exit_code(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a dump\n")
    run_cli("verify", "--in", str(bad), expect=3)
    run_cli("verify", "--in", str(tmp_path / "missing.txt"), expect=3)


def test_mutated_dump_fails_verification(tmp_path):
    dump = tmp_path / "a0.txt"
    run_cli("construct", "--family", "A", "--p", "7", "--q", "3",
            "--l", "1", "--out", str(dump))
    lines = dump.read_text().splitlines()
    idx, mutated = next(
        (i, ln) for i, ln in enumerate(lines)
        if ln.startswith("MUL") and ln.split()[4] == "1"
        and ln.split()[5] == "1" and ln.split()[6] == "0")
    parts = mutated.split()
    parts[5], parts[6] = "0", "1"  # 1 -> zeta_3
    lines[idx] = " ".join(parts)
    bad = tmp_path / "mutated.txt"
    bad.write_text("\n".join(lines) + "\n")
    rc = main(["verify", "--in", str(bad), "--out", str(tmp_path / "r.json")])
    assert rc == 1
    doc = json.loads((tmp_path / "r.json").read_text())
    assert not all(a["passed"] for a in doc["axioms"])


def test_classify_counts(tmp_path):
    out = tmp_path / "r.json"
    run_cli("classify-qt", "--family", "A", "--p", "7", "--q", "3",
            "--l", "0", "--out", str(out))
    doc = json.loads(out.read_text())
    validate_json(doc, load_schema("report.schema.json"))
    assert doc["count"] == 3 and doc["oracle_equivalent"]
    run_cli("classify-qt", "--family", "A", "--p", "7", "--q", "3",
            "--l", "1", "--out", str(out))
    doc = json.loads(out.read_text())
    assert doc["count"] == 0 and doc["oracle_equivalent"]
    run_cli("classify-qt", "--family", "gamma3", "--p", "7", "--q", "3",
            "--out", str(out))
    doc = json.loads(out.read_text())
    assert doc["count"] == 3 and doc["oracle_equivalent"]


def test_classify_bdual_reports_nullspace(tmp_path):
    out = tmp_path / "r.json"
    run_cli("classify-qt", "--family", "Bdual", "--p", "3", "--q", "7",
            "--lam", "0", "--out", str(out))
    doc = json.loads(out.read_text())
    assert doc["count"] == 0
    assert doc["structures"][0]["nullspace_dim"] == 49
    assert doc["oracle_equivalent"]


def test_reports_byte_stable(tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    for out in (out1, out2):
        run_cli("classify-qt", "--family", "gamma5", "--p", "7", "--q", "3",
                "--out", str(out))
    d1 = json.loads(out1.read_text())
    d2 = json.loads(out2.read_text())
    d1.pop("elapsed_ms")
    d2.pop("elapsed_ms")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_reproduce_small(tmp_path):
    out = tmp_path / "r.json"
    run_cli("reproduce", "--p", "3", "--q", "5", "--out", str(out))
    doc = json.loads(out.read_text())
    validate_json(doc, load_schema("report.schema.json"))
    assert doc["oracle_equivalent"]
    texts = [c["claim"] for c in doc["structures"]]
    assert any("beta3 does not exist" in t for t in texts)
    assert any("beta7" in t for t in texts)


def test_text_format(tmp_path):
    out = tmp_path / "r.txt"
    run_cli("classify-qt", "--family", "gamma5", "--p", "7", "--q", "3",
            "--format", "text", "--out", str(out))
    text = out.read_text()
    assert "count: 3" in text


def test_entrypoint_subprocess():
    r = run_proc("construct", "--family", "cyclic-bogus", "--p", "3", "--q", "5")
    assert r.returncode == 2


def test_schema_validator_rejects():
    schema = load_schema("report.schema.json")
    with pytest.raises(ValueError):
        validate_json({"claim": "x"}, schema)
    with pytest.raises(ValueError):
        validate_json({"claim": 1, "parameters": {}, "count": 0,
                       "structures": [], "oracle_equivalent": True,
                       "elapsed_ms": 0}, schema)
