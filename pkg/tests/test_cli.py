import json
import subprocess
import sys

import pytest

from sal import cli, designs


@pytest.fixture
def files(tmp_path, fano, ag2):
    out = {}
    for name, s in (("fano", fano), ("ag2", ag2)):
        p = tmp_path / f"{name}.sts"
        designs.write_sts(s, str(p))
        out[name] = str(p)
    return out


def run_json(tmp_path, argv):
    target = tmp_path / "out.json"
    code = cli.main(argv + ["--json", str(target)])
    return code, json.loads(target.read_text()), target.read_bytes()


def test_construct_round_trip(tmp_path):
    target = tmp_path / "ag.sts"
    assert cli.main(["construct", "ag", "2", "-o", str(target)]) == 0
    s = designs.read_sts(str(target))
    assert s.n == 9 and s.b == 12


def test_construct_stdout(capsys):
    assert cli.main(["construct", "fano"]) == 0
    assert capsys.readouterr().out.startswith("7\n")


def test_construct_bad_order():
    assert cli.main(["construct", "bose", "7"]) == 2


def test_validate(tmp_path, files):
    code, data, _ = run_json(tmp_path, ["validate", files["ag2"]])
    assert code == 0 and data["valid_sts"] and data["hall"] and data["r"] == 4
    bad = tmp_path / "bad.sts"
    bad.write_text("7\n1 2 3\n1 2 4\n")
    code, data, _ = run_json(tmp_path, ["validate", str(bad)])
    assert code == 1 and not data["valid_sts"]


def test_analyze_ag_beta_one(tmp_path, files):
    code, data, _ = run_json(tmp_path, ["analyze", files["ag2"], "--beta", "1"])
    assert code == 0
    v = data["reports"][0]["verdicts"]
    assert v["simplicity"]["details"]["verdict"] == "not_simple"
    assert len(v["simplicity"]["details"]["summands"]) == 4
    assert v["fusion"]["status"] == "excluded"
    assert v["miyamoto_group"]["details"]["order"] == 18
    assert v["killing_gram"]["details"]["matches_omega_times_nI_minus_J"] is False
    assert "timings" not in data["reports"][0]


def test_analyze_negative_beta(tmp_path, files):
    code, data, _ = run_json(tmp_path, ["analyze", files["ag2"], "--beta", "-4/3", "--timings"])
    assert code == 0
    r = data["reports"][0]
    assert r["beta"] == "-4/3" and r["beta_minus"] == "1/1"
    assert r["verdicts"]["simplicity"]["details"]["verdict"] == "simple"
    assert set(r["timings"]) == set(cli.CHECKS)


def test_analyze_fano_zero(tmp_path, files):
    code, data, _ = run_json(tmp_path, ["analyze", files["fano"], "--beta", "0"])
    assert code == 0
    v = data["reports"][0]["verdicts"]
    assert v["miyamoto_group"]["status"] == "excluded"
    assert v["fusion"]["status"] == "excluded"
    assert v["axis_decomposition"]["details"]["case"] == "beta_is_0"


def test_analyze_fusion_pass(tmp_path, files):
    code, data, _ = run_json(tmp_path, ["analyze", files["ag2"], "--beta", "1/8",
                                        "--checks", "fusion"])
    assert code == 0
    v = data["reports"][0]["verdicts"]
    assert v["fusion"]["details"]["law"] == "jordan"
    assert v["exactness"]["status"] == "excluded"


def test_analyze_fusion_fails_off_hall(tmp_path, fano):
    s = designs.construct_skolem(13)
    p = tmp_path / "sk.sts"
    designs.write_sts(s, str(p))
    code, data, _ = run_json(tmp_path, ["analyze", str(p), "--beta", "2", "--checks", "fusion"])
    assert code == 1
    f = data["reports"][0]["verdicts"]["fusion"]
    assert f["status"] == "fail" and f["details"]["first_failure"]["witness"]


def test_closure_cap_undecided(tmp_path, files):
    code, data, _ = run_json(tmp_path, ["analyze", files["ag2"], "--beta", "2",
                                        "--checks", "miyamoto_group", "--closure-cap", "5"])
    assert code == 1
    assert data["reports"][0]["verdicts"]["miyamoto_group"]["status"] == "undecided"


def test_json_is_byte_identical(tmp_path, files):
    argv = ["analyze", files["fano"], "--beta", "1/2", "--beta", "-3/2"]
    _, _, first = run_json(tmp_path, argv)
    _, _, second = run_json(tmp_path, argv)
    assert first == second


def test_export_algebra(tmp_path, files):
    target = tmp_path / "alg.json"
    assert cli.main(["analyze", files["fano"], "--beta", "2", "--checks", "exactness",
                     "--export-algebra", str(target)]) == 0
    data = json.loads(target.read_text())
    assert data["dim"] == 6 and data["beta"] == "2/1"


def test_rejects_decimal_and_unknown_checks(files):
    assert cli.main(["analyze", files["fano"], "--beta", "0.5"]) == 2
    assert cli.main(["analyze", files["fano"], "--beta", "-0.5"]) == 2
    assert cli.main(["analyze", files["fano"], "--checks", "bogus"]) == 2
    assert cli.main(["analyze", "/nonexistent.sts"]) == 2


@pytest.mark.parametrize("beta,flag", [("-3/2", "beta_minus=1/1"), ("1", "beta_plus=1/1"),
                                       ("7/12", "beta_plus=1/2"), ("0", "beta_plus=beta_minus")])
def test_sweep_flags(tmp_path, files, beta, flag):
    code, data, _ = run_json(tmp_path, ["sweep", files["fano"], "--beta", beta])
    assert code == 0
    row = next(r for r in data["rows"] if r["beta"] == cli.fmt(cli.parse_beta(beta)))
    assert flag in row["flags"]


def test_catalog(tmp_path, files):
    code, data, _ = run_json(tmp_path, ["catalog", files["fano"], "--beta", "1", "--block", "1,2,4"])
    assert code == 0
    entries = data["catalogs"][0]["entries"]
    assert entries[0]["label"] == "e0_B" and len(entries[0]["coords"]) == 7
    assert cli.main(["catalog", files["fano"], "--beta", "1", "--block", "1,2,3"]) == 2


def test_group(tmp_path, files):
    code, data, _ = run_json(tmp_path, ["group", files["ag2"]])
    assert code == 0 and data["order"] == 18 and data["three_transpositions"]["commutator_3_group"]
    code, data, _ = run_json(tmp_path, ["group", files["fano"]])
    assert code == 1 and data["label"].startswith("point-permutation")


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "sal.cli", "analyze", files["fano"],
                           "--beta", "-3/2", "--checks", "exactness,invariance"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "beta=-3/2" in proc.stdout and "invariance" in proc.stdout


def test_traceability_names_resolve(tmp_path, files):
    import importlib
    _, data, _ = run_json(tmp_path, ["analyze", files["fano"], "--beta", "2", "--checks", "exactness"])
    assert set(data["traceability"]) == set(cli.CHECKS) == set(data["reports"][0]["verdicts"])
    for names in data["traceability"].values():
        for name in names:
            pkg, mod, *attrs = name.split(".")
            obj = importlib.import_module(f"{pkg}.{mod}")
            for part in attrs:
                obj = getattr(obj, part)
            assert callable(obj)
