import os
import subprocess

import pytest

BIN = os.environ.get("COCYCLELAB_BIN")

pytestmark = pytest.mark.skipif(BIN is None, reason="COCYCLELAB_BIN not set")


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("COCYCLELAB_OUT", None)
    if env:
        full_env.update(env)
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env)


def test_fox_writes_expected_artifacts(tmp_path):
    out = tmp_path / "fox"
    r = run("fox", "--word", "stST", "--radius", "2", "--out", str(out))
    assert r.returncode == 0, r.stderr
    for name in ("fox_s.csv", "fox_t.csv", "nullpair.csv", "xi_s.csv", "xi_t.csv", "MANIFEST.txt"):
        assert (out / name).is_file(), name
    manifest = (out / "MANIFEST.txt").read_text()
    assert manifest.startswith("tool: cocyclelab 0.1.0\nsubcommand: fox\n")
    assert "word=stST" in manifest


def test_usage_errors_exit_2(tmp_path):
    r = run("fox", "--no-such-flag")
    assert r.returncode == 2
    assert r.stderr.startswith("error[usage]")

    r = run("nosuchcommand")
    assert r.returncode == 2


def test_precondition_errors_exit_2(tmp_path):
    r = run("flow", "--real-only", "--out", str(tmp_path / "flow"))
    assert r.returncode == 2
    assert r.stderr.startswith("error[precondition]")

    r = run("nullpair", "--word", "stST", "--rmax", "9", "--out", str(tmp_path / "np"))
    assert r.returncode == 2


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nword = stST\nrmax = 3\n")
    out = tmp_path / "np"
    r = run("nullpair", "--config", str(cfg), "--out", str(out))
    assert r.returncode == 0, r.stderr
    rows = (out / "nullpair.csv").read_text().strip().splitlines()
    assert rows[0] == "radius,residual,norm1,norm2"
    assert len(rows) == 3  # radii 2 and 3

    # Command line flags win over the config file.
    out2 = tmp_path / "np2"
    r2 = run("nullpair", "--config", str(cfg), "--rmax", "2", "--out", str(out2))
    assert r2.returncode == 0, r2.stderr
    rows2 = (out2 / "nullpair.csv").read_text().strip().splitlines()
    assert len(rows2) == 2

    bad = tmp_path / "bad.cfg"
    bad.write_text("wordd = stST\n")
    r3 = run("nullpair", "--config", str(bad), "--out", str(tmp_path / "np3"))
    assert r3.returncode == 2
    assert "unknown config key" in r3.stderr


def test_env_out_overrides_flag(tmp_path):
    env_dir = tmp_path / "from_env"
    flag_dir = tmp_path / "from_flag"
    r = run("tree", "--radius", "2", "--out", str(flag_dir), env={"COCYCLELAB_OUT": str(env_dir)})
    assert r.returncode == 0, r.stderr
    assert (env_dir / "tree.csv").is_file()
    assert not flag_dir.exists()


def test_spectral_runs_are_deterministic(tmp_path):
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        r = run("spectral", "--measure", "atomic", "--nmax", "32", "--seed", "5",
                "--out", str(out))
        assert r.returncode == 0, r.stderr
        outs.append((out / "spectral.csv").read_bytes())
    assert outs[0] == outs[1]


def test_classify_reads_profiles(tmp_path):
    out = tmp_path / "ed"
    r = run("edelstein", "--nmax", "12", "--upto", "120", "--out", str(out))
    assert r.returncode == 0, r.stderr

    first_norm = float((out / "edelstein.csv").read_text().splitlines()[1].split(",")[-1])
    out2 = tmp_path / "cls"
    r2 = run("classify", "--input", str(out / "edelstein.csv"),
             "--bound", str(first_norm), "--recurrence", str(first_norm),
             "--out", str(out2))
    assert r2.returncode == 0, r2.stderr
    assert r2.stdout.splitlines()[0].startswith("NeitherLike (heuristic)")
    assert (out2 / "classification.csv").is_file()


def test_repro_subset(tmp_path):
    out = tmp_path / "repro"
    r = run("repro", "--only", "4", "--out", str(out))
    assert r.returncode == 0, r.stderr
    assert "PASS" in r.stdout
    lines = (out / "acceptance.csv").read_text().strip().splitlines()
    assert lines[0] == "number,name,passed,detail"
    assert len(lines) == 2

    r2 = run("repro", "--only", "99", "--out", str(tmp_path / "r99"))
    assert r2.returncode == 2
