import hashlib
import json
import subprocess
import sys

import pytest

from krspec.cli import build_corpus, checksums, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_rayleigh(capsys, fixtures_dir):
    code, out, _ = run(capsys, "spectrum", fixtures_dir / "rayleigh_d123.scx", "--k", 3)
    assert code == 0
    lines = out.splitlines()
    table = dict(line.split(" ", 1) for line in lines[: lines.index("witness")] if line[:1].isdigit())
    assert [float(table[k]) for k in "123"] == pytest.approx([1, 2, 3], rel=0.05)
    assert out.startswith("# command spectrum\n# tol 0\n")


def test_verify_rp2_witness(capsys, fixtures_dir):
    code, out, _ = run(capsys, "verify", fixtures_dir / "dyck.scx", fixtures_dir / "rp2_witness.cert")
    assert code == 0
    assert "verdict all-checks-pass" in out.splitlines()


def test_verify_against_lower(capsys, fixtures_dir):
    code, out, _ = run(capsys, "verify", fixtures_dir / "dyck.scx", fixtures_dir / "rp2_witness.cert",
                       "--against", fixtures_dir / "dyck_witness.cert")
    assert code == 0
    assert out.splitlines()[-1] == "obstruction holds between 0 and 1"


def test_missing_file_is_domain_error(capsys):
    code, out, err = run(capsys, "spectrum", "missing.scx")
    assert code == 1 and out == ""
    assert "file not found" in err


def test_bad_certificate_is_domain_error(capsys, fixtures_dir, tmp_path):
    bad = tmp_path / "bad.cert"
    bad.write_text("level 0\n")
    code, _, err = run(capsys, "verify", fixtures_dir / "dyck.scx", bad)
    assert code == 1 and "missing header" in err


@pytest.mark.parametrize(
    "argv",
    [[], ["spectrum"], ["spectrum", "x.scx", "--k", "0"], ["cheeger", "g.graph"], ["cheeger", "g", "--brute", "--compare"],
     ["spectrum", "x.scx", "--tol", "-1"], ["frobnicate"]],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_reports_are_deterministic_and_inputs_untouched(capsys, fixtures_dir):
    path = fixtures_dir / "dyck.scx"
    before = hashlib.sha256(path.read_bytes()).hexdigest()
    first = run(capsys, "significance", path, "--index", "--cert", fixtures_dir / "rp2_witness.cert")
    second = run(capsys, "significance", path, "--index", "--cert", fixtures_dir / "rp2_witness.cert")
    assert first == second and first[0] == 0
    assert hashlib.sha256(path.read_bytes()).hexdigest() == before


def test_json_matches_text(capsys, fixtures_dir):
    _, text, _ = run(capsys, "kr2", fixtures_dir / "rp1.scx")
    _, raw, _ = run(capsys, "kr2", fixtures_dir / "rp1.scx", "--json")
    data = json.loads(raw)
    lines = text.splitlines()
    assert f"kr2 {data['kr2']}" in lines
    block = lines[lines.index("witness") + 1: lines.index("end")]
    assert block == [f"{u} {v}" for u, v in data["witness"]]

    _, text, _ = run(capsys, "cheeger", fixtures_dir / "bridged.graph", "--compare")
    _, raw, _ = run(capsys, "cheeger", fixtures_dir / "bridged.graph", "--compare", "--json")
    data = json.loads(raw)
    assert f"brute {data['brute']}" in text.splitlines()
    assert f"indicator {data['indicator']}" in text.splitlines()
    assert data["tol"] == "0" and "# tol 0" in text


@pytest.mark.parametrize("name, value", [("c4", "4"), ("k3", "6"), ("bridged", "2")])
def test_cheeger_commands(capsys, fixtures_dir, name, value):
    code, out, _ = run(capsys, "cheeger", fixtures_dir / f"{name}.graph", "--compare")
    assert code == 0
    lines = out.splitlines()
    assert f"brute {value}" in lines and f"indicator {value}" in lines and "agree 1" in lines


def test_cheeger_bound(capsys, fixtures_dir):
    code, out, _ = run(capsys, "cheeger", fixtures_dir / "c4.graph", "--bound", fixtures_dir / "c4_split.fn")
    assert code == 0
    assert "energy 8" in out.splitlines() and "median_verified 1" in out.splitlines()


def test_persistence_export(capsys, fixtures_dir):
    code, out, _ = run(capsys, "persistence", fixtures_dir / "rp1.scx")
    assert out.splitlines()[1:] == ["betti 1 1", "0 0.2 inf", "1 0.9 inf"]


def test_corpus_matches_shipped_fixtures(fixtures_dir):
    files = build_corpus()
    for name, body in files.items():
        assert (fixtures_dir / name).read_text() == body, name
    assert (fixtures_dir / "SHA256SUMS").read_text() == checksums(files)


def test_gen_single_and_dyck(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "rp1", tmp_path / "c.scx", "--values", "1,2,3,4")
    assert code == 0 and (tmp_path / "c.scx").exists()
    code, out, _ = run(capsys, "spectrum", tmp_path / "c.scx")
    assert "1 1" in out.splitlines() and "2 4" in out.splitlines()
    code, out, _ = run(capsys, "gen", "dyck", tmp_path / "d.scx", "--r", "1/2", "--R", "2")
    assert code == 0
    assert {"wrote dyck_witness.cert", "wrote rp2_witness.cert", "r_level 0.5", "f_max 2"} <= set(out.splitlines())
    code, _, err = run(capsys, "gen", "dyck", tmp_path / "e.scx", "--r", "1", "--R", "3")
    assert code == 1 and "R > 3r" in err


def test_module_entry_point(fixtures_dir):
    proc = subprocess.run([sys.executable, "-m", "krspec", "kr2", str(fixtures_dir / "rp2.scx")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("# command kr2\nkr2 0\n")
