import json
import subprocess
import sys

import numpy as np
import pytest

from pqcolor.cli import main
from pqcolor.combined import save_table, table_from_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture(scope="module")
def c5(tmp_path_factory):
    path = tmp_path_factory.mktemp("c5") / "c5.json"
    assert main(["construct", "--q", "5", "--out", str(path)]) == 0
    return path


@pytest.fixture
def mono(tmp_path):
    M = np.zeros((7, 7), dtype=np.int32)
    np.fill_diagonal(M, -1)
    path = tmp_path / "mono.json"
    save_table(table_from_matrix(M), path)
    return path


def test_construct_report(tmp_path, capsys):
    out = tmp_path / "c3.bin"
    code, rep = run(capsys, "construct", "--q", "3", "--out", str(out), "--format", "binary")
    assert code == 0
    assert rep["command"] == "construct" and rep["artifacts"] == [str(out)]
    assert rep["result"]["n"] == 8 and rep["result"]["beta"] == 3
    assert set(rep) == {"command", "params", "result", "duration_s", "artifacts", "version"}
    assert out.read_bytes().startswith(b"PQCT")


def test_construct_by_n(tmp_path, capsys):
    code, rep = run(capsys, "construct", "--n", "30", "--out", str(tmp_path / "t.json"))
    assert code == 0 and rep["result"]["n"] == 30 and rep["result"]["q"] == 5


def test_verify_passes_on_c5(c5, capsys):
    code, rep = run(capsys, "verify", "--in", str(c5), "--p", "5", "--q", "5")
    assert code == 0
    assert rep["result"]["pass"] is True and rep["result"]["witness"] is None


def test_verify_fails_on_mono(mono, capsys):
    code, rep = run(capsys, "verify", "--in", str(mono), "--p", "5", "--q", "5")
    assert code == 1
    assert rep["result"]["witness"] == [0, 1, 2, 3, 4]
    assert rep["result"]["colors"] == [0] * 10


def test_verify_jobs_do_not_change_report(mono, capsys):
    _, a = run(capsys, "verify", "--in", str(mono), "--jobs", "1")
    _, b = run(capsys, "verify", "--in", str(mono), "--jobs", "8")
    for r in (a, b):
        del r["duration_s"]
    assert a == b


def test_scan(c5, capsys):
    code, rep = run(capsys, "scan", "--in", str(c5), "--patterns", "builtin:cfls-avoided", "builtin:figure3")
    assert code == 0
    assert len(rep["result"]["patterns"]) == 10
    assert not any(m["match"] for m in rep["result"]["patterns"].values())


def test_scan_reports_match(mono, capsys):
    code, rep = run(capsys, "scan", "--in", str(mono), "--patterns", "MONO_C3")
    assert code == 1
    assert rep["result"]["patterns"]["MONO_C3"]["witness"] == [0, 1, 2]


def test_scan_unknown_pattern(c5, capsys):
    assert run(capsys, "scan", "--in", str(c5), "--patterns", "NO_SUCH")[0] == 2


@pytest.mark.parametrize(
    "n, m, forbidden, expected",
    [(5, 4, ["builtin:cfls-avoided"], 3), (5, 2, ["builtin:mono-odd"], 0), (3, 2, [], 2)],
)
def test_enumerate_counts(n, m, forbidden, expected, capsys, tmp_path):
    out = tmp_path / "e.json"
    code, rep = run(capsys, "enumerate", "--n", str(n), "--m", str(m), "--out", str(out), "--forbidden", *forbidden)
    assert code == 0
    assert rep["result"]["count"] == expected
    assert json.loads(out.read_text()) == rep["result"]["colorings"]
    if expected == 3:
        labels = sorted(c["figure3"] for c in rep["result"]["colorings"])
        assert labels == ["FIG_3A", "FIG_3B", "FIG_3C"]


def test_exit_codes(tmp_path, capsys, c5):
    assert run(capsys, "enumerate", "--n", "8", "--m", "2")[0] == 4
    assert run(capsys, "verify", "--in", str(tmp_path / "missing.json"))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert run(capsys, "verify", "--in", str(bad))[0] == 3
    assert run(capsys, "verify", "--in", str(c5), "--p", "99")[0] == 2
    assert run(capsys, "construct", "--q", "9", "--out", str(tmp_path / "x.json"))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_console_module_entry(tmp_path):
    out = tmp_path / "c3.json"
    proc = subprocess.run(
        [sys.executable, "-m", "pqcolor.cli", "construct", "--q", "3", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["result"]["n"] == 8
