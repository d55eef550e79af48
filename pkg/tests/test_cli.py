import contextlib
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from mixedenv.cli import main, render_cross_section_svg
from mixedenv.geometry import cross_section

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def assert_json_close(a, b, path="$"):
    if isinstance(b, dict):
        assert isinstance(a, dict) and a.keys() == b.keys(), path
        for k in b:
            assert_json_close(a[k], b[k], f"{path}.{k}")
    elif isinstance(b, list):
        assert isinstance(a, list) and len(a) == len(b), path
        for i, (x, y) in enumerate(zip(a, b)):
            assert_json_close(x, y, f"{path}[{i}]")
    elif isinstance(b, float) and not isinstance(a, bool):
        assert a == pytest.approx(b, abs=1e-12), path
    else:
        assert a == b, path


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, tmp_path):
    out = tmp_path / "out.svg"
    argv = [a.replace("{out}", str(out)) for a in CASES[name]]
    code, stdout = run(argv)
    assert code in (0, 1)
    got = out.read_text() if "{out}" in CASES[name] else stdout
    expected = (GOLDEN / name).read_text()
    if name.endswith(".json"):
        assert_json_close(json.loads(got), json.loads(expected))
    else:
        assert got == expected


def test_affine_identity_values():
    code, out = run(["affine", "--alpha", "0", "--beta", "0", "--gamma", "0", "--xi", "0", "--eta", "0", "--lambda", "0", "--format", "json"])
    rep = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(rep["m_closed_form"], np.eye(3), atol=1e-15)
    np.testing.assert_allclose(rep["c_tomography"], 0, atol=1e-15)
    assert rep["zero_shift"] is True


def test_affine_swap_has_unit_shift():
    h = str(math.pi / 2)
    code, out = run(["affine", "--alpha", h, "--beta", h, "--gamma", "0", "--xi", h, "--eta", h, "--lambda", "1", "--format", "json"])
    rep = json.loads(out)
    np.testing.assert_allclose(rep["c_closed_form"], [0, -1, 0], atol=1e-12)
    np.testing.assert_allclose(rep["m_closed_form"], 0, atol=1e-12)
    assert rep["zero_shift"] is False


@pytest.mark.parametrize(
    "argv, code",
    [
        (["simulable", "1", "1", "1"], 0),
        (["simulable", "0.5", "0.5", "0"], 1),
        (["simulable", "1", "1", "-1"], 3),
        (["simulable", "--x", "0", "--y", "0", "--z", "-1"], 0),
    ],
)
def test_simulable_exit_codes(argv, code):
    assert run(argv)[0] == code


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["affine", "--alpha", "0", "--beta", "0", "--gamma", "0", "--xi", "0", "--eta", "0", "--lambda", "2"],
        ["simulable", "1", "1"],
        ["simulable", "1", "1", "1", "--x", "1"],
        ["simulable", "nan", "0", "0"],
        ["volume", "--samples", "0"],
        ["cross-section", "--z0", "1.5", "--out", "x.svg"],
        ["two-pauli", "--steps", "1"],
        ["two-pauli", "--format", "xml"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert capsys.readouterr().err


def test_cross_section_io_error(tmp_path, capsys):
    code = main(["cross-section", "--z0", "0.5", "--grid", "8", "--out", str(tmp_path / "missing" / "x.svg")])
    assert code == 4
    assert "cannot write" in capsys.readouterr().err


def test_cross_section_svg_content(tmp_path):
    out = tmp_path / "s.svg"
    code, stdout = run(["cross-section", "--z0", "0.5", "--grid", "32", "--out", str(out), "--format", "json"])
    assert code == 0
    rep = json.loads(stdout)
    svg = out.read_text()
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert "#3b6ea5" in svg and "<polygon" in svg
    assert rep["area"] == pytest.approx(cross_section(0.5, 32).area)
    assert svg == render_cross_section_svg(cross_section(0.5, 32))


@pytest.mark.parametrize("cmd", [
    ["volume", "--samples", "3000", "--seed", "11", "--quad", "32"],
    ["two-pauli", "--steps", "5"],
])
def test_output_deterministic(cmd):
    assert run(cmd) == run(cmd)
    a = json.loads(run(cmd + ["--format", "json"])[1])
    b = json.loads(run(cmd + ["--format", "json"])[1])
    assert a == b


def test_volume_workers_do_not_change_output():
    base = ["volume", "--samples", "70000", "--seed", "4", "--quad", "32"]
    assert run(base)[1] == run(base + ["--workers", "3"])[1]


def test_two_pauli_report_is_honest():
    rep = json.loads(run(["two-pauli", "--steps", "11", "--format", "json"])[1])
    assert rep["simulable_kappas"] == [0.0, 1.0]
    assert rep["only_at_identity"] is False
    assert [r["simulable"] for r in rep["rows"]] == [True] + [False] * 9 + [True]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mixedenv", "simulable", "0.5", "0.5", "0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 1
    assert "verdict: not simulable" in proc.stdout
