from __future__ import annotations

import json
import math
import re
import subprocess
import sys

import pytest

from artifact.cli import run
from artifact.render import ORBIT_COLORS, render
from conftest import instance


@pytest.mark.parametrize("labels", ["3,3,4", "2,3,inf"])
@pytest.mark.parametrize("model", ["poincare", "klein"])
def test_render_structure(labels, model):
    R = render(instance(labels).ctx, model=model)
    assert R.svg == render(instance(labels).ctx, model=model).svg
    assert 'stroke-dasharray' in R.svg and 'marker-end="url(#arrow)"' in R.svg
    fills = set(re.findall(r'<circle [^>]*fill="(#[0-9a-f]{6})"', R.svg))
    assert fills == set(ORBIT_COLORS)
    assert R.lines == R.svg.count('class="line"') > 10
    for ends in R.endpoints:
        for x, y in ends:
            assert abs(math.hypot(x, y) - 1) < 1e-9


def test_poincare_arc_endpoints_in_svg():
    R = render(instance("3,3,4").ctx, model="poincare", float_digits=12)
    arcs = re.findall(r'd="M ([-\d.]+) ([-\d.]+) A [-\d.]+ [-\d.]+ 0 0 [01] ([-\d.]+) ([-\d.]+)"', R.svg)
    assert len(arcs) > 10
    for arc in arcs:
        x1, y1, x2, y2 = map(float, arc)
        assert abs(math.hypot(x1, y1) - 1) < 1e-9
        assert abs(math.hypot(x2, y2) - 1) < 1e-9


def _run(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_wp_trivial(capsys):
    code, out, _ = _run(["wp", "abA", "abA"], capsys)
    data = json.loads(out)
    assert code == 0 and data["equal"] is True
    assert data["config"]["labels"] == "3,3,4"


def test_cli_wp_braid(capsys):
    code, out, _ = _run(["--labels", "3,3,4", "wp", "aba", "bab"], capsys)
    assert code == 0 and json.loads(out)["equal"] is True
    code, out, _ = _run(["--labels", "3,3,4", "wp", "ab", "ba"], capsys)
    assert code == 0 and json.loads(out)["equal"] is False


def test_cli_exit_codes(capsys):
    assert _run(["--labels", "2,3,6", "info"], capsys)[0] == 2
    assert _run(["wp", "abz", "a"], capsys)[0] == 2
    assert _run(["meet", "abab", "a"], capsys)[0] == 2
    assert _run(["--ball-radius", "50", "info"], capsys)[0] == 3


def test_cli_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("ARTIFACT_BALL_RADIUS", "4")
    code, out, _ = _run(["reflections"], capsys)
    data = json.loads(out)
    assert code == 0 and data["radius"] == 4 and data["config"]["ball_radius"] == 4
    monkeypatch.setenv("ARTIFACT_WINDOW", "99")
    assert _run(["info"], capsys)[0] == 3


def test_cli_nf_and_lattice(capsys):
    code, out, _ = _run(["nf", "abcA"], capsys)
    nf = json.loads(out)["normal_form"]
    assert code == 0 and isinstance(nf["delta_power"], int)
    code, out, _ = _run(["join", "a", "b"], capsys)
    assert json.loads(out)["join"]["rank"] == 2
    code, out, _ = _run(["meet", "ab", "bc"], capsys)
    assert json.loads(out)["meet"]["word"] == "b"


def test_cli_verify_and_determinism(capsys):
    code1, out1, _ = _run(["--labels", "2,3,7", "verify", "axis"], capsys)
    code2, out2, _ = _run(["--labels", "2,3,7", "verify", "axis"], capsys)
    assert code1 == code2 == 0 and out1 == out2
    assert json.loads(out1)["passed"] is True


def test_cli_render_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert _run(["--labels", "2,3,inf", "render", "--model", "klein", "--out", str(a)], capsys)[0] == 0
    assert _run(["--labels", "2,3,inf", "render", "--model", "klein", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "artifact.cli", "info"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["w"]["kind"] == "glide"
