"""Acceptance criteria, one test (and one PASS/FAIL line) per criterion.

Run with ``pytest -v tests/test_acceptance.py``; the lines appear in the
terminal summary.  ``python3 tests/test_acceptance.py`` prints them directly.
"""

from __future__ import annotations

import re
import sys
import time

from artifact.render import render
from artifact.suites import Instance, run_suite

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

ALL = ["3,3,4", "2,3,7", "2,4,5", "2,3,inf", "3,3,inf"]


def _record(criterion: str, results: dict) -> bool:
    ok = all(r[0] for r in results.values())
    parts = ", ".join(f"{k}: {'ok' if r[0] else 'FAIL'} ({r[1]})" for k, r in results.items())
    line = f"{'PASS' if ok else 'FAIL'}  {criterion}  [{parts}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _suite(name: str, labels: str, limit: float | None = None, **kw):
    rep = run_suite(name, Instance(labels), **kw)
    ok = rep.passed and (limit is None or rep.seconds < limit)
    failed = [c.name for c in rep.checks if not c.passed]
    note = f"{rep.seconds:.1f}s" + (f", failed {failed}" if failed else "")
    if limit is not None and rep.seconds >= limit:
        note += f", over {limit:.0f}s"
    return ok, note, rep


def test_representation_suite():
    res = {L: _suite("representation", L, limit=30.0, radius=6)[:2] for L in ALL}
    assert _record("representation: relations, form preserved on radius-6 ball, signature (2,1), <30s", res)


def test_axis_suite():
    res = {L: _suite("axis", L, J=3)[:2] for L in ALL}
    assert _record("axis: glide, spacelike kernel, 3 crossings, axial factorization, 3 vertex orbits", res)


def test_lattice_suite():
    res = {L: _suite("lattice", L, limit=300.0, radius=6, oracle_radius=10)[:2] for L in ALL}
    assert _record("lattice: no bowties, joins minimal against radius-10 ball, <5min", res)


def test_shellability_suite():
    res = {L: _suite("shellability", L, samples=100, radius=8)[:2] for L in ALL}
    assert _record("shellability: unique increasing factorizations, lexicographically first", res)


def test_geometry_suite():
    res = {}
    for L in ("2,3,inf", "3,3,inf"):
        ok, note, rep = _suite("fivelines", L, need=20, radius=8)
        five = rep.get("five_lines_order").detail.get("translations")
        comps = rep.get("type_v_order_pattern").detail.get("components")
        res[L] = (ok, f"{note}, {five} translations, {comps} type-v components")
    assert _record("geometry: five-lines order, type-v pattern, phi-order laws", res)


def test_garside_suite():
    res = {}
    for L in ALL:
        ok, note, rep = _suite("garside", L)
        worst = rep.get("long_word_problem_under_5s").detail.get("max_seconds")
        res[L] = (ok, f"{note}, slowest length-64 word problem {worst}s")
    assert _record("garside: 300 pairs, 200 inverses, Delta conjugation, word problem <5s", res)


def test_morse_suite():
    res = {}
    for L in ("3,3,4", "2,3,inf"):
        ok, note, _ = _suite("morse", L, limit=120.0, J=3)
        res[L] = (ok, note)
    assert _record("morse: classification, M perfect/acyclic/monotone, N involutive/acyclic, <2min", res)


def test_figure_reproduction():
    res = {}
    for L in ("3,3,4", "2,3,inf"):
        for model in ("poincare", "klein"):
            a = render(Instance(L).ctx, model=model)
            b = render(Instance(L).ctx, model=model)
            colors = set(re.findall(r'<circle [^>]*fill="(#[0-9a-f]{6})"', a.svg))
            dashed = 'class="axis"' in a.svg and "stroke-dasharray" in a.svg and "marker-end" in a.svg
            ok = a.svg == b.svg and a.lines == b.lines and dashed and len(colors) == 3
            res[f"{L} {model}"] = (ok, f"{a.lines} lines, {len(colors)} orbit colors, dashed axis {dashed}")
    assert _record("figures: deterministic SVG, dashed axis, 3 orbit colors, stable line count", res)


if __name__ == "__main__":
    t0 = time.perf_counter()
    failures = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failures += 1
    print(f"{failures} criteria failed, {time.perf_counter() - t0:.0f}s")
    sys.exit(1 if failures else 0)
