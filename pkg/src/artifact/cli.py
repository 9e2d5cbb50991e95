"""Command-line entry point: ``artifact [config] COMMAND ...``.

Every command prints one JSON document on stdout that echoes the instance
configuration.  Exit status: 0 ok, 1 property falsified, 2 invalid input,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import signal
import sys
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass

from .coxeter import CapExceeded, NotHyperbolic
from .garside import MalformedWord, format_artin_word, parse_artin_word
from .lattice import NotInInterval
from .morse import build_truncation
from .render import render
from .suites import SUITES, Instance, run_suite

log = logging.getLogger("artifact")

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

ENV_CAPS = {
    "ball_radius": "ARTIFACT_BALL_RADIUS",
    "window_J": "ARTIFACT_WINDOW",
    "time_budget": "ARTIFACT_TIME_BUDGET",
}
MAX_BALL_RADIUS = 14
MAX_WINDOW = 8


@dataclass
class InstanceConfig:
    labels: str = "3,3,4"
    generator_order: str = "abc"
    ball_radius: int = 6
    window_J: int = 3
    float_digits: int = 12
    seed: int = 0
    time_budget: float = 0.0  # seconds, 0 = unlimited

    def check(self) -> None:
        if not 0 <= self.ball_radius <= MAX_BALL_RADIUS:
            raise CapExceeded(f"ball radius {self.ball_radius} outside 0..{MAX_BALL_RADIUS}")
        if not 0 <= self.window_J <= MAX_WINDOW:
            raise CapExceeded(f"window {self.window_J} outside 0..{MAX_WINDOW}")
        if not 1 <= self.float_digits <= 17:
            raise ValueError("float_digits must be between 1 and 17")


# ------------------------------------------------------------------ output


def _fe(x) -> list[str]:
    """Field element as its coefficient vector over gamma."""
    return [str(c) for c in x.coeffs]


def _matrix(m) -> list:
    return [[_fe(m[3 * i + j]) for j in range(3)] for i in range(3)]


def _vector(v) -> list:
    return [_fe(x) for x in v]


def _interval_json(model, el) -> dict:
    return {"word": model.word_of(el.element), "rank": el.rank, "kind": el.kind,
            "matrix": _matrix(el.element.m)}


def _nf_json(model, nf) -> dict:
    return {
        "delta_power": nf.delta_power,
        "factors": [_interval_json(model, f) for f in nf.factors],
    }


def _emit(cfg: InstanceConfig, command: str, payload: dict) -> None:
    out = {"config": asdict(cfg), "command": command}
    out.update(payload)
    sys.stdout.write(json.dumps(out) + "\n")


# ---------------------------------------------------------------- commands


def cmd_info(cfg, inst, args) -> int:
    M = inst.model
    F = M.field
    cls = M.classify(inst.ctx.w)
    _emit(cfg, "info", {
        "field": {"L": F.L, "degree": F.degree, "minpoly": list(F.minpoly),
                  "isolating_interval": [str(x) for x in F.isolating_interval]},
        "gram": _matrix(M.gram),
        "w": {"word": cfg.generator_order, "kind": cls.kind, "matrix": _matrix(inst.ctx.w.m),
              "axis_pole": _vector(inst.ctx.v)},
        "axis": inst.ctx.describe(),
    })
    return EXIT_OK


def cmd_wp(cfg, inst, args) -> int:
    E = inst.engine
    x, y = E.from_artin_word(args.w1), E.from_artin_word(args.w2)
    _emit(cfg, "wp", {"w1": args.w1, "w2": args.w2, "equal": x == y,
                      "nf1": _nf_json(inst.model, x), "nf2": _nf_json(inst.model, y)})
    return EXIT_OK


def cmd_nf(cfg, inst, args) -> int:
    word = parse_artin_word(args.word)
    nf = inst.engine.from_artin_word(word)
    _emit(cfg, "nf", {"word": format_artin_word(word), "normal_form": _nf_json(inst.model, nf)})
    return EXIT_OK


def _member(inst, word: str):
    if any(ch not in "abc" for ch in word):
        raise MalformedWord(f"Coxeter words use the letters a, b, c only: {word!r}")
    g = inst.model.element(word)
    el = inst.interval.in_interval(g)
    if el is None:
        raise NotInInterval(f"{word!r} is not an element of [1, w]")
    return el


def cmd_join(cfg, inst, args) -> int:
    u, v = _member(inst, args.u), _member(inst, args.v)
    j = inst.interval.join(u, v)
    _emit(cfg, "join", {"operands": [args.u, args.v], "join": _interval_json(inst.model, j)})
    return EXIT_OK


def cmd_meet(cfg, inst, args) -> int:
    u, v = _member(inst, args.u), _member(inst, args.v)
    m = inst.interval.meet(u, v)
    _emit(cfg, "meet", {"operands": [args.u, args.v], "meet": _interval_json(inst.model, m)})
    return EXIT_OK


def cmd_reflections(cfg, inst, args) -> int:
    radius = args.radius if args.radius is not None else cfg.ball_radius
    if radius > MAX_BALL_RADIUS:
        raise CapExceeded(f"ball radius {radius} exceeds {MAX_BALL_RADIUS}")
    ctx = inst.ctx
    refl = sorted(inst.interval_reflections(radius), key=lambda r: ctx.axial_key(r.element))
    rows = [{"word": inst.model.word_of(r.element),
             "tag": "vertical" if ctx.is_vertical(r.element) else "horizontal"} for r in refl]
    _emit(cfg, "reflections", {"radius": radius, "count": len(rows), "reflections": rows})
    return EXIT_OK


def cmd_components(cfg, inst, args) -> int:
    J = args.window if args.window is not None else cfg.window_J
    if J > MAX_WINDOW:
        raise CapExceeded(f"window {J} exceeds {MAX_WINDOW}")
    mc = inst.morse()
    tr = build_truncation(mc, radius=min(cfg.ball_radius, 4), window=J)
    M = inst.model
    rows = []
    for comp in sorted(tr.components.values(), key=lambda c: (c.d, c.type_tag, repr(c.key))):
        xpos, complete = mc.X2_positions(comp) if mc.in_K2(comp) and comp.d >= 2 else ([], True)
        rows.append({
            "d": comp.d,
            "type": comp.type_tag,
            "exceptional": comp.exceptional,
            "terms": [M.word_of(x.element) for x in comp.base],
            "in_K2": mc.in_K2(comp),
            "X2_positions": list(xpos),
            "X2_positions_complete": complete,
            "cells": len(mc.component_cells(comp)),
        })
    _emit(cfg, "components", {"window": J, "count": len(rows), "components": rows})
    return EXIT_OK


def cmd_verify(cfg, inst, args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        kw = {}
        if name in ("field", "shellability", "garside"):
            kw["seed"] = cfg.seed
        if name == "representation":
            kw["radius"] = cfg.ball_radius
        if name in ("axis", "morse"):
            kw["J"] = cfg.window_J
        rep = run_suite(name, inst, **kw)
        log.info("suite %s on %s: %s in %.1f s", name, inst.name, "pass" if rep.passed else "FAIL", rep.seconds)
        data = rep.to_json()
        data.pop("seconds")
        reports.append(data)
    ok = all(r["passed"] for r in reports)
    _emit(cfg, "verify", {"passed": ok, "reports": reports})
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_render(cfg, inst, args) -> int:
    R = render(inst.ctx, model=args.model, window=cfg.window_J, float_digits=cfg.float_digits)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(R.svg)
    _emit(cfg, "render", {"model": R.model, "out": args.out, "lines": R.lines, "chambers": R.chambers,
                          "orbit_colors": list(R.orbit_colors), "vertices": R.vertices})
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description="Exact computations for hyperbolic triangle groups.")
    p.add_argument("--labels", default="3,3,4", help="triple m(a,b),m(b,c),m(a,c); use inf for infinity")
    p.add_argument("--generator-order", default="abc")
    p.add_argument("--ball-radius", type=int, default=None)
    p.add_argument("--window", dest="window_J", type=int, default=None)
    p.add_argument("--float-digits", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-budget", type=float, default=None, help="seconds; 0 = unlimited")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info")
    s = sub.add_parser("wp")
    s.add_argument("w1")
    s.add_argument("w2")
    s = sub.add_parser("nf")
    s.add_argument("word")
    for name in ("join", "meet"):
        s = sub.add_parser(name)
        s.add_argument("u")
        s.add_argument("v")
    s = sub.add_parser("reflections")
    s.add_argument("--radius", type=int, default=None)
    s = sub.add_parser("components")
    s.add_argument("--window", type=int, default=None)
    s = sub.add_parser("verify")
    s.add_argument("suite", choices=list(SUITES) + ["all"])
    s = sub.add_parser("render")
    s.add_argument("--model", choices=["poincare", "klein"], default="poincare")
    s.add_argument("--out", required=True)
    return p


COMMANDS = {
    "info": cmd_info, "wp": cmd_wp, "nf": cmd_nf, "join": cmd_join, "meet": cmd_meet,
    "reflections": cmd_reflections, "components": cmd_components, "verify": cmd_verify,
    "render": cmd_render,
}


def _config(args) -> InstanceConfig:
    cfg = InstanceConfig(labels=args.labels, generator_order=args.generator_order,
                         float_digits=args.float_digits, seed=args.seed)
    for fld, env in ENV_CAPS.items():
        raw = os.environ.get(env)
        if raw is not None:
            try:
                setattr(cfg, fld, type(getattr(cfg, fld))(raw))
            except ValueError as exc:
                raise ValueError(f"{env}={raw!r} is not a number") from exc
    if args.ball_radius is not None:
        cfg.ball_radius = args.ball_radius
    if args.window_J is not None:
        cfg.window_J = args.window_J
    if args.time_budget is not None:
        cfg.time_budget = args.time_budget
    cfg.check()
    return cfg


@contextmanager
def _budget(seconds: float):
    if seconds <= 0 or not hasattr(signal, "SIGALRM"):
        yield
        return

    def on_alarm(signum, frame):
        raise CapExceeded(f"time budget of {seconds} s exceeded")

    old = signal.signal(signal.SIGALRM, on_alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    t0 = time.perf_counter()
    try:
        cfg = _config(args)
        with _budget(cfg.time_budget):
            inst = Instance(cfg.labels, cfg.generator_order)
            code = COMMANDS[args.command](cfg, inst, args)
    except CapExceeded as exc:
        print(f"error: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (NotHyperbolic, MalformedWord, NotInInterval, ValueError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    log.info("done in %.2f s", time.perf_counter() - t0)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
