"""Property suites run by `artifact verify` and by the acceptance tests.

Each suite returns a SuiteReport made of named checks.  A check carries a
pass flag, a small JSON-able detail payload and, on failure, a counterexample.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Callable, Optional

import mpmath
import networkx as nx

from . import linalg as la
from .coxeter import LETTERS, CoxeterModel, CoxeterSpec
from .field import _sturm_count, euler_phi, make_field
from .garside import GarsideEngine, format_artin_word
from .geometry import AxisContext
from .lattice import Interval
from .morse import IntervalCell, MorseComplex, build_truncation, horizontal_seeds


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteReport:
    suite: str
    instance: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, counterexample=None, **detail) -> Check:
        c = Check(name, bool(passed), detail, counterexample)
        self.checks.append(c)
        return c

    def get(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "instance": self.instance,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [c.to_json() for c in self.checks],
        }


class Instance:
    """Lazily built model, axis context, interval and Garside engine for one triple."""

    def __init__(self, labels: str, generator_order: str = "abc", window_cap: int = 6):
        self.spec = CoxeterSpec.parse(labels)
        self.spec.check()
        self.generator_order = generator_order
        self.window_cap = window_cap

    @property
    def name(self) -> str:
        return self.spec.text()

    @cached_property
    def model(self) -> CoxeterModel:
        return CoxeterModel(self.spec, self.generator_order)

    @cached_property
    def ctx(self) -> AxisContext:
        return AxisContext(self.model)

    @cached_property
    def interval(self) -> Interval:
        return Interval(self.ctx)

    @cached_property
    def engine(self) -> GarsideEngine:
        return GarsideEngine(self.interval)

    def morse(self, shift: int = 0) -> MorseComplex:
        return MorseComplex(self.interval, window_cap=self.window_cap, window_shift=shift)

    def interval_reflections(self, radius: int) -> list:
        I = self.interval
        return [el for el in (I.in_interval(g) for g in self.model.reflections_in_ball(radius)) if el is not None]

    def interval_members(self, radius: int) -> list:
        I = self.interval
        return [el for el in (I.in_interval(g) for g in self.model.enumerate_ball(radius)) if el is not None]


def _word(model, g) -> Optional[str]:
    return model.word_of(g)


# ------------------------------------------------------------------- field


def suite_field(inst: Instance, seed: int = 0, samples: int = 200) -> SuiteReport:
    rep = SuiteReport("field", inst.name)
    Ls = sorted({2, 3, 4, 5, 6, 7, 8, 10, 12, 20, inst.spec.field_L()})
    mpmath.mp.prec = 200
    bad_deg, bad_root, bad_iso = [], [], []
    for L in Ls:
        F = make_field(L)
        if len(F.minpoly) - 1 != max(1, euler_phi(2 * L) // 2):
            bad_deg.append(L)
        gamma = 2 * mpmath.cos(mpmath.pi / L)
        val = sum(c * gamma**i for i, c in enumerate(F.minpoly))
        if abs(val) > mpmath.mpf(10) ** -40:
            bad_root.append(L)
        lo, hi = F.isolating_interval
        if not (lo <= Fraction(str(mpmath.nstr(gamma, 40))) <= hi) or _sturm_count(list(F.minpoly), lo, hi) != 1:
            bad_iso.append(L)
    # degree phi(2L)/2 plus gamma being a root forces minimality: [Q(2cos(pi/L)):Q] = phi(2L)/2
    rep.add("minpoly_degree_is_totient_half", not bad_deg, {"L": bad_deg} if bad_deg else None, fields=Ls)
    rep.add("minpoly_vanishes_at_gamma", not bad_root, {"L": bad_root} if bad_root else None)
    rep.add("isolating_interval_unique_root", not bad_iso, {"L": bad_iso} if bad_iso else None)

    F4 = make_field(4)
    g = F4.gen
    rep.add("L4_minpoly", F4.minpoly == (-2, 0, 1), minpoly=list(F4.minpoly))
    rep.add("L2_L3_minpoly", make_field(2).minpoly == (0, 1) and make_field(3).minpoly == (-1, 1))
    rep.add("gamma_squared_is_2", g * g == F4.element(2))
    rep.add("inverse_of_gamma_minus_1", 1 / (g - 1) == g + 1)
    rep.add("sign_3_minus_2gamma", (3 - 2 * g).sign() == 1 and (g * g - 2).sign() == 0 and (g - 1).sign() == 1)
    try:
        F4.one / F4.zero
        rep.add("division_by_zero_reported", False)
    except ArithmeticError:
        rep.add("division_by_zero_reported", True)

    rng = random.Random(seed)
    F = make_field(inst.spec.field_L())
    deg = F.degree

    def rand_el():
        return F.from_coeffs([Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(deg)])

    gamma = 2 * mpmath.cos(mpmath.pi / F.L)

    def mp_value(x):
        return sum(mpmath.mpf(c.numerator) / c.denominator * gamma**i for i, c in enumerate(x.coeffs))

    axiom_fail, mult_fail, float_fail = None, None, None
    for _ in range(samples):
        a, b, c = rand_el(), rand_el(), rand_el()
        ok = (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
        if not a.is_zero():
            ok = ok and a * (1 / a) == F.one
        if not ok and axiom_fail is None:
            axiom_fail = {"a": repr(a), "b": repr(b), "c": repr(c)}
        if (a * b).sign() != a.sign() * b.sign() and mult_fail is None:
            mult_fail = {"a": repr(a), "b": repr(b)}
        mv = mp_value(a)
        fs = 0 if mv == 0 else (1 if mv > 0 else -1)
        if fs != a.sign() and float_fail is None:
            float_fail = {"a": repr(a), "float": str(mv)}
    rep.add("field_axioms", axiom_fail is None, axiom_fail, samples=samples, L=F.L)
    rep.add("sign_multiplicative", mult_fail is None, mult_fail, samples=samples)
    rep.add("sign_matches_200bit", float_fail is None, float_fail, samples=samples)
    return rep


# ---------------------------------------------------------- representation


def suite_representation(inst: Instance, radius: int = 6) -> SuiteReport:
    rep = SuiteReport("representation", inst.name)
    M = inst.model
    rels_ok, bad = True, []
    for s in range(3):
        g = M.generators[s]
        if not (g * g).is_identity():
            rels_ok = False
            bad.append(f"{LETTERS[s]}^2")
    for s, t in combinations(range(3), 2):
        m = M.spec.label(s, t)
        st = M.generators[s] * M.generators[t]
        if m is None:
            x = st
            for k in range(1, 13):
                if x.is_identity():
                    rels_ok = False
                    bad.append(f"({LETTERS[s]}{LETTERS[t]})^{k} = 1 with infinite label")
                x = x * st
            if M.classify(st).kind != "parabolic":
                rels_ok = False
                bad.append(f"{LETTERS[s]}{LETTERS[t]} not parabolic")
        else:
            x = st
            for k in range(1, m):
                if x.is_identity():
                    rels_ok = False
                    bad.append(f"({LETTERS[s]}{LETTERS[t]})^{k} = 1 before m")
                x = x * st
            if not x.is_identity():
                rels_ok = False
                bad.append(f"({LETTERS[s]}{LETTERS[t]})^{m} != 1")
    rep.add("defining_relations", rels_ok, {"failed": bad} if bad else None)
    ball = M.enumerate_ball(radius)
    bad_form = [M.word_of(g) for g in ball if not g.preserves_form()]
    rep.add("form_preserved_on_ball", not bad_form, {"words": bad_form[:5]} if bad_form else None,
            radius=radius, ball_size=len(ball))
    rep.add("gram_signature_2_1", M.signature_ok())
    inf_ok = all(
        M.gram[3 * s + t] == M.field.element(-1)
        for s in range(3) for t in range(3) if s != t and M.spec.label(s, t) is None
    )
    rep.add("infinite_label_gram_entry", inf_ok)
    rep.add("w_has_moved_rank_3", M.w.moved_rank == 3)
    # W-membership via folding agrees with construction on the ball
    rng = random.Random(1)
    sample = rng.sample(ball, min(50, len(ball)))
    rep.add("contains_ball_elements", all(M.contains(g) for g in sample), checked=len(sample))
    return rep


# -------------------------------------------------------------------- axis


def suite_axis(inst: Instance, J: int = 3) -> SuiteReport:
    rep = SuiteReport("axis", inst.name)
    M, ctx = inst.model, inst.ctx
    rep.add("w_is_glide", M.classify(ctx.w).kind == "glide")
    wI = la.mat_add(ctx.w.m, M.ident)
    rep.add("kernel_one_dimensional_spacelike", la.rank3(wI) == 2 and ctx.Bvv.sign() > 0)
    rep.add("base_point_on_axis", M.B(ctx.q, ctx.v).is_zero() and ctx.Bqq.sign() < 0
            and M.B(ctx.wq, ctx.v).is_zero())
    cr = ctx.segment_crossings()
    rep.add("segment_crosses_three_lines", len(cr) == 3, words=[M.word_of(r) for r in cr])
    rep.add("three_smallest_are_crossings",
            sorted(ctx.smallest_three(), key=ctx.axial_key) == sorted(cr, key=ctx.axial_key))
    ch = ctx.base_chamber()
    s1, s2, s3 = ch.ordered_walls
    rep.add("axial_factorization_reproduces_w", s1 * s2 * s3 == ctx.w,
            walls=[M.word_of(s) for s in ch.ordered_walls])
    composed = (s1 * s2 * s3 * s2 * s1) * (s1 * s2 * s1) * s1
    rep.add("downstream_crossings_compose_to_w", composed == ctx.w)
    # lines crossed at one point (the axis through a vertex) form an unordered group
    first, _ = ctx.walk(ctx.q, ctx.wq)
    nxt, _ = ctx.walk(ctx.wq, ctx.w.act(ctx.wq))
    moved = [frozenset(ctx.w * r * ctx.w_inv for r in c.reflections) for c in first]
    rep.add("crossings_equivariant", [frozenset(c.reflections) for c in nxt] == moved)
    count, one_each = ctx.vertex_orbits(J)
    rep.add("axial_vertex_orbits_three", count == 3 and one_each, orbits=count, one_per_chamber=one_each, window=J)
    rep.add("base_chamber_recorded", True, base_chamber_word=ctx.base_chamber_word,
            base_is_fundamental=ctx.base_is_fundamental)
    verts = M.element(ctx.base_chamber_word)
    rep.add("base_chamber_vertices_axial", all(ctx.is_axial_vertex(v) for v in ctx.vertices_of(verts)))
    return rep


# ----------------------------------------------------------------- lattice


def suite_lattice(inst: Instance, radius: int = 6, oracle_radius: int = 10) -> SuiteReport:
    rep = SuiteReport("lattice", inst.name)
    M, I = inst.model, inst.interval
    small = inst.interval_reflections(radius)
    members10 = inst.interval_members(oracle_radius)
    refl10 = [u for u in members10 if u.rank == 1]
    rank2_10 = [u for u in members10 if u.rank == 2]

    # every reflection accepted iff its complement has reflection length 2, brute force in the ball
    big = M.reflections_in_ball(oracle_radius)
    refl_keys = {r.key for r in big}
    mismatch = None
    for g in M.reflections_in_ball(radius):
        comp = inst.ctx.w * g
        brute = any((r * comp).key in refl_keys for r in big)
        ours = I.in_interval(g) is not None
        if brute != ours:
            mismatch = {"reflection": M.word_of(g), "ours": ours, "brute": brute}
            break
    rep.add("reflection_membership_matches_brute_force", mismatch is None, mismatch)

    joins = {}
    not_upper, not_min = None, None
    for r1, r2 in combinations(small, 2):
        j = I.join(r1, r2)
        joins[(r1.key, r2.key)] = j
        if not (I.leq(r1, j) and I.leq(r2, j)):
            not_upper = not_upper or {"r1": M.word_of(r1.element), "r2": M.word_of(r2.element)}
        for u in rank2_10:
            if I.leq(r1, u) and I.leq(r2, u) and not I.leq(j, u):
                not_min = not_min or {"r1": M.word_of(r1.element), "r2": M.word_of(r2.element),
                                      "join": M.word_of(j.element), "bound": M.word_of(u.element)}
    rep.add("join_is_upper_bound", not_upper is None, not_upper, pairs=len(joins))
    rep.add("join_minimal_among_ball_bounds", not_min is None, not_min, bounds=len(rank2_10) + 1)

    r2 = {j.key: j for j in joins.values() if j.rank == 2}
    below = {k: {r.key for r in refl10 if I.leq(r, u)} for k, u in r2.items()}
    bowties = []
    for a, b in combinations(r2, 2):
        if len(below[a] & below[b]) >= 2:
            bowties.append((M.word_of(r2[a].element), M.word_of(r2[b].element)))
    rep.add("no_bowties", not bowties, {"pairs": bowties[:3]} if bowties else None,
            rank2_joins=len(r2), reflections=len(refl10))

    # meets: the meet of two distinct rank-2 joins is below both
    bad_meet = None
    vals = list(r2.values())[:40]
    for u, v in combinations(vals, 2):
        m = I.meet(u, v)
        if not (I.leq(m, u) and I.leq(m, v)):
            bad_meet = {"u": M.word_of(u.element), "v": M.word_of(v.element)}
            break
    rep.add("meet_is_lower_bound", bad_meet is None, bad_meet)

    a, b = I.member(M.generators[0]), I.member(M.generators[1])
    if M.spec.label(0, 1) == 3:
        rep.add("join_a_b_is_ab", I.join(a, b).element == M.element("ab"))
    # membership certificate cross-checked by brute factor search for rank 2
    cert_bad = None
    for u in rank2_10[:60]:
        if not any((r.element * u.element).moved_rank == 1 and I.in_interval(r.element * u.element) is not None
                   for r in refl10):
            cert_bad = {"u": M.word_of(u.element)}
            break
    rep.add("rank2_members_factor_in_ball", cert_bad is None, cert_bad, checked=min(60, len(rank2_10)))
    return rep


# ------------------------------------------------------------ shellability


def _sample_rank2(inst: Instance, n: int, seed: int) -> list:
    I, ctx = inst.interval, inst.ctx
    base = [u for u in inst.interval_members(8) if u.rank == 2]
    pool = {u.key: u for u in base}
    k = 1
    while len(pool) < n and k < 8:
        for u in base:
            for e in (k, -k):
                x = I.member(ctx.phi_power(u.element, e))
                pool[x.key] = x
        k += 1
    items = sorted(pool.values(), key=lambda u: repr(u.key))
    rng = random.Random(seed)
    return rng.sample(items, min(n, len(items)))


def suite_shellability(inst: Instance, samples: int = 100, seed: int = 0, radius: int = 8) -> SuiteReport:
    rep = SuiteReport("shellability", inst.name)
    M, I, ctx = inst.model, inst.interval, inst.ctx
    us = _sample_rank2(inst, samples, seed)
    bad = None
    for u in us:
        below = I.reflections_below(u, 6)
        facs = []
        for r in below:
            s = I.member(r.element * u.element)
            facs.append((r, s))
        inc = [f for f in facs if ctx.precedes(f[0].element, f[1].element)]
        keyed = sorted(facs, key=lambda f: (ctx.axial_key(f[0].element), ctx.axial_key(f[1].element)))
        ours = I.increasing_factorization(u)
        ok = (len(inc) == 1 and inc[0][0] == ours[0] and inc[0][1] == ours[1]
              and keyed[0][0] == ours[0])
        if not ok and bad is None:
            bad = {"u": M.word_of(u.element), "increasing": len(inc)}
    rep.add("rank2_unique_increasing_factorization", bad is None and len(us) >= min(samples, 1), bad,
            sampled=len(us))
    # w: all rank-additive reflection triples from the ball
    refl = inst.interval_reflections(radius)
    keys = {r.key: r for r in refl}
    triples = []
    for r1 in refl:
        u = I.member(r1.element * ctx.w)  # r1^-1 w
        for r2 in refl:
            if r2 == r1 or not I.leq(r2, u):
                continue
            r3 = r2.element * u.element
            if r3.key in keys:
                triples.append((r1, r2, keys[r3.key]))
    inc = [t for t in triples if I.is_increasing(list(t))]
    ours = I.increasing_factorization(I.top)
    rep.add("w_unique_increasing_factorization",
            len(inc) == 1 and list(inc[0]) == list(ours),
            {"increasing": len(inc)} if len(inc) != 1 else None,
            triples=len(triples), radius=radius)
    # the order is a strict total order on the ball reflections
    ks = [ctx.axial_key(r.element) for r in refl]
    total = all((ks[i] < ks[j]) != (ks[j] < ks[i]) for i in range(len(ks)) for j in range(i + 1, len(ks)))
    srt = sorted(range(len(ks)), key=lambda i: ks[i])
    trans = all(ks[srt[i]] < ks[srt[i + 1]] for i in range(len(srt) - 1))
    rep.add("axial_order_strict_total", total and trans, reflections=len(refl))
    return rep


# --------------------------------------------------------------- five lines


def _axis_param(M, z, e, p):
    """Order-faithful parameter of a point p on the line through z with tangent e."""
    p = M.to_positive(p)
    return M.B(p, e) / (-M.B(p, z))


def five_lines_certificate(inst: Instance, t) -> tuple[bool, dict]:
    M, I, ctx = inst.model, inst.interval, inst.ctx
    r1, r2 = I.increasing_factorization(t)
    r = I.left_complement(t)
    rp = I.right_complement(t)
    m = t.locus
    x0 = M.basepoint
    z = M.to_positive(la.vsub(x0, la.scale(M.B(x0, m) / M.B(m, m), m)))
    tz = t.element.act(z)
    e = la.vsub(tz, la.scale(M.B(tz, z) / M.B(z, z), z))
    poles = [rp.locus, r2.locus, ctx.v, r1.locus, r.locus]
    names = ["r'", "r2", "axis", "r1", "r"]
    params = []
    for n in poles:
        p = M.bcross(m, n)
        if M.B(p, p).sign() >= 0:
            return False, {"reason": "a line misses the translation axis"}
        params.append(_axis_param(M, z, e, p))
    ordered = all((params[i + 1] - params[i]).sign() > 0 for i in range(4))
    disjoint = all(M.B(M.bcross(a, b), M.bcross(a, b)).sign() > 0 for a, b in combinations(poles, 2))
    side1 = M.B(M.to_positive(M.bcross(m, r1.locus)), ctx.v).sign()
    side2 = M.B(M.to_positive(M.bcross(m, r2.locus)), ctx.v).sign()
    return ordered and disjoint and side1 * side2 < 0, {
        "ordered": ordered, "disjoint": disjoint, "opposite_sides": side1 * side2 < 0,
        "lines": names,
    }


def type_v_components(inst: Instance, need: int, radii=(8, 10, 12, 14)) -> list:
    """Type (v) components reached from horizontal reflections, growing the ball until enough."""
    I, ctx = inst.interval, inst.ctx
    mc = inst.morse()
    comps: dict = {}
    seen = set()
    for R in radii:
        for r in inst.interval_reflections(R):
            if r.key in seen or ctx.is_vertical(r.element):
                continue
            seen.add(r.key)
            t = I.left_complement(r)
            for r2 in I.reflections_below(t, 3):
                cell = IntervalCell((r2, I.member(r2.element * t.element)))
                comp, _ = mc.component_of(cell, 1)
                if comp.type_tag == "v":
                    comps[comp.key] = comp
        if len(comps) >= need:
            break
    return mc, sorted(comps.values(), key=lambda c: repr(c.key))


def suite_fivelines(inst: Instance, need: int = 20, radius: int = 8) -> SuiteReport:
    rep = SuiteReport("fivelines", inst.name)
    M, I, ctx = inst.model, inst.interval, inst.ctx
    mc, comps = type_v_components(inst, need)
    # each type (v) component carries one special translation with horizontal increasing factors
    ts = [mc.special_translation(c) for c in comps]
    bad = None
    for t in ts:
        r1, r2 = I.increasing_factorization(t)
        if ctx.is_vertical(r1.element) or ctx.is_vertical(r2.element):
            bad = bad or {"t": M.word_of(t.element), "reason": "vertical increasing factor"}
            continue
        ok, info = five_lines_certificate(inst, t)
        if not ok and bad is None:
            bad = {"t": M.word_of(t.element), **info}
    rep.add("five_lines_order", bad is None and len(ts) >= need, bad, translations=len(ts), required=need)

    # type (v): one increasing and two decreasing adjacent pairs per period
    pattern_bad = None
    for comp in comps:
        xs = [mc.element_at(comp, i) for i in range(0, 4)]
        pat = "".join("<" if ctx.precedes(a.element, b.element) else ">" for a, b in zip(xs, xs[1:]))
        if sorted(pat) != ["<", ">", ">"]:
            pattern_bad = pattern_bad or {"component": [M.word_of(x.element) for x in comp.base], "pattern": pat}
    rep.add("type_v_order_pattern", pattern_bad is None and len(comps) >= need, pattern_bad,
            components=len(comps), required=need)

    # phi-order laws on the ball reflections
    refl = inst.interval_reflections(radius)
    three = {r.key for r in ctx.smallest_three()}
    hor = [r for r in refl if not ctx.is_vertical(r.element)]
    ver = [r for r in refl if ctx.is_vertical(r.element)]
    phi = {r.key: I.phi(r) for r in refl}
    bad = None
    for r in hor:
        if not ctx.precedes(r.element, phi[r.key].element):
            bad = bad or {"law": "horizontal r precedes phi(r)", "r": M.word_of(r.element)}
        if not la.parallel(ctx.w_inv.act(ctx.xi(r.element)), ctx.xi(phi[r.key].element)):
            bad = bad or {"law": "xi(phi r) = w^-1 xi(r)", "r": M.word_of(r.element)}
    for a, b in combinations(hor, 2):
        if ctx.precedes(a.element, b.element) != ctx.precedes(phi[a.key].element, phi[b.key].element):
            bad = bad or {"law": "phi preserves order of horizontal pairs",
                          "r1": M.word_of(a.element), "r2": M.word_of(b.element)}
    for r in ver:
        if r.element.key not in three and not ctx.precedes(phi[r.key].element, r.element):
            bad = bad or {"law": "phi(r) precedes vertical r", "r": M.word_of(r.element)}
        hits = 0
        for j in range(-12, 13):
            if ctx.phi_power(r.element, j).key in three:
                hits += 1
        if hits != 1:
            bad = bad or {"law": "unique j with phi^j(r) among the three smallest", "r": M.word_of(r.element),
                          "hits": hits}
    rep.add("phi_order_laws", bad is None, bad, horizontal=len(hor), vertical=len(ver), radius=radius)
    return rep


# ------------------------------------------------------------------ garside


def _relations(spec: CoxeterSpec) -> list[tuple[str, str]]:
    out = []
    for s, t in combinations(range(3), 2):
        m = spec.label(s, t)
        if m is None:
            continue
        x, y = LETTERS[s], LETTERS[t]
        lhs = "".join(x if i % 2 == 0 else y for i in range(m))
        rhs = "".join(y if i % 2 == 0 else x for i in range(m))
        out.append((lhs, rhs))
    return out


def _random_word(rng: random.Random, n: int) -> str:
    return "".join(rng.choice("abcABC") for _ in range(n))


def _rewrite(rng: random.Random, word: str, rels, steps: int = 4) -> str:
    for _ in range(steps):
        op = rng.random()
        if op < 0.4 and rels:
            lhs, rhs = rng.choice(rels)
            if rng.random() < 0.5:
                lhs, rhs = rhs, lhs
            i = word.find(lhs)
            if i >= 0:
                word = word[:i] + rhs + word[i + len(lhs):]
                continue
            pos = rng.randint(0, len(word))
            word = word[:pos] + lhs + "".join(ch.swapcase() for ch in reversed(rhs)) + word[pos:]
        elif op < 0.8:
            pos = rng.randint(0, len(word))
            ch = rng.choice("abc")
            word = word[:pos] + (ch + ch.upper() if rng.random() < 0.5 else ch.upper() + ch) + word[pos:]
        else:
            for i in range(len(word) - 1):
                if word[i] != word[i + 1] and word[i].lower() == word[i + 1].lower():
                    word = word[:i] + word[i + 2:]
                    break
    return word


def suite_garside(inst: Instance, seed: int = 0, pairs: int = 300, inverses: int = 200,
                  long_words: int = 5, long_length: int = 64, radius: int = 6) -> SuiteReport:
    rep = SuiteReport("garside", inst.name)
    M, I, E = inst.model, inst.interval, inst.engine
    rng = random.Random(seed)
    rels = _relations(inst.spec)
    emitted = []

    def nf(word):
        x = E.from_artin_word(word)
        emitted.append(x)
        return x

    bad, proj_bad = None, None
    for _ in range(pairs):
        w1 = _random_word(rng, rng.randint(0, 10))
        w2 = _rewrite(rng, w1, rels)
        x1, x2 = nf(w1), nf(w2)
        if x1 != x2 and bad is None:
            bad = {"w1": w1, "w2": w2}
        if E.project(x1) != E.project(x2) and proj_bad is None:
            proj_bad = {"w1": w1, "w2": w2}
    rep.add("equivalent_words_same_normal_form", bad is None, bad, pairs=pairs)
    rep.add("projection_sound", proj_bad is None, proj_bad)

    bad = None
    for _ in range(inverses):
        w = _random_word(rng, rng.randint(0, 16))
        x = nf(w)
        y = E.multiply(x, E.invert(x))
        if not y.is_identity() and bad is None:
            bad = {"word": w}
        z = E.from_artin_word(w + "".join(ch.swapcase() for ch in reversed(w)))
        if not z.is_identity() and bad is None:
            bad = {"word": w, "via": "letters"}
    rep.add("x_times_inverse_is_identity", bad is None, bad, words=inverses)
    rep.add("delta_times_inverse", E.multiply(E.delta(1), E.delta(-1)).is_identity())

    members = inst.interval_members(radius)
    bad = None
    D = E.delta(1)
    for u in members:
        lhs = E.multiply(E.simple(u), D)
        rhs = E.multiply(D, E.simple(E.tau(u)))
        if lhs != rhs and bad is None:
            bad = {"u": M.word_of(u.element)}
        if E.tau(u).rank != u.rank and bad is None:
            bad = {"u": M.word_of(u.element), "reason": "rank"}
    rep.add("delta_conjugation_is_phi", bad is None, bad, members=len(members))

    bad = None
    for _ in range(30):
        w = "".join(rng.choice("abc") for _ in range(rng.randint(1, 12)))
        x = nf(w)
        total = sum(f.rank for f in x.factors) + 3 * x.delta_power
        if x.delta_power < 0 or total != len(w):
            bad = bad or {"word": w}
    rep.add("positive_word_exponent_sanity", bad is None, bad)

    times, answers, bad = [], [], None
    for _ in range(long_words):
        w1 = _random_word(rng, long_length)
        w2 = _rewrite(rng, w1, rels, steps=3)
        t0 = time.perf_counter()
        eq = E.word_problem(w1, w2)
        times.append(time.perf_counter() - t0)
        answers.append(eq)
        if not eq:
            bad = bad or {"w1": w1, "w2": w2}
    rep.add("long_word_problem_under_5s", max(times) < 5.0 and bad is None, bad,
            max_seconds=round(max(times), 3), length=long_length)

    rep.add("left_weighted_outputs", all(E.check_left_weighted(x) for x in emitted), forms=len(emitted))
    for lhs, rhs in rels:
        rep.add(f"braid_relation_{lhs}", E.word_problem(lhs, rhs))
    for s, t in combinations(range(3), 2):
        m = inst.spec.label(s, t)
        if m is None or m >= 3:
            x, y = LETTERS[s], LETTERS[t]
            rep.add(f"no_commute_{x}{y}", not E.word_problem(x + y, y + x))
    rep.add("free_insertion", E.word_problem("abA", "abA") and E.word_problem("aA", ""))
    ok_a, n_a = E.center_probe(I.member(M.generators[0]), 5)
    ab = I.in_interval(M.generators[0] * M.generators[1])
    ok_ab, n_ab = E.center_probe(ab, 5) if ab is not None else (True, None)
    rep.add("center_probe", ok_a and ok_ab, None if ok_a and ok_ab else {"n": n_a or n_ab})
    return rep


# -------------------------------------------------------------------- morse


def suite_morse(inst: Instance, J: int = 3, radius: int = 4, horizontal_radius: int = 10,
                samples: int = 500, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("morse", inst.name)
    M, I, ctx = inst.model, inst.interval, inst.ctx
    mc = inst.morse()
    extra = horizontal_seeds(mc, horizontal_radius)
    T = build_truncation(mc, radius, J, extra_seeds=extra)
    cells = T.cells
    comps = list(T.components.values())
    from collections import Counter

    tags = Counter((c.type_tag + ("*" if c.exceptional else "")) for c in comps)
    exclusive = all(sum(mc.type_predicates(c.d, c.base).values()) == 1 for c in comps)
    rep.add("classification_exhaustive_exclusive", exclusive, components=len(comps), cells=len(cells),
            types=dict(sorted(tags.items())), window=J)

    # component sequences multiply to w
    bad = None
    for c in comps:
        lo, hi = c.index_range()
        for i in range(lo, hi + 1):
            if c.d > 1 and mc.product(mc.top(c, i)).rank != 3:
                bad = bad or {"component": [M.word_of(x.element) for x in c.base], "index": i}
    rep.add("component_products_equal_w", bad is None, bad)

    bad = None
    for cell in cells:
        e = mc.eta(cell)
        for f in mc.faces(cell):
            if f in cells and mc.eta(f) > e:
                bad = bad or {"cell": repr(cell), "face": repr(f)}
    rep.add("eta_poset_map", bad is None, bad)

    # examples
    a = I.member(M.generators[0])
    bc = I.member(M.generators[1] * M.generators[2])
    top = IntervalCell((I.top,))
    comp_w, _ = mc.component_of(top, J)
    rep.add("eta_examples", mc.eta(top) == 1 and mc.eta(IntervalCell((a,))) == 2
            and {f.key for f in mc.faces(IntervalCell((a, bc)))}
            == {IntervalCell((bc,)).key, top.key, IntervalCell((a,)).key}
            and comp_w.type_tag == "i")

    # M: perfect off K'' on the core, involutive, acyclic, omega monotone
    outside = [c for c in cells if mc.M_partner(c, J) is not None]
    out_set = set(outside)
    matched, boundary, bad = {}, 0, None
    for c in outside:
        e = mc.M_partner(c, J)
        p = mc.partner_of(e, c)
        if p not in cells:
            boundary += 1
            continue
        e2 = mc.M_partner(p, J)
        if e2 is None or mc.partner_of(e2, p) != c:
            bad = bad or {"cell": repr(c), "partner": repr(p)}
            continue
        if e.lower not in mc.faces(e.upper):
            bad = bad or {"cell": repr(c), "reason": "partner is not a face"}
        if e.lower == mc.zero_cell:
            bad = bad or {"cell": repr(c), "reason": "matched with the 0-cell"}
        matched[c] = e
    rep.add("M_perfect_off_K2_on_core", bad is None, bad, core=len(matched), boundary=boundary,
            outside_K2=len(outside))
    G = _hasse_digraph(mc, outside, out_set, matched)
    cyc = _find_cycle(G)
    rep.add("M_acyclic", cyc is None, cyc, nodes=G.number_of_nodes(), edges=G.number_of_edges())

    bad = None
    for x, y in G.edges:
        wx, wy = mc.omega(x, J), mc.omega(y, J)
        m = matched.get(x)
        if m is not None and mc.partner_of(m, x) == y:
            if wx != wy:
                bad = bad or {"edge": [repr(x), repr(y)], "reason": "omega differs on matched pair"}
        elif (wy - wx).sign() > 0:
            bad = bad or {"edge": [repr(x), repr(y)], "reason": "omega increases"}
    rep.add("omega_monotone", bad is None, bad)

    bad, hops = None, 0
    for c, e in matched.items():
        if e.kind != "cross_fiber" or c != e.upper:
            continue
        hops += 1
        for f in (IntervalCell(e.upper.factors[:1]), IntervalCell(e.upper.factors[1:])):
            comp, _ = mc.component_of(f, J)
            if mc.in_K2(comp):
                continue
            if (mc.omega(f, J) - mc.omega(c, J)).sign() >= 0:
                bad = bad or {"cell": repr(c), "face": repr(f)}
    rep.add("omega_drops_after_cross_fiber_hop", bad is None, bad, hops=hops)

    hor = [r for r in inst.interval_reflections(6) if not ctx.is_vertical(r.element)]
    rep.add("omega_exceeds_one_for_horizontal",
            all((mc.reflection_weight(r) - 1).sign() > 0 for r in hor), horizontal=len(hor))

    # N
    dom = [c for c in cells if mc.in_N_domain(c, J)]
    rng = random.Random(seed)
    sample = dom if len(dom) <= samples else rng.sample(dom, samples)
    bad, nb = None, 0
    Nmatched = {}
    for c in sample:
        e = mc.N_partner(c, J)
        p = mc.partner_of(e, c)
        if not mc.in_N_domain(p, J):
            bad = bad or {"cell": repr(c), "partner": repr(p), "reason": "partner outside K' minus X''"}
            continue
        e2 = mc.N_partner(p, J)
        if mc.partner_of(e2, p) != c:
            bad = bad or {"cell": repr(c), "partner": repr(p)}
        if e.lower == mc.zero_cell:
            bad = bad or {"cell": repr(c), "reason": "matched with the 0-cell"}
        Nmatched[c] = e
    unknown = sum(1 for c in cells if mc.in_K2(mc.component_of(c, J)[0])
                  and mc.in_K1(*mc.component_of(c, J)) is None)
    rep.add("N_involutive", bad is None and bool(sample), bad, domain=len(dom), sampled=len(sample),
            K1_undetermined=unknown)
    for c in dom:
        if c not in Nmatched:
            Nmatched[c] = mc.N_partner(c, J)
    dset = set(dom)
    NG = _hasse_digraph(mc, dom, dset, Nmatched)
    cyc = _find_cycle(NG)
    rep.add("N_acyclic", cyc is None, cyc, nodes=NG.number_of_nodes(), edges=NG.number_of_edges())
    zero = mc.zero_cell
    rep.add("zero_cell_never_matched", mc.M_partner(zero, J) is None and not mc.in_N_domain(zero, J)
            and all(e.lower != zero for e in list(matched.values()) + list(Nmatched.values())))

    # anchor choice: fundamental window shifted by w
    mc2 = inst.morse(shift=1)
    T2 = build_truncation(mc2, radius, J, extra_seeds=horizontal_seeds(mc2, horizontal_radius))
    out2 = [c for c in T2.cells if mc2.M_partner(c, J) is not None]
    m2 = {}
    for c in out2:
        e = mc2.M_partner(c, J)
        p = mc2.partner_of(e, c)
        if p in T2.cells:
            m2[c] = e
    G2 = _hasse_digraph(mc2, out2, set(out2), m2)
    cyc = _find_cycle(G2)
    rep.add("M_acyclic_shifted_window", cyc is None, cyc, nodes=G2.number_of_nodes())
    rep.add("window_coverage", True, window=J, seed_radius=radius, horizontal_seed_radius=horizontal_radius,
            components=len(comps), cells=len(cells))
    return rep


def _hasse_digraph(mc: MorseComplex, nodes, node_set, matched) -> nx.DiGraph:
    """Face edges point down, except matched edges which point up."""
    G = nx.DiGraph()
    G.add_nodes_from(nodes)
    for c in nodes:
        for f in mc.faces(c):
            if f not in node_set:
                continue
            e = matched.get(c)
            if e is not None and e.upper == c and e.lower == f:
                G.add_edge(f, c)
            else:
                G.add_edge(c, f)
    return G


def _find_cycle(G: nx.DiGraph) -> Optional[dict]:
    try:
        cyc = nx.find_cycle(G)
    except nx.NetworkXNoCycle:
        return None
    return {"cycle": [repr(a) for a, _ in cyc][:8]}


SUITES: dict[str, Callable] = {
    "field": suite_field,
    "representation": suite_representation,
    "axis": suite_axis,
    "lattice": suite_lattice,
    "shellability": suite_shellability,
    "fivelines": suite_fivelines,
    "garside": suite_garside,
    "morse": suite_morse,
}


def run_suite(name: str, inst: Instance, **kwargs) -> SuiteReport:
    t0 = time.perf_counter()
    rep = SUITES[name](inst, **kwargs)
    rep.seconds = time.perf_counter() - t0
    return rep
