"""Coxeter axis, axial chambers and the axial order on reflections.

Points of the axis are handled through a projective parameter: with a base
point q on the axis and a B-orthogonal direction d in the Coxeter plane, the
point q + mu*d is on the axis for mu^2 < -B(q,q)/B(d,d), and mu grows in the
direction of w.  A reflection line meets the projective line of the plane at
a single parameter, which gives the cyclic order used for the axial order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Optional

from . import linalg as la
from .coxeter import LETTERS, CoxeterModel, GroupElement, InvariantViolation
from .field import FieldElement

VERTICAL_ABOVE, HORIZONTAL, VERTICAL_BELOW = 0, 1, 2
BRANCH_NAMES = ("vertical_above", "horizontal", "vertical_below")


@total_ordering
@dataclass(frozen=True, eq=False)
class AxialOrderKey:
    branch: int
    position: FieldElement
    tiebreak: tuple

    def _cmp(self, other: "AxialOrderKey") -> int:
        if self.branch != other.branch:
            return -1 if self.branch < other.branch else 1
        s = (self.position - other.position).sign()
        if s:
            return s
        if self.tiebreak == other.tiebreak:
            return 0
        return -1 if self.tiebreak < other.tiebreak else 1

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __eq__(self, other):
        return isinstance(other, AxialOrderKey) and self._cmp(other) == 0

    def __hash__(self):
        return hash(self.tiebreak)


@dataclass(frozen=True)
class AxialChamber:
    element: GroupElement
    ordered_walls: tuple


@dataclass(frozen=True)
class Crossing:
    t: FieldElement
    reflections: tuple


class AxisContext:
    """The Coxeter element w = abc, its axis and the axial order."""

    def __init__(self, model: CoxeterModel):
        self.model = model
        M = model
        w = M.w
        self.w = w
        self.w_inv = w.inverse()
        cls = M.classify(w)
        if cls.kind != "glide":
            raise InvariantViolation(f"Coxeter element classified as {cls.kind}, not glide")
        v = cls.pole
        if M.B(v, v).sign() <= 0:
            raise InvariantViolation("(w + id)-kernel is not spacelike")
        if w.act(v) != la.scale(-1, v):
            raise InvariantViolation("w v != -v")
        self.v = v
        self.Bvv = M.B(v, v)
        x0 = M.basepoint
        q = la.vsub(x0, la.scale(M.B(x0, v) / self.Bvv, v))
        d = self._direction(q)
        q = self._nudge_off_walls(q, d)
        self.q = q
        self.d = self._direction(q)
        self.Bqq = M.B(q, q)
        self.Bdd = M.B(self.d, self.d)
        # mu_max^2 = -Bqq / Bdd
        self.mu_max_sq = -self.Bqq / self.Bdd
        word, _ = M.fold(q)
        self.base_chamber_word = word
        self.base_is_fundamental = word == ""
        self._keys: dict = {}
        self._vertical: dict = {}
        self._smallest3 = None
        self._base_chamber = None
        self.wq = w.act(q)

    # ----------------------------------------------------------- axis points

    def _direction(self, q: la.Vec) -> la.Vec:
        M = self.model
        wq = self.w.act(q)
        return la.vsub(wq, la.scale(M.B(wq, q) / M.B(q, q), q))

    def _on_wall(self, x: la.Vec) -> bool:
        M = self.model
        _, p = M.fold(x)
        gp = la.mat_vec(M.gram, p)
        return any(c.is_zero() for c in gp)

    def _nudge_off_walls(self, q: la.Vec, d: la.Vec) -> la.Vec:
        M = self.model
        eps = Fraction(1, 2)
        x = q
        while self._on_wall(x):
            x = la.vadd(q, la.scale(eps, d))
            if M.B(x, x).sign() >= 0:
                x = q
            eps /= 2
            if eps < Fraction(1, 1 << 60):
                raise InvariantViolation("could not nudge the axis base point off the walls")
        return x

    def point(self, mu) -> la.Vec:
        return la.vadd(self.q, la.scale(mu, self.d))

    def mu_of(self, x: la.Vec) -> FieldElement:
        """Projective parameter of a point of the Coxeter plane."""
        M = self.model
        alpha = M.B(x, self.q) / self.Bqq
        beta = M.B(x, self.d) / self.Bdd
        return beta / alpha

    def on_axis(self, mu) -> bool:
        return (mu * mu - self.mu_max_sq).sign() < 0

    def w_power_point(self, k: int) -> la.Vec:
        x = self.q
        g = self.w if k >= 0 else self.w_inv
        for _ in range(abs(k)):
            x = g.act(x)
        return x

    # ------------------------------------------------------------- reflections

    def _line_data(self, r: GroupElement):
        n = r.pole()
        M = self.model
        return M.B(self.q, n), M.B(self.d, n)

    def is_vertical(self, r: GroupElement) -> bool:
        if r.moved_rank != 1:
            raise ValueError("is_vertical needs a reflection")
        hit = self._vertical.get(r.key)
        if hit is not None:
            return hit
        fq, fd = self._line_data(r)
        val = fd * fd * self.Bqq + fq * fq * self.Bdd
        s = val.sign()
        if s == 0:
            raise InvariantViolation("reflection line meets the axis at infinity")
        self._vertical[r.key] = s < 0
        return s < 0

    def crossing_mu(self, r: GroupElement) -> FieldElement:
        """Axis parameter where a vertical reflection line crosses the axis."""
        fq, fd = self._line_data(r)
        return -fq / fd

    def xi_mu(self, r: GroupElement) -> FieldElement:
        """Axis parameter of the point of the axis closest to Fix(r), r horizontal."""
        if self.is_vertical(r):
            raise ValueError("xi is defined for horizontal reflections only")
        fq, fd = self._line_data(r)
        return (self.Bqq * fd) / (self.Bdd * fq)

    def xi(self, r: GroupElement) -> la.Vec:
        return self.point(self.xi_mu(r))

    def axial_key(self, r: GroupElement) -> AxialOrderKey:
        hit = self._keys.get(r.key)
        if hit is not None:
            return hit
        fq, fd = self._line_data(r)
        if self.is_vertical(r):
            mu = -fq / fd
            s = mu.sign()
            if s == 0:
                raise InvariantViolation("axis base point lies on a reflection line")
            key = AxialOrderKey(VERTICAL_ABOVE if s > 0 else VERTICAL_BELOW, mu, r.key)
        else:
            key = AxialOrderKey(HORIZONTAL, fd / fq, r.key)
        self._keys[r.key] = key
        return key

    def compare(self, r1: GroupElement, r2: GroupElement) -> int:
        return self.axial_key(r1)._cmp(self.axial_key(r2))

    def precedes(self, r1: GroupElement, r2: GroupElement) -> bool:
        return self.compare(r1, r2) < 0

    def phi(self, u: GroupElement) -> GroupElement:
        return self.w_inv * u * self.w

    def phi_inv(self, u: GroupElement) -> GroupElement:
        return self.w * u * self.w_inv

    def phi_power(self, u: GroupElement, k: int) -> GroupElement:
        for _ in range(abs(k)):
            u = self.phi(u) if k > 0 else self.phi_inv(u)
        return u

    # ------------------------------------------------------------ gallery walk

    def stabilizer_reflections(self, z: la.Vec, window: int = 0) -> list[GroupElement]:
        """Reflections of W whose lines pass through the point z (finite or ideal)."""
        M = self.model
        word, p = M.fold(z)
        gp = la.mat_vec(M.gram, p)
        J = [s for s in range(3) if gp[s].is_zero()]
        if not J:
            return []
        u = M.element(word)
        ui = u.inverse()
        gens = M.generators
        if len(J) == 1:
            local = [gens[J[0]]]
        elif len(J) == 2:
            s, t = gens[J[0]], gens[J[1]]
            m = M.spec.label(J[0], J[1])
            st = s * t
            local = []
            if m is None:
                ts = t * s
                for k in range(0, window + 1):
                    g = s
                    for _ in range(k):
                        g = st * g
                    local.append(g)
                    if k:
                        g = s
                        for _ in range(k):
                            g = ts * g
                        local.append(g)
            else:
                g = s
                for _ in range(m):
                    local.append(g)
                    g = st * g
        else:
            raise InvariantViolation("point fixed by the whole group")
        return [u * r * ui for r in local]

    def walk(self, x: la.Vec, y: la.Vec) -> tuple[list[Crossing], list[GroupElement]]:
        """Walls crossed by the open segment (x, y) and the chambers visited.

        Both endpoints must be points of the hyperbolic plane (timelike).
        """
        M = self.model
        G = M.gram
        direction = la.vsub(y, x)
        word, _ = M.fold(x, direction)
        u = M.element(word)
        chambers = [u]
        crossings: list[Crossing] = []
        t_cur = None
        for _ in range(100000):
            ui = u.inverse()
            a = la.mat_vec(G, ui.act(x))
            b = la.mat_vec(G, ui.act(y))
            best = None
            for s in range(3):
                if b[s].sign() < 0:
                    t = a[s] / (a[s] - b[s])
                    if best is None or (t - best).sign() < 0:
                        best = t
            if best is None:
                return crossings, chambers
            if t_cur is not None and (best - t_cur).sign() <= 0:
                raise InvariantViolation("gallery walk did not advance")
            t_cur = best
            z = la.vadd(x, la.scale(best, direction))
            refl = []
            for r in self.stabilizer_reflections(z):
                n = r.pole()
                if M.B(x, n).is_zero() and M.B(y, n).is_zero():
                    continue
                refl.append(r)
            refl.sort(key=lambda r: r.key)
            crossings.append(Crossing(best, tuple(refl)))
            word, _ = M.fold(z, direction)
            u = M.element(word)
            chambers.append(u)
        raise InvariantViolation("gallery walk did not terminate")

    def segment_crossings(self) -> list[GroupElement]:
        crossings, _ = self.walk(self.q, self.wq)
        out = [r for c in crossings for r in c.reflections]
        if len(out) != 3:
            raise InvariantViolation(f"segment (q, wq) crosses {len(out)} reflection lines, expected 3")
        return out

    def smallest_three(self) -> list[GroupElement]:
        if self._smallest3 is None:
            self._smallest3 = self.segment_crossings()
        return self._smallest3

    # ------------------------------------------------------------- chambers

    def axial_chamber_at(self, t: la.Vec) -> AxialChamber:
        """Axial chamber containing the axis point t, walls in pedal order."""
        M = self.model
        if self._on_wall(t):
            raise ValueError("point lies on a reflection line; nudge it first")
        word, _ = M.fold(t)
        g = M.element(word)
        gi = g.inverse()
        walls = {g * s * gi for s in M.generators}
        crossings, _ = self.walk(t, self.w.act(t))
        c = [r for cr in crossings for r in cr.reflections]
        if len(c) != 3:
            raise InvariantViolation(f"segment (t, wt) crosses {len(c)} lines, expected 3")
        c1, c2, c3 = c
        s1 = c1
        s2 = c1 * c2 * c1
        s3 = s2 * s1 * c3 * s1 * s2
        if {s1, s2, s3} != walls:
            raise InvariantViolation("pedal-order walls are not the walls of the chamber")
        if s1 * s2 * s3 != self.w:
            raise InvariantViolation("axial factorization does not reproduce w")
        return AxialChamber(g, (s1, s2, s3))

    def base_chamber(self) -> AxialChamber:
        if self._base_chamber is None:
            self._base_chamber = self.axial_chamber_at(self.q)
        return self._base_chamber

    def chamber_axis_interval(self, g: GroupElement):
        """Interior point of the axis inside chamber g*D (None if not axial)."""
        M = self.model
        lo = hi = None
        for s in range(3):
            n = g.act(M.roots[s])
            a, b = M.B(self.q, n), M.B(self.d, n)  # need a + mu b > 0
            sb = b.sign()
            if sb == 0:
                if a.sign() <= 0:
                    return None
                continue
            root = -a / b
            if sb > 0:
                lo = root if lo is None or root > lo else lo
            else:
                hi = root if hi is None or root < hi else hi
        if lo is not None and hi is not None and (hi - lo).sign() <= 0:
            return None
        if lo is not None and hi is not None:
            mu = (lo + hi) / 2
            if self.on_axis(mu):
                return mu
        # shrink towards the finite bound inside the axis
        anchor = lo if lo is not None else hi
        if anchor is None:
            return self.model.field.zero
        if not self.on_axis(anchor):
            return None
        step = Fraction(1)
        sgn = 1 if anchor is lo else -1
        other = hi if anchor is lo else lo
        for _ in range(200):
            mu = anchor + sgn * step
            ok = self.on_axis(mu) and (other is None or ((other - mu).sign() * sgn > 0))
            if ok:
                return mu
            step /= 2
        return None

    def axial_chamber_of(self, g: GroupElement) -> AxialChamber:
        mu = self.chamber_axis_interval(g)
        if mu is None:
            raise ValueError("chamber is not axial")
        return self.axial_chamber_at(self.point(mu))

    def vertices_of(self, g: GroupElement) -> list[la.Vec]:
        return [g.act(v) for v in self.model.chamber_vertices()]

    def chambers_at_axis_point(self, foot: la.Vec) -> list[GroupElement]:
        """Axial chambers whose closures contain a point of the axis."""
        M = self.model
        tangent = M.bcross(self.v, foot)
        out = []
        for dvec in (tangent, la.scale(-1, tangent)):
            word, _ = M.fold(foot, dvec)
            g = M.element(word)
            if g not in out:
                out.append(g)
        return out

    def axial_vertex_chamber(self, p: la.Vec) -> Optional[tuple[GroupElement, int]]:
        """(chamber, vertex index) if p is a vertex of an axial chamber, else None."""
        M = self.model
        if M.B(p, p).sign() > 0:
            raise ValueError("spacelike vector is not a point")
        c = M.B(p, self.v)
        if c.is_zero() and M.B(p, p).is_zero():
            return None
        foot = la.vsub(p, la.scale(c / self.Bvv, self.v))
        if M.B(foot, foot).sign() >= 0:
            return None
        foot = M.to_positive(foot)
        for g in self.chambers_at_axis_point(foot):
            for i, vert in enumerate(self.vertices_of(g)):
                if la.parallel(vert, p):
                    return g, i
        return None

    def is_axial_vertex(self, p: la.Vec) -> bool:
        return self.axial_vertex_chamber(p) is not None

    def axial_chambers_between(self, k_lo: int, k_hi: int) -> list[GroupElement]:
        """Chambers met by the axis between w^k_lo q and w^k_hi q."""
        _, chambers = self.walk(self.w_power_point(k_lo), self.w_power_point(k_hi))
        return chambers

    def vertex_orbits(self, J: int) -> tuple[int, bool]:
        """Number of <w>-orbits of axial vertices over the window [-J, J].

        Also reports whether every chamber has one vertex in each orbit.
        """
        chambers = self.axial_chambers_between(-J, J)
        verts = {}
        per_chamber = []
        for g in chambers:
            ks = []
            for v in self.vertices_of(g):
                k = tuple((x.num, x.den) for x in v)
                verts[k] = v
                ks.append(k)
            per_chamber.append(ks)
        parent = {k: k for k in verts}

        def find(k):
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        for k, v in verts.items():
            wv = self.w.act(v)
            kk = tuple((x.num, x.den) for x in wv)
            if kk in verts:
                parent[find(k)] = find(kk)
        roots = {find(k) for k in verts}
        one_each = all(len({find(k) for k in ks}) == 3 for ks in per_chamber)
        return len(roots), one_each

    def vertex_orbit_labels(self, J: int) -> dict:
        """Map vertex key -> orbit label 0..2 (labels follow the base chamber's vertices)."""
        chambers = self.axial_chambers_between(-J, J)
        base = self.vertices_of(self.model.element(self.base_chamber_word))
        labels = {}
        for g in chambers:
            for v in self.vertices_of(g):
                key = tuple((x.num, x.den) for x in v)
                if key in labels:
                    continue
                for lab, b in enumerate(base):
                    found = False
                    for k in range(-2 * J - 2, 2 * J + 3):
                        x = b
                        h = self.w if k >= 0 else self.w_inv
                        for _ in range(abs(k)):
                            x = h.act(x)
                        if x == v:
                            found = True
                            break
                    if found:
                        labels[key] = lab
                        break
        return labels

    def describe(self) -> dict:
        return {
            "base_point_on_axis": [str(x) for x in self.q],
            "base_chamber_word": self.base_chamber_word,
            "base_chamber_is_fundamental": self.base_is_fundamental,
        }
