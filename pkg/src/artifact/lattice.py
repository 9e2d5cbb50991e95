"""The interval [1, w] of noncrossing partitions: order, complements, meets and joins."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import linalg as la
from .coxeter import CapExceeded, CoxeterModel, GroupElement, InvariantViolation
from .geometry import AxisContext


@dataclass(frozen=True, eq=False)
class IntervalElement:
    element: GroupElement
    rank: int
    kind: str
    locus: Optional[tuple] = None  # pole (rank 1) or fixed vector (rank 2)

    @property
    def key(self):
        return self.element.key

    def __eq__(self, other):
        return isinstance(other, IntervalElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        w = self.element.model.word_of(self.element)
        return f"[{w if w is not None else '?'}:{self.kind}]"


class NotInInterval(ValueError):
    pass


class Interval:
    """Lattice operations on [1, w] for a fixed axis context."""

    def __init__(self, ctx: AxisContext, window_cap: int = 256):
        self.ctx = ctx
        self.model: CoxeterModel = ctx.model
        self.window_cap = window_cap
        self.one = IntervalElement(self.model.identity, 0, "identity")
        self.top = IntervalElement(ctx.w, 3, "glide", self.model.classify(ctx.w).pole)
        self._members: dict = {self.one.key: self.one, self.top.key: self.top}
        self._below: dict = {}
        self._minref: dict = {}
        self._rotation_at: dict = {}
        self._len2: dict = {}
        self._certified: set = set()

    # ---------------------------------------------------------- membership

    def is_w_reflection(self, g: GroupElement, check_w: bool = False) -> bool:
        if g.moved_rank != 1:
            return False
        return self.model.contains(g) if check_w else True

    def in_interval(self, g: GroupElement, check_w: bool = False, certify: bool = True) -> Optional[IntervalElement]:
        """Membership in [1, w] with a certificate.

        certify=False skips the reflection-length-2 walk; it is only used for
        elements derived from members by interval operations (complements,
        phi, reflections below a member, rank-additive products).
        """
        hit = self._members.get(g.key)
        if hit is not None and (not certify or hit.rank in (0, 3) or g.key in self._certified):
            return hit
        if hit is None:
            if check_w and not self.model.contains(g):
                return None
            r = g.moved_rank
            if r == 0:
                return self.one
            if r == 3:
                return self.top if g == self.ctx.w else None
            if r == 1:
                hit = IntervalElement(g, 1, "reflection", g.pole())
            else:
                if (self.ctx.w * g.inverse()).moved_rank != 1:
                    return None
                cls = self.model.classify(g)
                hit = IntervalElement(g, 2, cls.kind, g.fixed_vector())
        if certify:
            ok = self._length_two(self.ctx.w * g) if hit.rank == 1 else self._length_two(g)
            if not ok:
                self._members.pop(g.key, None)
                return None
            self._certified.add(g.key)
        self._members[g.key] = hit
        return hit

    def member(self, g: GroupElement) -> IntervalElement:
        """An element known to lie in [1, w] (derived from members); raises otherwise."""
        el = self.in_interval(g, certify=False)
        if el is None:
            raise NotInInterval(f"{g!r} is not in [1, w]")
        return el

    # ---------------------------------------------------------------- order

    def leq(self, u: IntervalElement, v: IntervalElement) -> bool:
        """Moved-space containment Mov(u) <= Mov(v).

        For rank 2, Mov(v) is the B-orthogonal complement of the fixed vector,
        so containment of a reflection reduces to one bilinear form.
        """
        if u.rank == 0 or v.rank == 3:
            return True
        if u.rank > v.rank:
            return False
        if u.rank == v.rank:
            return u == v
        if u.rank == 1 and v.rank == 2:
            return self.model.B(u.locus, v.locus).is_zero()
        return False

    def complements(self, u: IntervalElement) -> tuple[IntervalElement, IntervalElement]:
        w = self.ctx.w
        left = self.member(w * u.element.inverse())
        right = self.member(u.element.inverse() * w)
        return left, right

    def left_complement(self, u: IntervalElement) -> IntervalElement:
        return self.member(self.ctx.w * u.element.inverse())

    def right_complement(self, u: IntervalElement) -> IntervalElement:
        return self.member(u.element.inverse() * self.ctx.w)

    def phi(self, u: IntervalElement) -> IntervalElement:
        return self.member(self.ctx.phi(u.element))

    def phi_inv(self, u: IntervalElement) -> IntervalElement:
        return self.member(self.ctx.phi_inv(u.element))

    def mul(self, u: IntervalElement, v: IntervalElement) -> IntervalElement:
        el = self.in_interval(u.element * v.element)
        if el is None or el.rank != u.rank + v.rank:
            raise NotInInterval("product is not a rank-additive member of [1, w]")
        return el

    # ------------------------------------------------------ rank-2 geometry

    def rotation_at_axial_vertex(self, p: la.Vec) -> Optional[IntervalElement]:
        """The unique rotation (or parabolic) of [1, w] fixing the axial vertex p."""
        ctx = self.ctx
        found = ctx.axial_vertex_chamber(p)
        if found is None:
            return None
        g, _ = found
        ch = ctx.axial_chamber_of(g)
        through = [i for i, s in enumerate(ch.ordered_walls) if self.model.B(s.pole(), p).is_zero()]
        if len(through) != 2:
            raise InvariantViolation("axial vertex not on exactly two chamber walls")
        i, j = through
        u = ch.ordered_walls[i] * ch.ordered_walls[j]
        el = self.in_interval(u)
        if el is None:
            raise InvariantViolation("rotation at an axial vertex is not in [1, w]")
        return el

    def _length_two(self, g: GroupElement, cls=None) -> bool:
        """Whether a rank-2 element of W is a product of two reflections of W.

        Rotations and parabolics always are (vertex stabilizers are generated by
        reflections).  A translation is iff some wall is perpendicular to its axis.
        """
        cls = cls or self.model.classify(g)
        if cls.kind != "translation":
            return True
        hit = self._len2.get(g.key)
        if hit is None:
            hit = self._perpendicular_reflection(g, g.fixed_vector()) is not None
            self._len2[g.key] = hit
        return hit

    def _perpendicular_reflection(self, g: GroupElement, m: la.Vec, z: Optional[la.Vec] = None) -> Optional[GroupElement]:
        """First reflection of W perpendicular to the axis m of g, walking one period from z."""
        M, ctx = self.model, self.ctx
        if z is None:
            x0 = M.basepoint
            z = la.vsub(x0, la.scale(M.B(x0, m) / M.B(m, m), m))
        z = M.to_positive(z)
        tz = g.act(z)
        cands = list(ctx.stabilizer_reflections(z))
        crossings, _ = ctx.walk(z, tz)
        for c in crossings:
            cands.extend(c.reflections)
        for r in cands:
            if M.B(r.pole(), m).is_zero():
                return r
        return None

    def _translation_seed(self, u: IntervalElement) -> GroupElement:
        M, ctx = self.model, self.ctx
        m = u.locus
        z = M.bcross(ctx.v, m)
        if M.B(z, z).sign() >= 0:
            x0 = M.basepoint
            z = la.vsub(x0, la.scale(M.B(x0, m) / M.B(m, m), m))
        z = M.to_positive(z)
        tz = u.element.act(z)
        cands = list(ctx.stabilizer_reflections(z))
        crossings, _ = ctx.walk(z, tz)
        for c in crossings:
            cands.extend(c.reflections)
        for r in cands:
            if M.B(r.pole(), m).is_zero() and (r * u.element).moved_rank == 1:
                return r
        raise InvariantViolation("no reflection found below a translation")

    def _rotation_seed(self, u: IntervalElement) -> tuple[GroupElement, Optional[int]]:
        """A reflection below u and the order of u (None if parabolic)."""
        el = self.rotation_at_axial_vertex(u.locus)
        if el is None or el != u:
            raise InvariantViolation("rotation in [1, w] not centred at an axial vertex")
        ctx = self.ctx
        g, _ = ctx.axial_vertex_chamber(u.locus)
        ch = ctx.axial_chamber_of(g)
        seed = next(s for s in ch.ordered_walls if self.model.B(s.pole(), u.locus).is_zero())
        if u.kind == "parabolic":
            return seed, None
        order, x = 1, u.element
        while not x.is_identity():
            x = x * u.element
            order += 1
        return seed, order

    def reflection_sequence(self, u: IntervalElement, lo: int, hi: int) -> list[GroupElement]:
        """r_k for lo <= k <= hi: rotations give seed*u^k, translations u^k*seed.

        For a finite rotation the full cycle is returned regardless of lo/hi.
        """
        if u.rank != 2:
            raise ValueError("reflections_below needs a rank-2 element")
        g = u.element
        gi = g.inverse()
        if u.kind == "translation":
            seed = self._translation_seed(u)
            step_f, step_b = (lambda r: g * r), (lambda r: gi * r)
        else:
            seed, order = self._rotation_seed(u)
            if order is not None:
                out, r = [], seed
                for _ in range(order):
                    out.append(r)
                    r = r * g
                return out
            step_f, step_b = (lambda r: r * g), (lambda r: r * gi)
        fwd, r = [], seed
        for _ in range(hi + 1):
            fwd.append(r)
            r = step_f(r)
        back, r = [], seed
        for _ in range(-lo):
            r = step_b(r)
            back.append(r)
        return back[::-1] + fwd

    def reflections_below(self, u: IntervalElement, window: int = 8) -> list[IntervalElement]:
        out = []
        for r in self.reflection_sequence(u, -window, window):
            if (r * u.element).moved_rank != 1:
                raise InvariantViolation("generated reflection is not below u")
            out.append(self.member(r))
        return out

    def min_reflection_below(self, u: IntervalElement) -> IntervalElement:
        """The axially smallest reflection below a rank-2 element."""
        hit = self._minref.get(u.key)
        if hit is not None:
            return hit
        ctx = self.ctx
        if u.kind == "rotation":
            seq = self.reflection_sequence(u, 0, 0)
            best = min(seq, key=ctx.axial_key)
        else:
            # along the sequence the keys run monotonically around the cyclic
            # order (in either direction) with exactly one wrap
            window = 4
            best = None
            while window <= self.window_cap:
                seq = self.reflection_sequence(u, -window, window)
                keys = [ctx.axial_key(r) for r in seq]
                desc = [i for i in range(len(seq) - 1) if keys[i + 1] < keys[i]]
                asc = [i for i in range(len(seq) - 1) if keys[i] < keys[i + 1]]
                if len(desc) == 1 and len(asc) > 1:
                    best = seq[desc[0] + 1]
                    break
                if len(asc) == 1 and len(desc) > 1:
                    best = seq[asc[0]]
                    break
                if len(desc) > 1 and len(asc) > 1:
                    raise InvariantViolation("axial keys along a reflection sequence are not cyclically monotone")
                window *= 2
            if best is None:
                raise CapExceeded("window cap reached while locating the smallest reflection")
        el = self.member(best)
        self._minref[u.key] = el
        return el

    # ------------------------------------------------------------- join/meet

    def join(self, u: IntervalElement, v: IntervalElement) -> IntervalElement:
        if self.leq(u, v):
            return v
        if self.leq(v, u):
            return u
        if u.rank == 3 or v.rank == 3:
            return self.top
        if u.rank == 2 and v.rank == 2:
            return self.top
        if u.rank == 2 or v.rank == 2:
            return self.top  # comparability already failed
        return self._join_reflections(u, v)

    def _join_reflections(self, r1: IntervalElement, r2: IntervalElement) -> IntervalElement:
        M, ctx = self.model, self.ctx
        n1, n2 = r1.locus, r2.locus
        p = M.bcross(n1, n2)
        s = M.B(p, p).sign()
        if s <= 0:
            p = M.to_positive(p)
            rot = self.rotation_at_axial_vertex(p)
            if rot is None:
                return self.top
            if not (self.leq(r1, rot) and self.leq(r2, rot)):
                raise InvariantViolation("rotation at the common point is not above both reflections")
            return rot
        # ultraparallel: walk the common perpendicular between the feet
        m = p
        f1 = M.to_positive(M.bcross(n1, m))
        f2 = M.to_positive(M.bcross(n2, m))
        cands = list(ctx.stabilizer_reflections(f1)) + list(ctx.stabilizer_reflections(f2))
        crossings, _ = ctx.walk(f1, f2)
        for c in crossings:
            cands.extend(c.reflections)
        g1 = r1.element
        seen = set()
        for r in cands:
            if r == g1 or r.key in seen:
                continue
            seen.add(r.key)
            if not M.B(r.pole(), m).is_zero():
                continue
            for t in (r * g1, g1 * r):
                if t.moved_rank != 2 or not la.parallel(t.fixed_vector(), m):
                    continue
                el = self.in_interval(t)
                if el is not None and el.kind == "translation" and self.leq(r2, el) and self.leq(r1, el):
                    return el
        return self.top

    def meet(self, u: IntervalElement, v: IntervalElement) -> IntervalElement:
        if self.leq(u, v):
            return u
        if self.leq(v, u):
            return v
        if u.rank <= 1 or v.rank <= 1:
            return self.one
        # two distinct rank-2 elements
        M = self.model
        c = la.cross(u.locus, v.locus)  # B(G^-1 c, x) = c . x
        n = la.mat_vec(M.gram_inv, c)
        if M.B(n, n).sign() <= 0:
            return self.one
        r = M.reflection_from_pole(n)
        if not M.contains(r):
            return self.one
        el = self.member(r)
        if self.leq(el, u) and self.leq(el, v):
            return el
        return self.one

    # ------------------------------------------------------- factorizations

    def increasing_factorization(self, u: IntervalElement) -> list[IntervalElement]:
        ctx = self.ctx
        if u.rank == 0:
            return []
        if u.rank == 1:
            return [u]
        if u.rank == 2:
            rho = self.min_reflection_below(u)
            second = self.member(rho.element * u.element)
            if not ctx.precedes(rho.element, second.element):
                raise InvariantViolation("factorization by the smallest reflection is not increasing")
            return [rho, second]
        walls = list(ctx.base_chamber().ordered_walls)
        cands = [walls]
        for i in range(2):
            a, b = walls[i], walls[i + 1]
            if a * b == b * a:
                sw = list(walls)
                sw[i], sw[i + 1] = b, a
                cands.append(sw)
        for c in cands:
            if ctx.precedes(c[0], c[1]) and ctx.precedes(c[1], c[2]):
                if c[0] * c[1] * c[2] != ctx.w:
                    raise InvariantViolation("axial factorization does not multiply to w")
                return [self.member(x) for x in c]
        raise InvariantViolation("no increasing ordering of the base chamber walls")

    def is_increasing(self, factors: list[IntervalElement]) -> bool:
        return all(self.ctx.precedes(a.element, b.element) for a, b in zip(factors, factors[1:]))
