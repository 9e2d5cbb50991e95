"""Rank-three Coxeter systems in their geometric representation.

Labels are given as (m_ab, m_bc, m_ac) with ``None`` standing for an infinite
label.  Everything is exact over the field of `field.make_field`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import linalg as la
from .field import FieldElement, FieldSpec, make_field

LETTERS = "abc"
INF = None

NON_HYPERBOLIC = {
    (2, 3, 3): "spherical (tetrahedral)",
    (2, 3, 4): "spherical (octahedral)",
    (2, 3, 5): "spherical (icosahedral)",
    (2, 2, 2): "spherical (reducible)",
    (2, 3, 6): "affine",
    (2, 4, 4): "affine",
    (3, 3, 3): "affine",
}


class NotHyperbolic(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class InvariantViolation(AssertionError):
    """An exact check failed that the underlying theory says cannot fail."""


def parse_label(tok) -> Optional[int]:
    if tok is None:
        return None
    if isinstance(tok, int):
        m = tok
    else:
        t = str(tok).strip().lower()
        if t in ("inf", "infinity", "∞", "oo"):
            return None
        m = int(t)
    if m < 2:
        raise ValueError(f"Coxeter labels must be >= 2 or infinite, got {m}")
    return m


@dataclass(frozen=True)
class CoxeterSpec:
    m_ab: Optional[int]
    m_bc: Optional[int]
    m_ac: Optional[int]

    @classmethod
    def parse(cls, text: str) -> "CoxeterSpec":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 3:
            raise ValueError("expected three comma-separated labels")
        return cls(*(parse_label(p) for p in parts))

    def label(self, s: int, t: int) -> Optional[int]:
        if s == t:
            return 1
        pair = frozenset((s, t))
        if pair == frozenset((0, 1)):
            return self.m_ab
        if pair == frozenset((1, 2)):
            return self.m_bc
        return self.m_ac

    @property
    def labels(self) -> tuple:
        return (self.m_ab, self.m_bc, self.m_ac)

    def curvature_sum(self) -> Fraction:
        return sum((Fraction(1, m) for m in self.labels if m is not None), Fraction(0))

    def is_hyperbolic(self) -> bool:
        return self.curvature_sum() < 1

    def check(self) -> None:
        for m in self.labels:
            parse_label(m)
        if not self.is_hyperbolic():
            finite = [m for m in self.labels if m is not None]
            kind = NON_HYPERBOLIC.get(tuple(sorted(finite))) if len(finite) == 3 else None
            if kind is None:
                kind = "spherical" if self.curvature_sum() > 1 else "affine"
            raise NotHyperbolic(f"labels {self.text()} give a {kind} triangle group, not hyperbolic")

    def field_L(self) -> int:
        """Conductor of the coordinate field.

        Labels 2 and 3 give rational Gram entries, so only labels >= 4 enter.
        """
        finite = [m for m in self.labels if m is not None and m >= 4]
        return math.lcm(*finite) if finite else 2

    def text(self) -> str:
        return ",".join("inf" if m is None else str(m) for m in self.labels)


class GroupElement:
    """3x3 matrix in the geometric representation with cached moved-space data."""

    __slots__ = ("model", "m", "_key", "_rank", "_det", "_fixed", "_pole", "_inv")

    def __init__(self, model: "CoxeterModel", m: la.Mat):
        self.model = model
        self.m = m
        self._key = None
        self._rank = None
        self._det = None
        self._fixed = None
        self._pole = None
        self._inv = None

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple((x.num, x.den) for x in self.m)
        return self._key

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.model, la.mat_mul(self.m, other.m))

    def act(self, x: la.Vec) -> la.Vec:
        return la.mat_vec(self.m, x)

    def inverse(self) -> "GroupElement":
        if self._inv is None:
            mdl = self.model
            inv = GroupElement(mdl, la.mat_mul(mdl.gram_inv, la.mat_mul(la.transpose(self.m), mdl.gram)))
            inv._inv = self
            self._inv = inv
        return self._inv

    def conj(self, g: "GroupElement") -> "GroupElement":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    @property
    def moved_rank(self) -> int:
        if self._rank is None:
            self._rank = la.rank3(la.mat_sub(self.m, self.model.ident))
        return self._rank

    @property
    def det(self) -> int:
        if self._det is None:
            d = la.det3(self.m)
            self._det = 1 if d == 1 else (-1 if d == -1 else None)
            if self._det is None:
                raise InvariantViolation("determinant is not +-1")
        return self._det

    def is_identity(self) -> bool:
        return self.key == self.model.identity.key

    def fixed_vector(self) -> la.Vec:
        """Spanning vector of ker(g - id) for moved_rank 2."""
        if self._fixed is None:
            self._fixed = la.primitive(la.kernel_rank2(la.mat_sub(self.m, self.model.ident)))
        return self._fixed

    def pole(self) -> la.Vec:
        """Spanning vector of Mov(g) for a reflection (moved_rank 1)."""
        if self._pole is None:
            self._pole = la.primitive(la.nonzero_column(la.mat_sub(self.m, self.model.ident)))
        return self._pole

    def preserves_form(self) -> bool:
        mdl = self.model
        return la.mat_mul(la.transpose(self.m), la.mat_mul(mdl.gram, self.m)) == mdl.gram

    def is_reflection(self) -> bool:
        return self.moved_rank == 1

    def __repr__(self):
        w = self.model.word_of(self)
        return f"<GroupElement {w if w is not None else '?'} rank={self.moved_rank}>"


@dataclass(frozen=True)
class Classification:
    kind: str
    fixed: Optional[la.Vec] = None  # rotation centre / parabolic point / translation-axis pole
    pole: Optional[la.Vec] = None  # reflection pole, glide axis pole


class CoxeterModel:
    """Coxeter system with its exact geometric representation."""

    def __init__(self, spec: CoxeterSpec, generator_order: str = "abc"):
        spec.check()
        if sorted(generator_order) != list(LETTERS):
            raise ValueError("generator_order must be a permutation of 'abc'")
        self.spec = spec
        self.generator_order = generator_order
        self.field: FieldSpec = make_field(spec.field_L())
        F = self.field
        g = []
        for s in range(3):
            for t in range(3):
                m = spec.label(s, t)
                if s == t:
                    g.append(F.one)
                elif m is None:
                    g.append(F.element(-1))
                elif m == 2:
                    g.append(F.zero)
                elif m == 3:
                    g.append(F.element(Fraction(-1, 2)))
                else:
                    g.append(-F.cos_pi_over(m))
        self.gram: la.Mat = tuple(g)
        self.gram_inv: la.Mat = la.inverse(self.gram)
        self.ident: la.Mat = la.identity(F)
        self.identity = GroupElement(self, self.ident)
        self.roots = [tuple(F.one if i == s else F.zero for i in range(3)) for s in range(3)]
        self.generators = [self._simple_reflection(s) for s in range(3)]
        ones = (F.one, F.one, F.one)
        self.basepoint = la.mat_vec(self.gram_inv, ones)
        self._words: dict = {self.identity.key: ""}
        self._contains: dict = {}
        for s in range(3):
            self._words[self.generators[s].key] = LETTERS[s]
        self.w = self.element(generator_order)
        self._vertices = None

    # ------------------------------------------------------------------ form

    def B(self, x: la.Vec, y: la.Vec) -> FieldElement:
        return la.dot(x, la.mat_vec(self.gram, y))

    def bcross(self, u: la.Vec, v: la.Vec) -> la.Vec:
        """Vector c with B(c, x) = det(u, v, x); B-orthogonal to u and v."""
        return la.mat_vec(self.gram_inv, la.cross(u, v))

    def signature_ok(self) -> bool:
        G = self.gram
        minor = G[0] * G[4] - G[1] * G[3]
        minors = [minor, G[0] * G[8] - G[2] * G[6], G[4] * G[8] - G[5] * G[7]]
        return la.det3(G).sign() < 0 and any(m.sign() > 0 for m in minors)

    def sheet(self, x: la.Vec) -> int:
        """+1 on the positive sheet (B(x, x0) < 0), -1 on the negative one, 0 if undecided."""
        return -self.B(x, self.basepoint).sign()

    def to_positive(self, x: la.Vec) -> la.Vec:
        return x if self.sheet(x) >= 0 else la.scale(-1, x)

    # -------------------------------------------------------------- elements

    def _simple_reflection(self, s: int) -> GroupElement:
        G = self.gram
        m = list(self.ident)
        for j in range(3):
            m[3 * s + j] = m[3 * s + j] - 2 * G[3 * s + j]
        return GroupElement(self, tuple(m))

    def simple_reflection(self, letter: str) -> GroupElement:
        return self.generators[LETTERS.index(letter)]

    def times_generator(self, g: GroupElement, s: int) -> GroupElement:
        """g * s via a rank-one column update."""
        G = self.gram
        m = list(g.m)
        for i in range(3):
            c = m[3 * i + s]
            if not c.is_zero():
                c2 = 2 * c
                for j in range(3):
                    if not G[3 * s + j].is_zero():
                        m[3 * i + j] = m[3 * i + j] - c2 * G[3 * s + j]
        return GroupElement(self, tuple(m))

    def element(self, word: str) -> GroupElement:
        g = self.identity
        for ch in word:
            if ch not in LETTERS:
                raise ValueError(f"invalid Coxeter letter {ch!r}")
            g = self.times_generator(g, LETTERS.index(ch))
        return g

    def reflection_from_pole(self, n: la.Vec) -> GroupElement:
        """B-reflection x -> x - 2B(x,n)/B(n,n) n."""
        Gn = la.mat_vec(self.gram, n)
        c = 2 / self.B(n, n)
        m = tuple(self.ident[3 * i + j] - c * n[i] * Gn[j] for i in range(3) for j in range(3))
        return GroupElement(self, m)

    def classify(self, g: GroupElement) -> Classification:
        r = g.moved_rank
        if r == 0:
            return Classification("identity")
        if r == 1:
            if g.det != -1:
                raise InvariantViolation("moved rank 1 with determinant +1")
            return Classification("reflection", pole=g.pole())
        if r == 3:
            if g.det != -1:
                raise InvariantViolation("moved rank 3 with determinant +1")
            v = la.primitive(la.kernel_rank2(la.mat_add(g.m, self.ident)))
            return Classification("glide", pole=v)
        if g.det != 1:
            raise InvariantViolation("orientation-reversing element with moved rank 2")
        p = g.fixed_vector()
        s = self.B(p, p).sign()
        if s < 0:
            return Classification("rotation", fixed=self.to_positive(p))
        if s == 0:
            return Classification("parabolic", fixed=self.to_positive(p))
        return Classification("translation", fixed=p)

    # -------------------------------------------------------------- folding

    def fold(self, point: la.Vec, direction: Optional[la.Vec] = None, max_steps: int = 100000):
        """Fold a point of the Tits cone into the closed fundamental chamber.

        Returns (word, folded point).  With a direction, ties on walls are broken
        by the sign of B(direction, e_s), i.e. the point is perturbed to
        point + eps*direction.  Raises ValueError for points outside the cone.
        """
        G = self.gram
        p = list(point)
        gp = list(la.mat_vec(G, point))
        d = list(direction) if direction is not None else None
        gd = list(la.mat_vec(G, direction)) if direction is not None else None
        word = []
        for _ in range(max_steps):
            s_hit = None
            for s in range(3):
                sg = gp[s].sign()
                if sg < 0 or (sg == 0 and gd is not None and gd[s].sign() < 0):
                    s_hit = s
                    break
            if s_hit is None:
                return "".join(word), tuple(p)
            s = s_hit
            c = 2 * gp[s]
            p[s] = p[s] - c
            for t in range(3):
                if not G[3 * t + s].is_zero():
                    gp[t] = gp[t] - c * G[3 * t + s]
            if d is not None:
                c = 2 * gd[s]
                d[s] = d[s] - c
                for t in range(3):
                    if not G[3 * t + s].is_zero():
                        gd[t] = gd[t] - c * G[3 * t + s]
            word.append(LETTERS[s])
        raise ValueError("folding did not terminate; point outside the Tits cone")

    def fold_to_fundamental(self, point: la.Vec):
        if self.B(point, point).sign() >= 0:
            raise ValueError("fold_to_fundamental needs a timelike point")
        if self.sheet(point) < 0:
            raise ValueError("point lies on the negative sheet")
        return self.fold(point)

    def contains(self, g: GroupElement) -> bool:
        """Exact W-membership test."""
        hit = self._contains.get(g.key)
        if hit is None:
            hit = self._contains[g.key] = self._contains_uncached(g)
        return hit

    def _contains_uncached(self, g: GroupElement) -> bool:
        if not g.preserves_form():
            return False
        y = g.act(self.basepoint)
        if self.sheet(y) <= 0:
            return False
        word, _ = self.fold(y)
        return self.element(word) == g

    def word_of(self, g: GroupElement) -> Optional[str]:
        """A word for g (shortest when g was met in a ball enumeration)."""
        hit = self._words.get(g.key)
        if hit is not None:
            return hit
        y = g.act(self.basepoint)
        if self.sheet(y) <= 0:
            return None
        try:
            word, _ = self.fold(y, max_steps=5000)
        except ValueError:
            return None
        if self.element(word) != g:
            return None
        self._words[g.key] = word
        return word

    # ------------------------------------------------------------ enumeration

    def enumerate_ball(self, radius: int, cap: int = 14) -> list[GroupElement]:
        """All elements of word length <= radius, in BFS order (shortest words recorded)."""
        if radius > cap:
            raise CapExceeded(f"ball radius {radius} exceeds cap {cap}")
        seen = {self.identity.key: self.identity}
        words = {self.identity.key: ""}
        order = [self.identity]
        frontier = [self.identity]
        for _ in range(radius):
            nxt = []
            for g in frontier:
                wg = words[g.key]
                for s in range(3):
                    if wg and wg[-1] == LETTERS[s]:
                        continue
                    h = self.times_generator(g, s)
                    if h.key not in seen:
                        seen[h.key] = h
                        words[h.key] = wg + LETTERS[s]
                        nxt.append(h)
            order.extend(nxt)
            frontier = nxt
        for k, v in words.items():
            self._words.setdefault(k, v)
        return order

    def reflections_in_ball(self, radius: int, cap: int = 14) -> list[GroupElement]:
        return [g for g in self.enumerate_ball(radius, cap) if g.moved_rank == 1]

    # ---------------------------------------------------------------- chamber

    def chamber_vertices(self) -> list[la.Vec]:
        """Vertices of the fundamental chamber; vertex i is opposite wall i."""
        if self._vertices is None:
            vs = []
            for s in range(3):
                t, u = [i for i in range(3) if i != s]
                v = la.primitive(self.bcross(self.roots[t], self.roots[u]))
                vs.append(self.to_positive(v))
            self._vertices = vs
        return self._vertices

    def fixes_point(self, g: GroupElement, p: la.Vec) -> bool:
        return la.parallel(g.act(p), p)
