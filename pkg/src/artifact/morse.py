"""Cells of the interval complex, fiber components, and the matchings M and N.

A fiber component of eta^-1(d) is a bi-infinite sequence (x_i) of interval
elements with x_{i+d} = phi(x_i) and every d consecutive terms multiplying to
w.  Its top cells are T_i = [x_i|...|x_{i+d-1}] and its bottom cells are
B_i = [x_{i+1}|...|x_{i+d-1}], arranged in the chain ... T_i, B_i, T_{i+1} ...
at chain positions 2i and 2i+1.

Sequences are indexed canonically: every term has a position on the axis
(crossing point or closest point of its reflection, or of the left complement
for rank 2), and index 0 is the smallest index whose position lies in the
fundamental window [q, wq).  Finite truncations keep the indices
-J*d .. (J+1)*d - 1 of each component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import linalg as la
from .coxeter import CapExceeded, InvariantViolation
from .lattice import Interval, IntervalElement

TYPES = ("i", "ii", "iii", "iv", "v")


@dataclass(frozen=True, eq=False)
class IntervalCell:
    factors: tuple

    @property
    def key(self) -> tuple:
        return tuple(f.key for f in self.factors)

    @property
    def dim(self) -> int:
        return len(self.factors)

    def __eq__(self, other):
        return isinstance(other, IntervalCell) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "[" + "|".join(repr(f)[1:-1].split(":")[0] for f in self.factors) + "]"


@dataclass(frozen=True)
class MatchingEdge:
    lower: IntervalCell
    upper: IntervalCell
    kind: str  # within_component, cross_fiber, N_merge, N_split


@dataclass
class FiberComponent:
    d: int
    base: tuple  # x_0 .. x_{d-1} in canonical indexing
    type_tag: str
    exceptional: bool
    window: int
    _elements: dict = field(default_factory=dict, repr=False)

    @property
    def key(self) -> tuple:
        return (self.d, tuple(x.key for x in self.base))

    def index_range(self) -> tuple[int, int]:
        """Inclusive range of top-cell indices in the truncation."""
        return -self.window * self.d, (self.window + 1) * self.d - 1


class MorseComplex:
    def __init__(self, interval: Interval, window_cap: int = 6, window_shift: int = 0):
        self.I = interval
        self.ctx = interval.ctx
        self.model = interval.model
        self.window_cap = window_cap
        self.shift = window_shift  # fundamental window is [w^k q, w^(k+1) q)
        ctx = self.ctx
        self._I_lo = ctx.mu_of(ctx.w_power_point(window_shift))
        self._I_hi = ctx.mu_of(ctx.w_power_point(window_shift + 1))
        self.zero_cell = IntervalCell(())
        self._comp_cache: dict = {}
        self._special: dict = {}
        self._exc: dict = {}
        self._fixes_vertex: dict = {}
        self._vertices = self.model.chamber_vertices()
        self._xpos: dict = {}
        self._vdata = None

    # --------------------------------------------------------------- cells

    def cell(self, factors) -> IntervalCell:
        return IntervalCell(tuple(factors))

    def product(self, cell: IntervalCell) -> IntervalElement:
        g = self.model.identity
        for f in cell.factors:
            g = g * f.element
        return self.I.member(g)

    def is_valid(self, cell: IntervalCell) -> bool:
        if any(f.rank == 0 for f in cell.factors):
            return False
        g = self.model.identity
        for f in cell.factors:
            g = g * f.element
        el = self.I.in_interval(g)
        return el is not None and el.rank == sum(f.rank for f in cell.factors)

    def eta(self, cell: IntervalCell) -> int:
        d = cell.dim
        return d if self.product(cell).rank == 3 else d + 1

    def faces(self, cell: IntervalCell) -> list[IntervalCell]:
        fs = cell.factors
        d = len(fs)
        if d == 0:
            return []
        out = [IntervalCell(fs[1:])]
        for i in range(d - 1):
            merged = self.I.member(fs[i].element * fs[i + 1].element)
            out.append(IntervalCell(fs[:i] + (merged,) + fs[i + 2 :]))
        out.append(IntervalCell(fs[:-1]))
        return out

    # ---------------------------------------------------------- positions

    def position(self, x: IntervalElement):
        """Axis parameter attached to a rank-1 or rank-2 interval element."""
        r = x if x.rank == 1 else self.I.left_complement(x)
        if self.ctx.is_vertical(r.element):
            return self.ctx.crossing_mu(r.element)
        return self.ctx.xi_mu(r.element)

    def _in_window(self, mu) -> int:
        """-1 below the fundamental window, 0 inside, +1 above."""
        if (mu - self._I_lo).sign() < 0:
            return -1
        if (mu - self._I_hi).sign() >= 0:
            return 1
        return 0

    # ----------------------------------------------------------- components

    def element_at(self, comp: FiberComponent, i: int) -> IntervalElement:
        hit = comp._elements.get(i)
        if hit is not None:
            return hit
        q, r = divmod(i, comp.d)
        x = comp.base[r]
        if q > 0:
            x = self.I.member(self.ctx.phi_power(x.element, q))
        elif q < 0:
            x = self.I.member(self.ctx.phi_power(x.element, q))
        comp._elements[i] = x
        return x

    def top(self, comp: FiberComponent, i: int) -> IntervalCell:
        if comp.d == 1:
            return IntervalCell((self.I.top,))
        return IntervalCell(tuple(self.element_at(comp, j) for j in range(i, i + comp.d)))

    def bottom(self, comp: FiberComponent, i: int) -> IntervalCell:
        if comp.d == 1:
            return self.zero_cell
        return IntervalCell(tuple(self.element_at(comp, j) for j in range(i + 1, i + comp.d)))

    def chain_cell(self, comp: FiberComponent, pos: int) -> IntervalCell:
        i, b = divmod(pos, 2)
        return self.bottom(comp, i) if b else self.top(comp, i)

    def _raw_sequence(self, cell: IntervalCell) -> tuple[int, list, int]:
        """(d, x_0..x_{d-1}, chain position of the cell) before canonical shifting."""
        prod = self.product(cell)
        if prod.rank == 3:
            return cell.dim, list(cell.factors), 0
        d = cell.dim + 1
        last = self.I.right_complement(prod)
        x0 = self.I.phi_inv(last)
        return d, [x0] + list(cell.factors), 1

    def component_of(self, cell: IntervalCell, window: Optional[int] = None) -> tuple[FiberComponent, int]:
        """The fiber component containing a cell and the cell's chain position."""
        J = self.window_cap if window is None else window
        if J > self.window_cap:
            raise CapExceeded(f"window {J} exceeds cap {self.window_cap}")
        if cell.dim == 0 or (cell.dim == 1 and cell.factors[0].rank == 3):
            comp = self._make_component(1, (self.I.top,), J)
            return comp, (1 if cell.dim == 0 else 0)
        d, seq, pos = self._raw_sequence(cell)
        # canonical shift: smallest index whose position is in the window
        best = None
        for r in range(d):
            x = seq[r]
            k = 0
            for _ in range(10000):
                side = self._in_window(self.position(x))
                if side == 0:
                    break
                if side > 0:
                    x = self.I.phi(x)
                    k += 1
                else:
                    x = self.I.phi_inv(x)
                    k -= 1
            else:
                raise InvariantViolation("could not move a term into the fundamental window")
            idx = r + k * d
            if best is None or idx < best:
                best = idx
        a = best
        base = []
        for j in range(a, a + d):
            q, r = divmod(j, d)
            x = seq[r]
            x = self.I.member(self.ctx.phi_power(x.element, q)) if q else x
            base.append(x)
        comp = self._make_component(d, tuple(base), J)
        return comp, pos - 2 * a

    def _make_component(self, d: int, base: tuple, J: int) -> FiberComponent:
        key = (d, tuple(x.key for x in base), J)
        hit = self._comp_cache.get(key)
        if hit is not None:
            return hit
        tag, exc = self._classify(d, base)
        comp = FiberComponent(d, base, tag, exc, J)
        for i, x in enumerate(base):
            comp._elements[i] = x
        self._comp_cache[key] = comp
        return comp

    def _classify(self, d: int, base: tuple) -> tuple[str, bool]:
        hits = self.type_predicates(d, base)
        tags = [t for t, ok in hits.items() if ok]
        if len(tags) != 1:
            raise InvariantViolation(f"component matches types {tags}, expected exactly one")
        tag = tags[0]
        exc = False
        if tag == "iii":
            t = next(x for x in base if x.rank == 2)
            exc = self.has_vertical_below(t)
        return tag, exc

    def type_predicates(self, d: int, base: tuple) -> dict:
        """Each case description evaluated independently (for exclusivity checks)."""
        vert = lambda x: x.rank == 1 and self.ctx.is_vertical(x.element)
        horiz = lambda x: x.rank == 1 and not self.ctx.is_vertical(x.element)
        ranks = sorted(x.rank for x in base)
        out = {t: False for t in TYPES}
        out["i"] = d == 1 and base[0].rank == 3
        if d == 2 and ranks == [1, 2]:
            r = next(x for x in base if x.rank == 1)
            u = next(x for x in base if x.rank == 2)
            out["ii"] = vert(r) and u.kind in ("rotation", "parabolic")
            out["iii"] = horiz(r) and u.kind == "translation"
        if d == 3 and ranks == [1, 1, 1]:
            out["iv"] = any(vert(x) for x in base)
            out["v"] = all(horiz(x) for x in base)
        return out

    def has_vertical_below(self, t: IntervalElement) -> bool:
        """Whether some reflection below the translation t is vertical."""
        hit = self._exc.get(t.key)
        if hit is None:
            seed = self.I._translation_seed(t)
            prev = t.element.inverse() * seed
            hit = self.ctx.is_vertical(seed) or self.ctx.is_vertical(prev)
            self._exc[t.key] = hit
        return hit

    def component_cells(self, comp: FiberComponent) -> list[IntervalCell]:
        if comp.d == 1:
            return [self.zero_cell, IntervalCell((self.I.top,))]
        lo, hi = comp.index_range()
        return [self.chain_cell(comp, p) for p in range(2 * lo, 2 * hi + 2)]

    # --------------------------------------------------------- subcomplexes

    def fixes_fundamental_vertex(self, u: IntervalElement, finite_only: bool = False) -> bool:
        k = (u.key, finite_only)
        hit = self._fixes_vertex.get(k)
        if hit is not None:
            return hit
        res = False
        if u.rank == 0:
            res = True
        else:
            for v in self._vertices:
                if finite_only and self.model.B(v, v).sign() >= 0:
                    continue
                if la.parallel(u.element.act(v), v):
                    res = True
                    break
        self._fixes_vertex[k] = res
        return res

    def in_X2(self, cell: IntervalCell) -> bool:
        return self.fixes_fundamental_vertex(self.product(cell))

    def in_X1(self, cell: IntervalCell) -> bool:
        return self.fixes_fundamental_vertex(self.product(cell), finite_only=True)

    def in_K2(self, comp: FiberComponent) -> bool:
        return comp.type_tag in ("i", "ii", "iv") or (comp.type_tag == "iii" and comp.exceptional)

    def _vertex_data(self):
        """Members of [1, w] fixing a finite vertex of C0, the rank-2 members at ideal vertices,
        and whether some ideal vertex is present (its reflections form an infinite family)."""
        if getattr(self, "_vdata", None) is not None:
            return self._vdata
        M, I = self.model, self.I
        finite, ideal_rank2, has_ideal = {}, {}, False
        for i, v in enumerate(self._vertices):
            s, t = [M.generators[j] for j in range(3) if j != i]
            if M.B(v, v).sign() < 0:
                # finite dihedral stabilizer: enumerate it
                elems = {M.identity.key: M.identity}
                frontier = [M.identity]
                while frontier:
                    nxt = []
                    for g in frontier:
                        for h in (g * s, g * t):
                            if h.key not in elems:
                                elems[h.key] = h
                                nxt.append(h)
                    frontier = nxt
                for g in elems.values():
                    if g.moved_rank in (1, 2):
                        el = I.in_interval(g)
                        if el is not None:
                            finite[el.key] = el
            else:
                has_ideal = True
                u = I.rotation_at_axial_vertex(v)
                if u is not None:
                    ideal_rank2[u.key] = u
        self._vdata = (finite, ideal_rank2, has_ideal)
        return self._vdata

    def _to_window(self, x: IntervalElement) -> tuple[IntervalElement, int]:
        """phi^k(x) with position in the fundamental window, and k."""
        k = 0
        for _ in range(10000):
            side = self._in_window(self.position(x))
            if side == 0:
                return x, k
            x, k = (self.I.phi(x), k + 1) if side > 0 else (self.I.phi_inv(x), k - 1)
        raise InvariantViolation("could not move a term into the fundamental window")

    def window_indices(self, comp: FiberComponent) -> list[int]:
        """The d indices (one per residue mod d) whose terms have position in the window."""
        out = []
        for r in range(comp.d):
            _, k = self._to_window(comp.base[r])
            out.append(r + k * comp.d)
        return sorted(out)

    def indices_of(self, comp: FiberComponent, y: IntervalElement) -> list[int]:
        """All indices i with x_i = y (terms may repeat along a sequence)."""
        x, k = self._to_window(y)
        return sorted(j - k * comp.d for j in self.window_indices(comp) if self.element_at(comp, j) == x)

    def _ideal_pencil_candidates(self, comp: FiberComponent, ideal_rank2: dict) -> list:
        """Reflections through an ideal vertex of C0 that could be terms of the component.

        Lines of a parabolic pencil that miss the axis are nested, so their
        weight strictly grows once it starts growing above 1; terms of one
        component all share one weight.  Walk the pencil both ways until the
        weight rises past the component's.
        """
        terms = [x for x in comp.base if x.rank == 1]
        if not terms:
            return []
        thr = max([self.reflection_weight(x) for x in terms] + [self.model.field.one])
        out = []
        for u in ideal_rank2.values():
            for direction in (1, -1):
                prev = None
                for k in range(0, 400):
                    seq = self.I.reflection_sequence(u, 0, k) if direction > 0 else self.I.reflection_sequence(u, -k, 0)
                    r = seq[-1] if direction > 0 else seq[0]
                    el = self.I.member(r)
                    wgt = self.reflection_weight(el)
                    out.append(el)
                    if prev is not None and (wgt - thr).sign() > 0 and (wgt - prev).sign() > 0:
                        break
                    prev = wgt
                else:
                    raise CapExceeded("parabolic pencil walk did not leave the component's weight band")
        return out

    def X2_positions(self, comp: FiberComponent) -> tuple[list[int], bool]:
        """Chain positions of X'' cells in a d >= 2 component; flag says whether the list is complete."""
        hit = self._xpos.get(comp.key)
        if hit is not None:
            return hit
        finite, ideal_rank2, has_ideal = self._vertex_data()
        pos = set()
        if comp.d == 2:
            cands = list(finite.values()) + list(ideal_rank2.values())
            cands += self._ideal_pencil_candidates(comp, ideal_rank2)
            for y in cands:
                pos.update(2 * i - 1 for i in self.indices_of(comp, y))
            complete = True
        else:
            for u in list(finite.values()) + list(ideal_rank2.values()):
                if u.rank != 2:
                    continue
                pos.update(2 * i + 1 for i in self.indices_of(comp, self.I.left_complement(u)))
            complete = True
        hit = (sorted(pos), complete)
        self._xpos[comp.key] = hit
        return hit

    def in_K1(self, comp: FiberComponent, pos: int) -> Optional[bool]:
        """Convex hull of X'' cells in the component: True/False, None if the window cannot decide."""
        if not self.in_K2(comp):
            return False
        if comp.d == 1:
            return True
        known, complete = self.X2_positions(comp)
        if known and known[0] <= pos <= known[-1]:
            return True
        if complete:
            return False
        # scan past the truncation window, up to the window cap, before giving up
        reach = 2 * comp.d * (self.window_cap + 1)
        left = any(self.in_X2(self.chain_cell(comp, p)) for p in range(pos, pos - reach - 1, -1))
        right = any(self.in_X2(self.chain_cell(comp, p)) for p in range(pos, pos + reach + 1))
        if left and right:
            return True
        return None

    def membership(self, cell: IntervalCell, window: Optional[int] = None) -> dict:
        comp, pos = self.component_of(cell, window)
        return {
            "in_X'": self.in_X1(cell),
            "in_X''": self.in_X2(cell),
            "in_K'": self.in_K1(comp, pos),
            "in_K''": self.in_K2(comp),
        }

    # -------------------------------------------------------------- matching M

    def is_special(self, t: IntervalElement) -> bool:
        if t.kind != "translation":
            return False
        r = self.I.left_complement(t)
        if self.ctx.is_vertical(r.element):
            return False
        return self._in_window(self.ctx.xi_mu(r.element)) == 0

    def critical_index(self, comp: FiberComponent) -> int:
        """Index c of the bottom cell B_c left unmatched inside the component."""
        k = comp.key + (self.shift,)
        hit = self._special.get(k)
        if hit is not None:
            return hit
        d = comp.d
        found = []
        for c in range(-3 * d - 3 * abs(self.shift) * d, 3 * d + 3 * abs(self.shift) * d + 1):
            if comp.type_tag == "iii":
                x = self.element_at(comp, c + 1)
                if x.rank == 2 and self.is_special(x):
                    found.append(c)
            elif comp.type_tag == "v":
                r1, r2 = self.element_at(comp, c + 1), self.element_at(comp, c + 2)
                t = self.I.member(r1.element * r2.element)
                if self.is_special(t) and self.ctx.precedes(r1.element, r2.element):
                    found.append(c)
        if len(found) != 1:
            raise InvariantViolation(f"expected one anchored special cell, found {len(found)}")
        self._special[k] = found[0]
        return found[0]

    def special_translation(self, comp: FiberComponent) -> IntervalElement:
        c = self.critical_index(comp)
        if comp.type_tag == "iii":
            return self.element_at(comp, c + 1)
        return self.I.member(self.element_at(comp, c + 1).element * self.element_at(comp, c + 2).element)

    def M_partner(self, cell: IntervalCell, window: Optional[int] = None) -> Optional[MatchingEdge]:
        comp, pos = self.component_of(cell, window)
        if self.in_K2(comp):
            return None
        c = self.critical_index(comp)
        P = 2 * c + 1
        if pos == P:
            if comp.type_tag == "iii":
                t = self.element_at(comp, c + 1)
                r1, r2 = self.I.increasing_factorization(t)
                return MatchingEdge(cell, IntervalCell((r1, r2)), "cross_fiber")
            r1, r2 = self.element_at(comp, c + 1), self.element_at(comp, c + 2)
            t = self.I.member(r1.element * r2.element)
            return MatchingEdge(IntervalCell((t,)), cell, "cross_fiber")
        if pos > P:
            # pairs (T_j, B_j) for j > c: top at 2j, bottom at 2j + 1
            other = pos + 1 if pos % 2 == 0 else pos - 1
        else:
            # pairs (T_j, B_{j-1}) for j <= c: top at 2j, bottom at 2j - 1
            other = pos - 1 if pos % 2 == 0 else pos + 1
        oc = self.chain_cell(comp, other)
        if pos % 2 == 0:
            return MatchingEdge(oc, cell, "within_component")
        return MatchingEdge(cell, oc, "within_component")

    def omega(self, cell: IntervalCell, window: Optional[int] = None):
        """cosh^2 of the distance between the axis and Fix(r(cell))."""
        comp, _ = self.component_of(cell, window)
        if self.in_K2(comp):
            raise ValueError("omega is defined outside K''")
        t = self.special_translation(comp)
        r = self.I.left_complement(t)
        return self.reflection_weight(r)

    def reflection_weight(self, r: IntervalElement):
        M = self.model
        n = r.locus
        v = self.ctx.v
        b = M.B(n, v)
        return b * b / (M.B(n, n) * M.B(v, v))

    # -------------------------------------------------------------- matching N

    def _min_below(self, x: IntervalElement) -> IntervalElement:
        if x.rank == 1:
            return x
        if x.rank == 3:
            return self.I.increasing_factorization(x)[0]
        return self.I.min_reflection_below(x)

    def depth(self, cell: IntervalCell) -> int:
        fs = cell.factors
        d = len(fs)
        for i in range(d):
            if fs[i].rank >= 2:
                return i + 1
            if i <= d - 2:
                nxt = fs[i + 1]
                smallest = self._min_below(nxt)
                if self.ctx.precedes(fs[i].element, smallest.element):
                    return i + 1
        raise InvariantViolation(f"depth undefined for {cell!r}")

    def in_N_domain(self, cell: IntervalCell, window: Optional[int] = None) -> Optional[bool]:
        if self.in_X2(cell):
            return False
        comp, pos = self.component_of(cell, window)
        return self.in_K1(comp, pos)

    def N_partner(self, cell: IntervalCell, window: Optional[int] = None) -> Optional[MatchingEdge]:
        dom = self.in_N_domain(cell, window)
        if not dom:
            return None
        comp, pos = self.component_of(cell, window)
        if self.product(cell).rank != 3:
            left = self.chain_cell(comp, pos - 1)
            return MatchingEdge(cell, left, "within_component")
        right = self.chain_cell(comp, pos + 1)
        if not self.in_X2(right):
            return MatchingEdge(right, cell, "within_component")
        delta = self.depth(cell)
        fs = cell.factors
        x = fs[delta - 1]
        if x.rank == 1:
            merged = self.I.member(x.element * fs[delta].element)
            lower = IntervalCell(fs[: delta - 1] + (merged,) + fs[delta + 1 :])
            return MatchingEdge(lower, cell, "N_merge")
        y = self._min_below(x)
        z = self.I.member(y.element * x.element)
        upper = IntervalCell(fs[: delta - 1] + (y, z) + fs[delta:])
        return MatchingEdge(cell, upper, "N_split")

    @staticmethod
    def partner_of(edge: MatchingEdge, cell: IntervalCell) -> IntervalCell:
        return edge.upper if edge.lower == cell else edge.lower


# ------------------------------------------------------------------ truncation


@dataclass
class Truncation:
    complex: MorseComplex
    components: dict
    cells: set
    window: int

    def comp_cells(self):
        for comp in self.components.values():
            yield comp, self.complex.component_cells(comp)


def horizontal_seeds(mc: MorseComplex, radius: int) -> list[IntervalCell]:
    """Cells [r] and [r2|r2 t] for horizontal r in the ball, t the left complement of r."""
    I, ctx = mc.I, mc.ctx
    out = []
    for g in mc.model.reflections_in_ball(radius):
        r = I.in_interval(g)
        if r is None or ctx.is_vertical(r.element):
            continue
        out.append(IntervalCell((r,)))
        t = I.left_complement(r)
        for r2 in I.reflections_below(t, 2):
            out.append(IntervalCell((r2, I.member(r2.element * t.element))))
    return out


def build_truncation(mc: MorseComplex, radius: int = 4, window: int = 1, below_window: int = 2,
                     extra_seeds=()) -> Truncation:
    """Components meeting cells built from short interval elements, closed under partner hops."""
    I, M = mc.I, mc.model
    seeds = [IntervalCell(()), IntervalCell((I.top,))] + list(extra_seeds)
    for g in M.enumerate_ball(radius):
        el = I.in_interval(g)
        if el is None or el.rank in (0, 3):
            continue
        seeds.append(IntervalCell((el,)))
        if el.rank == 2:
            for r in I.reflections_below(el, below_window):
                seeds.append(IntervalCell((r, I.member(r.element * el.element))))
    comps: dict = {}
    todo = list(seeds)
    seen_cells: set = set()
    rounds = 0
    while todo and rounds < 3:
        nxt = []
        for cell in todo:
            if cell in seen_cells:
                continue
            seen_cells.add(cell)
            comp, _ = mc.component_of(cell, window)
            if comp.key in comps:
                continue
            comps[comp.key] = comp
            if comp.type_tag in ("iii", "v") and not mc.in_K2(comp):
                c = mc.critical_index(comp)
                edge = mc.M_partner(mc.chain_cell(comp, 2 * c + 1), window)
                nxt.append(mc.partner_of(edge, mc.chain_cell(comp, 2 * c + 1)))
        todo = nxt
        rounds += 1
    cells = set()
    for comp in comps.values():
        cells.update(mc.component_cells(comp))
    return Truncation(mc, comps, cells, window)
