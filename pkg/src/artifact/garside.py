"""Left-greedy normal forms in the interval Garside group of [1, w].

An element is Delta^p * x_1 ... x_k with simple factors x_i in [1, w],
none equal to 1 or w, and each adjacent pair left-weighted.  Moving Delta
to the left past a simple element applies phi: x * Delta = Delta * phi(x).
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import LETTERS, GroupElement
from .lattice import Interval, IntervalElement


class MalformedWord(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GarsideNormalForm:
    delta_power: int
    factors: tuple

    @property
    def key(self) -> tuple:
        return (self.delta_power, tuple(f.key for f in self.factors))

    def __eq__(self, other):
        return isinstance(other, GarsideNormalForm) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.factors


def parse_artin_word(text: str) -> list[tuple[int, int]]:
    """Letters a, b, c and inverses A, B, C -> list of (generator, +-1)."""
    out = []
    for ch in text:
        if ch in " .*":
            continue
        if ch in LETTERS:
            out.append((LETTERS.index(ch), 1))
        elif ch.lower() in LETTERS:
            out.append((LETTERS.index(ch.lower()), -1))
        else:
            raise MalformedWord(f"invalid Artin letter {ch!r} in {text!r}")
    return out


def format_artin_word(word: list[tuple[int, int]]) -> str:
    return "".join(LETTERS[s] if e > 0 else LETTERS[s].upper() for s, e in word)


class GarsideEngine:
    def __init__(self, interval: Interval):
        self.I = interval
        self.ctx = interval.ctx
        self.model = interval.model
        self.gens = [interval.member(g) for g in self.model.generators]
        self._wpow = {0: self.model.identity}
        self._meet_cache: dict = {}
        self._lw_cache: dict = {}

    # ------------------------------------------------------------ helpers

    def _w_power(self, e: int) -> GroupElement:
        g = self._wpow.get(e)
        if g is None:
            step = self.ctx.w if e > 0 else self.ctx.w_inv
            prev = self._w_power(e - 1 if e > 0 else e + 1)
            g = prev * step
            self._wpow[e] = g
        return g

    def tau(self, u: IntervalElement, e: int = 1) -> IntervalElement:
        """phi^e(u) = w^-e u w^e."""
        if e == 0 or u.rank in (0, 3):
            return u
        return self.I.member(self._w_power(-e) * u.element * self._w_power(e))

    def _meet(self, a: IntervalElement, b: IntervalElement) -> IntervalElement:
        k = (a.key, b.key)
        hit = self._meet_cache.get(k)
        if hit is None:
            hit = self.I.meet(a, b)
            self._meet_cache[k] = hit
        return hit

    def left_weight(self, x: IntervalElement, y: IntervalElement) -> tuple[IntervalElement, IntervalElement]:
        if y.rank == 0 or x.rank == 3:
            return x, y
        k = (x.key, y.key)
        hit = self._lw_cache.get(k)
        if hit is not None:
            return hit
        m = self._meet(self.I.right_complement(x), y)
        if m.rank == 0:
            hit = (x, y)
        else:
            mi = m.element.inverse()
            hit = (self.I.member(x.element * m.element), self.I.member(mi * y.element))
        self._lw_cache[k] = hit
        return hit

    def is_left_weighted(self, x: IntervalElement, y: IntervalElement) -> bool:
        return self._meet(self.I.right_complement(x), y).rank == 0

    def _append(self, nf: list, y: IntervalElement) -> None:
        """Right-multiply a left-weighted list by a simple element, in place."""
        for i in range(len(nf) - 1, -1, -1):
            x2, y2 = self.left_weight(nf[i], y)
            if i + 1 < len(nf):
                nf[i + 1] = y2
            else:
                nf.append(y2)
            y = x2
            nf[i] = y
        if not nf:
            nf.append(y)

    def _finish(self, delta: int, nf: list) -> GarsideNormalForm:
        lead = 0
        while lead < len(nf) and nf[lead].rank == 3:
            lead += 1
        body = [x for x in nf[lead:] if x.rank != 0]
        if any(x.rank == 3 for x in body):
            raise AssertionError("Delta factor not at the front after a sweep")
        return GarsideNormalForm(delta + lead, tuple(body))

    # -------------------------------------------------------- constructors

    def normalize(self, delta_power: int, factors) -> GarsideNormalForm:
        nf: list = []
        for y in factors:
            if y.rank == 0:
                continue
            self._append(nf, y)
        return self._finish(delta_power, nf)

    def from_tokens(self, tokens) -> GarsideNormalForm:
        """Tokens are ("D", e) for Delta^e or ("x", simple)."""
        after = 0
        shifted = []
        for kind, val in reversed(tokens):
            if kind == "D":
                after += val
            else:
                shifted.append(self.tau(val, after))
        shifted.reverse()
        return self.normalize(after, shifted)

    def from_artin_word(self, word) -> GarsideNormalForm:
        if isinstance(word, str):
            word = parse_artin_word(word)
        tokens = []
        for s, e in word:
            if e > 0:
                tokens.append(("x", self.gens[s]))
            else:
                tokens.append(("D", -1))
                tokens.append(("x", self.I.left_complement(self.gens[s])))
        return self.from_tokens(tokens)

    def delta(self, e: int = 1) -> GarsideNormalForm:
        return GarsideNormalForm(e, ())

    def simple(self, u: IntervalElement) -> GarsideNormalForm:
        return self.normalize(0, [u])

    # ---------------------------------------------------------- group law

    def multiply(self, x: GarsideNormalForm, y: GarsideNormalForm) -> GarsideNormalForm:
        nf = [self.tau(f, y.delta_power) for f in x.factors]
        for f in y.factors:
            self._append(nf, f)
        return self._finish(x.delta_power + y.delta_power, nf)

    def invert(self, x: GarsideNormalForm) -> GarsideNormalForm:
        tokens = []
        for f in reversed(x.factors):
            tokens.append(("D", -1))
            tokens.append(("x", self.I.left_complement(f)))
        tokens.append(("D", -x.delta_power))
        return self.from_tokens(tokens)

    def word_problem(self, w1, w2) -> bool:
        return self.from_artin_word(w1) == self.from_artin_word(w2)

    def project(self, x: GarsideNormalForm) -> GroupElement:
        g = self._w_power(x.delta_power)
        for f in x.factors:
            g = g * f.element
        return g

    def check_left_weighted(self, x: GarsideNormalForm) -> bool:
        if any(f.rank in (0, 3) for f in x.factors):
            return False
        return all(self.is_left_weighted(a, b) for a, b in zip(x.factors, x.factors[1:]))

    # ------------------------------------------------------------- probes

    def center_probe(self, u: IntervalElement, n_max: int) -> tuple[bool, int | None]:
        """Check w^n u w^-n != u for 1 <= n <= n_max; returns (ok, offending n)."""
        if u.rank in (0, 3):
            raise ValueError("center probe needs u outside {1, w}")
        for n in range(1, n_max + 1):
            if self._w_power(n) * u.element * self._w_power(-n) == u.element:
                return False, n
        return True, None
