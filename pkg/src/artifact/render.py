"""SVG pictures of the reflection arrangement near the Coxeter axis.

All geometry is exact until export.  The picture uses a float Lorentz frame
centred at the axis base point, with the axis along the horizontal diameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .coxeter import CapExceeded
from .field import FieldElement
from .geometry import AxisContext

ORBIT_COLORS = ("#d62728", "#1f77b4", "#2ca02c")
DISK_RADIUS = 0.95


@dataclass
class Rendering:
    svg: str
    model: str
    lines: int
    chambers: int
    orbit_colors: tuple
    vertices: int
    endpoints: list = field(repr=False, default_factory=list)


def _fmt(x: float, digits: int) -> str:
    s = f"{x:.{digits}f}"
    if s.startswith("-") and float(s) == 0.0:
        s = s[1:]
    return s


class _Frame:
    def __init__(self, ctx: AxisContext):
        M = ctx.model
        self.G = [float(x) for x in M.gram]
        q = [float(x) for x in ctx.q]
        d = [float(x) for x in ctx.d]
        v = [float(x) for x in ctx.v]
        e0 = self._unit(q)
        e1 = self._unit(self._sub(d, e0, -self.B(d, e0)))
        e2 = self._sub(v, e0, -self.B(v, e0))
        e2 = self._unit(self._sub(e2, e1, self.B(e2, e1)))
        self.e = (e0, e1, e2)

    def B(self, x, y) -> float:
        G = self.G
        return sum(x[i] * G[3 * i + j] * y[j] for i in range(3) for j in range(3))

    @staticmethod
    def _sub(x, e, c):
        return [x[i] - c * e[i] for i in range(3)]

    def _unit(self, x):
        n = math.sqrt(abs(self.B(x, x)))
        return [c / n for c in x]

    def klein(self, x) -> tuple[float, float]:
        e0, e1, e2 = self.e
        t = -self.B(x, e0)
        return self.B(x, e1) / t, self.B(x, e2) / t

    def line(self, n):
        """(alpha, beta, gamma) with the line beta*kx + gamma*ky = -alpha."""
        e0, e1, e2 = self.e
        return self.B(e0, n), self.B(e1, n), self.B(e2, n)


def _triangle_meets_disk(pts, rho: float) -> bool:
    if any(math.hypot(*p) < rho for p in pts):
        return True
    for i in range(3):
        (x1, y1), (x2, y2) = pts[i], pts[(i + 1) % 3]
        dx, dy = x2 - x1, y2 - y1
        L = dx * dx + dy * dy
        t = 0.0 if L == 0 else max(0.0, min(1.0, -(x1 * dx + y1 * dy) / L))
        if math.hypot(x1 + t * dx, y1 + t * dy) < rho:
            return True
    signs = []
    for i in range(3):
        (x1, y1), (x2, y2) = pts[i], pts[(i + 1) % 3]
        signs.append(x1 * y2 - x2 * y1)
    return all(s > 0 for s in signs) or all(s < 0 for s in signs)


def chambers_in_disk(ctx: AxisContext, frame: _Frame, rho: float = DISK_RADIUS, cap: int = 50000):
    """Chambers whose Klein image meets the disk of radius rho, by breadth-first search."""
    M = ctx.model
    verts = M.chamber_vertices()
    start = M.element(ctx.base_chamber_word)
    seen = {start.key: start}
    queue = [start]
    out = []
    while queue:
        g = queue.pop(0)
        pts = [frame.klein([float(c) for c in g.act(v)]) for v in verts]
        if not _triangle_meets_disk(pts, rho):
            continue
        out.append(g)
        if len(out) > cap:
            raise CapExceeded(f"more than {cap} chambers meet the rendering disk")
        for s in range(3):
            h = M.times_generator(g, s)
            if h.key not in seen:
                seen[h.key] = h
                queue.append(h)
    return out


def render(ctx: AxisContext, model: str = "poincare", window: int = 3, float_digits: int = 12,
           size: int = 800, cap: int = 50000) -> Rendering:
    if model not in ("poincare", "klein"):
        raise ValueError("model must be 'poincare' or 'klein'")
    M = ctx.model
    frame = _Frame(ctx)
    chambers = chambers_in_disk(ctx, frame, cap=cap)

    poles = {}
    for g in chambers:
        for s in range(3):
            r = g * M.generators[s] * g.inverse()
            if r.key not in poles:
                poles[r.key] = [float(c) for c in g.act(M.roots[s])]

    fmt = lambda x: _fmt(x, float_digits)  # noqa: E731
    paths = []
    endpoints = []
    for key in sorted(poles):
        alpha, beta, gamma = frame.line(poles[key])
        nb = math.hypot(beta, gamma)
        delta = abs(alpha) / nb
        if delta >= DISK_RADIUS:
            continue
        fx, fy = -alpha * beta / nb**2, -alpha * gamma / nb**2
        h = math.sqrt(1.0 - delta * delta)
        ux, uy = -gamma / nb, beta / nb
        ends = []
        for sgn in (1.0, -1.0):
            px, py = fx + sgn * h * ux, fy + sgn * h * uy
            ang = math.atan2(py, px)
            ends.append((math.cos(ang), math.sin(ang)))
        ends.sort()
        (x1, y1), (x2, y2) = ends
        endpoints.append(ends)
        # SVG y grows downward; flip so the picture has the usual orientation
        y1s, y2s = -y1, -y2
        if model == "klein" or delta < 1e-12:
            d = f"M {fmt(x1)} {fmt(y1s)} L {fmt(x2)} {fmt(y2s)}"
        else:
            theta = math.acos(max(-1.0, min(1.0, x1 * x2 + y1 * y2)))
            rad = math.tan(theta / 2)
            mx, my = (x1 + x2) / 2, (y1s + y2s) / 2
            mn = math.hypot(mx, my)
            cdist = 1.0 / math.cos(theta / 2)
            cx, cy = mx / mn * cdist, my / mn * cdist
            cross = (x1 - cx) * (y2s - cy) - (y1s - cy) * (x2 - cx)
            sweep = 1 if cross > 0 else 0
            d = f"M {fmt(x1)} {fmt(y1s)} A {fmt(rad)} {fmt(rad)} 0 0 {sweep} {fmt(x2)} {fmt(y2s)}"
        paths.append(f'<path class="line" d="{d}"/>')

    labels = ctx.vertex_orbit_labels(window)
    dots = []
    used = set()
    for key in sorted(labels):
        lab = labels[key]
        vec = [float(FieldElement(M.field, num, den)) for num, den in key]
        kx, ky = frame.klein(vec)
        if math.hypot(kx, ky) > 1.0 + 1e-9:
            continue
        if model == "poincare":
            kx, ky = _to_poincare(kx, ky)
        used.add(lab)
        dots.append(f'<circle cx="{fmt(kx)}" cy="{fmt(-ky)}" r="0.012" fill="{ORBIT_COLORS[lab]}"/>')

    wx, _ = frame.klein([float(c) for c in ctx.wq])
    a, b = (-1.0, 1.0) if wx > 0 else (1.0, -1.0)
    axis = (f'<path class="axis" d="M {fmt(a)} 0 L {fmt(b)} 0" '
            f'stroke-dasharray="0.04 0.025" marker-end="url(#arrow)"/>')

    title = f"Coxeter triangle group {M.spec.text()}, {model} model"
    svg = "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        'viewBox="-1.08 -1.08 2.16 2.16">',
        f"<title>{title}</title>",
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" '
        'orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="black"/></marker>',
        "<style>.line{fill:none;stroke:#444;stroke-width:0.004}"
        ".axis{fill:none;stroke:black;stroke-width:0.008}</style>",
        "</defs>",
        '<circle cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.006"/>',
        f'<circle cx="0" cy="0" r="{DISK_RADIUS}" fill="none" stroke="#bbb" stroke-width="0.002"/>',
        *paths,
        axis,
        *dots,
        "</svg>",
        "",
    ])
    return Rendering(svg=svg, model=model, lines=len(paths), chambers=len(chambers),
                     orbit_colors=tuple(ORBIT_COLORS[i] for i in sorted(used)), vertices=len(dots),
                     endpoints=endpoints)


def _to_poincare(kx: float, ky: float) -> tuple[float, float]:
    s = 1.0 + math.sqrt(max(0.0, 1.0 - kx * kx - ky * ky))
    return kx / s, ky / s
