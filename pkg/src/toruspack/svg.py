"""SVG pictures of packings and tilings over a block of fundamental domains."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .packing import TorusPacking
from .tilings.core import Tiling

SCALE = 60.0
MARGIN = 20.0


def _copies(B: np.ndarray, block: int) -> list[np.ndarray]:
    return [a * B[0] + b * B[1] for a in range(block) for b in range(block)]


def _frame(B: np.ndarray, block: int, extra: float):
    corners = np.array([a * B[0] + b * B[1] for a in (0, block) for b in (0, block)])
    lo = corners.min(axis=0) - extra
    hi = corners.max(axis=0) + extra
    return lo, hi


class _Canvas:
    def __init__(self, lo, hi):
        self.lo, self.hi = lo, hi
        w, h = (hi - lo) * SCALE + 2 * MARGIN
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" '
            f'viewBox="0 0 {w:.1f} {h:.1f}">',
            f'<rect width="{w:.1f}" height="{h:.1f}" fill="white"/>',
        ]

    def xy(self, p) -> tuple[float, float]:
        x = (p[0] - self.lo[0]) * SCALE + MARGIN
        y = (self.hi[1] - p[1]) * SCALE + MARGIN  # SVG y points down
        return x, y

    def polygon(self, pts, **attrs):
        s = " ".join("%.3f,%.3f" % self.xy(p) for p in pts)
        self.parts.append(f'<polygon points="{s}" {_attrs(attrs)}/>')

    def line(self, p, q, **attrs):
        (x1, y1), (x2, y2) = self.xy(p), self.xy(q)
        self.parts.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" {_attrs(attrs)}/>')

    def circle(self, p, r, **attrs):
        x, y = self.xy(p)
        self.parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r * SCALE:.3f}" {_attrs(attrs)}/>')

    def text(self, p, s):
        x, y = self.xy(p)
        self.parts.append(f'<text x="{x:.3f}" y="{y:.3f}" font-size="10" text-anchor="middle">{escape(s)}</text>')

    def finish(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _attrs(d: dict) -> str:
    return " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in d.items())


def _domains(cv: _Canvas, B: np.ndarray, block: int):
    for i, o in enumerate(_copies(B, block)):
        pts = [o, o + B[0], o + B[0] + B[1], o + B[1]]
        shade = "#eef2f7" if i % 2 == 0 else "#f7f3ea"
        cv.polygon(pts, fill=shade, stroke="#8899aa", stroke_width="0.8")


def render_packing(p: TorusPacking, block: int = 2) -> str:
    """One circle per disk per fundamental-domain copy in a block x block patch."""
    B = p.lattice.float_matrix()
    r = float(p.radius)
    lo, hi = _frame(B, block, r)
    cv = _Canvas(lo, hi)
    _domains(cv, B, block)
    pts = p.float_centers() @ B
    for o in _copies(B, block):
        for k, c in enumerate(pts):
            cv.circle(c + o, r, fill="none", stroke="#224488", stroke_width="1.2")
            cv.text(c + o, p.labels[k])
    return cv.finish()


def render_tiling(t: Tiling, block: int = 2) -> str:
    """Edges of the tiling and its vertices over a block x block patch."""
    B = t.lattice.float_matrix()
    lo, hi = _frame(B, block, 1.0)
    cv = _Canvas(lo, hi)
    _domains(cv, B, block)
    pts = np.array(t.float_points())
    for o in _copies(B, block):
        for f in range(len(t.faces)):
            start, dirs = t.faces[f]
            cur = pts[start] + o
            poly = [cur]
            for d in dirs[:-1]:
                cur = cur + np.array([float(x) for x in t.directions[d]])
                poly.append(cur)
            fill = "#f4d9a6" if len(dirs) == 3 else "#bcd7ea"
            cv.polygon(poly, fill=fill, fill_opacity="0.8", stroke="#333333", stroke_width="1")
        for c in pts:
            cv.circle(c + o, 0.06, fill="#333333")
    return cv.finish()
