"""SVG pictures for planar arrangements (three coordinates).

Two pictures are supported: the type decomposition of the torus, projected
by ``p -> (p2 - p1, p3 - p1)`` and clipped to a box, and the mixed
subdivision of ``n * simplex_2`` in barycentric position.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from fractions import Fraction

from .complex import TropicalComplex, constraint_system_of
from .mixed import MixedSubdivision, embed_mixed_cell

__all__ = ["UnsupportedDimensionError", "render_torus", "render_mixed", "render_svg"]

SIZE = 480
PAD = 24
BOUNDED_FILL = "#9ecae1"
UNBOUNDED_FILL = "#ffffff"
MIXED_FILL = "#fdd0a2"
STROKE = "#222222"


class UnsupportedDimensionError(ValueError):
    """Pictures exist only for three coordinates."""


def _require_planar(d: int):
    if d != 3:
        raise UnsupportedDimensionError(f"rendering needs d = 3, got d = {d}")


def _clip(poly, a, b, c):
    # Sutherland-Hodgman against a*x + b*y <= c, exact in Fractions.
    out = []
    m = len(poly)
    for i in range(m):
        p, q = poly[i], poly[(i + 1) % m]
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    # drop consecutive duplicates created by clipping through a vertex
    dedup = []
    for pt in out:
        if not dedup or dedup[-1] != pt:
            dedup.append(pt)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _cell_polygon(arr, T, box):
    poly = list(box)
    for k, j, c in constraint_system_of(arr, T).edges():
        # p_j - p_k <= c, with p_1 = 0, x = p_2, y = p_3
        coef = [Fraction(0)] * 3
        coef[j] += 1
        coef[k] -= 1
        poly = _clip(poly, coef[1], coef[2], c)
        if len(poly) < 3:
            return []
    return poly


def _fmt(x) -> str:
    s = f"{float(x):.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Canvas:
    def __init__(self, xmin, xmax, ymin, ymax, title):
        span = max(xmax - xmin, ymax - ymin) or 1
        self.scale = Fraction(SIZE - 2 * PAD) / Fraction(span)
        self.xmin, self.ymax = xmin, ymax
        self.root = ET.Element(
            "svg",
            xmlns="http://www.w3.org/2000/svg",
            version="1.1",
            width=str(SIZE),
            height=str(SIZE),
            viewBox=f"0 0 {SIZE} {SIZE}",
        )
        ET.SubElement(self.root, "title").text = title

    def xy(self, p):
        x = PAD + (Fraction(p[0]) - self.xmin) * self.scale
        y = PAD + (self.ymax - Fraction(p[1])) * self.scale
        return _fmt(x), _fmt(y)

    def polygon(self, pts, **attrs):
        s = " ".join(",".join(self.xy(p)) for p in pts)
        return ET.SubElement(self.root, "polygon", points=s, **attrs)

    def dot(self, p, r=4, **attrs):
        cx, cy = self.xy(p)
        return ET.SubElement(self.root, "circle", cx=cx, cy=cy, r=str(r), **attrs)

    def text(self, p, label, **attrs):
        x, y = self.xy(p)
        el = ET.SubElement(self.root, "text", x=x, y=y, **attrs)
        el.text = label
        return el

    def tostring(self) -> str:
        ET.indent(self.root)
        return ET.tostring(self.root, encoding="unicode") + "\n"


def render_torus(tc: TropicalComplex, margin=None) -> str:
    """The decomposition of the torus with bounded cells shaded and apices dotted."""
    arr = tc.arrangement
    _require_planar(arr.d)
    pts = [(a[1], a[2]) for a in arr.apices]
    pts += [tuple(tc.vertex_point(i))[1:] for i in tc.cells_of_dim(0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if margin is None:
        margin = max(Fraction(1), (max(xs) - min(xs) + max(ys) - min(ys)) / 4)
    xmin, xmax = min(xs) - margin, max(xs) + margin
    ymin, ymax = min(ys) - margin, max(ys) + margin
    box = [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
    canvas = _Canvas(xmin, xmax, ymin, ymax, f"type decomposition, {arr.n} apices")
    for i in tc.cells_of_dim(2):
        cell = tc.cells[i]
        poly = _cell_polygon(arr, cell.type, box)
        if not poly:
            continue
        canvas.polygon(
            poly,
            fill=BOUNDED_FILL if cell.bounded else UNBOUNDED_FILL,
            stroke=STROKE,
            **{"stroke-width": "1", "data-coarse": "".join(map(str, cell.coarse))},
        )
    for k, a in enumerate(arr.apices):
        canvas.dot((a[1], a[2]), fill=STROKE)
        canvas.text((a[1], a[2]), f" v{k + 1}", **{"font-size": "12"})
    return canvas.tostring()


def _hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _barycentric(pt):
    # (a, b, c) with a + b + c = n  ->  (b + c/2, c * sqrt(3)/2); kept as (2b + c, c)
    _, b, c = pt
    return (2 * b + c, c)


def render_mixed(ms: MixedSubdivision) -> str:
    """The mixed subdivision of ``n * simplex_2``, one polygon per maximal cell."""
    _require_planar(ms.d)
    h = Fraction(math.sqrt(3) / 2)

    def place(q):
        return (Fraction(q[0], 2), q[1] * h)

    n = ms.n
    canvas = _Canvas(Fraction(0), Fraction(n), Fraction(0), n * h, f"mixed subdivision of {n} simplex")
    for i in sorted(ms.maximal(), key=lambda i: ms.cells[i]):
        cell = ms.cells[i]
        hull = _hull(_barycentric(p) for p in embed_mixed_cell(cell, ms.d))
        canvas.polygon(
            [place(q) for q in hull],
            fill=MIXED_FILL,
            stroke=STROKE,
            **{"stroke-width": "1", "data-cell": repr(cell)},
        )
    for p in sorted(embed_mixed_cell(ms.cells[i], ms.d)[0] for i in ms.vertices()):
        canvas.dot(place(_barycentric(p)), r=3, fill=STROKE)
    return canvas.tostring()


def render_svg(obj) -> str:
    """Dispatch on a tropical complex or a mixed subdivision."""
    if isinstance(obj, MixedSubdivision):
        return render_mixed(obj)
    if isinstance(obj, TropicalComplex):
        return render_torus(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
