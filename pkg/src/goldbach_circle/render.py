"""Figure layout and SVG output for the Goldbach Circle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import DomainError
from .geometry import GoldbachCertificate

Point = tuple[float, float]


@dataclass(frozen=True)
class SceneCoordinates:
    """Points of the figure in model units, C at the origin.

    A, B, C and E have integer coordinates.  D = (p1 - n, sqrt(de_sq)); its
    ordinate stays as ``de_sq`` until :attr:`d` is read.
    """

    n: int
    p1: int
    p2: int
    de_sq: int
    a: tuple[int, int]
    b: tuple[int, int]
    c: tuple[int, int]
    e: tuple[int, int]
    d_x: int
    labels: tuple[str, ...] = ("A", "B", "C", "D", "E")

    @property
    def d(self) -> Point:
        return (float(self.d_x), math.sqrt(self.de_sq))

    def on_circle_exact(self) -> bool:
        return self.d_x * self.d_x + self.de_sq == self.n * self.n

    def points(self) -> dict[str, Point]:
        return {
            "A": (float(self.a[0]), 0.0),
            "B": (float(self.b[0]), 0.0),
            "C": (0.0, 0.0),
            "D": self.d,
            "E": (float(self.e[0]), 0.0),
        }


def layout(cert: GoldbachCertificate) -> SceneCoordinates:
    n, p1 = cert.n, cert.p1
    ex = p1 - n
    if ex * ex + cert.de_sq != n * n:
        raise DomainError(f"D is not on the circle: ({ex})^2 + {cert.de_sq} != {n}^2")
    if -ex != cert.ec:
        raise DomainError(f"EC = {cert.ec} disagrees with C.x - E.x = {-ex}")
    return SceneCoordinates(
        n=n,
        p1=p1,
        p2=cert.p2,
        de_sq=cert.de_sq,
        a=(-n, 0),
        b=(n, 0),
        c=(0, 0),
        e=(ex, 0),
        d_x=ex,
    )


@dataclass(frozen=True)
class StyleOptions:
    canvas: float = 800
    margin: float = 0.05  # fraction of the canvas on each side
    stroke: str = "#000000"
    stroke_width: float = 2
    font_family: str = "serif"
    font_size: float = 24
    label_gap: float = 8


def _num(x: float) -> str:
    s = f"{x + 0.0:.9f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def emit_svg(scene: SceneCoordinates, style: StyleOptions | None = None) -> str:
    """Standalone SVG 1.1 document for ``scene``; byte-stable for fixed input."""
    style = style or StyleOptions()
    if not style.canvas > 0:
        raise DomainError(f"canvas size must be positive, got {style.canvas}")
    if not 0 <= style.margin < 0.5:
        raise DomainError(f"margin must lie in [0, 0.5), got {style.margin}")
    if not scene.on_circle_exact():
        raise DomainError("scene is not on its circle")

    size = style.canvas
    mid = size / 2
    scale = size * (1 - 2 * style.margin) / (2 * scene.n)

    def to_canvas(p: Point) -> Point:
        return (mid + scale * p[0], mid - scale * p[1])

    pts = {k: to_canvas(v) for k, v in scene.points().items()}

    segments = [("AB", "A", "B"), ("AD", "A", "D"), ("DB", "D", "B"), ("DE", "D", "E")]
    if scene.e != scene.c:
        segments.append(("CD", "C", "D"))

    fs, gap = style.font_size, style.label_gap
    # text-anchor, dx, dy relative to the point
    placement = {
        "A": ("end", -gap, fs / 3),
        "B": ("start", gap, fs / 3),
        "C": ("middle", 0.0, gap + fs),
        "D": ("middle", 0.0, -gap),
        "E": ("middle", 0.0, gap + fs),
    }
    if abs(pts["E"][0] - pts["C"][0]) < fs:
        # E sits left of C in the figure; keep the labels apart when close
        placement["C"] = ("start", gap / 2, gap + fs)
        placement["E"] = ("end", -gap / 2, gap + fs)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_num(size)}" height="{_num(size)}" viewBox="0 0 {_num(size)} {_num(size)}">'
        ),
        f"  <title>Goldbach Circle n={scene.n} p1={scene.p1} p2={scene.p2}</title>",
        (
            f'  <g fill="none" stroke="{escape(style.stroke)}" '
            f'stroke-width="{_num(style.stroke_width)}" stroke-linecap="round">'
        ),
        f'    <circle cx="{_num(mid)}" cy="{_num(mid)}" r="{_num(scale * scene.n)}"/>',
    ]
    for name, u, v in segments:
        (x1, y1), (x2, y2) = pts[u], pts[v]
        out.append(
            f'    <line id="{name}" x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"/>'
        )
    out.append("  </g>")
    out.append(
        f'  <g font-family="{escape(style.font_family)}" font-size="{_num(fs)}" '
        f'fill="{escape(style.stroke)}">'
    )
    for label in scene.labels:
        anchor, dx, dy = placement[label]
        x, y = pts[label]
        out.append(
            f'    <text id="label-{label}" x="{_num(x + dx)}" y="{_num(y + dy)}" '
            f'text-anchor="{anchor}">{label}</text>'
        )
    out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
