"""Cone charts of free modules: text, SVG and PNG.

p runs to the right and q upward. Each generator draws its top cone (a
vertical and a diagonal edge from the generator) and its bottom cone (the
same two edges going down from theta, two steps below the generator).
"""
from typing import Dict, List, Optional, Tuple

from .modules import FreeModule
from .oracle import Window
from .settings import AppConfig

Point = Tuple[int, int]

_PRIORITY = {".": 0, ":": 0, "-": 0, "|": 1, "/": 1, "+": 1, "x": 2, "o": 3}


def chart_window(module: FreeModule, extent: int = AppConfig.CHART_EXTENT) -> Window:
    pts = [g.deg for g in module.gens]
    p_vals = [0] + [d.p for d in pts]
    q_vals = [0] + [d.q for d in pts] + [d.q - 2 for d in pts]
    return Window(min(p_vals) - extent, max(p_vals) + extent,
                  min(q_vals) - extent, max(q_vals) + extent)


def _cone_segments(module: FreeModule, w: Window) -> List[Tuple[str, Point, Point]]:
    """(kind, start, end) clipped to the window; kind is 'top' or 'bottom'."""
    segs = []
    for g in module.gens:
        p, q = g.deg.p, g.deg.q
        # top cone: up, and up the diagonal
        segs.append(("top", (p, q), (p, w.q_max)))
        reach = min(w.p_max - p, w.q_max - q)
        segs.append(("top", (p, q), (p + max(reach, 0), q + max(reach, 0))))
        # bottom cone from theta at (p, q-2): down, and down the diagonal
        segs.append(("bottom", (p, q - 2), (p, w.q_min)))
        reach = min(p - w.p_min, q - 2 - w.q_min)
        segs.append(("bottom", (p, q - 2), (p - max(reach, 0), q - 2 - max(reach, 0))))
    return segs


def _put(grid: Dict[Point, str], pt: Point, ch: str) -> None:
    old = grid.get(pt, ".")
    if {old, ch} == {"|", "/"}:
        grid[pt] = "+"
    elif _PRIORITY[ch] >= _PRIORITY[old] and not (old == "+" and ch in "|/"):
        grid[pt] = ch


def render_ascii(module: FreeModule, title: Optional[str] = None,
                 window: Optional[Window] = None) -> str:
    w = window or chart_window(module)
    grid: Dict[Point, str] = {}
    for p, q in w.points():
        if p == 0:
            grid[(p, q)] = ":"
        elif q == 0:
            grid[(p, q)] = "-"
    for kind, (p0, q0), (p1, q1) in _cone_segments(module, w):
        steps = max(abs(p1 - p0), abs(q1 - q0))
        dp = (p1 > p0) - (p1 < p0)
        dq = (q1 > q0) - (q1 < q0)
        ch = "|" if dp == 0 else "/"
        for t in range(steps + 1):
            pt = (p0 + dp * t, q0 + dq * t)
            if pt in w:
                _put(grid, pt, ch)
    for g in module.gens:
        p, q = g.deg.p, g.deg.q
        if (p, q - 2) in w:
            _put(grid, (p, q - 2), "x")
        if (p, q) in w:
            _put(grid, (p, q), "o")

    lines = []
    if title:
        lines.append(title)
    for q in range(w.q_max, w.q_min - 1, -1):
        row = "".join(f"{grid.get((p, q), '.'):^3}" for p in range(w.p_min, w.p_max + 1))
        lines.append(f"{q:>4} {row.rstrip()}")
    lines.append("     " + "".join(f"{p:^3}" for p in range(w.p_min, w.p_max + 1)).rstrip())
    if module.gens:
        lines.append("")
        for g in module.gens:
            lines.append(f"  o {g.label} {g.deg}")
    else:
        lines.append("  (zero module)")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ SVG

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<svg width="%(width)d" height="%(height)d" viewBox="0 0 %(width)d %(height)d" version="1.1" xmlns="http://www.w3.org/2000/svg">
<rect x="0" y="0" width="%(width)d" height="%(height)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""


class SVG:
    """Collects drawing commands in chart coordinates (p, q); y is flipped on output."""

    def __init__(self, window: Window, unit: int = AppConfig.SVG_UNIT, pad: int = 1):
        self.window = window
        self.unit = unit
        self.pad = pad
        self.commands: List[str] = []

    def xy(self, p: float, q: float) -> Tuple[int, int]:
        x = (p - self.window.p_min + self.pad) * self.unit
        y = (self.window.q_max - q + self.pad) * self.unit
        return int(round(x)), int(round(y))

    def line(self, points: List[Tuple[float, float]], color: str, width: int = 2) -> None:
        coords = " ".join("%d,%d" % self.xy(p, q) for p, q in points)
        self.commands.append(
            '<polyline points="%s" style="fill:none;stroke:%s;stroke-width:%d"/>' % (coords, color, width))

    def circle(self, p: float, q: float, radius: int, color: str, fill: bool = True) -> None:
        x, y = self.xy(p, q)
        style = f"fill:{color}" if fill else f"fill:none;stroke:{color};stroke-width:2"
        self.commands.append('<circle cx="%d" cy="%d" r="%d" style="%s"/>' % (x, y, radius, style))

    def text(self, p: float, q: float, text: str, color: str = "#666666", size: int = 10) -> None:
        x, y = self.xy(p, q)
        self.commands.append(
            '<text x="%d" y="%d" fill="%s" font-size="%d" font-family="monospace">%s</text>'
            % (x, y, color, size, _escape(text)))

    def to_string(self) -> str:
        w = self.window
        width = (w.p_max - w.p_min + 2 * self.pad) * self.unit
        height = (w.q_max - w.q_min + 2 * self.pad) * self.unit
        return PREAMBLE % {"width": width, "height": height} + "".join(c + "\n" for c in self.commands) + POSTAMBLE


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_svg(module: FreeModule, title: Optional[str] = None, window: Optional[Window] = None,
               unit: int = AppConfig.SVG_UNIT) -> str:
    w = window or chart_window(module)
    svg = SVG(w, unit=unit)
    colors = AppConfig.COLORS
    svg.line([(w.p_min, 0), (w.p_max, 0)], colors["axis"], 1)
    svg.line([(0, w.q_min), (0, w.q_max)], colors["axis"], 1)
    for p in range(w.p_min, w.p_max + 1):
        svg.text(p, w.q_min - 0.6, str(p), colors["axis"])
    for q in range(w.q_min, w.q_max + 1):
        svg.text(w.p_min - 0.8, q, str(q), colors["axis"])
    for kind, start, end in _cone_segments(module, w):
        color = colors["top_cone"] if kind == "top" else colors["bottom_cone"]
        svg.line([start, end], color)
    for g in module.gens:
        svg.circle(g.deg.p, g.deg.q, max(2, unit // 6), colors["top_cone"])
        svg.circle(g.deg.p, g.deg.q - 2, max(2, unit // 6), colors["bottom_cone"], fill=False)
        svg.text(g.deg.p + 0.2, g.deg.q + 0.2, g.label, colors["primary"])
    if title:
        svg.text(w.p_min, w.q_max + 0.6, title, "#000000", 12)
    return svg.to_string()


# ------------------------------------------------------------------ PNG

def _qt_app():
    from PySide6.QtGui import QGuiApplication

    app = QGuiApplication.instance()
    if app is None:
        app = QGuiApplication(["kronholm", "-platform", "offscreen"])
    return app


def render_png(module: FreeModule, path: str, title: Optional[str] = None,
               window: Optional[Window] = None, unit: int = AppConfig.PNG_UNIT) -> str:
    """Paint the chart with QPainter and save it; returns the path."""
    from PySide6.QtCore import QPointF, Qt
    from PySide6.QtGui import QColor, QImage, QPainter, QPen

    _qt_app()
    w = window or chart_window(module)
    pad = 1

    def xy(p: float, q: float) -> QPointF:
        return QPointF((p - w.p_min + pad) * unit, (w.q_max - q + pad) * unit)

    width = (w.p_max - w.p_min + 2 * pad) * unit
    height = (w.q_max - w.q_min + 2 * pad) * unit
    image = QImage(width, height, QImage.Format_ARGB32)
    image.fill(QColor("#ffffff"))
    painter = QPainter(image)
    try:
        painter.setRenderHint(QPainter.Antialiasing, True)
        colors = AppConfig.COLORS
        painter.setPen(QPen(QColor(colors["axis"]), 1))
        painter.drawLine(xy(w.p_min, 0), xy(w.p_max, 0))
        painter.drawLine(xy(0, w.q_min), xy(0, w.q_max))
        for kind, start, end in _cone_segments(module, w):
            color = colors["top_cone"] if kind == "top" else colors["bottom_cone"]
            painter.setPen(QPen(QColor(color), 2))
            painter.drawLine(xy(*start), xy(*end))
        radius = max(2, unit // 6)
        for g in module.gens:
            painter.setPen(Qt.NoPen)
            painter.setBrush(QColor(colors["top_cone"]))
            painter.drawEllipse(xy(g.deg.p, g.deg.q), radius, radius)
            painter.setBrush(Qt.NoBrush)
            painter.setPen(QPen(QColor(colors["bottom_cone"]), 2))
            painter.drawEllipse(xy(g.deg.p, g.deg.q - 2), radius, radius)
            painter.setPen(QPen(QColor(colors["primary"]), 1))
            painter.drawText(xy(g.deg.p + 0.2, g.deg.q + 0.2), g.label)
        if title:
            painter.setPen(QPen(QColor("#000000"), 1))
            painter.drawText(xy(w.p_min, w.q_max + 0.6), title)
    finally:
        painter.end()
    if not image.save(path, "PNG"):
        raise OSError(f"could not write {path}")
    return path
