"""SVG figure emission.

Hand-rolled SVG so that figures are pure functions of report content (same
report in, same bytes out) with no plotting dependency. Every scatter SVG is
accompanied by a plot-data CSV carrying full-precision values, so the drawn
regression can be reproduced exactly by refitting the CSV.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

BLUE = "#2166ac"
RED = "#b2182b"
GREEN = "#1a9641"
GRAY = "#999999"

WIDTH, HEIGHT = 720, 480
MARGIN = {"left": 62, "right": 18, "top": 42, "bottom": 52}


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _nice_step(span: float, target_ticks: int = 6) -> float:
    if span <= 0:
        return 1.0
    raw = span / target_ticks
    mag = 10 ** (len(str(int(raw))) - 1) if raw >= 1 else 1.0
    for mult in (1, 2, 5, 10):
        if raw <= mult * mag:
            return mult * mag
    return 10 * mag


class _Canvas:
    """Minimal SVG builder with a data-to-screen transform."""

    def __init__(self, x_range: tuple[float, float], y_range: tuple[float, float]):
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        self.parts: list[str] = []

    def px(self, x: float) -> float:
        frac = (x - self.x0) / (self.x1 - self.x0)
        return MARGIN["left"] + frac * (WIDTH - MARGIN["left"] - MARGIN["right"])

    def py(self, y: float) -> float:
        frac = (y - self.y0) / (self.y1 - self.y0)
        return HEIGHT - MARGIN["bottom"] - frac * (HEIGHT - MARGIN["top"] - MARGIN["bottom"])

    def add(self, element: str) -> None:
        self.parts.append(element)

    def line(self, x0, y0, x1, y1, color, width=1.0, dash=None):
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(f'<line x1="{_fmt(self.px(x0))}" y1="{_fmt(self.py(y0))}" '
                 f'x2="{_fmt(self.px(x1))}" y2="{_fmt(self.py(y1))}" '
                 f'stroke="{color}" stroke-width="{width}"{dash_attr}/>')

    def circle(self, x, y, color, r=1.6, opacity=0.55):
        self.add(f'<circle cx="{_fmt(self.px(x))}" cy="{_fmt(self.py(y))}" '
                 f'r="{r}" fill="{color}" fill-opacity="{opacity}"/>')

    def rect(self, x0, y0, x1, y1, color, opacity=0.85):
        left, top = self.px(min(x0, x1)), self.py(max(y0, y1))
        w, h = abs(self.px(x1) - self.px(x0)), abs(self.py(y1) - self.py(y0))
        self.add(f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(w)}" '
                 f'height="{_fmt(h)}" fill="{color}" fill-opacity="{opacity}"/>')

    def text(self, sx, sy, content, size=12, anchor="middle", color="#333333"):
        self.add(f'<text x="{_fmt(sx)}" y="{_fmt(sy)}" font-size="{size}" '
                 f'font-family="sans-serif" text-anchor="{anchor}" '
                 f'fill="{color}">{content}</text>')

    def x_axis(self, label: str, tick_values: list[float], fmt=lambda v: f"{v:g}"):
        base = HEIGHT - MARGIN["bottom"]
        self.add(f'<line x1="{MARGIN["left"]}" y1="{base}" '
                 f'x2="{WIDTH - MARGIN["right"]}" y2="{base}" stroke="#333333"/>')
        for v in tick_values:
            sx = self.px(v)
            self.add(f'<line x1="{_fmt(sx)}" y1="{base}" x2="{_fmt(sx)}" '
                     f'y2="{base + 4}" stroke="#333333"/>')
            self.text(sx, base + 17, fmt(v), size=11)
        self.text((MARGIN["left"] + WIDTH - MARGIN["right"]) / 2, HEIGHT - 12, label)

    def y_axis(self, label: str, tick_values: list[float]):
        self.add(f'<line x1="{MARGIN["left"]}" y1="{MARGIN["top"]}" '
                 f'x2="{MARGIN["left"]}" y2="{HEIGHT - MARGIN["bottom"]}" '
                 f'stroke="#333333"/>')
        for v in tick_values:
            sy = self.py(v)
            self.add(f'<line x1="{MARGIN["left"] - 4}" y1="{_fmt(sy)}" '
                     f'x2="{MARGIN["left"]}" y2="{_fmt(sy)}" stroke="#333333"/>')
            self.text(MARGIN["left"] - 8, sy + 4, f"{v:g}", size=11, anchor="end")
        self.add(f'<text x="16" y="{(MARGIN["top"] + HEIGHT - MARGIN["bottom"]) / 2}" '
                 f'font-size="12" font-family="sans-serif" text-anchor="middle" '
                 f'fill="#333333" transform="rotate(-90 16 '
                 f'{(MARGIN["top"] + HEIGHT - MARGIN["bottom"]) / 2})">{label}</text>')

    def render(self, title: str) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
                f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">\n'
                f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
        title_el = (f'<text x="{WIDTH / 2}" y="24" font-size="15" '
                    f'font-family="sans-serif" text-anchor="middle" '
                    f'fill="#111111">{title}</text>')
        return "\n".join([head, title_el, *self.parts, "</svg>"]) + "\n"


def scatter_svg(pool_block: dict, threshold: int, title: str,
                bracket_width: int | None = None) -> str:
    """Fraction-vs-size scatter with regression overlay.

    Blue and red point clouds over the whole pool; regression lines are drawn
    only over x >= threshold where they were fitted, the blue line being the
    complement of the red fit. A vertical line marks the threshold;
    ``bracket_width`` adds bracket-boundary gridlines.
    """
    points = pool_block["points"]
    xmax = max(p[0] for p in points) * 1.02
    canvas = _Canvas((0.0, xmax), (0.0, 1.0))

    if bracket_width:
        boundary = bracket_width
        while boundary < xmax:
            canvas.line(boundary, 0, boundary, 1, GRAY, width=0.5, dash="2,3")
            boundary += bracket_width

    for size, blue_frac, red_frac in points:
        canvas.circle(size, blue_frac, BLUE)
        canvas.circle(size, red_frac, RED)

    canvas.line(threshold, 0, threshold, 1, GREEN, width=1.5)
    fit = pool_block.get("fit")
    if fit and threshold < xmax:
        def red_at(x):
            return fit["intercept"] + fit["slope"] * x
        canvas.line(threshold, red_at(threshold), xmax, red_at(xmax), RED, width=2.0)
        canvas.line(threshold, 1 - red_at(threshold), xmax, 1 - red_at(xmax),
                    BLUE, width=2.0)

    step = _nice_step(xmax)
    ticks = [t for t in range(0, int(xmax) + 1, int(step))]
    canvas.x_axis("precinct total votes", ticks)
    canvas.y_axis("vote fraction", [0.0, 0.25, 0.5, 0.75, 1.0])
    return canvas.render(title)


def bracket_svg(pool_block: dict, title: str) -> str:
    """Mean-fraction bars per size bracket, bar width proportional to the
    bracket's share of the pool's votes."""
    brackets = pool_block["brackets"]
    canvas = _Canvas((0.0, 1.0), (0.0, 1.0))
    cursor = 0.0
    for b in brackets:
        width = b["vote_share_width"]
        pad = min(0.004, width * 0.08)
        mid = cursor + width / 2
        canvas.rect(cursor + pad, 0, mid, b["mean_blue_frac"], BLUE)
        canvas.rect(mid, 0, cursor + width - pad, b["mean_red_frac"], RED)
        if width > 0.03:
            canvas.text(canvas.px(mid), HEIGHT - MARGIN["bottom"] + 17,
                        str(b["bracket"]), size=10)
        cursor += width
    canvas.line(0, 0.5, 1, 0.5, GRAY, width=0.8, dash="4,3")
    canvas.add(f'<line x1="{MARGIN["left"]}" y1="{HEIGHT - MARGIN["bottom"]}" '
               f'x2="{WIDTH - MARGIN["right"]}" y2="{HEIGHT - MARGIN["bottom"]}" '
               f'stroke="#333333"/>')
    canvas.text((MARGIN["left"] + WIDTH - MARGIN["right"]) / 2, HEIGHT - 12,
                "bracket (width = share of pool votes)")
    canvas.y_axis("mean vote fraction", [0.0, 0.25, 0.5, 0.75, 1.0])
    return canvas.render(title)


def plot_data_csv(pool_block: dict) -> str:
    """Full-precision point data backing a scatter figure."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["size", "blue_frac", "red_frac"])
    for size, blue_frac, red_frac in pool_block["points"]:
        writer.writerow([int(size), f"{blue_frac:.17g}", f"{red_frac:.17g}"])
    return buf.getvalue()


def emit_figures(report: dict, out_dir: str | Path,
                 grid_brackets: bool = False) -> list[str]:
    """Write per-pool scatter SVG + plot-data CSV and bracket-bar SVG.

    Returns the written paths; pools without precincts are skipped and noted
    in the figures.json manifest (also returned).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    threshold = report["config"]["threshold"]
    bracket_width = report["config"]["bracket_width"] if grid_brackets else None
    scope = report["scope"]["label"]

    written: list[str] = []
    skipped: dict[str, str] = {}
    for key, nice in (("blue_win", "blue-win"), ("red_win", "red-win")):
        block = report["pools"][key]
        if not block["points"]:
            skipped[key] = "empty pool, no figure emitted"
            continue
        title = f"{scope} {nice} precincts" if scope else f"{nice} precincts"
        svg_path = out / f"scatter_{key}.svg"
        svg_path.write_text(
            scatter_svg(block, threshold, title, bracket_width), encoding="utf-8")
        csv_path = out / f"scatter_{key}.csv"
        csv_path.write_text(plot_data_csv(block), encoding="utf-8")
        bar_path = out / f"brackets_{key}.svg"
        bar_path.write_text(
            bracket_svg(block, f"{title}: bracket mean fractions"), encoding="utf-8")
        written += [str(svg_path), str(csv_path), str(bar_path)]

    manifest = out / "figures.json"
    manifest.write_text(json.dumps({"files": written, "skipped": skipped},
                                   indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(str(manifest))
    return written
