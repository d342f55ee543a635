"""Deterministic static SVG line charts.

No timestamps or random ids are emitted, so rendering the same data twice
gives byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from html import escape
from pathlib import Path
from typing import Sequence

from .errors import CurrencyError, DomainError
from .series import TimeSeries

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf")
MARGIN = {"left": 70, "right": 16, "top": 34, "bottom": 64}


@dataclass(frozen=True)
class ChartSpec:
    title: str
    series: tuple[tuple[str, TimeSeries], ...]
    width: int = 480
    height: int = 360
    path: Path | None = None
    base: int | None = None

    def __post_init__(self) -> None:
        if not self.series:
            raise DomainError(f"chart {self.title!r} has no series")
        if self.width <= 0 or self.height <= 0:
            raise DomainError("chart dimensions must be positive")
        currencies = {s.currency for _, s in self.series}
        if len(currencies) > 1:
            raise CurrencyError(f"chart {self.title!r} mixes currencies {sorted(currencies)}")
        object.__setattr__(self, "series", tuple(self.series))


def _nice_step(span: float, target: int = 5) -> float:
    if span <= 0:
        return 1.0
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 2.5, 5, 10):
        if raw <= m * mag:
            return m * mag
    return 10 * mag


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _tick_label(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-2:
        return f"{v:.3g}"
    return f"{v:g}"


def _panel(spec: ChartSpec, x0: float, y0: float) -> list[str]:
    w = spec.width - MARGIN["left"] - MARGIN["right"]
    h = spec.height - MARGIN["top"] - MARGIN["bottom"]
    left, top = x0 + MARGIN["left"], y0 + MARGIN["top"]

    years = sorted({y for _, s in spec.series for y in s.years})
    values = [v for _, s in spec.series for v in s.values]
    if not years:
        raise DomainError(f"chart {spec.title!r} has only empty series")
    xmin, xmax = years[0], years[-1]
    if xmin == xmax:
        xmin, xmax = xmin - 1, xmax + 1
    vmin, vmax = min(min(values), 0.0), max(values)
    step = _nice_step(vmax - vmin)
    ymin = math.floor(vmin / step) * step
    ymax = math.ceil(vmax / step) * step
    if ymax == ymin:
        ymax = ymin + step

    def sx(year: float) -> float:
        return left + (year - xmin) / (xmax - xmin) * w

    def sy(v: float) -> float:
        return top + (ymax - v) / (ymax - ymin) * h

    out = [
        f'<text x="{_fmt(x0 + spec.width / 2)}" y="{_fmt(y0 + 20)}" text-anchor="middle" '
        f'font-size="14">{escape(spec.title)}</text>',
        f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'fill="none" stroke="#444"/>',
    ]
    n_ticks = int(round((ymax - ymin) / step))
    for i in range(n_ticks + 1):
        v = ymin + i * step
        y = sy(v)
        out.append(f'<line x1="{_fmt(left - 4)}" y1="{_fmt(y)}" x2="{_fmt(left + w)}" y2="{_fmt(y)}" stroke="#ddd"/>')
        out.append(f'<text x="{_fmt(left - 6)}" y="{_fmt(y + 4)}" text-anchor="end" font-size="10">{_tick_label(v)}</text>')
    ystep = max(1, int(_nice_step(xmax - xmin, 6)))
    first_tick = math.ceil(xmin / ystep) * ystep
    for year in range(first_tick, xmax + 1, ystep):
        x = sx(year)
        out.append(f'<line x1="{_fmt(x)}" y1="{_fmt(top + h)}" x2="{_fmt(x)}" y2="{_fmt(top + h + 4)}" stroke="#444"/>')
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(top + h + 16)}" text-anchor="middle" font-size="10">{year}</text>')

    if spec.base is not None and xmin <= spec.base <= xmax:
        x = sx(spec.base)
        out.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(top)}" x2="{_fmt(x)}" y2="{_fmt(top + h)}" '
            f'stroke="#888" stroke-dasharray="4 3"/>'
        )
        out.append(f'<text x="{_fmt(x + 3)}" y="{_fmt(top + 12)}" font-size="10" fill="#666">base {spec.base}</text>')

    first = spec.series[0][1]
    unit = f"{first.currency}, x{first.unit_scale:g}"
    out.append(
        f'<text x="{_fmt(x0 + 14)}" y="{_fmt(top + h / 2)}" font-size="10" text-anchor="middle" '
        f'transform="rotate(-90 {_fmt(x0 + 14)} {_fmt(top + h / 2)})">{escape(unit)}</text>'
    )

    for i, (label, s) in enumerate(spec.series):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_fmt(sx(y))},{_fmt(sy(v))}" for y, v in s)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        lx = left + (i % 3) * (w / 3)
        ly = top + h + 32 + (i // 3) * 14
        out.append(f'<rect x="{_fmt(lx)}" y="{_fmt(ly - 8)}" width="10" height="3" fill="{color}"/>')
        out.append(f'<text x="{_fmt(lx + 14)}" y="{_fmt(ly - 4)}" font-size="10">{escape(label)}</text>')
    return out


def render_svg(panels: Sequence[ChartSpec]) -> str:
    """Lay panels out left to right in one SVG document."""
    if not panels:
        raise DomainError("nothing to render")
    width = sum(p.width for p in panels)
    height = max(p.height for p in panels)
    body: list[str] = []
    x = 0.0
    for p in panels:
        body.extend(_panel(p, x, 0.0))
        x += p.width
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">'
    )
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>"]) + "\n"


def write_svg(panels: Sequence[ChartSpec], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_svg(panels))
    return path
