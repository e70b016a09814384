"""CSV time-series export and dependency-free SVG line charts.

CSV columns are fixed; rows hold the state *after* each generation's
lifecycle, except ``food_remaining`` which is counted before it. A row with
``population`` 0 records its three averages as 0.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .experiment import GenerationStats, SimulationResult, SweepSummary

CSV_COLUMNS = (
    "generation",
    "population",
    "avg_speed",
    "avg_size",
    "avg_cloning",
    "food_remaining",
    "clones_born",
    "deaths",
)
CSV_HEADER = ",".join(CSV_COLUMNS)
SUMMARY_HEADER = "food,trials,extinction_rate,mean_final_population,mean_speed_slope"

_INT_COLUMNS = {"generation", "population", "food_remaining", "clones_born", "deaths"}


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def write_csv(result: SimulationResult) -> bytes:
    lines = [CSV_HEADER]
    for s in result.series:
        lines.append(
            f"{s.generation},{s.population},{_fmt(s.avg_speed)},{_fmt(s.avg_size)},"
            f"{_fmt(s.avg_cloning)},{s.food_remaining},{s.clones_born},{s.deaths}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_csv(data: bytes | str) -> list[GenerationStats]:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
    rows = []
    for row in reader:
        kwargs = {k: int(v) if k in _INT_COLUMNS else float(v) for k, v in row.items()}
        rows.append(GenerationStats(**kwargs))
    return rows


def write_summary_csv(summary: SweepSummary) -> bytes:
    lines = [SUMMARY_HEADER]
    for food, s in summary.items():
        lines.append(
            f"{food},{s.trials},{_fmt(s.extinction_rate)},"
            f"{_fmt(s.mean_final_population)},{_fmt(s.mean_speed_slope)}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Charts
# ---------------------------------------------------------------------------

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


@dataclass(frozen=True)
class ChartSpec:
    title: str
    x_label: str
    y_label: str
    series: dict[str, list[tuple[int, float]]] = field(default_factory=dict)
    width: int = 860
    height: int = 480

    def validate(self) -> None:
        if not self.series:
            raise ValueError("chart needs at least one series")
        for name, points in self.series.items():
            if not points:
                raise ValueError(f"series {name!r} is empty")
            xs = [x for x, _ in points]
            if any(b <= a for a, b in zip(xs, xs[1:])):
                raise ValueError(f"series {name!r}: x values must be strictly increasing")


def _padded_extent(values: list[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    span = hi - lo
    if span == 0:
        pad = abs(lo) * 0.05 or 0.5
        return lo - pad, hi + pad
    return lo - 0.05 * span, hi + 0.05 * span


def _nice_ticks(lo: float, hi: float, target: int = 5, min_step: float = 0.0) -> list[float]:
    raw = max((hi - lo) / target, min_step)
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * magnitude
        if step >= raw:
            break
    first = math.ceil(lo / step)
    last = math.floor(hi / step)
    return [round(i * step, 12) for i in range(first, last + 1)]


def _tick_label(value: float) -> str:
    text = f"{value:.6g}"
    return "0" if text == "-0" else text


def render_chart(spec: ChartSpec) -> bytes:
    spec.validate()
    w, h = spec.width, spec.height
    left, right, top, bottom = 70, 230, 40, 55
    pw, ph = w - left - right, h - top - bottom

    all_x = [float(x) for pts in spec.series.values() for x, _ in pts]
    all_y = [float(y) for pts in spec.series.values() for _, y in pts]
    x0, x1 = _padded_extent(all_x)
    y0, y1 = _padded_extent(all_y)

    def sx(x: float) -> float:
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y: float) -> float:
        return top + ph - (y - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
        f'<text x="{left + pw / 2:.2f}" y="{top / 2 + 6:.2f}" text-anchor="middle" '
        f'font-size="15">{escape(spec.title)}</text>',
        '<g class="axes" stroke="black" stroke-width="1">',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}"/>',
        "</g>",
        '<g class="ticks">',
    ]
    for t in _nice_ticks(x0, x1, min_step=1.0):  # x values are integers
        px = sx(t)
        out.append(f'<line x1="{px:.2f}" y1="{top + ph}" x2="{px:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{top + ph + 18}" text-anchor="middle">{_tick_label(t)}</text>')
    for t in _nice_ticks(y0, y1):
        py = sy(t)
        out.append(f'<line x1="{left - 5}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<line x1="{left}" y1="{py:.2f}" x2="{left + pw}" y2="{py:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{left - 8}" y="{py + 4:.2f}" text-anchor="end">{_tick_label(t)}</text>')
    out.append("</g>")
    out.append(
        f'<text x="{left + pw / 2:.2f}" y="{h - 12}" text-anchor="middle">{escape(spec.x_label)}</text>'
    )
    out.append(
        f'<text x="16" y="{top + ph / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2:.2f})">{escape(spec.y_label)}</text>'
    )

    out.append('<g class="series" fill="none" stroke-width="2">')
    for i, (name, points) in enumerate(spec.series.items()):
        color = PALETTE[i % len(PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in points)
        out.append(f'<polyline stroke="{color}" points="{coords}"><title>{escape(name)}</title></polyline>')
    out.append("</g>")

    out.append('<g class="legend">')
    lx = left + pw + 15
    for i, name in enumerate(spec.series):
        color = PALETTE[i % len(PALETTE)]
        ly = top + 10 + i * 20
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 22}" y2="{ly}" stroke="{color}" stroke-width="3"/>')
        out.append(f'<text x="{lx + 28}" y="{ly + 4}">{escape(name)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


SERIES_LABELS = {
    "population": "Population",
    "avg_speed": "Average speed",
    "avg_size": "Average size",
    "avg_cloning": "Average cloning probability",
    "food_remaining": "Food remaining",
    "clones_born": "Clones born",
    "deaths": "Deaths",
}
DEFAULT_CHART_COLUMNS = ("avg_speed", "avg_size", "avg_cloning", "population")


def chart_for_series(series: list[GenerationStats], title: str,
                     columns: tuple[str, ...] = DEFAULT_CHART_COLUMNS) -> ChartSpec:
    unknown = [c for c in columns if c not in SERIES_LABELS]
    if unknown:
        raise ValueError(f"unknown chart column(s): {', '.join(unknown)}")
    return ChartSpec(
        title=title,
        x_label="Generation",
        y_label="Value",
        series={
            SERIES_LABELS[c]: [(s.generation, float(getattr(s, c))) for s in series]
            for c in columns
        },
    )
