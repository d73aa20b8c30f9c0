"""
Static reports: SVG Q-Q plots and histograms, text/CSV/JSON result tables.

Rendering is a pure function of its inputs. Coordinates are rounded to two
decimals and no ids or timestamps are generated, so identical inputs give
byte-identical documents.
"""
import csv
import io
import json
import logging
import math
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import svgwrite

from ..exceptions import DomainError
from ..models.fit import QQFit
from ..models.plot import PlotSpec
from ..models.positions import PositionMethod
from ..models.results import (
    CalibrationTable,
    DatasetResults,
    GofResult,
    Histogram,
    PowerRow,
    TestKind,
)
from .gof_tests import t_from_rho

logger = logging.getLogger(__name__)

WIDTH, HEIGHT = 640, 480
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 20, 50, 60
PAD = 0.05
MAX_TICKS = 6

POINT_COLOR = "#4a90d9"
LINE_COLOR = "#d94a4a"
NULL_COLOR = "#d94a4a"
ALT_COLOR = "#4a90d9"
AXIS_COLOR = "#333333"
FONT = "sans-serif"

TABLE_FORMATS = ('text', 'csv', 'json')


def _r(value: float) -> float:
    return round(float(value), 2)


def nice_ticks(low: float, high: float, max_ticks: int = MAX_TICKS) -> List[float]:
    """At most max_ticks round values (steps 1, 2, 2.5, 5 times a power of ten) within [low, high]"""
    if not high > low:
        return [low]
    raw = (high - low) / max(max_ticks - 1, 1)
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for factor in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = factor * magnitude
        first = math.ceil(low / step)
        last = math.floor(high / step)
        if last - first + 1 <= max_ticks:
            break
    return [round(i * step, 10) for i in range(first, last + 1)]


def _tick_label(value: float) -> str:
    text = f"{value:.4g}"
    return "0" if text == "-0" else text


def _padded(low: float, high: float) -> Tuple[float, float]:
    if high == low:
        spread = abs(low) if low != 0 else 1.0
        return low - PAD * spread, high + PAD * spread
    pad = PAD * (high - low)
    return low - pad, high + pad


class _Canvas:
    """Maps data coordinates to the plot area of an svgwrite drawing"""

    def __init__(self, title: str, x_label: str, y_label: str,
                 x_range: Tuple[float, float], y_range: Tuple[float, float]):
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        self.left = MARGIN_LEFT
        self.right = WIDTH - MARGIN_RIGHT
        self.top = MARGIN_TOP
        self.bottom = HEIGHT - MARGIN_BOTTOM
        self.dwg = svgwrite.Drawing(size=(WIDTH, HEIGHT), profile='full', debug=False)
        self.dwg.add(self.dwg.rect((0, 0), (WIDTH, HEIGHT), fill="white"))
        self._frame()
        self._text(title, (WIDTH / 2, MARGIN_TOP / 2 + 5), size=16, anchor="middle", weight="bold")
        self._text(x_label, ((self.left + self.right) / 2, HEIGHT - 15), size=13, anchor="middle")
        label = self._text(y_label, (18, (self.top + self.bottom) / 2), size=13, anchor="middle")
        label.rotate(-90, center=(18, _r((self.top + self.bottom) / 2)))

    def sx(self, x: float) -> float:
        return _r(self.left + (x - self.x0) / (self.x1 - self.x0) * (self.right - self.left))

    def sy(self, y: float) -> float:
        return _r(self.bottom - (y - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top))

    def _text(self, text: str, pos, size: int = 11, anchor: str = "start", weight: str = "normal"):
        element = self.dwg.text(text, insert=(_r(pos[0]), _r(pos[1])), font_family=FONT,
                                font_size=size, text_anchor=anchor, font_weight=weight,
                                fill=AXIS_COLOR)
        self.dwg.add(element)
        return element

    def _frame(self) -> None:
        dwg = self.dwg
        dwg.add(dwg.rect((self.left, self.top), (self.right - self.left, self.bottom - self.top),
                         fill="none", stroke=AXIS_COLOR, stroke_width=1))
        # Ticks go into one path so the only <line> elements are data lines
        commands = []
        for x in nice_ticks(self.x0, self.x1):
            px = self.sx(x)
            commands.append(f"M{px},{self.bottom} v5")
            self._text(_tick_label(x), (px, self.bottom + 18), anchor="middle")
        for y in nice_ticks(self.y0, self.y1):
            py = self.sy(y)
            commands.append(f"M{self.left},{py} h-5")
            self._text(_tick_label(y), (self.left - 8, py + 4), anchor="end")
        if commands:
            dwg.add(dwg.path(d=" ".join(commands), stroke=AXIS_COLOR, stroke_width=1, fill="none"))

    def annotation_box(self, lines: Sequence[str]) -> None:
        if not lines:
            return
        height = 8 + 15 * len(lines)
        width = 10 + 7 * max(len(line) for line in lines)
        x, y = self.left + 10, self.top + 10
        self.dwg.add(self.dwg.rect((x, y), (width, height), fill="white", fill_opacity=0.85,
                                   stroke=AXIS_COLOR, stroke_width=0.5))
        for i, line in enumerate(lines):
            self._text(line, (x + 6, y + 16 + 15 * i))

    def tostring(self) -> str:
        return self.dwg.tostring()


def render_plot_svg(spec: PlotSpec) -> str:
    """Scatter plot with an optional straight line across the x-range of the points"""
    xs = [p[0] for p in spec.points]
    ys = [p[1] for p in spec.points]
    x_low, x_high = min(xs), max(xs)
    y_low, y_high = min(ys), max(ys)
    if spec.line is not None:
        intercept, slope = spec.line
        ends = (intercept + slope * x_low, intercept + slope * x_high)
        y_low, y_high = min(y_low, *ends), max(y_high, *ends)

    canvas = _Canvas(spec.title, spec.x_label, spec.y_label,
                     _padded(x_low, x_high), _padded(y_low, y_high))
    dwg = canvas.dwg
    if spec.line is not None:
        intercept, slope = spec.line
        dwg.add(dwg.line(start=(canvas.sx(x_low), canvas.sy(intercept + slope * x_low)),
                         end=(canvas.sx(x_high), canvas.sy(intercept + slope * x_high)),
                         stroke=LINE_COLOR, stroke_width=1.5))
    for x, y in spec.points:
        dwg.add(dwg.circle(center=(canvas.sx(x), canvas.sy(y)), r=3.5,
                           fill=POINT_COLOR, stroke="white", stroke_width=0.5))
    canvas.annotation_box(spec.annotations)
    return canvas.tostring()


def qq_plot_spec(fit_result: QQFit, result: Optional[GofResult] = None,
                 title: str = "Q-Q plot") -> PlotSpec:
    """Plot content of a Q-Q fit: points (q_k, X_(k)), fitted line, summary box"""
    points = list(zip(fit_result.positions.q.tolist(), fit_result.observations.tolist()))
    annotations = [f"n = {fit_result.n}"]
    if fit_result.degenerate:
        annotations.append("degenerate sample: no line fitted")
        line = None
    else:
        line = (fit_result.mu_hat, fit_result.sigma_hat)
        annotations.append(f"mu = {fit_result.mu_hat:.4f}, sigma = {fit_result.sigma_hat:.4f}")
        method = fit_result.positions.method
        if result is None:
            annotations.append(f"rho = {fit_result.rho:.4f}")
            annotations.append(f"T_n = {t_from_rho(fit_result.rho):.4f}")
        else:
            # the test statistic always comes from fitted positions
            own = "" if method is PositionMethod.FITTED_AB else f" ({method.value} positions)"
            tested = "" if method is PositionMethod.FITTED_AB else " (fitted positions)"
            annotations.append(f"rho = {fit_result.rho:.4f}{own}")
            annotations.append(f"T_n = {result.statistic:.4f}{tested}")
            annotations.append(f"p = {result.p_value:.2%}{tested}")
    return PlotSpec(
        title=title,
        x_label=f"{fit_result.family.value} quantiles ({fit_result.positions.method.value} positions)",
        y_label="ordered observations",
        points=points,
        line=line,
        annotations=annotations,
    )


def render_qq_svg(fit_result: QQFit, result: Optional[GofResult] = None, **overrides) -> str:
    """SVG Q-Q plot of a fit; keyword overrides replace PlotSpec fields"""
    if fit_result.degenerate:
        logger.warning("Rendering degenerate fit without regression line")
    spec = qq_plot_spec(fit_result, result)
    if overrides:
        spec = replace(spec, **overrides)
    return render_plot_svg(spec)


def render_histogram_svg(hist: Histogram, title: str = "Null distribution",
                         x_label: str = "statistic",
                         normal_fit: Optional[Tuple[float, float]] = None,
                         overlay: Optional[Histogram] = None,
                         legend: Sequence[str] = ()) -> str:
    """Histogram bars, an optional second histogram, and an optional fitted normal density"""
    edges = np.asarray(hist.edges)
    counts = np.asarray(hist.counts, dtype=float)
    x_low, x_high = float(edges[0]), float(edges[-1])
    y_high = float(counts.max()) if counts.size else 1.0
    if overlay is not None:
        x_low = min(x_low, overlay.edges[0])
        x_high = max(x_high, overlay.edges[-1])
        y_high = max(y_high, max(overlay.counts))
    y_high = y_high or 1.0

    canvas = _Canvas(title, x_label, "count", (x_low, x_high), (0.0, y_high * (1 + PAD)))
    dwg = canvas.dwg

    def bars(h: Histogram, color: str, opacity: float) -> None:
        for left, right, count in zip(h.edges[:-1], h.edges[1:], h.counts):
            if count == 0:
                continue
            x, y = canvas.sx(left), canvas.sy(count)
            dwg.add(dwg.rect((x, y), (_r(canvas.sx(right) - x), _r(canvas.bottom - y)),
                             fill=color, fill_opacity=opacity, stroke="none"))

    bars(hist, NULL_COLOR, 0.55)
    if overlay is not None:
        bars(overlay, ALT_COLOR, 0.45)

    if normal_fit is not None and hist.total > 0:
        mu, sigma = normal_fit
        width = (edges[-1] - edges[0]) / max(len(hist.counts), 1)
        grid = np.linspace(x_low, x_high, 121)
        density = hist.total * width * np.exp(-0.5 * ((grid - mu) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
        dwg.add(dwg.polyline([(canvas.sx(x), canvas.sy(min(y, y_high * (1 + PAD))))
                              for x, y in zip(grid, density)],
                             fill="none", stroke=AXIS_COLOR, stroke_width=1.5))
    canvas.annotation_box(list(legend))
    return canvas.tostring()


# ----------------------------------------------------------------------------
# Tables
# ----------------------------------------------------------------------------

def _ordered_tests(rows: Sequence[DatasetResults]) -> List[TestKind]:
    present = {r.test for row in rows for r in row.results}
    return [t for t in TestKind if t in present]


def _json_number(value: float) -> Optional[float]:
    return float(value) if math.isfinite(value) else None


def _by_test(row: DatasetResults) -> Dict[TestKind, GofResult]:
    return {r.test: r for r in row.results}


def render_table(rows: Sequence[DatasetResults], fmt: str = 'text') -> str:
    """Statistic and p-value per test, one row per dataset"""
    if not rows or any(not row.results for row in rows):
        raise DomainError("a results table needs at least one test result per dataset")
    if fmt not in TABLE_FORMATS:
        raise DomainError(f"table format must be one of {TABLE_FORMATS}, got {fmt!r}")
    tests = _ordered_tests(rows)

    if fmt == 'json':
        payload = [
            {
                'dataset': row.dataset,
                'n': row.n,
                'tests': [
                    {
                        'name': r.test.value,
                        'statistic': _json_number(r.statistic),
                        'p_value': r.p_value,
                        'p_method': r.p_method.value,
                    }
                    for r in row.results
                ],
            }
            for row in rows
        ]
        return json.dumps(payload, indent=2) + "\n"

    if fmt == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        header = ['dataset', 'n']
        for test in tests:
            header += [f"{test.value}_statistic", f"{test.value}_p_value"]
        writer.writerow(header)
        for row in rows:
            found = _by_test(row)
            line = [row.dataset, row.n]
            for test in tests:
                r = found.get(test)
                line += [repr(r.statistic), repr(r.p_value)] if r else ['', '']
            writer.writerow(line)
        return buffer.getvalue()

    header = ["Dataset", "n"]
    for test in tests:
        header += [test.symbol, "p-value"]
    body = []
    for row in rows:
        found = _by_test(row)
        line = [row.dataset, str(row.n)]
        for test in tests:
            r = found.get(test)
            line += [f"{r.statistic:.4f}", f"{r.p_value:.2%}"] if r else ["-", "-"]
        body.append(line)
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    rendered = ["  ".join(cell.ljust(w) if i == 0 else cell.rjust(w)
                          for i, (cell, w) in enumerate(zip(line, widths)))
                for line in [header] + body]
    rendered.insert(1, "-" * len(rendered[0]))
    return "\n".join(rendered) + "\n"


def render_calibration_tables(tables: Sequence[CalibrationTable], fmt: str = 'csv') -> str:
    """CalibrationTable set as CSV (one row per n) or JSON (full records)"""
    if fmt == 'json':
        return json.dumps([t.to_dict() for t in tables], indent=2) + "\n"
    if fmt != 'csv':
        raise DomainError(f"calibration output is csv or json, got {fmt!r}")
    levels = sorted({p for t in tables for p in t.quantiles})
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(['n', 'reps', 'seed', 'mu_n', 'sigma_n'] + [f"q{p:g}" for p in levels])
    for t in tables:
        writer.writerow([t.n, t.reps, t.seed, repr(t.mu_n), repr(t.sigma_n)]
                        + [repr(t.quantiles[p]) if p in t.quantiles else '' for p in levels])
    return buffer.getvalue()


def render_power_rows(rows: Sequence[PowerRow], fmt: str = 'csv') -> str:
    """PowerRow set as CSV or JSON"""
    if fmt == 'json':
        return json.dumps([r.to_dict() for r in rows], indent=2) + "\n"
    if fmt != 'csv':
        raise DomainError(f"power output is csv or json, got {fmt!r}")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(['test', 'alternative', 'n', 'alpha', 'critical_value', 'beta', 'reps', 'seed'])
    for r in rows:
        writer.writerow([r.test.value, r.alternative.value, r.n, repr(r.alpha),
                         repr(r.critical_value), repr(r.beta), r.reps, r.seed])
    return buffer.getvalue()
