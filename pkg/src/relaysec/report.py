"""CSV rows and the SVG line chart written by the command-line tool."""

from __future__ import annotations

import csv
import io
from xml.sax.saxutils import escape

from .bounds import BoundsReport
from .montecarlo import SimConfig, SimResult
from .params import SystemParams

CSV_COLUMNS = (
    "n", "m", "k", "tau", "gamma_r", "gamma_e", "es", "n0", "epsilon_t", "epsilon_s",
    "trials", "block_length", "seed",
    "p_out_t_hat", "p_out_t_lo", "p_out_t_hi", "p_out_s_hat", "p_out_s_lo", "p_out_s_hi",
    "jain_index", "mean_jam1", "mean_jam2",
    "psi", "p_out_t_bound", "p_out_s_bound", "tau_min", "tau_max", "m_max", "feasible",
    "diagnostics",
)  # fmt: skip


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def bound_exceedances(result: SimResult, bounds: BoundsReport) -> list[str]:
    """Estimates whose whole Wilson interval lies above the closed-form bound."""
    flags = []
    if result.ci_t[0] > bounds.p_out_t_bound:
        flags.append("p_out_t_hat:exceeds-bound")
    if result.ci_s[0] > bounds.p_out_s_bound:
        flags.append("p_out_s_hat:exceeds-bound")
    return flags


def make_row(params: SystemParams, cfg: SimConfig, bounds: BoundsReport, result: SimResult | None = None) -> dict:
    row = {
        "n": params.n,
        "m": params.m,
        "k": params.k,
        "tau": float(params.tau),
        "gamma_r": float(params.gamma_r),
        "gamma_e": float(params.gamma_e),
        "es": float(params.es),
        "n0": float(params.n0),
        "epsilon_t": float(params.epsilon_t),
        "epsilon_s": float(params.epsilon_s),
        "trials": cfg.trials,
        "block_length": cfg.block_length,
        "seed": cfg.seed,
        "psi": bounds.psi,
        "p_out_t_bound": bounds.p_out_t_bound,
        "p_out_s_bound": bounds.p_out_s_bound,
        "tau_min": bounds.tau_min,
        "tau_max": bounds.tau_max,
        "m_max": bounds.m_max,
        "feasible": bounds.feasible,
    }
    diagnostics = list(bounds.diagnostics)
    if result is not None:
        row.update(
            p_out_t_hat=result.p_out_t_hat,
            p_out_t_lo=result.ci_t[0],
            p_out_t_hi=result.ci_t[1],
            p_out_s_hat=result.p_out_s_hat,
            p_out_s_lo=result.ci_s[0],
            p_out_s_hi=result.ci_s[1],
            jain_index=result.jain_index,
            mean_jam1=result.mean_jam1,
            mean_jam2=result.mean_jam2,
        )
        diagnostics += bound_exceedances(result, bounds)
    row["diagnostics"] = ";".join(diagnostics)
    return row


def csv_text(rows, header: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([format_value(row.get(col)) for col in CSV_COLUMNS])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict]:
    """Read rows back as strings keyed by column name."""
    return list(csv.DictReader(io.StringIO(text)))


SVG_SERIES = ("p_out_t_hat", "p_out_t_bound", "p_out_s_hat", "p_out_s_bound", "jain_index")
_COLORS = ("#1f77b4", "#1f77b4", "#d62728", "#d62728", "#2ca02c")
_DASHED = {"p_out_t_bound", "p_out_s_bound"}

WIDTH, HEIGHT = 800, 600
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 170, 30, 60


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / count for i in range(count + 1)]


def svg_chart(x_name: str, rows: list[dict], series=SVG_SERIES) -> str:
    """Line chart of ``series`` against ``x_name``; y axis fixed to [0, 1]."""
    xs = [float(r[x_name]) for r in rows]
    x_lo, x_hi = min(xs), max(xs)
    span = (x_hi - x_lo) or 1.0
    plot_w = WIDTH - _LEFT - _RIGHT
    plot_h = HEIGHT - _TOP - _BOTTOM

    def px(x):
        return _LEFT + (x - x_lo) / span * plot_w if x_hi > x_lo else _LEFT + plot_w / 2

    def py(y):
        return _TOP + (1.0 - y) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{_LEFT}" y1="{_TOP + plot_h}" x2="{_LEFT + plot_w}" y2="{_TOP + plot_h}" stroke="black"/>',
        f'<line x1="{_LEFT}" y1="{_TOP}" x2="{_LEFT}" y2="{_TOP + plot_h}" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        x = px(t)
        out.append(f'<line x1="{x:.2f}" y1="{_TOP + plot_h}" x2="{x:.2f}" y2="{_TOP + plot_h + 5}" stroke="black"/>')
        out.append(
            f'<text x="{x:.2f}" y="{_TOP + plot_h + 20}" font-size="12" text-anchor="middle">{t:.4g}</text>'
        )
    for t in _ticks(0.0, 1.0):
        y = py(t)
        out.append(f'<line x1="{_LEFT - 5}" y1="{y:.2f}" x2="{_LEFT}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{_LEFT - 8}" y="{y + 4:.2f}" font-size="12" text-anchor="end">{t:.1f}</text>')
    out.append(
        f'<text x="{_LEFT + plot_w / 2:.2f}" y="{HEIGHT - 15}" font-size="14" text-anchor="middle">'
        f"{escape(x_name)}</text>"
    )

    for i, name in enumerate(series):
        pts = [(px(x), py(float(r[name]))) for x, r in zip(xs, rows) if r.get(name) not in (None, "")]
        if not pts:
            continue
        dash = ' stroke-dasharray="6,4"' if name in _DASHED else ""
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        out.append(f'<polyline fill="none" stroke="{_COLORS[i]}" stroke-width="2"{dash} points="{coords}"/>')
        ly = _TOP + 20 * i + 10
        lx = WIDTH - _RIGHT + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{_COLORS[i]}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}" font-size="12">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
