"""Self-contained SVG line charts of theta cycles.

Output depends only on the report data, so identical reports give
byte-identical files.
"""
from __future__ import annotations

from xml.sax.saxutils import escape

from .cycle import CycleReport

WIDTH = 960
PANEL_HEIGHT = 320
MARGIN_LEFT = 70
MARGIN_RIGHT = 20
MARGIN_TOP = 34
MARGIN_BOTTOM = 46
STATUS_COLOURS = {"exact": "#2e9e44", "theorem-bound": "#f0931e", "engine-computed": "#d9342b"}


def _f(x: float) -> str:
    return f"{x:.2f}"


def _nice_ticks(lo: int, hi: int, count: int = 6) -> list[int]:
    span = max(hi - lo, 1)
    raw = span / count
    mag = 10 ** (len(str(int(raw))) - 1) if raw >= 1 else 1
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    start = (lo // step) * step
    return [t for t in range(start, hi + step, step) if lo <= t <= hi]


def _panel(report: CycleReport, top: float, dashed: bool, title: str) -> list[str]:
    recs = [r for r in report.records if r.weight_filt is not None]
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = PANEL_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    y0 = top + MARGIN_TOP
    i_hi = max(report.i_max, 1)
    w_hi = max([r.weight_filt for r in recs] + [1])

    def sx(i):
        return MARGIN_LEFT + plot_w * i / i_hi

    def sy(w):
        return y0 + plot_h * (1 - w / w_hi)

    out = [f'<g class="panel" data-p="{report.p}" data-m="{report.m}">']
    out.append(f'<text x="{_f(MARGIN_LEFT)}" y="{_f(top + 20)}" font-size="14">'
               f'{escape(title)}</text>')
    if report.m == 2 and report.theorem_mode:
        band = plot_w / (i_hi + 1)
        for r in report.records:
            colour = STATUS_COLOURS.get(r.status, "#999999")
            out.append(f'<rect x="{_f(sx(r.i) - band / 2)}" y="{_f(y0)}" width="{_f(band)}" '
                       f'height="{_f(plot_h)}" fill="{colour}" fill-opacity="0.12" '
                       f'class="status-{r.status}"/>')
    for i in report.exceptional_indices:
        if i <= report.i_max:
            out.append(f'<line class="exceptional" x1="{_f(sx(i))}" y1="{_f(y0)}" '
                       f'x2="{_f(sx(i))}" y2="{_f(y0 + plot_h)}" stroke="#2e9e44" '
                       f'stroke-width="1"/>')
    # axes
    out.append(f'<line x1="{_f(MARGIN_LEFT)}" y1="{_f(y0 + plot_h)}" x2="{_f(MARGIN_LEFT + plot_w)}" '
               f'y2="{_f(y0 + plot_h)}" stroke="black"/>')
    out.append(f'<line x1="{_f(MARGIN_LEFT)}" y1="{_f(y0)}" x2="{_f(MARGIN_LEFT)}" '
               f'y2="{_f(y0 + plot_h)}" stroke="black"/>')
    for t in _nice_ticks(0, i_hi):
        out.append(f'<text x="{_f(sx(t))}" y="{_f(y0 + plot_h + 16)}" font-size="10" '
                   f'text-anchor="middle">{t}</text>')
    for t in _nice_ticks(0, w_hi):
        out.append(f'<text x="{_f(MARGIN_LEFT - 6)}" y="{_f(sy(t) + 3)}" font-size="10" '
                   f'text-anchor="end">{t}</text>')
    out.append(f'<text x="{_f(MARGIN_LEFT + plot_w / 2)}" y="{_f(y0 + plot_h + 36)}" '
               f'font-size="12" text-anchor="middle">i</text>')
    label = f"ω_{report.p}^{report.m}(θⁱf)" if report.m > 1 else f"ω_{report.p}(θⁱf)"
    cy = y0 + plot_h / 2
    out.append(f'<text x="16" y="{_f(cy)}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 16 {_f(cy)})">{escape(label)}</text>')
    points = " ".join(f"{_f(sx(r.i))},{_f(sy(r.weight_filt))}" for r in recs)
    dash = ' stroke-dasharray="4 3"' if dashed else ""
    out.append(f'<polyline class="filtration" fill="none" stroke="#1f4e9c" stroke-width="1.2"'
               f'{dash} points="{points}"/>')
    for r in recs:
        cls = "low" if r.classification == "low" else "point"
        rad = 3.0 if cls == "low" else 1.6
        fill = "#c0392b" if cls == "low" else "#1f4e9c"
        out.append(f'<circle class="{cls}" cx="{_f(sx(r.i))}" cy="{_f(sy(r.weight_filt))}" '
                   f'r="{rad}" fill="{fill}" data-i="{r.i}" data-w="{r.weight_filt}"/>')
    out.append("</g>")
    return out


def cycle_svg(report: CycleReport, mod_p_report: CycleReport | None = None) -> str:
    """One panel for a mod-p report, two (mod p dashed above mod p^2) when both are given."""
    panels = []
    if mod_p_report is not None:
        panels.append((mod_p_report, True, f"{mod_p_report.form} modulo {mod_p_report.p}"))
    dashed = report.m == 1
    mod_label = f"{report.p}" if report.m == 1 else f"{report.p}^{report.m}"
    panels.append((report, dashed, f"{report.form} modulo {mod_label}"))
    height = PANEL_HEIGHT * len(panels)
    body = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
            f'viewBox="0 0 {WIDTH} {height}" font-family="sans-serif">',
            f'<rect width="{WIDTH}" height="{height}" fill="white"/>']
    for idx, (rep, dash, title) in enumerate(panels):
        body.extend(_panel(rep, idx * PANEL_HEIGHT, dash, title))
    body.append("</svg>")
    return "\n".join(body) + "\n"
