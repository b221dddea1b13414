"""Schedule visualization as a self-contained SVG Gantt chart.

One horizontal lane per satellite-orbit (per satellite for MSJOPP), one
rect per assignment -- and only per assignment, so counting rects counts
scheduled work.  Frames, separators, and axis ticks are drawn with lines.
"""

from __future__ import annotations

from html import escape

from satsched.scenario import Scenario, ScenarioKind

_PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)

_LANE_H = 30
_LEFT = 110
_TOP = 24
_BOTTOM = 46
_PLOT_W = 860


def _lanes(scenario: Scenario) -> list:
    if scenario.kind is ScenarioKind.EDSSP:
        return [
            (sat.id, orbit)
            for sat in sorted(scenario.satellites, key=lambda s: s.id)
            for orbit in range(sat.orbit_count)
        ]
    return [(sat.id, None) for sat in sorted(scenario.satellites, key=lambda s: s.id)]


def _bars(scenario: Scenario, schedule) -> list:
    """(lane key, start, duration, label, task id) per assignment."""
    bars = []
    for a in schedule.assignments:
        if scenario.kind is ScenarioKind.EDSSP:
            task = scenario.task_by_id[a.task_id]
            bars.append(((a.satellite_id, a.orbit_index), a.start_s, task.duration_s,
                         a.task_id, a.task_id))
        else:
            label = a.task_id if a.subtask_index is None else f"{a.task_id}.{a.subtask_index}"
            bars.append(((a.satellite_id, None), a.start_s, a.observed_s, label, a.task_id))
    return bars


def gantt_svg(scenario: Scenario, schedule) -> str:
    lanes = _lanes(scenario)
    lane_row = {key: i for i, key in enumerate(lanes)}
    h0, h1 = scenario.horizon
    scale = _PLOT_W / max(1, h1 - h0)
    width = _LEFT + _PLOT_W + 20
    height = _TOP + len(lanes) * _LANE_H + _BOTTOM
    task_color = {t.id: _PALETTE[i % len(_PALETTE)] for i, t in enumerate(scenario.tasks)}

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
    ]

    for i, (sat_id, orbit) in enumerate(lanes):
        y = _TOP + i * _LANE_H
        name = sat_id if orbit is None else f"{sat_id} / orbit {orbit}"
        parts.append(f'<line x1="{_LEFT}" y1="{y}" x2="{_LEFT + _PLOT_W}" y2="{y}" '
                     f'stroke="#ccc" stroke-width="1"/>')
        parts.append(f'<text x="{_LEFT - 8}" y="{y + _LANE_H * 0.65}" '
                     f'text-anchor="end">{escape(name)}</text>')
    base = _TOP + len(lanes) * _LANE_H
    parts.append(f'<line x1="{_LEFT}" y1="{base}" x2="{_LEFT + _PLOT_W}" y2="{base}" '
                 f'stroke="#444" stroke-width="1"/>')

    n_ticks = 8
    for k in range(n_ticks + 1):
        t = h0 + (h1 - h0) * k / n_ticks
        x = _LEFT + (t - h0) * scale
        parts.append(f'<line x1="{x:.1f}" y1="{base}" x2="{x:.1f}" y2="{base + 6}" '
                     f'stroke="#444" stroke-width="1"/>')
        parts.append(f'<text x="{x:.1f}" y="{base + 20}" text-anchor="middle">{t:.0f}</text>')
    parts.append(f'<text x="{_LEFT + _PLOT_W / 2:.1f}" y="{base + 38}" '
                 f'text-anchor="middle">time (s)</text>')

    for lane_key, start, duration, label, task_id in _bars(scenario, schedule):
        row = lane_row[lane_key]
        x = _LEFT + (start - h0) * scale
        w = max(1.0, duration * scale)
        y = _TOP + row * _LANE_H + 5
        parts.append(f'<rect x="{x:.1f}" y="{y}" width="{w:.1f}" height="{_LANE_H - 10}" '
                     f'fill="{task_color.get(task_id, "#888")}" stroke="#333" stroke-width="0.5"/>')
        parts.append(f'<text x="{x + w / 2:.1f}" y="{y + (_LANE_H - 10) * 0.72:.1f}" '
                     f'text-anchor="middle" fill="#fff">{escape(label)}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
