"""Two-machine Gantt charts with the storage occupancy curve, as text or SVG."""

from __future__ import annotations

import zlib
from fractions import Fraction
from xml.sax.saxutils import escape

from .fileio import encode_number
from .model import Instance, Schedule, buffer_profile, makespan


def job_label(job_id) -> str:
    return f"j{job_id}" if isinstance(job_id, int) else str(job_id)


def _fmt(value: Fraction) -> str:
    return str(encode_number(value))


def machine_rows(instance: Instance, schedule: Schedule) -> dict[int, list[tuple[Fraction, Fraction, object]]]:
    """Non-empty operations per machine as ``(start, end, job_id)`` in time order."""
    jobs = instance.by_id
    rows = {}
    for machine in (1, 2):
        ops = []
        for job_id in schedule.order_on(machine):
            dur = jobs[job_id].a if machine == 1 else jobs[job_id].b
            start = schedule[job_id][machine - 1]
            if dur > 0:
                ops.append((start, start + dur, job_id))
        rows[machine] = ops
    return rows


def render_ascii(instance: Instance, schedule: Schedule) -> str:
    rows = machine_rows(instance, schedule)
    lines = []
    for machine in (1, 2):
        cells = "".join(f"[{_fmt(s)},{_fmt(e)})({job_label(i)})" for s, e, i in rows[machine])
        lines.append(f"M{machine}: {cells}")
    profile = buffer_profile(instance, schedule)
    steps = " ".join(f"{_fmt(t)}:{_fmt(occ)}" for t, occ in profile.breakpoints)
    lines.append(f"buffer: {steps}")
    lines.append(f"peak {_fmt(profile.peak)} / capacity {_fmt(instance.omega)}; makespan {_fmt(makespan(instance, schedule))}")
    return "\n".join(lines) + "\n"


def _colour(job_id) -> str:
    h = zlib.crc32(str(job_id).encode()) % 360
    return f"hsl({h},60%,65%)"


def render_svg(instance: Instance, schedule: Schedule, width: int = 800) -> str:
    """SVG 1.1 document; identical inputs give byte-identical output."""
    rows = machine_rows(instance, schedule)
    profile = buffer_profile(instance, schedule)
    horizon = makespan(instance, schedule) or Fraction(1)
    left, right, row_h = 60, 20, 30
    plot_w = width - left - right
    curve_top, curve_h = 130, 120
    height = curve_top + curve_h + 40
    cap = max(instance.omega, profile.peak) or Fraction(1)

    def x(t) -> str:
        return f"{left + float(Fraction(t) / horizon) * plot_w:.3f}"

    def y(occ) -> str:
        return f"{curve_top + curve_h - float(Fraction(occ) / cap) * curve_h:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="11">',
    ]
    for machine, top in ((1, 20), (2, 60)):
        out.append(f'<text x="10" y="{top + 19}">M{machine}</text>')
        for s, e, job_id in rows[machine]:
            label = escape(job_label(job_id))
            out.append(
                f'<rect x="{x(s)}" y="{top}" width="{float(x(e)) - float(x(s)):.3f}" height="{row_h - 4}" '
                f'fill="{_colour(job_id)}" stroke="black" stroke-width="0.5"><title>{label} '
                f'[{_fmt(s)},{_fmt(e)})</title></rect>'
            )
            out.append(f'<text x="{x(s)}" y="{top + 17}" dx="2">{label}</text>')

    out.append(f'<text x="10" y="{curve_top + 10}">buffer</text>')
    points = [(profile.breakpoints[0][0], Fraction(0))] if profile.breakpoints else []
    for (t, occ), nxt in zip(profile.breakpoints, profile.breakpoints[1:] + ((None, None),)):
        points.append((t, occ))
        if nxt[0] is not None:
            points.append((nxt[0], occ))
    poly = " ".join(f"{x(t)},{y(occ)}" for t, occ in points)
    if poly:
        out.append(f'<polyline points="{poly}" fill="none" stroke="steelblue" stroke-width="1.5"/>')
    out.append(
        f'<line x1="{left}" y1="{y(instance.omega)}" x2="{width - right}" y2="{y(instance.omega)}" '
        f'stroke="red" stroke-dasharray="4,3"/>'
    )
    out.append(f'<text x="{width - right}" y="{float(y(instance.omega)) - 3:.3f}" text-anchor="end">'
               f'capacity {_fmt(instance.omega)}</text>')
    axis_y = curve_top + curve_h
    out.append(f'<line x1="{left}" y1="{axis_y}" x2="{width - right}" y2="{axis_y}" stroke="black"/>')
    out.append(f'<text x="{left}" y="{axis_y + 15}">0</text>')
    out.append(f'<text x="{width - right}" y="{axis_y + 15}" text-anchor="end">{_fmt(horizon)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
