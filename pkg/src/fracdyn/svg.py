"""Minimal SVG rendering of phase portraits.

One polyline per trajectory, one marker element per singular point
(cusps draw as diamond paths, double points as circles, multiple points
as squares).  The viewBox is the data bounding box plus a 5% margin; the
y axis is flipped so plots read in the usual mathematical orientation.
"""

from __future__ import annotations

import numpy as np

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def render_svg(trajectories, singular_points=(), size: int = 600) -> str:
    """trajectories: iterable of (n, 2) arrays; singular_points: iterable
    of objects with .kind and .location."""
    trajectories = [np.asarray(t, dtype=float) for t in trajectories]
    if not trajectories:
        raise ValueError("need at least one trajectory")
    allpts = np.vstack(trajectories)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = np.maximum(hi - lo, 1e-12)
    lo = lo - 0.05 * span
    hi = hi + 0.05 * span
    span = hi - lo
    scale = size / float(span.max())

    def xy(p):
        return (p[0] - lo[0]) * scale, (hi[1] - p[1]) * scale

    w = span[0] * scale
    h = span[1] * scale
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(w)} {_fmt(h)}" '
        f'width="{_fmt(w)}" height="{_fmt(h)}">'
    ]
    for i, traj in enumerate(trajectories):
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (xy(p) for p in traj))
        color = _PALETTE[i % len(_PALETTE)]
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>'
        )
    mr = 0.012 * size
    for p in singular_points:
        cx, cy = xy(p.location)
        if p.kind == "cusp":
            d = (
                f"M {_fmt(cx)} {_fmt(cy - mr)} L {_fmt(cx + mr)} {_fmt(cy)} "
                f"L {_fmt(cx)} {_fmt(cy + mr)} L {_fmt(cx - mr)} {_fmt(cy)} Z"
            )
            out.append(
                f'<path class="marker cusp" d="{d}" fill="#000" stroke="none"/>'
            )
        elif p.kind == "double":
            out.append(
                f'<circle class="marker double" cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                f'r="{_fmt(mr * 0.8)}" fill="none" stroke="#000" stroke-width="1.5"/>'
            )
        else:
            out.append(
                f'<rect class="marker multiple" x="{_fmt(cx - mr * 0.8)}" '
                f'y="{_fmt(cy - mr * 0.8)}" width="{_fmt(1.6 * mr)}" '
                f'height="{_fmt(1.6 * mr)}" fill="none" stroke="#000" stroke-width="1.5"/>'
            )
    out.append("</svg>")
    return "\n".join(out)
