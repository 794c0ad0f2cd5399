"""Deterministic SVG drawings of path nests.

Stars, conjugate stars and watermelons are drawn on the lattice with
dashed vertical lines x_1, x_2, ...; random-turns histories are drawn in
the (time, site) plane.  Output depends only on the scene: no
timestamps, floats always printed with two decimals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .errors import InconsistentNest, PaletteExhausted, ValidationError
from .paths import PathNest

__all__ = ["SceneSpec", "DEFAULT_PALETTE", "render_svg", "scene_bounds", "write_svgs"]

DEFAULT_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#e377c2",
    "#17becf",
)

MARGIN = 2


def _f(v):
    return f"{v:.2f}"


@dataclass(frozen=True)
class SceneSpec:
    nest: PathNest
    grid: tuple = None
    cell_px: int = 24
    palette: tuple = DEFAULT_PALETTE
    palette_repeats: int = 4
    labels: bool = True
    extra: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(
            {
                "nest": self.nest.to_dict(),
                "grid": list(self.grid) if self.grid else None,
                "cell_px": self.cell_px,
                "palette": list(self.palette),
                "palette_repeats": self.palette_repeats,
                "labels": self.labels,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        return cls(
            nest=PathNest.from_dict(obj["nest"]),
            grid=tuple(obj["grid"]) if obj.get("grid") else None,
            cell_px=obj.get("cell_px", 24),
            palette=tuple(obj.get("palette", DEFAULT_PALETTE)),
            palette_repeats=obj.get("palette_repeats", 4),
            labels=obj.get("labels", True),
        )


def scene_bounds(nest):
    """(x_min, x_max, y_min, y_max) in lattice units.

    The box depends only on the family parameters, so every nest of one
    family gets the same canvas.
    """
    N = len(nest.paths)
    if nest.kind == "random_turns":
        return 0, max(len(nest.trajectory) - 1, 1), 0, max(nest.ring, 1)
    if N == 0:
        return 1, 2, 0, 1
    if nest.kind == "watermelon":
        return 1, 2 * N, 0, nest.Mcal + N - 1
    if nest.kind == "conj_star":
        return 1, N, 0, nest.Mcal + N - 1
    top = (max(nest.shape) if nest.shape else 0) + N - 1
    return 1, N + 1, 0, max(top, 1)


def _walker_segments(nest):
    # per walker, runs of (t, site) points; a hop across the seam starts a new run
    T = len(nest.trajectory)
    out = []
    for w in range(len(nest.trajectory[0]) if T else 0):
        runs = [[(0, nest.trajectory[0][w])]]
        for t in range(1, T):
            prev = nest.trajectory[t - 1][w]
            cur = nest.trajectory[t][w]
            if abs(cur - prev) > 1:
                runs.append([(t, cur)])
            else:
                runs[-1].append((t, cur))
        out.append(runs)
    return out


def render_svg(scene):
    """SVG 1.1 text for the scene."""
    nest = scene.nest
    if scene.cell_px < 4:
        raise ValidationError("cell_px must be at least 4")
    if nest.kind not in ("star", "conj_star", "watermelon", "random_turns"):
        raise InconsistentNest(f"unknown nest kind {nest.kind!r}")
    nest.validate()
    count = len(nest.trajectory[0]) if nest.kind == "random_turns" and nest.trajectory else len(nest.paths)
    if count > len(scene.palette) * scene.palette_repeats:
        raise PaletteExhausted(f"{count} paths but {len(scene.palette)} x {scene.palette_repeats} colours")

    x0, x1, y0, y1 = scene_bounds(nest)
    if scene.grid:
        x1 = x0 + scene.grid[0]
        y1 = y0 + scene.grid[1]
    c = scene.cell_px
    width = (x1 - x0 + 2 * MARGIN) * c
    height = (y1 - y0 + 2 * MARGIN) * c

    def px(x):
        return (x - x0 + MARGIN) * c

    def py(y):
        return (y1 - y + MARGIN) * c

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="{_f(0)}" y="{_f(0)}" width="{width}" height="{height}" fill="white"/>',
        '<g stroke="#bbbbbb" stroke-width="1" stroke-dasharray="3,3">',
    ]
    for x in range(x0, x1 + 1):
        out.append(f'<line x1="{_f(px(x))}" y1="{_f(py(y0))}" x2="{_f(px(x))}" y2="{_f(py(y1))}"/>')
    for y in range(y0, y1 + 1):
        out.append(f'<line x1="{_f(px(x0))}" y1="{_f(py(y))}" x2="{_f(px(x1))}" y2="{_f(py(y))}"/>')
    out.append("</g>")

    if scene.labels:
        out.append('<g font-family="sans-serif" font-size="10" fill="#333333" text-anchor="middle">')
        if nest.kind == "random_turns":
            for x in range(x0, x1 + 1):
                out.append(f'<text x="{_f(px(x))}" y="{_f(py(y0) + 0.8 * c)}">{x}</text>')
            for y in range(y0, y1 + 1):
                out.append(f'<text x="{_f(px(x0) - 0.6 * c)}" y="{_f(py(y) + 3)}">{y}</text>')
            out.append(f'<text x="{_f(width / 2)}" y="{_f(height - 0.3 * c)}">t</text>')
        else:
            for x in range(x0, x1 + 1):
                out.append(f'<text x="{_f(px(x))}" y="{_f(py(y0) + 0.8 * c)}">x{x}</text>')
        out.append("</g>")

    if nest.kind == "watermelon" and nest.paths:
        N = len(nest.paths)
        mid = px(N + 0.5)
        out.append(
            f'<line x1="{_f(mid)}" y1="{_f(py(y0))}" x2="{_f(mid)}" y2="{_f(py(y1))}" '
            'stroke="#555555" stroke-width="1" stroke-dasharray="6,2"/>'
        )
        for mu in nest.gluing:
            out.append(
                f'<line x1="{_f(mid - 4)}" y1="{_f(py(mu))}" x2="{_f(mid + 4)}" y2="{_f(py(mu))}" '
                'stroke="#555555" stroke-width="1"/>'
            )

    colours = [scene.palette[i % len(scene.palette)] for i in range(count)]
    out.append('<g fill="none" stroke-width="2" stroke-linecap="round" stroke-linejoin="round">')
    if nest.kind == "random_turns":
        for w, runs in enumerate(_walker_segments(nest)):
            for run in runs:
                pts = " ".join(f"{_f(px(t))},{_f(py(s))}" for t, s in run)
                out.append(f'<polyline class="walker{w + 1}" stroke="{colours[w]}" points="{pts}"/>')
    else:
        for i in range(len(nest.paths)):
            pts = " ".join(f"{_f(px(x))},{_f(py(y))}" for x, y in nest.vertices(i))
            out.append(f'<polyline class="path{i + 1}" stroke="{colours[i]}" points="{pts}"/>')
    out.append("</g>")

    if scene.labels and nest.kind != "random_turns":
        out.append('<g font-family="sans-serif" font-size="10" fill="#000000">')
        start_tag = "B" if nest.kind == "conj_star" else "C"
        for i in range(len(nest.paths)):
            pts = nest.vertices(i)
            (sx, sy), (ex, ey) = pts[0], pts[-1]
            out.append(f'<circle cx="{_f(px(sx))}" cy="{_f(py(sy))}" r="3" fill="{colours[i]}"/>')
            out.append(f'<text x="{_f(px(sx) - 12)}" y="{_f(py(sy) + 4)}">{escape(start_tag)}{i + 1}</text>')
            out.append(f'<circle cx="{_f(px(ex))}" cy="{_f(py(ey))}" r="3" fill="{colours[i]}"/>')
            if nest.kind == "watermelon":
                out.append(f'<text x="{_f(px(ex) + 5)}" y="{_f(py(ey) - 4)}">B{i + 1}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svgs(nests, directory, prefix, **scene_kw):
    """Render each nest to ``<prefix>_<index>.svg`` (index from 1); returns the paths."""
    from pathlib import Path

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for idx, nest in enumerate(nests, start=1):
        target = directory / f"{prefix}_{idx}.svg"
        target.write_text(render_svg(SceneSpec(nest, **scene_kw)), encoding="utf-8")
        written.append(target)
    return written
