"""Deterministic drawings of triangulations as DOT or SVG text."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .core.triangulation import Edge, Triangulation, edge_key, require_valid


def tutte_layout(T: Triangulation) -> np.ndarray:
    """Barycentric coordinates with the outerface pinned to a triangle.

    Every inner vertex sits at the average of its neighbours.
    """
    require_valid(T)
    n = T.n
    pos = np.zeros((n, 2))
    outer = list(T.outerface)
    for i, v in enumerate(outer):
        a = math.pi / 2 + 2 * math.pi * i / 3
        pos[v] = (math.cos(a), math.sin(a))
    inner = [v for v in range(n) if v not in outer]
    if inner:
        idx = {v: i for i, v in enumerate(inner)}
        A = np.zeros((len(inner), len(inner)))
        b = np.zeros((len(inner), 2))
        for v in inner:
            i = idx[v]
            A[i, i] = T.degree(v)
            for w in T.rotation[v]:
                if w in idx:
                    A[i, idx[w]] -= 1
                else:
                    b[i] += pos[w]
        pos[inner] = np.linalg.solve(A, b)
    return pos


def _highlight(sets: Sequence[Iterable[Sequence[int]]] | None) -> dict[Edge, int]:
    out = {}
    for k, S in enumerate(sets or ()):
        for u, v in S:
            out.setdefault(edge_key(u, v), k)
    return out


_COLOURS = ("#c0392b", "#2471a3", "#1e8449", "#7d3c98")


def to_dot(T: Triangulation, highlight: Sequence[Iterable[Sequence[int]]] | None = None) -> str:
    pos = tutte_layout(T)
    hl = _highlight(highlight)
    lines = ["graph T {", "  node [shape=circle, fixedsize=true, width=0.3];"]
    for v in range(T.n):
        x, y = pos[v] * 4
        lines.append(f'  {v} [pos="{x:.4f},{y:.4f}!"];')
    for u, v in T.edges():
        k = hl.get((u, v))
        attr = "" if k is None else f' [style=dashed, color="{_COLOURS[k % len(_COLOURS)]}"]'
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(T: Triangulation, highlight: Sequence[Iterable[Sequence[int]]] | None = None,
           size: int = 480) -> str:
    pos = tutte_layout(T)
    hl = _highlight(highlight)
    pad = 24
    lo, hi = pos.min(axis=0), pos.max(axis=0)
    scale = (size - 2 * pad) / max(float((hi - lo).max()), 1e-9)

    def xy(v):
        x, y = (pos[v] - lo) * scale + pad
        return x, size - y

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    for u, v in T.edges():
        (x1, y1), (x2, y2) = xy(u), xy(v)
        k = hl.get((u, v))
        if k is None:
            style = 'stroke="#444" stroke-width="1"'
        else:
            style = f'stroke="{_COLOURS[k % len(_COLOURS)]}" stroke-width="2" stroke-dasharray="6,4"'
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" {style}/>')
    for v in range(T.n):
        x, y = xy(v)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="7" fill="white" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{y + 3:.2f}" font-size="8" text-anchor="middle">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_figure(T: Triangulation, highlight=None) -> tuple[str, str]:
    """DOT and SVG text for ``T`` with the given edge sets dashed."""
    return to_dot(T, highlight), to_svg(T, highlight)
