"""SVG alcove pictures of Shi parts and cone type parts for affine rank-3 groups.

The group acts on the dual of the root space.  With delta the positive null
root, the slice {f : f(delta) = 1} is a Euclidean plane tiled by alcoves
w(C), where C has vertices v_i with v_i(alpha_j) = [i = j] / delta_i.  Since
(w v_i)(alpha_j) = (w^-1 alpha_j)_i / delta_i, vertex coordinates are read
straight from the stored inverse matrices.
"""

from __future__ import annotations

import colorsys
import math

from .core.group import CoxeterGroup
from .oracle import Ball

__all__ = ["UnsupportedSystem", "is_affine_rank3", "null_root", "alcove_vertices", "palette", "render_svg"]


class UnsupportedSystem(ValueError):
    pass


def _det3(M):
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def is_affine_rank3(W: CoxeterGroup) -> bool:
    """Rank 3, degenerate form, every rank-2 parabolic finite."""
    if W.rank != 3:
        return False
    B = W.B
    if any((B[i][i] * B[j][j] - B[i][j] * B[j][i]).sign() <= 0 for i in range(3) for j in range(i + 1, 3)):
        return False
    return _det3(B).sign() == 0


def null_root(W: CoxeterGroup) -> list[float]:
    """Positive generator of the radical of the form, as floats."""
    B = W.B
    # any nonzero row of the adjugate spans the kernel of a rank-2 matrix
    rows = [B[0], B[1], B[2]]
    for a, b in ((0, 1), (0, 2), (1, 2)):
        u, v = rows[a], rows[b]
        cross = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
        if any(x.sign() != 0 for x in cross):
            delta = [float(x) for x in cross]
            if delta[0] < 0:
                delta = [-x for x in delta]
            return delta
    raise UnsupportedSystem("form has no one-dimensional radical")


class _Plane:
    """Euclidean coordinates on the affine slice, using simple roots 0 and 1."""

    def __init__(self, W: CoxeterGroup):
        self.delta = null_root(W)
        g00, g01, g11 = float(W.B[0][0]), float(W.B[0][1]), float(W.B[1][1])
        det = g00 * g11 - g01 * g01
        self.ginv = (g11 / det, -g01 / det, g00 / det)
        # Cholesky factor of the Gram matrix, transposed
        l00 = math.sqrt(g00)
        l10 = g01 / l00
        l11 = math.sqrt(g11 - l10 * l10)
        self.lt = (l00, l10, l11)

    def point(self, x0: float, x1: float) -> tuple[float, float]:
        a, b, c = self.ginv
        y0, y1 = a * x0 + b * x1, b * x0 + c * x1
        l00, l10, l11 = self.lt
        return (l00 * y0 + l10 * y1, l11 * y1)


def alcove_vertices(W: CoxeterGroup, ball: Ball, plane: _Plane | None = None):
    """Planar vertices of every ball alcove; entry i of each triple is w v_i."""
    plane = plane or _Plane(W)
    d = plane.delta
    out = []
    for g in ball.elements:
        inv = [[float(x) for x in row] for row in g.inv]
        out.append(tuple(plane.point(inv[i][0] / d[i], inv[i][1] / d[i]) for i in range(3)))
    return out


def palette(n: int) -> list[str]:
    """n distinct hex colours, spread by golden-ratio hue steps."""
    out: list[str] = []
    seen = set()
    k = 0
    while len(out) < n:
        h = (k * 0.618033988749895) % 1.0
        light = (0.78, 0.62, 0.70, 0.86)[(k // 7) % 4]
        sat = (0.55, 0.75, 0.40)[(k // 3) % 3]
        r, g, b = colorsys.hls_to_rgb(h, light, sat)
        col = "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))
        k += 1
        if col in seen:
            continue
        seen.add(col)
        out.append(col)
    return out


def render_svg(W: CoxeterGroup, ball: Ball, states: list[int], n_states: int, title: str = "", size: int = 800):
    """SVG of ball(R) with alcove i filled by the colour of ``states[i]``.

    Part boundaries (edges between alcoves in different parts) are stroked
    heavily and the identity alcove is outlined.  Returns the SVG text and the
    number of distinct parts drawn.
    """
    if not is_affine_rank3(W):
        raise UnsupportedSystem("rendering needs an affine system of rank 3; use DOT export instead")
    verts = alcove_vertices(W, ball)
    xs = [p[0] for tri in verts for p in tri]
    ys = [p[1] for tri in verts for p in tri]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    span = max(xmax - xmin, ymax - ymin) or 1.0
    pad = 10
    scale = (size - 2 * pad) / span

    def xy(p):
        return pad + (p[0] - xmin) * scale, size - pad - (p[1] - ymin) * scale

    def fmt(p):
        x, y = xy(p)
        return f"{x:.2f},{y:.2f}"

    colours = palette(n_states)
    used = sorted({states[i] for i in range(len(ball))})
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>{title}</title>",
        f'<desc>alcoves={len(ball)} parts={len(used)}</desc>',
        '<g stroke="#999999" stroke-width="0.4">',
    ]
    for i, tri in enumerate(verts):
        pts = " ".join(fmt(p) for p in tri)
        lines.append(f'<polygon points="{pts}" fill="{colours[states[i]]}" data-part="{states[i]}"/>')
    lines.append("</g>")
    lines.append('<g stroke="#000000" stroke-width="1.6" stroke-linecap="round">')
    for i, row in enumerate(ball.nbr):
        for s, j in enumerate(row):
            if j > i and states[j] != states[i]:
                # the shared face omits the vertex opposite generator s
                (x1, y1), (x2, y2) = (xy(verts[i][k]) for k in range(3) if k != s)
                lines.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}"/>')
    lines.append("</g>")
    lines.append(f'<polygon points="{" ".join(fmt(p) for p in verts[0])}" fill="none" stroke="#d00000" stroke-width="2.5"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n", len(used)
