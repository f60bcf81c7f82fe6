"""Stick-structure SVG rendering of a laid-out molecular graph.

Conventions: carbon atoms are unlabeled, heteroatoms get their element
symbol, charges render as superscripts. Single and aromatic bonds are one
line (aromatic adds an inner dashed parallel), double and triple bonds are
drawn as 2 and 3 parallel lines. Output text is deterministic for
identical input.
"""

from __future__ import annotations

from dataclasses import dataclass

from linkplot.smiles.parse import (
    AROMATIC,
    DOUBLE,
    SINGLE,
    TRIPLE,
    MolGraph,
)
from linkplot.smiles.layout import Layout2D


class LayoutMismatch(Exception):
    pass


@dataclass(frozen=True)
class DepictStyle:
    scale: float = 40.0          # pixels per bond-length unit
    line_width: float = 2.0
    font_size: float = 14.0
    bond_gap: float = 0.15       # parallel-line offset in bond units
    color: str = "#1a1a1a"
    background: str = "none"
    lone_atom_radius: float = 3.0  # placeholder dot for bare carbons


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _line(x1, y1, x2, y2, style: DepictStyle, dashed=False) -> str:
    dash = ' stroke-dasharray="4 3"' if dashed else ""
    return (
        f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
        f'y2="{_fmt(y2)}" stroke="{style.color}" '
        f'stroke-width="{_fmt(style.line_width)}" '
        f'stroke-linecap="round"{dash}/>'
    )


def _charge_text(charge: int) -> str:
    if charge == 0:
        return ""
    sign = "+" if charge > 0 else "-"
    mag = abs(charge)
    return f"{mag}{sign}" if mag > 1 else sign


def depict_svg(g: MolGraph, layout: Layout2D, style: DepictStyle | None = None) -> str:
    """Render the molecule as a standalone SVG 1.1 document."""
    style = style or DepictStyle()
    n = len(g.atoms)
    if len(layout) != n:
        raise LayoutMismatch(
            f"layout covers {len(layout)} atoms, graph has {n}"
        )

    # pixel coordinates, y flipped so +y in layout points up on screen
    px = [
        (x * style.scale, -y * style.scale) for x, y in layout.coords
    ]
    xs = [p[0] for p in px] or [0.0]
    ys = [p[1] for p in px] or [0.0]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span = max(max_x - min_x, max_y - min_y, style.scale)
    margin = 0.10 * span
    vb = (
        min_x - margin,
        min_y - margin,
        (max_x - min_x) + 2 * margin,
        (max_y - min_y) + 2 * margin,
    )

    centroid = (sum(xs) / len(xs), sum(ys) / len(ys))
    parts: list[str] = []
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(vb[0])} {_fmt(vb[1])} {_fmt(vb[2])} {_fmt(vb[3])}">'
    )
    if style.background != "none":
        parts.append(
            f'<rect x="{_fmt(vb[0])}" y="{_fmt(vb[1])}" '
            f'width="{_fmt(vb[2])}" height="{_fmt(vb[3])}" '
            f'fill="{style.background}"/>'
        )

    gap = style.bond_gap * style.scale
    for bond in g.bonds:
        (x1, y1), (x2, y2) = px[bond.a], px[bond.b]
        dx, dy = x2 - x1, y2 - y1
        length = (dx * dx + dy * dy) ** 0.5 or 1.0
        # unit normal for parallel offsets
        nx_, ny_ = -dy / length, dx / length
        if bond.order == SINGLE:
            parts.append(_line(x1, y1, x2, y2, style))
        elif bond.order == AROMATIC:
            parts.append(_line(x1, y1, x2, y2, style))
            # inner dashed parallel, offset toward the molecule centroid
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            side = (centroid[0] - mx) * nx_ + (centroid[1] - my) * ny_
            s = 1.0 if side >= 0 else -1.0
            ox, oy = s * nx_ * gap, s * ny_ * gap
            shrink = 0.15
            sx1 = x1 + shrink * dx + ox
            sy1 = y1 + shrink * dy + oy
            sx2 = x2 - shrink * dx + ox
            sy2 = y2 - shrink * dy + oy
            parts.append(_line(sx1, sy1, sx2, sy2, style, dashed=True))
        elif bond.order == DOUBLE:
            for s in (0.5, -0.5):
                ox, oy = s * nx_ * gap, s * ny_ * gap
                parts.append(_line(x1 + ox, y1 + oy, x2 + ox, y2 + oy, style))
        elif bond.order == TRIPLE:
            for s in (1.0, 0.0, -1.0):
                ox, oy = s * nx_ * gap, s * ny_ * gap
                parts.append(_line(x1 + ox, y1 + oy, x2 + ox, y2 + oy, style))

    bonded = set()
    for bond in g.bonds:
        bonded.add(bond.a)
        bonded.add(bond.b)

    for atom in g.atoms:
        x, y = px[atom.index]
        if atom.element == "C" and atom.formal_charge == 0:
            if atom.index not in bonded:
                parts.append(
                    f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" '
                    f'r="{_fmt(style.lone_atom_radius)}" '
                    f'fill="{style.color}"/>'
                )
            else:
                # stick convention: carbons are implied by line joints, but
                # their coordinates must still appear in the document
                parts.append(
                    f'<!-- atom {atom.index} C {_fmt(x)},{_fmt(y)} -->'
                )
            continue
        charge = _charge_text(atom.formal_charge)
        sup = (
            f'<tspan dy="-5" font-size="{_fmt(style.font_size * 0.65)}">'
            f"{charge}</tspan>"
            if charge
            else ""
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" fill="{style.color}" '
            f'font-family="Helvetica, Arial, sans-serif" '
            f'font-size="{_fmt(style.font_size)}" '
            f'text-anchor="middle" dominant-baseline="central">'
            f"{atom.element}{sup}</text>"
        )

    parts.append("</svg>")
    return "\n".join(parts)
