"""Plain-text SVG rendering of a coloured instance with an optional witness."""

from __future__ import annotations

from .coloring import Color, ColoredKP, Embedding

RED = "#d62728"
BLUE = "#1f77b4"


def render_svg(K: ColoredKP, witness: Embedding | None = None, size: int = 600, edges: str = "auto") -> str:
    """SVG 1.1 text. Red edges solid, blue dashed, witness edges thick.

    ``edges`` is ``all``, ``witness`` or ``none``; ``auto`` draws all edges
    up to 60 points and only the witness beyond that.
    """
    pts = K.points.points
    if edges == "auto":
        edges = "all" if K.n <= 60 else "witness"
    if edges not in ("all", "witness", "none"):
        raise ValueError("edges must be all, witness, none or auto")
    margin = 20
    xs = [p.x for p in pts] or [0]
    ys = [p.y for p in pts] or [0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    scale = (size - 2 * margin) / span

    def at(i: int) -> tuple[str, str]:
        p = pts[i]
        return f"{margin + (p.x - min(xs)) * scale:.2f}", f"{size - margin - (p.y - min(ys)) * scale:.2f}"

    def line(i: int, j: int, color: Color, width: int) -> str:
        (x1, y1), (x2, y2) = at(i), at(j)
        stroke = RED if color is Color.RED else BLUE
        dash = "" if color is Color.RED else ' stroke-dasharray="5 4"'
        return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="{width}"{dash}/>'

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if edges == "all":
        out.append('<g id="edges" opacity="0.5">')
        for i in range(K.n):
            for j in range(i + 1, K.n):
                out.append(line(i, j, K.color(i, j), 1))
        out.append("</g>")
    if witness is not None and edges != "none":
        out.append(f'<g id="witness" data-color="{witness.color.value}">')
        for a, b in witness.image_edges():
            out.append(line(a, b, K.color(a, b), 4))
        out.append("</g>")
    out.append('<g id="points">')
    for i in range(K.n):
        x, y = at(i)
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="black"/>')
        out.append(f'<text x="{x}" y="{y}" dx="6" dy="-6" font-size="11" font-family="monospace">{i}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
