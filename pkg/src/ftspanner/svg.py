"""Deterministic SVG drawings of instances and spanners."""

from xml.sax.saxutils import escape

SIZE = 800
MARGIN = 40


def _fmt(x):
    return f"{x:.3f}"


def render_svg(instance, edges=(), removed=(), title=None):
    """SVG text showing the region, the points (radius grows with weight) and the edges."""
    pts = [p.coords[:2] for p in instance.points]
    xy = list(pts)
    if instance.outer:
        xy += list(instance.outer)
    if not xy:
        xy = [(0.0, 0.0), (1.0, 1.0)]
    x0 = min(x for x, _ in xy)
    y0 = min(y for _, y in xy)
    span = max(max(x for x, _ in xy) - x0, max(y for _, y in xy) - y0) or 1.0
    scale = (SIZE - 2 * MARGIN) / span

    def px(p):
        return MARGIN + (p[0] - x0) * scale, SIZE - MARGIN - (p[1] - y0) * scale

    def path(ring):
        cmds = []
        for i, p in enumerate(ring):
            x, y = px(p)
            cmds.append(f"{'M' if i == 0 else 'L'}{_fmt(x)} {_fmt(y)}")
        return " ".join(cmds) + " Z"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>')
    if instance.outer:
        out.append(f'<path class="outer" d="{path(instance.outer)}" fill="#eef3fb" stroke="#333" stroke-width="1.5"/>')
        for h in instance.holes:
            out.append(f'<path class="hole" d="{path(h)}" fill="#9a9a9a" stroke="#333" stroke-width="1.5"/>')
    removed = set(removed)
    out.append('<g class="edges" stroke="#c0392b" stroke-width="1" stroke-opacity="0.7">')
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u in removed or v in removed:
            continue
        (a, b), (c, d) = px(pts[u]), px(pts[v])
        out.append(f'<line x1="{_fmt(a)}" y1="{_fmt(b)}" x2="{_fmt(c)}" y2="{_fmt(d)}"/>')
    out.append("</g>")
    wmax = max((p.weight for p in instance.points), default=0.0) or 1.0
    out.append('<g class="points" fill="#1f4e99">')
    for p in instance.points:
        x, y = px(p.coords[:2])
        r = 2.5 + 6.0 * p.weight / wmax
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}"/>')
    out.append("</g>")
    out.append('<g class="removed" stroke="black" stroke-width="2">')
    for v in sorted(removed):
        x, y = px(pts[v])
        s = 7.0
        out.append(f'<line x1="{_fmt(x - s)}" y1="{_fmt(y - s)}" x2="{_fmt(x + s)}" y2="{_fmt(y + s)}"/>')
        out.append(f'<line x1="{_fmt(x - s)}" y1="{_fmt(y + s)}" x2="{_fmt(x + s)}" y2="{_fmt(y - s)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
