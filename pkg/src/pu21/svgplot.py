r"""Deterministic SVG emitters for parameter-space scans and sphere projections.

The files are assembled from fixed templates with floats printed at 17
significant digits, so identical inputs give identical bytes.
"""

from __future__ import annotations

from .moduli import RegionTag

__all__ = ["fmt", "region_fill", "svg_region_scan", "svg_sphere_projection"]

#: Region fill colours: Z light, L (and the P curve) mid, E dark.
REGION_FILL = {
    RegionTag.Z_INTERIOR.value: "#f5e9cf",
    RegionTag.Z_BOUNDARY.value: "#f5e9cf",
    RegionTag.L_OUTSIDE_Z.value: "#cfa14e",
    RegionTag.P_CURVE.value: "#cfa14e",
    RegionTag.E_ELLIPTIC.value: "#6b4b16",
}

_CURVE_STROKE = {"Z": "#9f2d2d", "P": "#2d4d9f"}


def fmt(x: float) -> str:
    """Fixed float formatting: 17 significant digits, '.' decimal point."""
    return format(float(x), ".17g")


def region_fill(region: str) -> str:
    return REGION_FILL[region]


def svg_region_scan(rows, n1: int, n2: int, bounds, traces, size: int = 640) -> str:
    """Colour map of the region classification with boundary curves overlaid.

    ``rows`` are (alpha1, alpha2, D, G, region) in row-major order (alpha1
    slowest); ``traces`` maps curve names ('Z', 'P') to lists of polylines in
    (alpha1, alpha2) coordinates.  Equal-aspect axes in parameter coords.
    """
    a1min, a1max, a2min, a2max = bounds

    def to_xy(a1, a2):
        x = (a1 - a1min) / (a1max - a1min) * size
        y = size - (a2 - a2min) / (a2max - a2min) * size
        return x, y

    cell_w = size / n1
    cell_h = size / n2
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n'
    ]
    parts.append(f'<rect width="{size}" height="{size}" fill="#ffffff"/>\n')
    for a1, a2, _, _, region in rows:
        x, y = to_xy(a1, a2)
        parts.append(
            f'<rect x="{fmt(x - cell_w / 2)}" y="{fmt(y - cell_h / 2)}" '
            f'width="{fmt(cell_w)}" height="{fmt(cell_h)}" '
            f'fill="{region_fill(region)}"/>\n'
        )
    # axes
    x0, y0 = to_xy(0.0, 0.0)
    if a1min < 0 < a1max:
        parts.append(
            f'<line x1="{fmt(x0)}" y1="0" x2="{fmt(x0)}" y2="{size}" '
            'stroke="#555555" stroke-width="1"/>\n'
        )
    if a2min < 0 < a2max:
        parts.append(
            f'<line x1="0" y1="{fmt(y0)}" x2="{size}" y2="{fmt(y0)}" '
            'stroke="#555555" stroke-width="1"/>\n'
        )
    for name, polylines in traces.items():
        stroke = _CURVE_STROKE.get(name, "#000000")
        dash = ' stroke-dasharray="6 4"' if name == "Z" else ""
        for line in polylines:
            pts = " ".join(
                f"{fmt(to_xy(a1, a2)[0])},{fmt(to_xy(a1, a2)[1])}" for a1, a2 in line
            )
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
                f'stroke-width="1.5"{dash}/>\n'
            )
    parts.append("</svg>\n")
    return "".join(parts)


def svg_sphere_projection(discs, tangency_points=(), size: int = 640) -> str:
    """Projection discs of the isometric spheres, with labels.

    ``discs`` are records with center_re, center_im, radius, label;
    ``tangency_points`` are (complex, label) pairs marked with crosses.
    """
    pad = 0.4
    xs = [d["center_re"] for d in discs]
    ys = [d["center_im"] for d in discs]
    rs = [d["radius"] for d in discs]
    xmin = min(x - r for x, r in zip(xs, rs)) - pad
    xmax = max(x + r for x, r in zip(xs, rs)) + pad
    ymin = min(y - r for y, r in zip(ys, rs)) - pad
    ymax = max(y + r for y, r in zip(ys, rs)) + pad
    span = max(xmax - xmin, ymax - ymin)
    scale = size / span

    def to_xy(x, y):
        return (x - xmin) * scale, size - (y - ymin) * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fmt((xmax - xmin) * scale)}" height="{fmt((ymax - ymin) * scale)}" '
        f'viewBox="0 0 {fmt((xmax - xmin) * scale)} {fmt((ymax - ymin) * scale)}">\n'
    ]
    parts.append(
        f'<rect width="{fmt((xmax - xmin) * scale)}" '
        f'height="{fmt((ymax - ymin) * scale)}" fill="#ffffff"/>\n'
    )
    for d in discs:
        x, y = to_xy(d["center_re"], d["center_im"])
        fill = "#dce8f5" if d["label"].endswith("+") else "#f5dcdc"
        parts.append(
            f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="{fmt(d["radius"] * scale)}" '
            f'fill="{fill}" fill-opacity="0.55" stroke="#333333" stroke-width="1"/>\n'
        )
    for d in discs:
        x, y = to_xy(d["center_re"], d["center_im"])
        parts.append(
            f'<text x="{fmt(x)}" y="{fmt(y)}" font-size="12" font-family="monospace" '
            f'text-anchor="middle">{d["label"]}</text>\n'
        )
    for z, label in tangency_points:
        x, y = to_xy(z.real, z.imag)
        c = 5.0
        parts.append(
            f'<path d="M {fmt(x - c)} {fmt(y)} L {fmt(x + c)} {fmt(y)} '
            f'M {fmt(x)} {fmt(y - c)} L {fmt(x)} {fmt(y + c)}" '
            'stroke="#9f2d2d" stroke-width="1.5"/>\n'
        )
        parts.append(
            f'<text x="{fmt(x + 6)}" y="{fmt(y - 6)}" font-size="10" '
            f'font-family="monospace" fill="#9f2d2d">{label}</text>\n'
        )
    parts.append("</svg>\n")
    return "".join(parts)
