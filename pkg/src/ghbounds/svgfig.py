"""Static SVG figures: colored point families rendered as grouped dots.

Each family member becomes one `<g class="piece LABEL">` holding its sample
dots, so piece counts are recoverable from the markup; fills come from the
family label (red / blue / green). The y-axis is flipped so figures read in
the usual mathematical orientation.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Sequence

import numpy as np

from .covers import SubsetFamily

_FILL = {"red": "#d62728", "blue": "#1f77b4", "green": "#2ca02c"}
_MARGIN = 1.0


def render_families_svg(points: np.ndarray, families: Sequence[SubsetFamily],
                        path: str | Path, dot_radius: float = 0.12,
                        title: str | None = None) -> Path:
    """Write an SVG of the point set colored by family; returns the path."""
    pts = np.asarray(points, dtype=np.float64)
    xmin, ymin = pts.min(axis=0) - _MARGIN
    xmax, ymax = pts.max(axis=0) + _MARGIN

    def sx(x: float) -> float:
        return x - xmin

    def sy(y: float) -> float:
        return ymax - y

    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": f"0 0 {xmax - xmin:g} {ymax - ymin:g}",
        "width": "640",
    })
    if title is not None:
        ET.SubElement(svg, "title").text = title
    ET.SubElement(svg, "rect", {
        "x": "0", "y": "0",
        "width": f"{xmax - xmin:g}", "height": f"{ymax - ymin:g}",
        "fill": "white",
    })
    for fam in families:
        fill = _FILL.get(fam.label, "#777777")
        layer = ET.SubElement(svg, "g", {"class": f"family {fam.label}", "fill": fill})
        for member in fam.members:
            piece = ET.SubElement(layer, "g", {"class": f"piece {fam.label}"})
            for i in member.indices:
                ET.SubElement(piece, "circle", {
                    "cx": f"{sx(pts[i, 0]):g}",
                    "cy": f"{sy(pts[i, 1]):g}",
                    "r": f"{dot_radius:g}",
                })
    out = Path(path)
    ET.ElementTree(svg).write(out, encoding="unicode", xml_declaration=True)
    return out


def count_pieces(path: str | Path) -> dict[str, int]:
    """Pieces per family label in a written figure (markup round-trip check)."""
    root = ET.parse(path).getroot()
    counts: dict[str, int] = {}
    for g in root.iter("{http://www.w3.org/2000/svg}g"):
        classes = g.get("class", "").split()
        if classes and classes[0] == "piece":
            label = classes[1] if len(classes) > 1 else "?"
            counts[label] = counts.get(label, 0) + 1
    return counts
