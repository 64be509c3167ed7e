"""SVG drawings of Coxeter-plane diagrams and soliton polytopes."""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .functor import SolitonGraph, weight_label
from .roots import CoxeterDiagram, RootA

DEFAULT_STROKES = {1: "#1f77b4", 2: "#d62728", 3: "#2ca02c", 4: "#9467bd",
                   5: "#ff7f0e", 6: "#8c564b"}


@dataclass
class RenderSpec:
    size: int = 480  # canvas width = height, pixels
    scale: float = 80.0  # pixels per unit length (mass-1 radius)
    point_radius: float = 4.0
    labels: bool = True
    class_strokes: dict = field(default_factory=lambda: dict(DEFAULT_STROKES))

    def __post_init__(self):
        if self.size <= 0 or self.scale <= 0 or self.point_radius <= 0:
            raise ValueError("render dimensions must be positive")

    def stroke(self, k: int) -> str:
        return self.class_strokes.get(k, "#444444")


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _root(spec: RenderSpec, title: str) -> ET.Element:
    half = spec.size / 2
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": f"{spec.size}",
        "height": f"{spec.size}",
        "viewBox": f"{_num(-half)} {_num(-half)} {spec.size} {spec.size}",
    })
    ET.SubElement(svg, "title").text = title
    return svg


def _xy(spec: RenderSpec, z: complex) -> tuple[str, str]:
    # svg y axis points down
    return _num(spec.scale * z.real), _num(-spec.scale * z.imag)


def _label(z: object) -> str:
    return z.label if isinstance(z, RootA) else weight_label(z)


def _serialize(svg: ET.Element) -> str:
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"


def render_coxeter(diagram: CoxeterDiagram, spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec()
    svg = _root(spec, f"Coxeter plane of A_{diagram.n}, spin order {diagram.spin_order}")

    g_wheels = ET.SubElement(svg, "g", {"class": "wheels", "fill": "none", "stroke": "#999999"})
    for w in diagram.wheels:
        ET.SubElement(g_wheels, "circle", {"class": "wheel", "cx": "0", "cy": "0",
                                           "r": _num(spec.scale * w.radius)})

    g_rays = ET.SubElement(svg, "g", {"class": "rays", "stroke": "#cccccc"})
    for ray in diagram.rays:
        reach = max(abs(diagram.points[i].position) for i in ray.members)
        end = complex(reach * math.cos(ray.angle), reach * math.sin(ray.angle))
        x, y = _xy(spec, end)
        ET.SubElement(g_rays, "line", {"class": "ray", "x1": "0", "y1": "0", "x2": x, "y2": y})

    g_pts = ET.SubElement(svg, "g", {"class": "points"})
    for p in diagram.points:
        x, y = _xy(spec, p.position)
        ET.SubElement(g_pts, "circle", {"class": "point", "cx": x, "cy": y,
                                        "r": _num(spec.point_radius),
                                        "data-sources": " ".join(_label(s) for s in p.sources)})
        if spec.labels:
            t = ET.SubElement(g_pts, "text", {"x": x, "y": y, "font-size": "9",
                                              "dx": "5", "dy": "-5"})
            t.text = ",".join(_label(s) for s in p.sources)
    return _serialize(svg)


def render_polytope(graph: SolitonGraph, spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec()
    diagram = graph.distinct_positions()
    svg = _root(spec, f"Soliton polytope of Gr_{graph.k}(C^{graph.n + 1})")

    where = {}
    for idx, p in enumerate(diagram.points):
        for src in p.sources:
            where[tuple(src)] = idx

    chords = {}
    for e in graph.edges:
        a, b = where[graph.vertices[e.u]], where[graph.vertices[e.v]]
        key = (min(a, b), max(a, b))
        chords.setdefault(key, e)

    g_edges = ET.SubElement(svg, "g", {"class": "solitons"})
    for (a, b) in sorted(chords):
        e = chords[(a, b)]
        x1, y1 = _xy(spec, diagram.points[a].position)
        x2, y2 = _xy(spec, diagram.points[b].position)
        ET.SubElement(g_edges, "line", {"class": f"soliton particle-{e.particle}",
                                        "x1": x1, "y1": y1, "x2": x2, "y2": y2,
                                        "stroke": spec.stroke(e.particle)})

    g_pts = ET.SubElement(svg, "g", {"class": "vacua"})
    for p in diagram.points:
        x, y = _xy(spec, p.position)
        label = "|".join(weight_label(s) for s in p.sources)
        ET.SubElement(g_pts, "circle", {"class": "vacuum", "cx": x, "cy": y,
                                        "r": _num(spec.point_radius), "data-label": label})
        if spec.labels:
            t = ET.SubElement(g_pts, "text", {"x": x, "y": y, "font-size": "9",
                                              "dx": "5", "dy": "-5"})
            t.text = label
    return _serialize(svg)
