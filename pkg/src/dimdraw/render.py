"""Diagram labeling and serialization to SVG, TikZ, and JSON.

Labeling is reduced, as in every published line diagram: object g sits
on the concept generated by {g}, attribute m on the concept generated by
{m}, so every name appears exactly once.  All emitters are pure string
builders with fixed number formatting, so identical inputs give byte
identical output.  Internally "up" means greater; only the SVG emitter
flips the y axis, at the last moment, because screen coordinates grow
downward.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .context import FormalContext
from .dimension import Realizer
from .lattice import ConceptLattice
from .projection import Layout


@dataclass(frozen=True)
class RenderOptions:
    width: float = 800.0
    height: float = 600.0
    node_radius: float = 4.0
    font_size: float = 11.0
    padding_fraction: float = 0.05


@dataclass(frozen=True)
class LabeledDiagram:
    """A layout plus reduced labels and the data needed to serialize it."""

    context: FormalContext
    lattice: ConceptLattice
    layout: Layout
    object_labels: tuple[tuple[str, ...], ...]
    attribute_labels: tuple[tuple[str, ...], ...]
    realizer: Realizer | None = None


def label(ctx: FormalContext, lattice: ConceptLattice, layout: Layout,
          realizer: Realizer | None = None) -> LabeledDiagram:
    """Attach reduced object/attribute labels to the layout."""
    by_extent = {c.extent_mask: i for i, c in enumerate(lattice.concepts)}
    rows = ctx.object_rows()
    cols = ctx.attribute_cols()
    full_g = (1 << ctx.n_objects) - 1

    obj_labels: list[list[str]] = [[] for _ in range(lattice.n)]
    for g, name in enumerate(ctx.objects):
        intent = rows[g]
        extent = full_g
        for m in range(ctx.n_attributes):
            if intent >> m & 1:
                extent &= cols[m]
        obj_labels[by_extent[extent]].append(name)

    attr_labels: list[list[str]] = [[] for _ in range(lattice.n)]
    for m, name in enumerate(ctx.attributes):
        attr_labels[by_extent[cols[m]]].append(name)

    return LabeledDiagram(
        context=ctx, lattice=lattice, layout=layout,
        object_labels=tuple(tuple(ls) for ls in obj_labels),
        attribute_labels=tuple(tuple(ls) for ls in attr_labels),
        realizer=realizer)


def _fit(points, width: float, height: float, pad_fraction: float,
         flip_y: bool) -> list[tuple[float, float]]:
    """Aspect-preserving map of the layout bounding box into the padded canvas."""
    pad_x = width * pad_fraction
    pad_y = height * pad_fraction
    avail_w = width - 2.0 * pad_x
    avail_h = height - 2.0 * pad_y
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    min_x, span_x = min(xs), max(xs) - min(xs)
    min_y, span_y = min(ys), max(ys) - min(ys)
    scales = []
    if span_x > 0.0:
        scales.append(avail_w / span_x)
    if span_y > 0.0:
        scales.append(avail_h / span_y)
    scale = min(scales) if scales else 1.0
    off_x = pad_x + (avail_w - span_x * scale) / 2.0
    off_y = pad_y + (avail_h - span_y * scale) / 2.0
    fitted = []
    for x, y in points:
        cx = off_x + (x - min_x) * scale
        cy = off_y + (y - min_y) * scale
        fitted.append((cx, height - cy if flip_y else cy))
    return fitted


def _join(names: tuple[str, ...]) -> str:
    return ", ".join(names)


def to_svg(diagram: LabeledDiagram, opts: RenderOptions = RenderOptions()) -> str:
    """Standalone SVG 1.1 document; edges beneath nodes, top of the
    lattice at the top of the image."""
    layout = diagram.layout
    pts = _fit(layout.points, opts.width, opts.height, opts.padding_fraction,
               flip_y=True)
    r = opts.node_radius
    fs = opts.font_size

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{opts.width:g}" height="{opts.height:g}" '
        f'viewBox="0 0 {opts.width:g} {opts.height:g}">',
        '<g stroke="#555555" stroke-width="1">',
    ]
    for u, v in layout.edges:
        out.append(f'<line x1="{pts[u][0]:.2f}" y1="{pts[u][1]:.2f}" '
                   f'x2="{pts[v][0]:.2f}" y2="{pts[v][1]:.2f}"/>')
    out.append('</g>')
    out.append('<g fill="#1f4e79" stroke="#10283d" stroke-width="1">')
    for x, y in pts:
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:g}"/>')
    out.append('</g>')
    out.append(f'<g font-family="sans-serif" font-size="{fs:g}">')
    for i, (x, y) in enumerate(pts):
        attrs = diagram.attribute_labels[i]
        objs = diagram.object_labels[i]
        if attrs:
            out.append(f'<text x="{x - r - 2:.2f}" y="{y - r - 2:.2f}" '
                       f'text-anchor="end">{escape(_join(attrs))}</text>')
        if objs:
            out.append(f'<text x="{x + r + 2:.2f}" y="{y + r + 2 + 0.8 * fs:.2f}" '
                       f'text-anchor="start">{escape(_join(objs))}</text>')
    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


_TEX_SPECIALS = {
    "\\": r"\textbackslash{}", "&": r"\&", "%": r"\%", "$": r"\$",
    "#": r"\#", "_": r"\_", "{": r"\{", "}": r"\}",
    "~": r"\textasciitilde{}", "^": r"\textasciicircum{}",
}


def _tex_escape(text: str) -> str:
    return "".join(_TEX_SPECIALS.get(ch, ch) for ch in text)


def to_tikz(diagram: LabeledDiagram, opts: RenderOptions = RenderOptions()) -> str:
    """Standalone TikZ document: one node per concept, one draw per edge.

    Coordinates are in a 10-unit-wide box, rounded to 4 decimals.
    """
    layout = diagram.layout
    scale_w = 10.0
    scale_h = scale_w * opts.height / opts.width
    pts = _fit(layout.points, scale_w, scale_h, opts.padding_fraction,
               flip_y=False)

    out = [
        r"\documentclass[tikz,border=2pt]{standalone}",
        r"\begin{document}",
        r"\begin{tikzpicture}",
    ]
    for u, v in layout.edges:
        out.append(f"  \\draw ({pts[u][0]:.4f},{pts[u][1]:.4f}) -- "
                   f"({pts[v][0]:.4f},{pts[v][1]:.4f});")
    for i, (x, y) in enumerate(pts):
        out.append(f"  \\node[circle,fill,inner sep=1.5pt] (c{i}) "
                   f"at ({x:.4f},{y:.4f}) {{}};")
    for i, (x, y) in enumerate(pts):
        attrs = diagram.attribute_labels[i]
        objs = diagram.object_labels[i]
        if attrs:
            out.append(f"  \\node[above left,font=\\scriptsize] at "
                       f"({x:.4f},{y:.4f}) {{{_tex_escape(_join(attrs))}}};")
        if objs:
            out.append(f"  \\node[below right,font=\\scriptsize] at "
                       f"({x:.4f},{y:.4f}) {{{_tex_escape(_join(objs))}}};")
    out.append(r"\end{tikzpicture}")
    out.append(r"\end{document}")
    return "\n".join(out) + "\n"


def to_json(diagram: LabeledDiagram) -> str:
    """Machine-readable layout; see docs/layout-schema.json for the schema."""
    ctx = diagram.context
    layout = diagram.layout
    concepts = []
    for i, concept in enumerate(diagram.lattice.concepts):
        concepts.append({
            "index": i,
            "extent": [ctx.objects[g] for g in sorted(concept.extent)],
            "intent": [ctx.attributes[m] for m in sorted(concept.intent)],
            "x": layout.points[i][0],
            "y": layout.points[i][1],
            "object_labels": list(diagram.object_labels[i]),
            "attribute_labels": list(diagram.attribute_labels[i]),
        })
    doc = {
        "concepts": concepts,
        "edges": [[u, v] for u, v in layout.edges],
        "dimension": len(layout.frame.directions),
        "realizer": ([list(ext.order) for ext in diagram.realizer.extensions]
                     if diagram.realizer is not None else None),
        "crossings": layout.crossings,
    }
    return json.dumps(doc, indent=2) + "\n"
