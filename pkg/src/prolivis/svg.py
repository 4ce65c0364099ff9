"""Static SVG rendering of laid-out graphs.

Output is plain text built with fixed-precision coordinates and no
timestamps, so a given (graph, layout) pair always renders byte-identically.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .layout import LayoutResult, overview_node_sizes
from .model import NodeSizeScale, OverviewGraph, PpiGraph

METHOD_FILL = "#4c78a8"
PUBLICATION_FILL = "#f58518"
COLLECTOR_FILL = "#b8b0ac"
PROTEIN_FILL = "#54a24b"
EDGE_STROKE = "#9a9a9a"


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _header(bbox: tuple[float, float, float, float], pad: float) -> list[str]:
    minx, miny, maxx, maxy = bbox
    width = (maxx - minx) + 2 * pad
    height = (maxy - miny) + 2 * pad
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(minx - pad)} '
        f'{_fmt(miny - pad)} {_fmt(width)} {_fmt(height)}" '
        f'font-family="sans-serif" font-size="11">',
    ]


def _line(a: tuple[float, float], b: tuple[float, float], width: float = 1.0) -> str:
    return (
        f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
        f'y2="{_fmt(b[1])}" stroke="{EDGE_STROKE}" stroke-width="{_fmt(width)}"/>'
    )


def _circle(center: tuple[float, float], radius: float, fill: str) -> str:
    return (
        f'<circle cx="{_fmt(center[0])}" cy="{_fmt(center[1])}" '
        f'r="{_fmt(radius)}" fill="{fill}" stroke="#333333"/>'
    )


def _label(center: tuple[float, float], radius: float, text: str) -> str:
    return (
        f'<text x="{_fmt(center[0])}" y="{_fmt(center[1] - radius - 3)}" '
        f'text-anchor="middle">{escape(text)}</text>'
    )


def render_overview(
    overview: OverviewGraph,
    layout: LayoutResult,
    scale: NodeSizeScale = NodeSizeScale(),
) -> str:
    """Level-1 rendering: method hubs, publication leaves, collectors.

    Semantic edges to visible publications are drawn individually; edges to
    collapsed publications are drawn once per (method, collector) pair.
    """
    sizes = overview_node_sizes(overview, scale)
    pad = max(sizes.values(), default=10.0) + 50.0
    parts = _header(layout.bbox, pad)

    member_collector = {
        key: col.node_id for col in overview.collectors for key in col.member_keys
    }
    visible = {p.key: p.node_id for p in overview.publications}
    drawn: set[tuple[str, str]] = set()
    for edge in overview.edges:
        source = f"m:{edge.method_name}"
        target = visible.get(edge.publication) or member_collector.get(edge.publication)
        if target is None or (source, target) in drawn:
            continue
        drawn.add((source, target))
        parts.append(_line(layout.positions[source], layout.positions[target]))

    for method in overview.methods:
        center = layout.positions[method.node_id]
        radius = sizes[method.node_id]
        parts.append(_circle(center, radius, METHOD_FILL))
        parts.append(_label(center, radius, method.method_name))
    for pub in overview.publications:
        center = layout.positions[pub.node_id]
        radius = sizes[pub.node_id]
        parts.append(_circle(center, radius, PUBLICATION_FILL))
        parts.append(_label(center, radius, pub.label))
    for col in overview.collectors:
        center = layout.positions[col.node_id]
        radius = sizes[col.node_id]
        parts.append(_circle(center, radius, COLLECTOR_FILL))
        parts.append(_label(center, radius, f"+{len(col.members)} publications"))

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_network(
    graph: PpiGraph, layout: LayoutResult, node_radius: float = 9.0
) -> str:
    """Level-2 rendering: protein nodes with multiplicity-weighted edges."""
    parts = _header(layout.bbox, node_radius + 40.0)

    for edge in graph.edges:
        width = min(1.0 + 0.5 * (edge.multiplicity - 1), 6.0)
        if edge.is_self_loop:
            x, y = layout.positions[edge.a]
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y - node_radius)}" '
                f'r="{_fmt(node_radius * 0.8)}" fill="none" '
                f'stroke="{EDGE_STROKE}" stroke-width="{_fmt(width)}"/>'
            )
        else:
            parts.append(
                _line(layout.positions[edge.a], layout.positions[edge.b], width)
            )

    for protein in graph.proteins:
        center = layout.positions[protein.symbol]
        parts.append(_circle(center, node_radius, PROTEIN_FILL))
        parts.append(_label(center, node_radius, protein.display))

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
