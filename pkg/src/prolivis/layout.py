"""Deterministic 2D layouts.

``force_directed`` is a Fruchterman-Reingold style spring embedder for the
per-publication protein networks: every node pair repels with k²/d, every
edge attracts with d²/k (k = ideal edge length), per-iteration displacement
is capped by a cooling temperature, and initial positions come from a seeded
generator so a given (graph, params) pair is bit-reproducible. Disconnected
components are laid out independently and packed left to right.

``radial_overview`` places the level-1 view: method hubs on an inner ring
ordered by contribution, each method's publications and collector fanned on
an outer arc around its hub, with ring radii grown until no two node discs
can overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ProlivisError
from .model import NodeSizeScale, OverviewGraph, PpiGraph, node_size


class LayoutError(ProlivisError):
    code = "layout_error"


class InvalidParams(LayoutError):
    code = "invalid_params"


class TooLarge(LayoutError):
    code = "too_large"


class InvalidViewport(LayoutError):
    code = "invalid_viewport"


@dataclass(frozen=True)
class LayoutParams:
    ideal_edge_length: float = 60.0
    iterations: int = 300
    initial_temperature: float | None = None  # default: 0.1 * sqrt(n) * k
    cooling_factor: float = 0.95
    seed: int = 0
    max_nodes: int = 2000

    def validate(self) -> None:
        if self.ideal_edge_length <= 0:
            raise InvalidParams("ideal_edge_length must be positive")
        if self.iterations < 1:
            raise InvalidParams("iterations must be >= 1")
        if self.initial_temperature is not None and self.initial_temperature <= 0:
            raise InvalidParams("initial_temperature must be positive")
        if not 0 < self.cooling_factor < 1:
            raise InvalidParams("cooling_factor must be in (0, 1)")
        if not 0 <= self.seed < 2**64:
            raise InvalidParams("seed must fit in an unsigned 64-bit integer")
        if self.max_nodes < 1:
            raise InvalidParams("max_nodes must be >= 1")


@dataclass(frozen=True)
class LayoutResult:
    positions: dict[str, tuple[float, float]]
    bbox: tuple[float, float, float, float]  # minx, miny, maxx, maxy
    seed: int
    iterations: int


def _bbox(points: Sequence[tuple[float, float]]) -> tuple[float, float, float, float]:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return (min(xs), min(ys), max(xs), max(ys))


def _components(nodes: list[str], edges: list[tuple[str, str]]) -> list[list[str]]:
    adjacency: dict[str, set[str]] = {n: set() for n in nodes}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen: set[str] = set()
    components = []
    for start in nodes:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            node = stack.pop()
            comp.append(node)
            for other in sorted(adjacency[node]):
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        components.append(sorted(comp))
    # biggest first; alphabetical tie-break keeps packing deterministic
    components.sort(key=lambda c: (-len(c), c[0]))
    return components


def _spring_component(
    comp: list[str],
    edges: list[tuple[str, str]],
    params: LayoutParams,
    rng: np.random.Generator,
) -> np.ndarray:
    n = len(comp)
    k = params.ideal_edge_length
    if n == 1:
        return np.zeros((1, 2))

    index = {node: i for i, node in enumerate(comp)}
    ei = np.array([index[a] for a, b in edges], dtype=np.intp)
    ej = np.array([index[b] for a, b in edges], dtype=np.intp)

    side = k * math.sqrt(n)
    pos = rng.uniform(-side / 2.0, side / 2.0, size=(n, 2))
    temp = params.initial_temperature or 0.1 * math.sqrt(n) * k

    for _ in range(params.iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((delta**2).sum(axis=2))
        np.fill_diagonal(dist, np.inf)
        dist = np.maximum(dist, 1e-9)
        disp = (delta * ((k * k) / (dist * dist))[:, :, None]).sum(axis=1)

        if len(ei):
            dvec = pos[ei] - pos[ej]
            dlen = np.maximum(np.sqrt((dvec**2).sum(axis=1)), 1e-9)
            pull = dvec * (dlen / k)[:, None]
            np.subtract.at(disp, ei, pull)
            np.add.at(disp, ej, pull)

        lengths = np.maximum(np.sqrt((disp**2).sum(axis=1)), 1e-12)
        pos = pos + disp / lengths[:, None] * np.minimum(lengths, temp)[:, None]
        temp *= params.cooling_factor

    return pos


def spring_layout(
    nodes: list[str], edges: list[tuple[str, str]], params: LayoutParams = LayoutParams()
) -> LayoutResult:
    """Seeded spring embedding of an arbitrary node/edge list."""
    params.validate()
    if not nodes:
        raise InvalidParams("cannot lay out an empty graph")
    if len(nodes) > params.max_nodes:
        raise TooLarge(
            f"graph has {len(nodes)} nodes, limit is {params.max_nodes}",
            nodes=len(nodes),
            limit=params.max_nodes,
        )
    plain_edges = [(a, b) for a, b in edges if a != b]  # self-loops: no spring

    positions: dict[str, tuple[float, float]] = {}
    cursor = 0.0
    gap = params.ideal_edge_length
    rng = np.random.default_rng(params.seed)
    for comp in _components(nodes, plain_edges):
        members = set(comp)
        comp_edges = [(a, b) for a, b in plain_edges if a in members]
        pos = _spring_component(comp, comp_edges, params, rng)
        minx, miny = pos.min(axis=0)
        maxy = pos[:, 1].max()
        shift = np.array([cursor - minx, -(miny + maxy) / 2.0])
        pos = pos + shift
        for node, (x, y) in zip(comp, pos):
            positions[node] = (float(x), float(y))
        cursor = float(pos[:, 0].max()) + gap

    ordered = {node: positions[node] for node in nodes}
    return LayoutResult(
        positions=ordered,
        bbox=_bbox(list(ordered.values())),
        seed=params.seed,
        iterations=params.iterations,
    )


def force_directed(graph: PpiGraph, params: LayoutParams = LayoutParams()) -> LayoutResult:
    """Spring layout of one publication's protein network."""
    nodes = [p.symbol for p in graph.proteins]
    edges = [(e.a, e.b) for e in graph.edges]
    return spring_layout(nodes, edges, params)


def overview_node_sizes(
    overview: OverviewGraph, scale: NodeSizeScale = NodeSizeScale()
) -> dict[str, float]:
    """Display radius per overview node id, on one shared contribution scale."""
    counts = {m.node_id: m.interaction_count for m in overview.methods}
    counts.update({p.node_id: p.interaction_count for p in overview.publications})
    counts.update({c.node_id: c.total_count for c in overview.collectors})
    counts_max = max(list(counts.values()) + [1])
    return {nid: node_size(n, counts_max, scale) for nid, n in counts.items()}


def _owning_method(overview: OverviewGraph) -> dict[str, str]:
    """Visible publication key -> lowercased name of its strongest method."""
    support: dict[str, list[tuple[int, str]]] = {}
    for edge in overview.edges:
        support.setdefault(edge.publication, []).append(
            (edge.support_count, edge.method_name.lower())
        )
    return {
        key: min(entries, key=lambda e: (-e[0], e[1]))[1]
        for key, entries in support.items()
    }


def radial_overview(
    overview: OverviewGraph,
    params: LayoutParams = LayoutParams(),
    scale: NodeSizeScale = NodeSizeScale(),
    margin: float = 4.0,
) -> LayoutResult:
    """Hub-and-leaf placement of an overview graph.

    Methods sit evenly spaced on an inner ring (contribution order, name
    tie-break); each method's publications and collector fan across the outer
    arc centred on its hub. Both radii grow until every pair of node discs is
    separated by at least ``margin``.
    """
    params.validate()
    if not overview.methods:
        raise InvalidParams("cannot lay out an empty overview")

    k = params.ideal_edge_length
    sizes = overview_node_sizes(overview, scale)
    owner = _owning_method(overview)

    leaves_by_method: dict[str, list[str]] = {
        m.method_name.lower(): [] for m in overview.methods
    }
    for pub in overview.publications:
        leaves_by_method[owner[pub.key]].append(pub.node_id)
    for col in overview.collectors:
        leaves_by_method[col.method_name.lower()].append(col.node_id)

    count = len(overview.methods)
    sector = 2.0 * math.pi / count
    method_radius = max(sizes[m.node_id] for m in overview.methods)
    ring1 = 2.0 * k
    if count >= 2:
        ring1 = max(ring1, (2.0 * method_radius + margin) / (2.0 * math.sin(math.pi / count)))

    positions: dict[str, tuple[float, float]] = {}
    leaf_angles: list[float] = []
    leaf_slots: list[tuple[str, float]] = []
    for i, method in enumerate(overview.methods):
        angle = sector * i
        positions[method.node_id] = (ring1 * math.cos(angle), ring1 * math.sin(angle))
        leaves = leaves_by_method[method.method_name.lower()]
        fan = sector * 0.85
        for j, node_id in enumerate(leaves):
            if len(leaves) == 1:
                phi = angle
            else:
                phi = angle + fan * ((j + 0.5) / len(leaves) - 0.5)
            leaf_slots.append((node_id, phi))
            leaf_angles.append(phi % (2.0 * math.pi))

    leaf_radius = max((sizes[nid] for nid, _ in leaf_slots), default=0.0)
    ring2 = ring1 + method_radius + leaf_radius + margin + k
    if len(leaf_angles) >= 2:
        ordered = sorted(leaf_angles)
        gaps = [b - a for a, b in zip(ordered, ordered[1:])]
        gaps.append(2.0 * math.pi - ordered[-1] + ordered[0])
        min_gap = max(min(gaps), 1e-9)
        ring2 = max(ring2, (2.0 * leaf_radius + margin) / (2.0 * math.sin(min(min_gap, math.pi) / 2.0)))

    for node_id, phi in leaf_slots:
        positions[node_id] = (ring2 * math.cos(phi), ring2 * math.sin(phi))

    return LayoutResult(
        positions=positions,
        bbox=_bbox(list(positions.values())),
        seed=params.seed,
        iterations=0,
    )


def normalize_positions(
    result: LayoutResult, width: float, height: float, padding: float = 0.0
) -> LayoutResult:
    """Affine-rescale a layout to fit a viewport, preserving aspect ratio."""
    if width <= 2 * padding or height <= 2 * padding:
        raise InvalidViewport(
            f"viewport {width}x{height} too small for padding {padding}"
        )
    minx, miny, maxx, maxy = result.bbox
    bw, bh = maxx - minx, maxy - miny
    usable_w, usable_h = width - 2 * padding, height - 2 * padding

    if bw == 0 and bh == 0:
        positions = {n: (width / 2.0, height / 2.0) for n in result.positions}
        return LayoutResult(positions, _bbox(list(positions.values())), result.seed, result.iterations)

    scales = []
    if bw > 0:
        scales.append(usable_w / bw)
    if bh > 0:
        scales.append(usable_h / bh)
    s = min(scales)
    ox = padding + (usable_w - bw * s) / 2.0
    oy = padding + (usable_h - bh * s) / 2.0
    positions = {
        n: (ox + (x - minx) * s, oy + (y - miny) * s)
        for n, (x, y) in result.positions.items()
    }
    return LayoutResult(
        positions=positions,
        bbox=_bbox(list(positions.values())),
        seed=result.seed,
        iterations=result.iterations,
    )
