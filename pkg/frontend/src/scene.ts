// SVG scene construction for the overview and PPI levels, plus the side
// panels. Geometry always comes from the server's layout responses; the
// client only pans, zooms and filters what it received.

import type {
  CollectorDetail,
  Layout,
  Overview,
  PpiNetwork,
  ProteinDetail,
} from "./types.js";
import type { ViewTransform } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface OverviewHandlers {
  onMethodToggle(methodName: string): void;
  onCollectorOpen(collectorId: string): void;
  onPublicationOpen(key: string): void;
}

export interface PpiHandlers {
  onProteinOpen(symbol: string): void;
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    el.setAttribute(name, value);
  }
  return el;
}

function titled(node: SVGElement, text: string): void {
  const title = svgElement("title");
  title.textContent = text;
  node.appendChild(title);
}

export function checkOverviewPayload(overview: Overview, layout: Layout): void {
  if (
    !Array.isArray(overview.methods) ||
    !Array.isArray(overview.publications) ||
    !Array.isArray(overview.collectors) ||
    !Array.isArray(overview.edges) ||
    typeof layout.positions !== "object"
  ) {
    throw new Error("malformed overview payload");
  }
  const visible = new Set(overview.publications.map((p) => p.key));
  const collectorOf = new Map<string, string>();
  for (const collector of overview.collectors) {
    for (const key of collector.member_keys) {
      if (collectorOf.has(key)) {
        throw new Error(`publication ${key} appears in two collectors`);
      }
      if (visible.has(key)) {
        throw new Error(`publication ${key} is both visible and collected`);
      }
      collectorOf.set(key, collector.collector_id);
    }
  }
  for (const edge of overview.edges) {
    if (!visible.has(edge.publication) && !collectorOf.has(edge.publication)) {
      throw new Error(`edge references unknown publication ${edge.publication}`);
    }
  }
  for (const node of [...overview.methods, ...overview.publications, ...overview.collectors]) {
    if (!(node.node_id in layout.positions)) {
      throw new Error(`layout is missing position for ${node.node_id}`);
    }
  }
}

/** Methods surviving the filter, given lowercased toggled-off names. */
export function visibleAfterFilter(overview: Overview, filters: Set<string>) {
  const methods = overview.methods.filter(
    (m) => !filters.has(m.method_name.toLowerCase()),
  );
  const methodOk = new Set(methods.map((m) => m.method_name.toLowerCase()));
  // a publication stays while at least one supporting method is active
  const supported = new Set<string>();
  for (const edge of overview.edges) {
    if (methodOk.has(edge.method_name.toLowerCase())) {
      supported.add(edge.publication);
    }
  }
  const publications = overview.publications.filter((p) => supported.has(p.key));
  const collectors = overview.collectors.filter((c) =>
    methodOk.has(c.method_name.toLowerCase()),
  );
  return { methods, publications, collectors, methodOk };
}

function sceneSvg(layout: Layout, pad: number): { svg: SVGSVGElement; viewport: SVGGElement } {
  const [minx, miny, maxx, maxy] = layout.bbox;
  const svg = svgElement("svg", {
    viewBox: `${minx - pad} ${miny - pad} ${maxx - minx + 2 * pad} ${maxy - miny + 2 * pad}`,
    class: "scene",
  });
  const viewport = svgElement("g", { class: "viewport" });
  svg.appendChild(viewport);
  return { svg, viewport };
}

export function renderOverviewScene(
  overview: Overview,
  layout: Layout,
  filters: Set<string>,
  handlers: OverviewHandlers,
): SVGSVGElement {
  checkOverviewPayload(overview, layout);
  const { svg, viewport } = sceneSvg(layout, 80);
  const { methods, publications, collectors, methodOk } = visibleAfterFilter(
    overview,
    filters,
  );
  const sizes = layout.sizes ?? {};
  const pos = (id: string) => layout.positions[id];

  const visibleKeys = new Set(publications.map((p) => p.key));
  const collectorOf = new Map<string, string>();
  for (const collector of collectors) {
    for (const key of collector.member_keys) {
      collectorOf.set(key, collector.node_id);
    }
  }
  const drawn = new Set<string>();
  for (const edge of overview.edges) {
    if (!methodOk.has(edge.method_name.toLowerCase())) continue;
    const source = `m:${edge.method_name}`;
    const target = visibleKeys.has(edge.publication)
      ? `p:${edge.publication}`
      : collectorOf.get(edge.publication);
    if (!target || drawn.has(`${source}>${target}`)) continue;
    drawn.add(`${source}>${target}`);
    const [x1, y1] = pos(source);
    const [x2, y2] = pos(target);
    viewport.appendChild(
      svgElement("line", {
        x1: String(x1),
        y1: String(y1),
        x2: String(x2),
        y2: String(y2),
        class: "semantic-edge",
      }),
    );
  }

  for (const method of methods) {
    const [x, y] = pos(method.node_id);
    const group = svgElement("g", {
      class: "node method",
      "data-node-id": method.node_id,
      "data-kind": "method",
    });
    const circle = svgElement("circle", {
      cx: String(x),
      cy: String(y),
      r: String(sizes[method.node_id] ?? 12),
    });
    titled(group, `${method.method_name} — ${method.interaction_count} interactions`);
    group.appendChild(circle);
    group.appendChild(nodeLabel(x, y, sizes[method.node_id] ?? 12, method.method_name));
    group.addEventListener("click", () => handlers.onMethodToggle(method.method_name));
    viewport.appendChild(group);
  }

  for (const pub of publications) {
    const [x, y] = pos(pub.node_id);
    const group = svgElement("g", {
      class: "node publication",
      "data-node-id": pub.node_id,
      "data-kind": "publication",
    });
    group.appendChild(
      svgElement("circle", {
        cx: String(x),
        cy: String(y),
        r: String(pub.size ?? sizes[pub.node_id] ?? 8),
      }),
    );
    titled(group, pub.label);
    group.appendChild(nodeLabel(x, y, pub.size ?? sizes[pub.node_id] ?? 8, pub.label));
    group.addEventListener("click", () => handlers.onPublicationOpen(pub.key));
    viewport.appendChild(group);
  }

  for (const collector of collectors) {
    const [x, y] = pos(collector.node_id);
    const group = svgElement("g", {
      class: "node collector",
      "data-node-id": collector.node_id,
      "data-kind": "collector",
    });
    group.appendChild(
      svgElement("circle", {
        cx: String(x),
        cy: String(y),
        r: String(collector.size ?? sizes[collector.node_id] ?? 8),
      }),
    );
    titled(
      group,
      `${collector.method_name}: ${collector.member_count} collected publications (${collector.total_count} interactions)`,
    );
    group.appendChild(
      nodeLabel(x, y, collector.size ?? 8, `+${collector.member_count}`),
    );
    group.addEventListener("click", () => handlers.onCollectorOpen(collector.collector_id));
    viewport.appendChild(group);
  }

  return svg;
}

function nodeLabel(x: number, y: number, radius: number, text: string): SVGTextElement {
  const label = svgElement("text", {
    x: String(x),
    y: String(y - radius - 4),
    "text-anchor": "middle",
    class: "node-label",
  });
  label.textContent = text;
  return label;
}

export function renderPpiScene(
  network: PpiNetwork,
  layout: Layout,
  handlers: PpiHandlers,
): SVGSVGElement {
  if (!Array.isArray(network.proteins) || !Array.isArray(network.edges)) {
    throw new Error("malformed network payload");
  }
  for (const protein of network.proteins) {
    if (!(protein.symbol in layout.positions)) {
      throw new Error(`layout is missing position for ${protein.symbol}`);
    }
  }
  const { svg, viewport } = sceneSvg(layout, 50);
  const radius = 9;

  for (const edge of network.edges) {
    const width = Math.min(1 + 0.5 * (edge.multiplicity - 1), 6);
    const [xa, ya] = layout.positions[edge.a];
    if (edge.a === edge.b) {
      viewport.appendChild(
        svgElement("circle", {
          cx: String(xa),
          cy: String(ya - radius),
          r: String(radius * 0.8),
          class: "ppi-edge self-loop",
          "data-edge": `${edge.a}|${edge.b}`,
          "stroke-width": String(width),
          fill: "none",
        }),
      );
      continue;
    }
    const [xb, yb] = layout.positions[edge.b];
    const line = svgElement("line", {
      x1: String(xa),
      y1: String(ya),
      x2: String(xb),
      y2: String(yb),
      class: "ppi-edge",
      "data-edge": `${edge.a}|${edge.b}`,
      "stroke-width": String(width),
    });
    titled(line, `${edge.a} – ${edge.b}: ${edge.multiplicity} records (${edge.methods.join(", ")})`);
    viewport.appendChild(line);
  }

  for (const protein of network.proteins) {
    const [x, y] = layout.positions[protein.symbol];
    const group = svgElement("g", {
      class: "node protein",
      "data-node-id": protein.symbol,
      "data-kind": "protein",
    });
    group.appendChild(
      svgElement("circle", { cx: String(x), cy: String(y), r: String(radius) }),
    );
    titled(group, `${protein.display} — click for details`);
    group.appendChild(nodeLabel(x, y, radius, protein.display));
    group.addEventListener("click", () => handlers.onProteinOpen(protein.symbol));
    viewport.appendChild(group);
  }

  return svg;
}

export function attachPanZoom(
  svg: SVGSVGElement,
  transform: ViewTransform,
  onChange?: () => void,
): void {
  const viewport = svg.querySelector<SVGGElement>("g.viewport");
  if (!viewport) return;

  const apply = () => {
    viewport.setAttribute(
      "transform",
      `translate(${transform.x} ${transform.y}) scale(${transform.k})`,
    );
    onChange?.();
  };
  apply();

  let dragging = false;
  let lastX = 0;
  let lastY = 0;
  svg.addEventListener("pointerdown", (event) => {
    dragging = true;
    lastX = event.clientX;
    lastY = event.clientY;
  });
  svg.addEventListener("pointermove", (event) => {
    if (!dragging) return;
    transform.x += event.clientX - lastX;
    transform.y += event.clientY - lastY;
    lastX = event.clientX;
    lastY = event.clientY;
    apply();
  });
  svg.addEventListener("pointerup", () => {
    dragging = false;
  });
  svg.addEventListener("wheel", (event) => {
    event.preventDefault();
    transform.k *= Math.exp(-event.deltaY * 0.001);
    apply();
  });
}

export function collectorPanel(
  detail: CollectorDetail,
  onOpen: (key: string) => void,
): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "panel collector-panel";
  const heading = document.createElement("h2");
  heading.textContent = `${detail.method_name}: collected publications`;
  panel.appendChild(heading);
  const summary = document.createElement("p");
  summary.textContent = `${detail.members.length} publications, ${detail.total_count} interactions`;
  panel.appendChild(summary);
  const list = document.createElement("ul");
  for (const member of detail.members) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.type = "button";
    button.dataset.publication = member.key;
    button.textContent = `${member.label} — ${member.interaction_count}`;
    button.addEventListener("click", () => onOpen(member.key));
    item.appendChild(button);
    list.appendChild(item);
  }
  panel.appendChild(list);
  return panel;
}

const LINK_TITLES: Record<string, string> = {
  biogrid: "BioGRID",
  uniprot: "UniProt",
  amigo: "AmiGO",
};

export function proteinPanel(detail: ProteinDetail): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "panel protein-panel";
  const heading = document.createElement("h2");
  heading.textContent = detail.symbol;
  panel.appendChild(heading);
  const summary = document.createElement("p");
  summary.textContent = `${detail.interaction_count} interactions`;
  panel.appendChild(summary);

  const table = document.createElement("table");
  for (const row of detail.methods) {
    const tr = document.createElement("tr");
    const name = document.createElement("td");
    name.textContent = row.method_name;
    const count = document.createElement("td");
    count.textContent = String(row.count);
    tr.append(name, count);
    table.appendChild(tr);
  }
  panel.appendChild(table);

  const entries = Object.entries(detail.links ?? {});
  if (entries.length > 0) {
    const links = document.createElement("p");
    links.className = "external-links";
    for (const [name, url] of entries) {
      const anchor = document.createElement("a");
      anchor.href = url; // verbatim from the API
      anchor.target = "_blank";
      anchor.rel = "noopener";
      anchor.textContent = LINK_TITLES[name] ?? name;
      links.appendChild(anchor);
    }
    panel.appendChild(links);
  }
  return panel;
}

export function errorPanel(message: string): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "panel error-panel";
  const text = document.createElement("p");
  text.textContent = message;
  panel.appendChild(text);
  return panel;
}
