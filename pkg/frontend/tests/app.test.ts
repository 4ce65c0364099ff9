// Scripted navigation over recorded API payloads (tests/fixtures.json is
// frozen from the engine's fixture snapshot): organism select -> overview ->
// collector expand -> publication PPI -> protein panel, plus back-navigation,
// filtering, zooming and failure handling.

import { beforeEach, afterEach, describe, expect, it, vi } from "vitest";

import { App } from "../src/app.js";
import { checkOverviewPayload } from "../src/scene.js";
import { cloneState } from "../src/state.js";
import type { Layout, Overview } from "../src/types.js";
import rawFixtures from "./fixtures.json";

type FixtureMap = Record<string, { status: number; body: unknown }>;
const fixtures = rawFixtures as FixtureMap;

const requested: string[] = [];
const gates = new Map<string, Promise<void>>();

function installFetch(overrides: FixtureMap = {}): void {
  vi.stubGlobal(
    "fetch",
    vi.fn(async (url: string) => {
      requested.push(url);
      const gate = gates.get(url);
      if (gate) await gate;
      const fixture = overrides[url] ?? fixtures[url];
      if (!fixture) {
        throw new Error(`unexpected request: ${url}`);
      }
      return {
        ok: fixture.status < 400,
        status: fixture.status,
        json: async () => structuredClone(fixture.body),
      };
    }),
  );
}

async function makeApp(overrides: FixtureMap = {}): Promise<App> {
  installFetch(overrides);
  document.body.innerHTML = '<div id="app"></div>';
  const app = new App(document.getElementById("app")!);
  await app.init();
  return app;
}

function stage(): HTMLElement {
  return document.querySelector(".stage")!;
}

function side(): HTMLElement {
  return document.querySelector(".side")!;
}

function nodes(kind: string): Element[] {
  return [...stage().querySelectorAll(`[data-kind="${kind}"]`)];
}

function click(el: Element): void {
  el.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

async function selectOrganism(app: App, taxid: number): Promise<void> {
  const select = document.querySelector<HTMLSelectElement>(".organism-select")!;
  select.value = String(taxid);
  select.dispatchEvent(new Event("change"));
  await vi.waitFor(() => expect(nodes("method").length).toBeGreaterThan(0));
}

beforeEach(() => {
  requested.length = 0;
  gates.clear();
});

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("acceptance flow", () => {
  it("drives organism -> overview -> collector -> ppi -> protein panel and back", async () => {
    const app = await makeApp();
    const select = document.querySelector<HTMLSelectElement>(".organism-select")!;
    expect([...select.options].map((o) => o.value)).toEqual(["", "10090", "10116"]);

    // overview: 3 methods, 1 visible publication, 3 collectors at theta=3
    await selectOrganism(app, 10116);
    expect(nodes("method")).toHaveLength(3);
    expect(nodes("publication")).toHaveLength(1);
    expect(nodes("collector")).toHaveLength(3);
    // node sizes follow interaction counts (FRET 4 > Two-hybrid 2 > ACMS 1)
    const radius = (id: string) =>
      Number(stage().querySelector(`[data-node-id="${id}"] circle`)!.getAttribute("r"));
    expect(radius("m:FRET")).toBeGreaterThan(radius("m:Two-hybrid"));
    expect(radius("m:Two-hybrid")).toBeGreaterThan(radius("m:Affinity Capture-MS"));

    // pan the overview so the restored transform is distinguishable
    const svg = stage().querySelector("svg")!;
    svg.dispatchEvent(new MouseEvent("pointerdown", { clientX: 10, clientY: 10 }));
    svg.dispatchEvent(new MouseEvent("pointermove", { clientX: 35, clientY: -5 }));
    svg.dispatchEvent(new MouseEvent("pointerup", {}));
    expect(app.state.transform).toEqual({ x: 25, y: -15, k: 1 });
    const pannedOverview = cloneState(app.state);

    // third level: expand the FRET collector
    click(stage().querySelector('[data-node-id="c:FRET"]')!);
    await vi.waitFor(() => expect(side().querySelector(".collector-panel")).toBeTruthy());
    const members = [...side().querySelectorAll("button[data-publication]")];
    expect(members.map((m) => m.getAttribute("data-publication"))).toEqual(["2"]);

    // second level: open the member publication's PPI view
    click(members[0]);
    await vi.waitFor(() => expect(nodes("protein").length).toBe(2));
    expect(nodes("protein").map((n) => n.getAttribute("data-node-id")).sort()).toEqual(
      ["D", "E"],
    );
    expect(stage().querySelectorAll(".ppi-edge")).toHaveLength(1);
    const ppiState = cloneState(app.state);

    // protein panel with the three outbound links
    click(stage().querySelector('[data-node-id="D"]')!);
    await vi.waitFor(() => expect(side().querySelector(".protein-panel")).toBeTruthy());
    expect(side().querySelector("h2")!.textContent).toBe("D");
    const links = [...side().querySelectorAll(".external-links a")];
    expect(links).toHaveLength(3);
    for (const link of links) {
      expect(link.getAttribute("href")).toContain("D");
      expect(link.getAttribute("target")).toBe("_blank");
    }
    const counts = [...side().querySelectorAll("td")].map((t) => t.textContent);
    expect(counts).toEqual(["FRET", "1", "Two-hybrid", "1"]);

    // back: protein panel closes, ppi state restored exactly
    await app.back();
    expect(cloneState(app.state)).toEqual(ppiState);
    expect(side().querySelector(".protein-panel")).toBeNull();

    // back: collector level with its member list
    await app.back();
    expect(app.state.level).toBe("collector");
    expect(app.state.collector).toBe("FRET");
    await vi.waitFor(() => expect(side().querySelector(".collector-panel")).toBeTruthy());

    // back: overview with the panned transform restored loss-free
    await app.back();
    expect(cloneState(app.state)).toEqual(pannedOverview);
    await vi.waitFor(() => expect(nodes("method")).toHaveLength(3));
    expect(stage().querySelector("g.viewport")!.getAttribute("transform")).toBe(
      "translate(25 -15) scale(1)",
    );

    // back: initial organism chooser
    await app.back();
    expect(app.state.level).toBe("organisms");
    expect(stage().innerHTML).toBe("");
  });
});

describe("overview interactions", () => {
  it("zoom in then out returns to the identity transform", async () => {
    const app = await makeApp();
    await selectOrganism(app, 10116);
    const svg = stage().querySelector("svg")!;
    svg.dispatchEvent(new WheelEvent("wheel", { deltaY: 240, cancelable: true }));
    expect(app.state.transform.k).not.toBeCloseTo(1, 5);
    svg.dispatchEvent(new WheelEvent("wheel", { deltaY: -240, cancelable: true }));
    expect(app.state.transform.k).toBeCloseTo(1, 9);
  });

  it("method click toggles the filter and refetches", async () => {
    const app = await makeApp();
    await selectOrganism(app, 10116);

    // theta=1: everything visible, no collectors
    const slider = document.querySelector<HTMLInputElement>(".theta-slider")!;
    slider.value = "1";
    slider.dispatchEvent(new Event("change"));
    await vi.waitFor(() => expect(nodes("publication")).toHaveLength(4));
    expect(nodes("collector")).toHaveLength(0);

    const fetches = requested.length;
    click(stage().querySelector('[data-node-id="m:FRET"]')!);
    await vi.waitFor(() => expect(nodes("method")).toHaveLength(2));
    expect(app.state.methodFilters).toEqual(["fret"]);
    // FRET-only publications disappear with the method
    expect(nodes("publication")).toHaveLength(2);
    expect(requested.length).toBeGreaterThan(fetches);

    click(stage().querySelector('[data-node-id="m:Two-hybrid"] , [data-node-id="m:FRET"]')!);
    await vi.waitFor(() => expect(app.state.methodFilters.length).not.toBe(1));
  });

  it("discards stale responses by sequence number", async () => {
    const app = await makeApp();
    await selectOrganism(app, 10116);

    let release!: () => void;
    gates.set(
      "/api/publications/1/network",
      new Promise<void>((resolve) => {
        release = resolve;
      }),
    );
    const stale = app.openPublication("1");
    await app.openPublication("2");
    release();
    await stale;
    expect(nodes("protein").map((n) => n.getAttribute("data-node-id")).sort()).toEqual(
      ["D", "E"],
    );
    expect(app.state.publication).toBe("2");
  });
});

describe("failure handling", () => {
  it("protein 404 shows a message and preserves the view state", async () => {
    const app = await makeApp();
    await selectOrganism(app, 10116);
    await app.openPublication("1");
    const before = cloneState(app.state);

    await app.openProtein("NOPE");
    expect(side().querySelector(".error-panel")!.textContent).toContain("not found");
    expect(cloneState(app.state)).toEqual(before);
    expect(nodes("protein").length).toBe(3); // PPI scene still on stage
  });

  it("malformed overview payloads render an error panel", async () => {
    const broken = structuredClone(
      fixtures["/api/organisms/10116/overview?theta=3"],
    ) as { status: number; body: Overview };
    broken.body.edges.push({
      method_name: "FRET",
      publication: "not-a-known-publication",
      support_count: 1,
    });
    const app = await makeApp({ "/api/organisms/10116/overview?theta=3": broken });
    const select = document.querySelector<HTMLSelectElement>(".organism-select")!;
    select.value = "10116";
    select.dispatchEvent(new Event("change"));
    await vi.waitFor(() => expect(stage().querySelector(".error-panel")).toBeTruthy());
  });

  it("rejects payloads that put a publication in two collectors", () => {
    const { body } = structuredClone(
      fixtures["/api/organisms/10116/overview?theta=3"],
    ) as { status: number; body: Overview };
    const layout = (
      fixtures["/api/layout/overview/10116?theta=3"] as { body: Layout }
    ).body;
    body.collectors[1].member_keys.push("2"); // "2" already belongs to FRET
    expect(() => checkOverviewPayload(body, layout)).toThrow(/two collectors/);
  });
});
