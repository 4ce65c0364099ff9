// Application shell: level-by-level navigation over the local API.
// Overview -> collector member list -> per-publication PPI -> protein panel,
// with loss-free back navigation and stale-response discarding.

import { ApiClient, ApiError } from "./api.js";
import {
  attachPanZoom,
  collectorPanel,
  errorPanel,
  proteinPanel,
  renderOverviewScene,
  renderPpiScene,
} from "./scene.js";
import {
  History,
  IDENTITY,
  type ViewState,
  assertConsistent,
  cloneState,
  initialState,
} from "./state.js";

const DEFAULT_THETA = 3;

export class App {
  readonly api: ApiClient;
  state: ViewState;
  readonly history = new History();

  private seq = 0;
  private stage!: HTMLElement;
  private side!: HTMLElement;
  private organismSelect!: HTMLSelectElement;
  private thetaSlider!: HTMLInputElement;
  private thetaValue!: HTMLElement;
  private backButton!: HTMLButtonElement;

  constructor(
    private readonly root: HTMLElement,
    api: ApiClient = new ApiClient(),
  ) {
    this.api = api;
    this.state = initialState(DEFAULT_THETA);
    this.buildChrome();
  }

  private buildChrome(): void {
    this.root.innerHTML = "";
    const toolbar = document.createElement("div");
    toolbar.className = "toolbar";

    this.organismSelect = document.createElement("select");
    this.organismSelect.className = "organism-select";
    this.organismSelect.addEventListener("change", () => {
      const taxid = Number(this.organismSelect.value);
      if (taxid > 0) void this.openOverview(taxid);
    });

    const thetaLabel = document.createElement("label");
    thetaLabel.append("collapse below ");
    this.thetaSlider = document.createElement("input");
    this.thetaSlider.type = "range";
    this.thetaSlider.min = "1";
    this.thetaSlider.max = "10";
    this.thetaSlider.value = String(this.state.theta);
    this.thetaSlider.className = "theta-slider";
    this.thetaSlider.addEventListener("change", () => {
      this.state.theta = Number(this.thetaSlider.value);
      this.thetaValue.textContent = this.thetaSlider.value;
      if (this.state.level !== "organisms") void this.refreshOverview();
    });
    this.thetaValue = document.createElement("span");
    this.thetaValue.className = "theta-value";
    this.thetaValue.textContent = String(this.state.theta);
    thetaLabel.append(this.thetaSlider, this.thetaValue);

    this.backButton = document.createElement("button");
    this.backButton.type = "button";
    this.backButton.className = "back-button";
    this.backButton.textContent = "Back";
    this.backButton.addEventListener("click", () => void this.back());

    toolbar.append(this.organismSelect, thetaLabel, this.backButton);
    this.stage = document.createElement("div");
    this.stage.className = "stage";
    this.side = document.createElement("div");
    this.side.className = "side";
    this.root.append(toolbar, this.stage, this.side);
  }

  async init(): Promise<void> {
    const seq = ++this.seq;
    try {
      const organisms = await this.api.organisms();
      if (seq !== this.seq) return;
      this.organismSelect.innerHTML = "";
      const placeholder = document.createElement("option");
      placeholder.value = "";
      placeholder.textContent = "select organism";
      this.organismSelect.appendChild(placeholder);
      for (const entry of organisms) {
        const option = document.createElement("option");
        option.value = String(entry.taxid);
        option.textContent = `${entry.taxid} (${entry.record_count} records)`;
        this.organismSelect.appendChild(option);
      }
    } catch (error) {
      this.showError(error);
    }
  }

  async openOverview(taxid: number): Promise<void> {
    this.history.push(this.state);
    this.state = {
      ...cloneState(this.state),
      organism: taxid,
      level: "overview",
      methodFilters: [],
      collector: null,
      publication: null,
      protein: null,
      transform: { ...IDENTITY },
    };
    await this.renderCurrent();
  }

  /** Re-request the overview for the current theta/filters; no history push. */
  async refreshOverview(): Promise<void> {
    this.state.level = "overview";
    this.state.collector = null;
    this.state.publication = null;
    this.state.protein = null;
    await this.renderCurrent();
  }

  async toggleMethod(methodName: string): Promise<void> {
    const key = methodName.toLowerCase();
    const filters = new Set(this.state.methodFilters);
    if (filters.has(key)) {
      filters.delete(key);
    } else {
      filters.add(key);
    }
    this.state.methodFilters = [...filters].sort();
    await this.renderCurrent();
  }

  async openCollector(collectorId: string): Promise<void> {
    this.history.push(this.state);
    this.state = { ...cloneState(this.state), level: "collector", collector: collectorId };
    await this.renderCurrent();
  }

  async openPublication(key: string): Promise<void> {
    this.history.push(this.state);
    this.state = {
      ...cloneState(this.state),
      level: "ppi",
      publication: key,
      protein: null,
      transform: { ...IDENTITY },
    };
    await this.renderCurrent();
  }

  async openProtein(symbol: string): Promise<void> {
    if (this.state.organism === null) return;
    const seq = ++this.seq;
    try {
      const detail = await this.api.protein(symbol, this.state.organism);
      if (seq !== this.seq) return;
      this.history.push(this.state);
      this.state = { ...cloneState(this.state), protein: detail.symbol };
      this.side.innerHTML = "";
      this.side.appendChild(proteinPanel(detail));
    } catch (error) {
      // a missing protein must not disturb the current view state
      if (seq !== this.seq) return;
      this.side.innerHTML = "";
      if (error instanceof ApiError && error.status === 404) {
        this.side.appendChild(errorPanel(`protein ${symbol} not found`));
      } else {
        this.side.appendChild(errorPanel(String(error)));
      }
    }
  }

  async back(): Promise<void> {
    const previous = this.history.pop();
    if (!previous) return;
    this.state = previous;
    await this.renderCurrent();
  }

  private async renderCurrent(): Promise<void> {
    assertConsistent(this.state);
    this.syncChrome();
    const seq = ++this.seq;
    try {
      switch (this.state.level) {
        case "organisms":
          this.stage.innerHTML = "";
          this.side.innerHTML = "";
          return;
        case "overview":
        case "collector": {
          const taxid = this.state.organism!;
          const [overview, layout] = await Promise.all([
            this.api.overview(taxid, this.state.theta),
            this.api.overviewLayout(taxid, this.state.theta),
          ]);
          if (seq !== this.seq) return;
          const svg = renderOverviewScene(
            overview,
            layout,
            new Set(this.state.methodFilters),
            {
              onMethodToggle: (name) => void this.toggleMethod(name),
              onCollectorOpen: (id) => void this.openCollector(id),
              onPublicationOpen: (key) => void this.openPublication(key),
            },
          );
          attachPanZoom(svg, this.state.transform);
          this.stage.innerHTML = "";
          this.stage.appendChild(svg);
          this.side.innerHTML = "";
          if (this.state.level === "collector") {
            const detail = await this.api.collector(
              taxid,
              this.state.collector!,
              this.state.theta,
            );
            if (seq !== this.seq) return;
            this.side.appendChild(
              collectorPanel(detail, (key) => void this.openPublication(key)),
            );
          }
          return;
        }
        case "ppi": {
          const key = this.state.publication!;
          const [network, layout] = await Promise.all([
            this.api.network(key),
            this.api.networkLayout(key),
          ]);
          if (seq !== this.seq) return;
          const svg = renderPpiScene(network, layout, {
            onProteinOpen: (symbol) => void this.openProtein(symbol),
          });
          attachPanZoom(svg, this.state.transform);
          this.stage.innerHTML = "";
          this.stage.appendChild(svg);
          this.side.innerHTML = "";
          if (this.state.protein) {
            const detail = await this.api.protein(this.state.protein, this.state.organism!);
            if (seq !== this.seq) return;
            this.side.appendChild(proteinPanel(detail));
          }
          return;
        }
      }
    } catch (error) {
      if (seq !== this.seq) return;
      this.showError(error);
    }
  }

  private syncChrome(): void {
    this.backButton.disabled = this.history.depth === 0;
    this.thetaSlider.value = String(this.state.theta);
    this.thetaValue.textContent = String(this.state.theta);
    if (this.state.organism !== null) {
      this.organismSelect.value = String(this.state.organism);
    }
  }

  private showError(error: unknown): void {
    const message =
      error instanceof ApiError
        ? `${error.body.code}: ${error.body.message}`
        : String(error);
    this.stage.innerHTML = "";
    this.stage.appendChild(errorPanel(message));
  }
}
