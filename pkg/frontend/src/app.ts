// The map application: one page with a three-way layer switcher instead
// of three separate pages. State changes fetch through the caching API
// client; every user action bumps a generation counter so late responses
// for superseded clicks or switches are discarded, and the popup can
// never show stale data.

import { ApiClient } from "./api.js";
import type { Viewport } from "./projection.js";
import { collectionBBox, fitViewport, unproject, zoomed } from "./projection.js";
import type { RenderedLayer } from "./render.js";
import { markSelected, renderLayer, renderLegend } from "./render.js";
import {
  hideErrorBanner,
  hidePopup,
  showErrorBanner,
  showNoDistrict,
  showPopup,
  showRetryToast,
} from "./popup.js";
import type {
  Category,
  ChoroplethResponse,
  FeatureCollection,
  LayerInfo,
} from "./types.js";

export interface ViewState {
  category: Category;
  commodity: string | null;
  viewport: Viewport | null;
  selected: string | null;
}

export interface MapAppOptions {
  width?: number;
  height?: number;
}

export class MapApp {
  readonly state: ViewState = {
    category: "agriculture",
    commodity: null,
    viewport: null,
    selected: null,
  };

  private generation = 0;
  private layers: LayerInfo[] = [];
  private currentLayer: FeatureCollection | null = null;
  private currentChoropleth: ChoroplethResponse | null = null;
  private rendered: RenderedLayer | null = null;

  readonly svg: SVGSVGElement;
  readonly switcher: HTMLElement;
  readonly commoditySelect: HTMLSelectElement;
  readonly popupEl: HTMLElement;
  readonly bannerEl: HTMLElement;
  readonly toastEl: HTMLElement;
  readonly legendEl: HTMLElement;

  private readonly width: number;
  private readonly height: number;

  constructor(
    root: HTMLElement,
    private api: ApiClient,
    options: MapAppOptions = {},
  ) {
    this.width = options.width ?? 900;
    this.height = options.height ?? 620;

    root.replaceChildren();
    this.switcher = el("div", "layer-switcher");
    this.commoditySelect = document.createElement("select");
    this.commoditySelect.className = "commodity-select";
    const controls = el("div", "controls");
    controls.append(this.switcher, this.commoditySelect, this.zoomButtons());

    const mapWrap = el("div", "map-wrap");
    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svg.setAttribute("class", "map");
    this.popupEl = el("div", "popup");
    this.bannerEl = el("div", "banner");
    this.toastEl = el("div", "toast");
    mapWrap.append(this.svg, this.popupEl, this.bannerEl, this.toastEl);

    this.legendEl = el("div", "legend");
    root.append(controls, mapWrap, this.legendEl);

    this.svg.addEventListener("click", (ev) => {
      const rect = this.svg.getBoundingClientRect();
      void this.handleClick(ev.clientX - rect.left, ev.clientY - rect.top);
    });
    this.commoditySelect.addEventListener("change", () => {
      void this.setCommodity(this.commoditySelect.value);
    });
  }

  async init(): Promise<void> {
    try {
      this.layers = (await this.api.getLayers()).layers;
    } catch (err) {
      showErrorBanner(this.bannerEl, `failed to load layers: ${message(err)}`);
      return;
    }
    this.renderSwitcher();
    await this.switchLayer(this.layers[0]?.category ?? "agriculture");
  }

  /** The switcher offers exactly the three known layers, nothing else. */
  private renderSwitcher(): void {
    this.switcher.replaceChildren();
    for (const layer of this.layers) {
      const button = document.createElement("button");
      button.className = "layer-button";
      button.setAttribute("data-category", layer.category);
      button.textContent = layer.display_name_id;
      button.title = layer.display_name_en;
      button.addEventListener("click", () => {
        void this.switchLayer(layer.category);
      });
      this.switcher.appendChild(button);
    }
  }

  async switchLayer(category: Category): Promise<void> {
    const generation = ++this.generation;
    this.state.category = category;
    this.state.selected = null;           // selection does not survive a switch
    hidePopup(this.popupEl);

    let layer: FeatureCollection;
    let choropleth: ChoroplethResponse | null = null;
    let commodity: string | null = null;
    try {
      layer = await this.api.getLayer(category);
      const commodities = this.layerInfo(category)?.commodities ?? [];
      commodity = defaultCommodity(layer, commodities);
      if (commodity !== null) {
        choropleth = await this.api.getChoropleth(category, commodity);
      }
    } catch (err) {
      if (generation === this.generation) {
        showErrorBanner(this.bannerEl,
          `failed to load ${category} layer: ${message(err)}`);
      }
      return;
    }
    if (generation !== this.generation) {
      return; // a newer switch or click superseded this one
    }
    hideErrorBanner(this.bannerEl);
    this.state.commodity = commodity;
    if (this.state.viewport === null) {
      const box = collectionBBox(layer);
      if (box !== null) {
        this.state.viewport = fitViewport(box, this.width, this.height);
      }
    }
    this.currentLayer = layer;
    this.currentChoropleth = choropleth;
    this.redraw();
    this.renderCommoditySelect();
    this.markActiveButton();
  }

  async setCommodity(commodity: string): Promise<void> {
    const generation = ++this.generation;
    let choropleth: ChoroplethResponse;
    try {
      choropleth = await this.api.getChoropleth(this.state.category, commodity);
    } catch (err) {
      if (generation === this.generation) {
        showErrorBanner(this.bannerEl, message(err));
      }
      return;
    }
    if (generation !== this.generation) {
      return;
    }
    this.state.commodity = commodity;
    this.currentChoropleth = choropleth;
    this.redraw();
  }

  async handleClick(x: number, y: number): Promise<void> {
    if (this.state.viewport === null) {
      return;
    }
    const generation = ++this.generation;
    hidePopup(this.popupEl); // a new click must never show the old detail
    const { lon, lat } = unproject(this.state.viewport, x, y);
    let response;
    try {
      response = await this.api.query(lon, lat, this.state.category);
    } catch (err) {
      if (generation === this.generation) {
        showRetryToast(this.toastEl, `query failed: ${message(err)}`, () => {
          void this.handleClick(x, y);
        });
      }
      return;
    }
    if (generation !== this.generation) {
      return; // superseded by a later click or switch
    }
    if (response.matched.length === 0) {
      this.state.selected = null;
      showNoDistrict(this.popupEl, { x, y });
    } else {
      // border clicks list every adjacent district; the first entry is
      // the lexicographically smallest id, the documented tie-break
      const match = response.matched[0];
      this.state.selected = match.district.id;
      showPopup(this.popupEl, match, { x, y });
    }
    if (this.rendered) {
      markSelected(this.rendered, this.state.selected);
    }
  }

  zoomIn(): void {
    this.rescale(1.25);
  }

  zoomOut(): void {
    this.rescale(0.8);
  }

  private rescale(factor: number): void {
    if (this.state.viewport !== null) {
      this.state.viewport = zoomed(this.state.viewport, factor);
      this.redraw();
    }
  }

  private redraw(): void {
    if (this.currentLayer === null || this.state.viewport === null) {
      return;
    }
    this.rendered = renderLayer(
      this.svg, this.currentLayer, this.currentChoropleth,
      this.state.viewport);
    markSelected(this.rendered, this.state.selected);
    renderLegend(this.legendEl, this.currentChoropleth);
  }

  private renderCommoditySelect(): void {
    this.commoditySelect.replaceChildren();
    const commodities = this.layerInfo(this.state.category)?.commodities ?? [];
    for (const commodity of commodities) {
      const option = document.createElement("option");
      option.value = commodity;
      option.textContent = commodity;
      option.selected = commodity === this.state.commodity;
      this.commoditySelect.appendChild(option);
    }
    this.commoditySelect.disabled = commodities.length === 0;
  }

  private markActiveButton(): void {
    for (const button of Array.from(
        this.switcher.querySelectorAll("button"))) {
      button.classList.toggle(
        "active",
        button.getAttribute("data-category") === this.state.category);
    }
  }

  private layerInfo(category: Category): LayerInfo | undefined {
    return this.layers.find((layer) => layer.category === category);
  }

  private zoomButtons(): HTMLElement {
    const wrap = el("div", "zoom-buttons");
    const zoomIn = document.createElement("button");
    zoomIn.textContent = "+";
    zoomIn.addEventListener("click", () => this.zoomIn());
    const zoomOut = document.createElement("button");
    zoomOut.textContent = "−";
    zoomOut.addEventListener("click", () => this.zoomOut());
    wrap.append(zoomIn, zoomOut);
    return wrap;
  }
}

/** The commodity whose per-district values sum largest in the layer. */
export function defaultCommodity(
  fc: FeatureCollection,
  commodities: string[],
): string | null {
  let best: string | null = null;
  let bestTotal = -Infinity;
  for (const commodity of commodities) {
    let total = 0;
    for (const feature of fc.features) {
      const value = feature.properties[`value:${commodity}`];
      if (typeof value === "number") {
        total += value;
      }
    }
    if (total > bestTotal) {
      best = commodity;
      bestTotal = total;
    }
  }
  return best;
}

function el(tag: string, className: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  return node;
}

function message(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}
