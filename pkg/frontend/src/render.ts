// SVG rendering of district polygons, choropleth fills and the legend.

import type { Viewport } from "./projection.js";
import { project } from "./projection.js";
import type {
  ChoroplethCell,
  ChoroplethResponse,
  FeatureCollection,
  Geometry,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

// sequential 5-class ramp plus the no-data grey
export const CLASS_COLORS = ["#ffffcc", "#a1dab4", "#41b6c4", "#2c7fb8", "#253494"];
export const NO_DATA_COLOR = "#d4d4d4";
export const SELECTED_STROKE = "#e4572e";

export function fillColor(cell: ChoroplethCell | undefined): string {
  if (!cell || cell.no_data) {
    return NO_DATA_COLOR;
  }
  return CLASS_COLORS[Math.min(cell.class, CLASS_COLORS.length - 1)];
}

function ringPath(viewport: Viewport, ring: number[][]): string {
  const parts: string[] = [];
  ring.forEach(([lon, lat], i) => {
    const { x, y } = project(viewport, lon, lat);
    parts.push(`${i === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`);
  });
  parts.push("Z");
  return parts.join("");
}

/** SVG path data for a polygonal geometry; holes render via evenodd. */
export function geometryToPath(viewport: Viewport, geometry: Geometry): string {
  if (geometry.type === "Point") {
    return "";
  }
  const polygons = geometry.type === "Polygon"
    ? [geometry.coordinates]
    : geometry.coordinates;
  return polygons
    .map((rings) => rings.map((ring) => ringPath(viewport, ring)).join(""))
    .join("");
}

export interface RenderedLayer {
  paths: Map<string, SVGPathElement>;
}

export function renderLayer(
  svg: SVGSVGElement,
  fc: FeatureCollection,
  choropleth: ChoroplethResponse | null,
  viewport: Viewport,
  onClick?: (ev: MouseEvent) => void,
): RenderedLayer {
  svg.replaceChildren();
  svg.setAttribute("viewBox", `0 0 ${viewport.width} ${viewport.height}`);
  const paths = new Map<string, SVGPathElement>();
  for (const feature of fc.features) {
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute("class", "district");
    path.setAttribute("data-district-id", feature.id);
    path.setAttribute("d", geometryToPath(viewport, feature.geometry));
    path.setAttribute("fill", fillColor(choropleth?.per_district[feature.id]));
    path.setAttribute("fill-rule", "evenodd");
    path.setAttribute("stroke", "#555555");
    path.setAttribute("stroke-width", "1");
    if (onClick) {
      path.addEventListener("click", onClick);
    }
    svg.appendChild(path);
    paths.set(feature.id, path);
  }
  return { paths };
}

export function markSelected(layer: RenderedLayer, districtId: string | null): void {
  for (const [id, path] of layer.paths) {
    if (id === districtId) {
      path.setAttribute("stroke", SELECTED_STROKE);
      path.setAttribute("stroke-width", "2.5");
    } else {
      path.setAttribute("stroke", "#555555");
      path.setAttribute("stroke-width", "1");
    }
  }
}

function formatBreak(value: number): string {
  return Number.isInteger(value) ? String(value) : value.toFixed(1);
}

/** Legend: one swatch per class plus the no-data swatch, always visible. */
export function renderLegend(
  el: HTMLElement,
  choropleth: ChoroplethResponse | null,
): void {
  el.replaceChildren();
  const title = document.createElement("div");
  title.className = "legend-title";
  title.textContent = choropleth
    ? `${choropleth.commodity} (${choropleth.method === "quantile"
      ? "quantile" : "equal interval"})`
    : "no data available";
  el.appendChild(title);

  if (choropleth) {
    const edges = [null, ...choropleth.breaks, null];
    // degenerate fallbacks can carry fewer than k-1 breaks; only the
    // first breaks.length+1 classes are reachable then
    const classCount = Math.min(choropleth.k, choropleth.breaks.length + 1);
    for (let cls = 0; cls < classCount; cls += 1) {
      const lower = edges[cls];
      const upper = edges[cls + 1];
      let label: string;
      if (lower === null && upper === null) {
        label = "all values";
      } else if (lower === null) {
        label = `< ${formatBreak(upper as number)}`;
      } else if (upper === null || upper === undefined) {
        label = `≥ ${formatBreak(lower)}`;
      } else {
        label = `${formatBreak(lower)} – ${formatBreak(upper)}`;
      }
      el.appendChild(swatch(CLASS_COLORS[Math.min(cls, CLASS_COLORS.length - 1)], label, cls));
    }
  }
  const noData = swatch(NO_DATA_COLOR, "no data", null);
  noData.classList.add("legend-no-data");
  el.appendChild(noData);
}

function swatch(color: string, label: string, cls: number | null): HTMLElement {
  const row = document.createElement("div");
  row.className = "legend-row";
  if (cls !== null) {
    row.setAttribute("data-class", String(cls));
  }
  const box = document.createElement("span");
  box.className = "legend-swatch";
  box.style.backgroundColor = color;
  const text = document.createElement("span");
  text.textContent = label;
  row.append(box, text);
  return row;
}
