// Plain equirectangular screen transform: lon/lat scaled linearly to
// pixels, matching the server's planar lon/lat model. North is up, so
// the y axis flips.

import type { FeatureCollection, Geometry } from "./types.js";

export interface Viewport {
  centerLon: number;
  centerLat: number;
  scale: number; // pixels per degree
  width: number;
  height: number;
}

export interface BBox {
  minLon: number;
  minLat: number;
  maxLon: number;
  maxLat: number;
}

export function project(v: Viewport, lon: number, lat: number): { x: number; y: number } {
  return {
    x: v.width / 2 + (lon - v.centerLon) * v.scale,
    y: v.height / 2 - (lat - v.centerLat) * v.scale,
  };
}

export function unproject(v: Viewport, x: number, y: number): { lon: number; lat: number } {
  return {
    lon: v.centerLon + (x - v.width / 2) / v.scale,
    lat: v.centerLat - (y - v.height / 2) / v.scale,
  };
}

export function zoomed(v: Viewport, factor: number): Viewport {
  return { ...v, scale: v.scale * factor };
}

function extendBBox(box: BBox | null, lon: number, lat: number): BBox {
  if (box === null) {
    return { minLon: lon, minLat: lat, maxLon: lon, maxLat: lat };
  }
  return {
    minLon: Math.min(box.minLon, lon),
    minLat: Math.min(box.minLat, lat),
    maxLon: Math.max(box.maxLon, lon),
    maxLat: Math.max(box.maxLat, lat),
  };
}

function geometryPositions(geometry: Geometry): number[][] {
  switch (geometry.type) {
    case "Point":
      return [geometry.coordinates];
    case "Polygon":
      return geometry.coordinates.flat();
    case "MultiPolygon":
      return geometry.coordinates.flat(2);
  }
}

export function collectionBBox(fc: FeatureCollection): BBox | null {
  let box: BBox | null = null;
  for (const feature of fc.features) {
    for (const [lon, lat] of geometryPositions(feature.geometry)) {
      box = extendBBox(box, lon, lat);
    }
  }
  return box;
}

/** Viewport that fits the bbox into width x height with some padding. */
export function fitViewport(
  box: BBox,
  width: number,
  height: number,
  padding = 20,
): Viewport {
  const spanLon = Math.max(box.maxLon - box.minLon, 1e-9);
  const spanLat = Math.max(box.maxLat - box.minLat, 1e-9);
  const scale = Math.min(
    (width - 2 * padding) / spanLon,
    (height - 2 * padding) / spanLat,
  );
  return {
    centerLon: (box.minLon + box.maxLon) / 2,
    centerLat: (box.minLat + box.maxLat) / 2,
    scale,
    width,
    height,
  };
}
