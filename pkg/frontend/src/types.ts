// Shapes of the JSON payloads served by the potential-gis HTTP API.

export type Category = "agriculture" | "plantation" | "industry";

export const CATEGORIES: Category[] = ["agriculture", "plantation", "industry"];

export interface LayerInfo {
  category: Category;
  display_name_id: string;
  display_name_en: string;
  record_count: number;
  commodities: string[];
}

export interface LayersResponse {
  layers: LayerInfo[];
}

export interface PointGeometry {
  type: "Point";
  coordinates: [number, number]; // [lon, lat]
}

export interface PolygonGeometry {
  type: "Polygon";
  coordinates: number[][][]; // rings -> positions -> [lon, lat]
}

export interface MultiPolygonGeometry {
  type: "MultiPolygon";
  coordinates: number[][][][];
}

export type Geometry = PolygonGeometry | MultiPolygonGeometry | PointGeometry;

export type PropertyValue = string | number | boolean | null;

export interface Feature {
  type: "Feature";
  id: string;
  properties: Record<string, PropertyValue>;
  geometry: Geometry;
}

export interface FeatureCollection {
  type: "FeatureCollection";
  features: Feature[];
}

export interface RecordRow {
  category: Category;
  commodity: string;
  quantity: number;
  unit: string;
  year: number;
}

export interface DistrictSummary {
  id: string;
  name: string;
  area_km2: number;
  centroid: { lon: number; lat: number };
  record_count: number;
}

export interface QueryMatch {
  district: DistrictSummary;
  records: RecordRow[];
}

export interface QueryResponse {
  point: { lon: number; lat: number };
  category: Category | null;
  matched: QueryMatch[];
}

export interface ChoroplethCell {
  value: number;
  class: number;
  no_data: boolean;
}

export interface ChoroplethResponse {
  category: Category;
  commodity: string;
  k: number;
  method: "quantile" | "equal_interval";
  insufficient_data: boolean;
  breaks: number[];
  per_district: Record<string, ChoroplethCell>;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
