// Test scaffolding: recorded fixture payloads plus a fetch mock that
// serves them, logging every request. The payloads were captured from a
// live server over the deterministic seed-42 dataset, so assertions run
// against genuine API bytes without a network.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";
import type { QueryResponse } from "../src/types.js";

const fixturesDir = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export const ETAG = readFileSync(join(fixturesDir, "etag.txt"), "utf-8").trim();

export function loadFixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(fixturesDir, name), "utf-8")) as T;
}

function fixtureText(name: string): string {
  return readFileSync(join(fixturesDir, name), "utf-8");
}

export interface RequestLog {
  urls: string[];
  methods: (string | undefined)[];
  count(pathPrefix: string): number;
}

export interface MockOptions {
  /** Awaited before a response is produced; lets tests stall requests. */
  gate?: (url: string) => Promise<void> | void;
  /** Forced failure: URLs matching this prefix reject. */
  failPrefix?: string;
  etag?: string;
}

function queryFixtureFor(url: URL): string {
  const lon = Number(url.searchParams.get("lon"));
  const lat = Number(url.searchParams.get("lat"));
  const category = url.searchParams.get("category") ?? "agriculture";
  const candidates: Array<[string, QueryResponse]> = [
    [`query-${category}-K07.json`, loadFixture(`query-${category}-K07.json`)],
    ["query-sea.json", loadFixture("query-sea.json")],
  ];
  if (category === "agriculture") {
    candidates.push(["query-agriculture-K12.json",
      loadFixture("query-agriculture-K12.json")]);
  }
  let bestName = "query-sea.json";
  let bestDist = Infinity;
  for (const [name, payload] of candidates) {
    const dist = Math.hypot(payload.point.lon - lon, payload.point.lat - lat);
    if (dist < bestDist) {
      bestDist = dist;
      bestName = name;
    }
  }
  return bestName;
}

export function mockFetch(options: MockOptions = {}): { fetchFn: FetchLike; log: RequestLog } {
  const urls: string[] = [];
  const methods: (string | undefined)[] = [];
  const log: RequestLog = {
    urls,
    methods,
    count: (prefix) => urls.filter((u) => u.startsWith(prefix)).length,
  };
  const etag = options.etag ?? ETAG;

  const fetchFn: FetchLike = async (input, init) => {
    urls.push(input);
    methods.push(init?.method);
    if (options.failPrefix !== undefined && input.startsWith(options.failPrefix)) {
      throw new TypeError("network failure (mock)");
    }
    if (options.gate) {
      await options.gate(input);
    }
    const url = new URL(input, "http://test");
    let name: string;
    if (url.pathname === "/api/layers") {
      name = "layers.json";
    } else if (url.pathname.startsWith("/api/layers/")) {
      const category = url.pathname.slice("/api/layers/".length)
        .replace(/\.geojson$/, "");
      name = `layer-${category}.geojson`;
    } else if (url.pathname === "/api/choropleth") {
      const category = url.searchParams.get("category");
      const slug = (url.searchParams.get("commodity") ?? "").replace(/ /g, "_");
      name = `choropleth-${category}-${slug}.json`;
    } else if (url.pathname === "/api/query") {
      name = queryFixtureFor(url);
    } else {
      return new Response(
        JSON.stringify({ error: { code: "not_found", message: "no route" } }),
        { status: 404, headers: { "Content-Type": "application/json" } });
    }
    return new Response(fixtureText(name), {
      status: 200,
      headers: { "Content-Type": "application/json", "ETag": etag },
    });
  };
  return { fetchFn, log };
}
