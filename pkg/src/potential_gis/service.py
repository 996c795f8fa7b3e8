"""HTTP layer: read-only JSON/GeoJSON endpoints over one catalog snapshot.

Every endpoint is idempotent and serialized through the canonical JSON
writer, so repeated identical requests return byte-identical bodies.  A
strong ETag derived from the catalog content hash rides on every success
response; ``If-None-Match`` short-circuits to 304.  Error responses carry
a machine-readable code plus a human message and never leak stack traces.
"""

from __future__ import annotations

import math
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.staticfiles import StaticFiles

from . import catalog as cat
from . import geojson
from .errors import (
    BadCoordinate,
    PotentialGisError,
    UnknownCategory,
    UnknownCommodity,
    UnsupportedFormat,
)
from .geometry import Coordinate, centroid

JSON_MEDIA = "application/json"
GEOJSON_MEDIA = "application/geo+json"
CSV_MEDIA = "text/csv; charset=utf-8"


def create_app(catalog: cat.Catalog, static_dir: str | Path | None = None) -> FastAPI:
    """Build the service around an already-loaded catalog.

    Loading happens before the listener opens, so no request can ever
    observe a partial catalog; replacing the catalog means building a new
    app around a new snapshot.
    """
    app = FastAPI(title="potential-gis", docs_url=None, redoc_url=None,
                  openapi_url=None)
    app.state.catalog = catalog
    etag = f'"{catalog.content_hash}"'

    def respond(request: Request, body: str, media_type: str,
                extra_headers: dict[str, str] | None = None) -> Response:
        headers = {"ETag": etag, "Cache-Control": "no-cache"}
        if extra_headers:
            headers.update(extra_headers)
        if _etag_matches(request.headers.get("if-none-match"), etag):
            return Response(status_code=304, headers=headers)
        return Response(content=body, media_type=media_type, headers=headers)

    def respond_json(request: Request, payload) -> Response:
        return respond(request, geojson.dumps_canonical(payload), JSON_MEDIA)

    @app.exception_handler(PotentialGisError)
    async def typed_error(request: Request, exc: PotentialGisError):
        return _error_response(exc.code, str(exc), _status_for(exc))

    @app.exception_handler(Exception)
    async def unexpected_error(request: Request, exc: Exception):
        return _error_response("internal_error", "internal server error", 500)

    @app.get("/api/layers")
    def layers(request: Request) -> Response:
        payload = {"layers": [
            {
                "category": c.value,
                "display_name_id": c.display_name_id,
                "display_name_en": c.display_name_en,
                "record_count": catalog.record_count(c),
                "commodities": catalog.commodities(c),
            }
            for c in cat.PotentialCategory
        ]}
        return respond_json(request, payload)

    @app.get("/api/layers/{category}.geojson")
    def layer_geojson(request: Request, category: str) -> Response:
        c = cat.PotentialCategory.parse(category)
        fc = _layer_feature_collection(catalog, c)
        return respond(request, geojson.serialize_feature_collection(fc),
                       GEOJSON_MEDIA)

    @app.get("/api/query")
    def query(request: Request, lon: str | None = None,
              lat: str | None = None,
              category: str | None = None) -> Response:
        point = Coordinate(_parse_coordinate("lon", lon, 180.0),
                           _parse_coordinate("lat", lat, 90.0))
        c = None
        if category is not None:
            try:
                c = cat.PotentialCategory.parse(category)
            except UnknownCategory as exc:
                return _error_response(exc.code, str(exc), 400)
        matched = [_detail_payload(catalog, district_id, c)
                   for district_id in catalog.districts_at(point)]
        return respond_json(request, {
            "point": {"lon": point.lon, "lat": point.lat},
            "category": c.value if c else None,
            "matched": matched,
        })

    @app.get("/api/districts")
    def districts(request: Request) -> Response:
        return respond_json(request, {"districts": [
            _summary_payload(catalog, d) for d in catalog.districts.values()
        ]})

    @app.get("/api/districts/{district_id}")
    def district(request: Request, district_id: str) -> Response:
        catalog.district(district_id)
        return respond_json(request, _detail_payload(catalog, district_id, None))

    @app.get("/api/choropleth")
    def choropleth(request: Request, category: str | None = None,
                   commodity: str | None = None,
                   k: str | None = None) -> Response:
        if category is None:
            raise UnknownCategory("missing query parameter 'category'")
        c = cat.PotentialCategory.parse(category)
        if commodity is None:
            raise UnknownCommodity("missing query parameter 'commodity'")
        classes = 5
        if k is not None:
            try:
                classes = int(k)
            except ValueError:
                return _error_response(
                    "bad_class_count", f"k must be an integer, got {k!r}", 400)
        if classes < 2:
            return _error_response(
                "bad_class_count", f"k must be >= 2, got {classes}", 400)
        result = cat.choropleth(catalog, c, commodity, classes)
        return respond_json(request, _choropleth_payload(result))

    @app.get("/api/export")
    def export(request: Request, district_id: str | None = None,
               category: str | None = None,
               format: str | None = None) -> Response:
        if format not in (None, "csv"):
            raise UnsupportedFormat(
                f"unsupported export format {format!r}; supported formats: csv")
        c = cat.PotentialCategory.parse(category) if category is not None else None
        if district_id is not None:
            catalog.district(district_id)
        records = [r for r in catalog.records
                   if (district_id is None or r.district_id == district_id)
                   and (c is None or r.category is c)]
        filename = "-".join(["records"] + [p for p in (district_id, category) if p])
        return respond(
            request, cat.serialize_records_csv(records), CSV_MEDIA,
            {"Content-Disposition": f'attachment; filename="{filename}.csv"'})

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="ui")
    else:
        @app.get("/")
        def root(request: Request) -> Response:
            return respond_json(request, {
                "service": "potential-gis",
                "endpoints": ["/api/layers", "/api/layers/{category}.geojson",
                              "/api/query", "/api/districts",
                              "/api/districts/{id}", "/api/choropleth",
                              "/api/export"],
            })

    return app


def _etag_matches(if_none_match: str | None, etag: str) -> bool:
    if not if_none_match:
        return False
    if if_none_match.strip() == "*":
        return True
    return etag in [tag.strip() for tag in if_none_match.split(",")]


def _status_for(exc: PotentialGisError) -> int:
    if isinstance(exc, (BadCoordinate, UnsupportedFormat)):
        return 400
    return 404


def _error_response(code: str, message: str, status: int) -> Response:
    body = geojson.dumps_canonical({"error": {"code": code, "message": message}})
    return Response(content=body, media_type=JSON_MEDIA, status_code=status)


def _parse_coordinate(name: str, raw: str | None, bound: float) -> float:
    if raw is None:
        raise BadCoordinate(f"missing query parameter {name!r}")
    try:
        value = float(raw)
    except ValueError:
        raise BadCoordinate(
            f"{name}={raw!r} is not a decimal number") from None
    if not math.isfinite(value) or not -bound <= value <= bound:
        raise BadCoordinate(f"{name}={raw} outside [-{bound}, {bound}]")
    return value


def _summary_payload(catalog: cat.Catalog, d: cat.District) -> dict:
    c = centroid(d.geometry)
    return {
        "id": d.id,
        "name": d.name,
        "area_km2": d.area_km2,
        "centroid": {"lon": c.lon, "lat": c.lat},
        "record_count": sum(1 for r in catalog.records
                            if r.district_id == d.id),
    }


def _record_payload(r: cat.PotentialRecord) -> dict:
    return {"category": r.category.value, "commodity": r.commodity,
            "quantity": r.quantity, "unit": r.unit, "year": r.year}


def _detail_payload(catalog: cat.Catalog, district_id: str,
                    category: cat.PotentialCategory | None) -> dict:
    district, records = cat.district_detail(catalog, district_id, category)
    return {"district": _summary_payload(catalog, district),
            "records": [_record_payload(r) for r in records]}


def _choropleth_payload(result: cat.ChoroplethResult) -> dict:
    return {
        "category": result.category.value,
        "commodity": result.commodity,
        "k": result.k,
        "method": result.method,
        "insufficient_data": result.insufficient_data,
        "breaks": list(result.breaks),
        "per_district": {
            district_id: {"value": cell.value, "class": cell.class_index,
                          "no_data": cell.no_data}
            for district_id, cell in result.per_district.items()
        },
    }


def _layer_feature_collection(catalog: cat.Catalog,
                              c: cat.PotentialCategory) -> geojson.FeatureCollection:
    # One choropleth per commodity feeds flat per-district properties, so
    # the client can restyle without refetching geometry.
    commodity_classes = {
        commodity: cat.choropleth(catalog, c, commodity)
        for commodity in catalog.commodities(c)
    }
    features = []
    for d in catalog.districts.values():
        properties: dict[str, geojson.PropertyValue] = {
            "name": d.name,
            "area_km2": d.area_km2,
        }
        for commodity, result in commodity_classes.items():
            cell = result.per_district[d.id]
            properties[f"value:{commodity}"] = cell.value
            properties[f"class:{commodity}"] = cell.class_index
        features.append(geojson.Feature(id=d.id, geometry=d.geometry,
                                        properties=properties))
    return geojson.FeatureCollection(tuple(features))
