"""Deterministic synthetic fixture: 19 districts plus potential records.

The districts partition a rectangular extent exactly: a jittered 4x5
lattice of quadrilaterals (two cells of the top row merged, 19 in total),
so interiors never overlap and every interior point belongs to exactly one
district.  All coordinates are rounded to 6 decimals and every byte of the
output is a pure function of the seed.
"""

from __future__ import annotations

import random
from pathlib import Path

from . import geojson
from .catalog import (
    DISTRICTS_FILENAME,
    RECORDS_FILENAME,
    PotentialCategory,
    PotentialRecord,
    serialize_records_csv,
)
from .geometry import (
    Coordinate,
    LinearRing,
    PolygonGeom,
    centroid,
    contains_point,
    normalize_winding,
)

DISTRICT_COUNT = 19

EXTENT = (104.0, -3.2, 105.2, -2.0)     # min_lon, min_lat, max_lon, max_lat
_ROWS, _COLS = 4, 5
_JITTER = 0.05                          # degrees; < half the lattice pitch
_MERGED = ((3, 3), (3, 4))              # two top-row cells become one district

COMMODITIES = {
    PotentialCategory.AGRICULTURE: [
        ("rice", "ha"), ("corn", "ha"), ("soybean", "ha")],
    PotentialCategory.PLANTATION: [
        ("rubber", "ha"), ("palm oil", "ha"), ("coconut", "ha")],
    PotentialCategory.INDUSTRY: [
        ("food processing", "count"), ("sawmill", "count"),
        ("brick works", "count")],
}
RECORD_YEAR = 2015


def _lattice(rng: random.Random) -> list[list[Coordinate]]:
    min_lon, min_lat, max_lon, max_lat = EXTENT
    pitch_lon = (max_lon - min_lon) / _COLS
    pitch_lat = (max_lat - min_lat) / _ROWS
    nodes: list[list[Coordinate]] = []
    for r in range(_ROWS + 1):
        row = []
        for c in range(_COLS + 1):
            lon = min_lon + c * pitch_lon
            lat = min_lat + r * pitch_lat
            # Interior nodes jitter freely; edge nodes only slide along
            # their edge so the union still covers the exact rectangle.
            if 0 < c < _COLS:
                lon += rng.uniform(-_JITTER, _JITTER)
            if 0 < r < _ROWS:
                lat += rng.uniform(-_JITTER, _JITTER)
            row.append(Coordinate(round(lon, 6), round(lat, 6)))
        nodes.append(row)
    return nodes


def _district_rings(nodes) -> list[list[Coordinate]]:
    rings = []
    for r in range(_ROWS):
        for c in range(_COLS):
            if (r, c) == _MERGED[1]:
                continue
            if (r, c) == _MERGED[0]:
                c2 = _MERGED[1][1]
                ring = [nodes[r][c], nodes[r][c + 1], nodes[r][c2 + 1],
                        nodes[r + 1][c2 + 1], nodes[r + 1][c2],
                        nodes[r + 1][c]]
            else:
                ring = [nodes[r][c], nodes[r][c + 1], nodes[r + 1][c + 1],
                        nodes[r + 1][c]]
            rings.append(ring + [ring[0]])
    return rings


def generate_districts(rng: random.Random) -> geojson.FeatureCollection:
    rings = _district_rings(_lattice(rng))
    assert len(rings) == DISTRICT_COUNT
    features = []
    for i, ring in enumerate(rings, start=1):
        poly = normalize_winding(PolygonGeom(LinearRing(tuple(ring))))
        features.append(geojson.Feature(
            id=f"K{i:02d}",
            geometry=poly,
            properties={"name": f"Kecamatan {i:02d}"}))
    fc = geojson.FeatureCollection(tuple(features))
    _check_click_resolution(fc)
    return fc


def _check_click_resolution(fc: geojson.FeatureCollection) -> None:
    # Every district's centroid must resolve to that district alone,
    # otherwise the click-to-detail contract breaks downstream.
    for feat in fc.features:
        c = centroid(feat.geometry)
        owners = [f.id for f in fc.features if contains_point(f.geometry, c)]
        if owners != [feat.id]:
            raise AssertionError(
                f"centroid of {feat.id} resolves to {owners}; adjust seed "
                f"or jitter")


def generate_records(rng: random.Random,
                     district_ids: list[str]) -> list[PotentialRecord]:
    records = []
    for district_id in district_ids:
        for category in PotentialCategory:
            commodity, unit = rng.choice(COMMODITIES[category])
            if category is PotentialCategory.INDUSTRY:
                quantity = float(rng.randint(1, 40))
            else:
                quantity = round(rng.uniform(50.0, 9000.0), 1)
            records.append(PotentialRecord(
                district_id=district_id, category=category,
                commodity=commodity, quantity=quantity, unit=unit,
                year=RECORD_YEAR))
    return records


def generate_fixture(seed: int = 42) -> tuple[str, str]:
    """Return (districts geojson text, records csv text) for a seed."""
    rng = random.Random(seed)
    fc = generate_districts(rng)
    records = generate_records(rng, [f.id for f in fc.features])
    return (geojson.serialize_feature_collection(fc) + "\n",
            serialize_records_csv(records))


def write_fixture(out_dir: str | Path, seed: int = 42) -> dict[str, int]:
    """Write districts.geojson + records.csv; byte-identical per seed."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    geojson_text, csv_text = generate_fixture(seed)
    (out_dir / DISTRICTS_FILENAME).write_text(geojson_text, encoding="utf-8")
    (out_dir / RECORDS_FILENAME).write_text(csv_text, encoding="utf-8")
    return {"districts": DISTRICT_COUNT,
            "records": csv_text.count("\n") - 1}
