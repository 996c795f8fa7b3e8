import random

from potential_gis import fixture
from potential_gis.catalog import load_catalog
from potential_gis.geometry import bbox_of, bbox_union, centroid, contains_point


def test_district_count():
    geojson_text, _ = fixture.generate_fixture(42)
    catalog = load_catalog(geojson_text, "district_id,category,commodity,"
                                         "quantity,unit,year\n")
    assert len(catalog.districts) == 19


def test_record_shape(fixture_catalog):
    assert len(fixture_catalog.records) == 57   # 19 districts x 3 categories
    per_district = {}
    for r in fixture_catalog.records:
        per_district.setdefault(r.district_id, set()).add(r.category)
        assert r.quantity >= 0
        assert r.year == fixture.RECORD_YEAR
    assert all(len(cats) == 3 for cats in per_district.values())


def test_deterministic_output():
    assert fixture.generate_fixture(42) == fixture.generate_fixture(42)
    assert fixture.generate_fixture(42) != fixture.generate_fixture(43)


def test_full_coverage_and_disjoint_interiors(fixture_catalog):
    # random interior points of the extent belong to exactly one district
    min_lon, min_lat, max_lon, max_lat = fixture.EXTENT
    rng = random.Random(202)
    for _ in range(2000):
        from potential_gis.geometry import Coordinate
        p = Coordinate(rng.uniform(min_lon, max_lon),
                       rng.uniform(min_lat, max_lat))
        owners = [d.id for d in fixture_catalog.districts.values()
                  if contains_point(d.geometry, p)]
        assert len(owners) == 1, (p, owners)


def test_union_bbox_is_exact_extent(fixture_catalog):
    boxes = [bbox_of(d.geometry) for d in fixture_catalog.districts.values()]
    union = boxes[0]
    for b in boxes[1:]:
        union = bbox_union(union, b)
    assert (union.min_lon, union.min_lat, union.max_lon, union.max_lat) \
        == fixture.EXTENT


def test_every_centroid_resolves_to_its_district(fixture_catalog):
    for d in fixture_catalog.districts.values():
        assert fixture_catalog.districts_at(centroid(d.geometry)) == [d.id]


def test_other_seeds_also_valid():
    for seed in (0, 7, 1999):
        geojson_text, csv_text = fixture.generate_fixture(seed)
        catalog = load_catalog(geojson_text, csv_text)
        assert len(catalog.districts) == 19
        assert len(catalog.records) == 57
        # click contract holds for any seed, not just the default
        for d in catalog.districts.values():
            assert catalog.districts_at(centroid(d.geometry)) == [d.id]
