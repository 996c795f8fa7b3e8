"""Command line entry points: serve, validate, fixture.

Exit codes: 0 on success, 1 on validation/data errors, 2 on usage errors
(argparse's default).  ``GIS_DATA_DIR`` is the fallback for ``--data-dir``.
"""

from __future__ import annotations

import argparse
import os
import sys

from .catalog import load_catalog_dir
from .errors import PotentialGisError
from .fixture import write_fixture

DATA_DIR_ENV = "GIS_DATA_DIR"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="potential-gis",
        description="Web GIS server for district potential data "
                    "(agriculture, plantation, industry)")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="load a catalog and run the HTTP API")
    _add_data_dir(serve)
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--host", default="127.0.0.1",
                       help="bind address (default loopback)")
    serve.add_argument("--static-dir", default=None,
                       help="optional UI bundle to serve at /")

    validate = sub.add_parser("validate",
                              help="load + validate a catalog, print counts")
    _add_data_dir(validate)

    fixture = sub.add_parser("fixture",
                             help="generate the synthetic 19-district dataset")
    fixture.add_argument("--out", required=True, help="output directory")
    fixture.add_argument("--seed", type=int, default=42)
    return parser


def _add_data_dir(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--data-dir",
                     default=os.environ.get(DATA_DIR_ENV),
                     help="directory with districts.geojson + records.csv "
                          f"(or set ${DATA_DIR_ENV})")


def _require_data_dir(parser: argparse.ArgumentParser, args) -> str:
    if not args.data_dir:
        parser.error(f"--data-dir is required (or set ${DATA_DIR_ENV})")
    return args.data_dir


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "fixture":
        counts = write_fixture(args.out, args.seed)
        print(f"wrote {counts['districts']} districts, "
              f"{counts['records']} records to {args.out} (seed {args.seed})")
        return 0

    data_dir = _require_data_dir(parser, args)
    try:
        catalog = load_catalog_dir(data_dir)
    except (PotentialGisError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.command == "validate":
        print(f"{len(catalog.districts)} districts")
        print(f"{len(catalog.records)} records")
        return 0

    # serve: import lazily so validate/fixture stay dependency-light
    import uvicorn

    from .service import create_app

    app = create_app(catalog, static_dir=args.static_dir)
    print(f"serving {len(catalog.districts)} districts on "
          f"http://{args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":
    sys.exit(main())
