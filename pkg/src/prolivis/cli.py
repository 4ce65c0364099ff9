"""Command-line interface.

Subcommands: ingest | export | serve | query. The snapshot path defaults to
the PROLIVIS_SNAPSHOT environment variable when --snapshot is omitted. With
--quiet, standard output carries only the machine-parseable summary.

Exit codes:
    0  success
    2  input not readable, or bad command usage
    3  header error (missing/ambiguous required column)
    4  unknown organism
    5  unknown publication or collector
    6  snapshot store error (exists, corrupt, unsupported, io)
    7  invalid parameter (threshold, seed, viewport, template, key kind)
    1  anything unexpected
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .config import DEFAULT_THETA, ServiceConfig, default_snapshot_path
from .errors import ProlivisError
from .ingest import HeaderError, UnreadableStream, filter_organism, parse_file
from .layout import (
    InvalidParams,
    InvalidViewport,
    LayoutParams,
    TooLarge,
    force_directed,
    radial_overview,
)
from .model import (
    BadTemplate,
    InvalidScale,
    InvalidThreshold,
    UnknownCollector,
    UnknownPublication,
    build_overview,
    publication_network,
)
from .store import StoreError, UnknownKeyKind, load_snapshot, save_snapshot
from .svg import render_network, render_overview


class UnknownOrganism(ProlivisError):
    code = "unknown_organism"


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (FileNotFoundError, IsADirectoryError, PermissionError, UnreadableStream)):
        return 2
    if isinstance(exc, HeaderError):
        return 3
    if isinstance(exc, UnknownOrganism):
        return 4
    if isinstance(exc, (UnknownPublication, UnknownCollector)):
        return 5
    if isinstance(exc, UnknownKeyKind):
        return 7
    if isinstance(exc, StoreError):
        return 6
    if isinstance(
        exc,
        (InvalidThreshold, InvalidParams, InvalidViewport, InvalidScale, BadTemplate, TooLarge, ValueError),
    ):
        return 7
    return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prolivis", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"prolivis {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_snapshot_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--snapshot",
            type=Path,
            default=default_snapshot_path(),
            help="snapshot directory (default: $PROLIVIS_SNAPSHOT)",
        )

    p = sub.add_parser("ingest", help="parse a BioGRID export into a snapshot")
    p.add_argument("input", type=Path, help="BioGRID TAB 2/3 file (plain or .gz)")
    add_snapshot_flag(p)
    p.add_argument("--organism", type=int, help="keep only records for this taxid")
    p.add_argument("--organism-mode", choices=("either", "both"), default="either")
    p.add_argument("--overwrite", action="store_true", help="replace an existing snapshot")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("export", help="render an SVG view from a snapshot")
    add_snapshot_flag(p)
    p.add_argument("--organism", type=int, help="organism taxid (overview level)")
    p.add_argument("--theta", type=int, default=DEFAULT_THETA, help="collapse threshold")
    p.add_argument("--seed", type=int, default=0, help="layout seed")
    p.add_argument("--level", choices=("overview", "ppi"), default="overview")
    p.add_argument("--publication", help="publication key (ppi level)")
    p.add_argument("--out", type=Path, required=True, help="output SVG path")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("serve", help="serve the read-only JSON API")
    add_snapshot_flag(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8020)
    p.add_argument("--theta", type=int, default=DEFAULT_THETA)
    p.add_argument("--seed", type=int, default=0, help="default layout seed")
    p.add_argument("--static-dir", type=Path, help="serve these assets at /")

    p = sub.add_parser("query", help="look up record ids in a snapshot index")
    add_snapshot_flag(p)
    p.add_argument("--kind", choices=("method", "pubmed", "protein"), required=True)
    p.add_argument("--value", required=True)
    p.add_argument("--organism", type=int, required=True)
    p.add_argument("--quiet", action="store_true", help="print ids only")

    return parser


def _require_snapshot(args: argparse.Namespace, parser: argparse.ArgumentParser) -> Path:
    if args.snapshot is None:
        parser.error("--snapshot is required (or set PROLIVIS_SNAPSHOT)")
    return args.snapshot


def _cmd_ingest(args: argparse.Namespace) -> int:
    records, report = parse_file(args.input)
    if args.organism is not None:
        records = filter_organism(records, args.organism, args.organism_mode)
    manifest = save_snapshot(
        records, args.snapshot, source=args.input.name, overwrite=args.overwrite
    )
    print(report.summary())
    if not args.quiet:
        if args.organism is not None:
            print(f"filtered={len(records)} organism={args.organism} mode={args.organism_mode}")
        print(f"organisms={','.join(str(t) for t in manifest.organisms)}")
        print(f"snapshot={args.snapshot} total={manifest.total}")
        for rejection in report.rejections[:20]:
            print(
                f"rejected line {rejection.line_number}: {rejection.code}: {rejection.message}",
                file=sys.stderr,
            )
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    snapshot = load_snapshot(args.snapshot)
    params = replace(LayoutParams(), seed=args.seed)
    if args.level == "overview":
        if args.organism is None:
            raise ValueError("--organism is required for the overview level")
        if args.organism not in snapshot.manifest.organisms:
            raise UnknownOrganism(f"organism {args.organism} not in snapshot")
        records = [r for _, r in snapshot.records_for(args.organism)]
        overview = build_overview(records, args.organism, args.theta)
        content = render_overview(overview, radial_overview(overview, params))
    else:
        if not args.publication:
            raise ValueError("--publication is required for the ppi level")
        records = [r for _, r in snapshot.all_records()]
        graph = publication_network(records, args.publication)
        content = render_network(graph, force_directed(graph, params))
    args.out.write_text(content, encoding="utf-8")
    if not args.quiet:
        print(f"wrote {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    config = ServiceConfig(
        snapshot_path=args.snapshot,
        host=args.host,
        port=args.port,
        theta=args.theta,
        layout=replace(LayoutParams(), seed=args.seed),
        static_dir=args.static_dir,
    )
    serve(config)
    return 0


def _cmd_query(args: argparse.Namespace) -> int:
    snapshot = load_snapshot(args.snapshot)
    ids = snapshot.query(args.kind, args.value, args.organism)
    if args.quiet:
        for record_id in ids:
            print(record_id)
        return 0
    block = dict(snapshot.records_for(args.organism))
    for record_id in ids:
        record = block[record_id]
        print(
            f"{record_id}\t{record.display_a}\t{record.display_b}"
            f"\t{record.experimental_system}\t{record.pubmed_id or '-'}"
        )
    print(f"matches={len(ids)}", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.snapshot is None:
        _require_snapshot(args, parser)
    handlers = {
        "ingest": _cmd_ingest,
        "export": _cmd_export,
        "serve": _cmd_serve,
        "query": _cmd_query,
    }
    try:
        return handlers[args.command](args)
    except (ProlivisError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
