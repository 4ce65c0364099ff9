"""Read-only JSON API over a loaded snapshot.

Every response is derived from the local snapshot; the service makes no
outbound network connections. Requests are pure reads over immutable data,
so identical requests return identical bodies for the lifetime of one
snapshot. Errors are ``{code, message, detail}`` JSON bodies; resource
lookups that miss return 404. The response shapes are documented by the JSON
Schema files in ``prolivis/schemas/``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import replace

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from .config import ServiceConfig
from .ingest import RawInteractionRecord
from .layout import LayoutResult, force_directed, overview_node_sizes, radial_overview
from .model import (
    NodeSizeScale,
    OverviewGraph,
    PpiGraph,
    UnknownCollector,
    UnknownPublication,
    build_overview,
    protein_links,
    publication_network,
)
from .store import Snapshot, load_snapshot


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


def _error_body(code: str, message: str, detail=None) -> dict:
    return {"code": code, "message": message, "detail": detail}


def overview_payload(overview: OverviewGraph, scale: NodeSizeScale) -> dict:
    sizes = overview_node_sizes(overview, scale)
    return {
        "taxid": overview.taxid,
        "theta": overview.theta,
        "total_records": overview.total_records,
        "methods": [
            {
                "node_id": m.node_id,
                "method_name": m.method_name,
                "system_type": m.system_type.value,
                "interaction_count": m.interaction_count,
                "size": sizes[m.node_id],
            }
            for m in overview.methods
        ],
        "publications": [_publication_payload(p, sizes.get(p.node_id)) for p in overview.publications],
        "collectors": [
            {
                "node_id": c.node_id,
                "collector_id": c.collector_id,
                "method_name": c.method_name,
                "member_count": len(c.members),
                "member_keys": list(c.member_keys),
                "total_count": c.total_count,
                "size": sizes[c.node_id],
            }
            for c in overview.collectors
        ],
        "edges": [
            {
                "method_name": e.method_name,
                "publication": e.publication,
                "support_count": e.support_count,
            }
            for e in overview.edges
        ],
    }


def _publication_payload(pub, size: float | None) -> dict:
    payload = {
        "node_id": pub.node_id,
        "key": pub.key,
        "pubmed_id": pub.pubmed_id,
        "first_author": pub.first_author,
        "interaction_count": pub.interaction_count,
        "collapsed": pub.collapsed,
        "label": pub.label,
    }
    if size is not None:
        payload["size"] = size
    return payload


def network_payload(graph: PpiGraph) -> dict:
    return {
        "publication": graph.publication,
        "pubmed_id": graph.pubmed_id,
        "first_author": graph.first_author,
        "record_count": graph.record_count,
        "proteins": [{"symbol": p.symbol, "display": p.display} for p in graph.proteins],
        "edges": [
            {
                "a": e.a,
                "b": e.b,
                "multiplicity": e.multiplicity,
                "methods": list(e.methods),
            }
            for e in graph.edges
        ],
    }


def layout_payload(kind: str, key: str, result: LayoutResult, **extra) -> dict:
    payload = {
        "kind": kind,
        "key": key,
        "seed": result.seed,
        "iterations": result.iterations,
        "positions": {n: [x, y] for n, (x, y) in result.positions.items()},
        "bbox": list(result.bbox),
    }
    payload.update(extra)
    return payload


def create_app(config: ServiceConfig, snapshot: Snapshot | None = None) -> FastAPI:
    """Build the API application over a snapshot (loaded here if not given)."""
    config.validate()
    if snapshot is None:
        snapshot = load_snapshot(config.snapshot_path)
    scale = NodeSizeScale()
    app = FastAPI(title="prolivis", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def api_error_handler(_: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content=_error_body(exc.code, exc.message, exc.detail),
        )

    @app.exception_handler(StarletteHTTPException)
    async def http_error_handler(_: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else "http_error"
        return JSONResponse(
            status_code=exc.status_code,
            content=_error_body(code, str(exc.detail), None),
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content=_error_body("invalid_request", "request validation failed", exc.errors()),
        )

    def effective_theta(theta: int | None) -> int:
        value = config.theta if theta is None else theta
        if value < 1:
            raise ApiError(400, "invalid_threshold", f"theta must be >= 1, got {value}")
        return value

    def organism_records(taxid: int) -> list[RawInteractionRecord]:
        if taxid not in snapshot.manifest.organisms:
            raise ApiError(
                404, "unknown_organism", f"organism {taxid} not in snapshot", {"taxid": taxid}
            )
        return [record for _, record in snapshot.records_for(taxid)]

    def publication_graph(pubkey: str) -> PpiGraph:
        records = [record for _, record in snapshot.all_records()]
        try:
            return publication_network(records, pubkey)
        except UnknownPublication as exc:
            raise ApiError(404, exc.code, exc.message, exc.detail)

    def layout_params(seed: int | None):
        params = config.layout
        if seed is not None:
            if not 0 <= seed < 2**64:
                raise ApiError(400, "invalid_params", "seed must fit in 64 bits")
            params = replace(params, seed=seed)
        return params

    @app.get("/api/organisms")
    def organisms():
        return [
            {"taxid": taxid, "record_count": snapshot.record_count(taxid)}
            for taxid in sorted(snapshot.organisms())
        ]

    @app.get("/api/organisms/{taxid}/overview")
    def organism_overview(taxid: int, theta: int | None = Query(default=None)):
        overview = build_overview(organism_records(taxid), taxid, effective_theta(theta))
        return overview_payload(overview, scale)

    @app.get("/api/organisms/{taxid}/collectors/{collector_id}")
    def collector_members(
        taxid: int, collector_id: str, theta: int | None = Query(default=None)
    ):
        value = effective_theta(theta)
        overview = build_overview(organism_records(taxid), taxid, value)
        try:
            collector = overview.collector(collector_id)
        except UnknownCollector as exc:
            raise ApiError(404, exc.code, exc.message, exc.detail)
        return {
            "collector_id": collector.collector_id,
            "method_name": collector.method_name,
            "taxid": taxid,
            "theta": value,
            "total_count": collector.total_count,
            "members": [_publication_payload(p, None) for p in collector.members],
        }

    @app.get("/api/publications/{pubkey}/network")
    def publication_ppi(pubkey: str):
        return network_payload(publication_graph(pubkey))

    @app.get("/api/proteins/{symbol}")
    def protein_detail(symbol: str, taxid: int):
        records = organism_records(taxid)
        canonical = symbol.strip().upper()
        matching = [r for r in records if canonical in (r.symbol_a, r.symbol_b)]
        if not matching:
            raise ApiError(
                404,
                "unknown_protein",
                f"protein {canonical!r} not found for organism {taxid}",
                {"symbol": canonical, "taxid": taxid},
            )
        per_method: Counter[str] = Counter()
        display: dict[str, str] = {}
        for record in matching:
            mkey = record.experimental_system.lower()
            per_method[mkey] += 1
            display.setdefault(mkey, record.experimental_system)
        links = protein_links(canonical, taxid, config.url_templates)
        return {
            "symbol": canonical,
            "taxid": taxid,
            "interaction_count": len(matching),
            "methods": [
                {"method_name": display[m], "count": n}
                for m, n in sorted(per_method.items(), key=lambda e: (-e[1], e[0]))
            ],
            "links": {
                "biogrid": links.biogrid_url,
                "uniprot": links.uniprot_url,
                "amigo": links.amigo_url,
            },
        }

    @app.get("/api/layout/publication/{pubkey}")
    def publication_layout(pubkey: str, seed: int | None = Query(default=None)):
        graph = publication_graph(pubkey)
        result = force_directed(graph, layout_params(seed))
        return layout_payload("publication", pubkey, result)

    @app.get("/api/layout/overview/{taxid}")
    def overview_layout(
        taxid: int,
        theta: int | None = Query(default=None),
        seed: int | None = Query(default=None),
    ):
        overview = build_overview(organism_records(taxid), taxid, effective_theta(theta))
        result = radial_overview(overview, layout_params(seed), scale)
        return layout_payload(
            "overview",
            str(taxid),
            result,
            sizes=overview_node_sizes(overview, scale),
        )

    if config.static_dir is not None:
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="static")

    return app


def serve(config: ServiceConfig) -> None:
    """Run the API with uvicorn until interrupted."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
