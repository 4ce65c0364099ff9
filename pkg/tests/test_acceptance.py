"""Acceptance suite: one test per release criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion. Every expected value is either computed by an independent
brute-force oracle (tests/oracles.py) or asserted at the documented
tolerance.
"""

from __future__ import annotations

import gzip
import json
import math
import random
import socket
import time
from contextlib import contextmanager
from importlib import resources
from pathlib import Path

import pytest
from fastapi.testclient import TestClient
from jsonschema import Draft202012Validator

import prolivis.store as store_mod
from prolivis.cli import main
from prolivis.config import ServiceConfig
from prolivis.ingest import TAB3_HEADER, parse_file
from prolivis.layout import LayoutParams, overview_node_sizes, radial_overview, spring_layout
from prolivis.model import build_overview, publication_network
from prolivis.server import create_app
from prolivis.store import IoFailure, load_snapshot, save_snapshot

from helpers import make_line, make_record, random_records, six_records
from oracles import network_tally, oracle_pub_key, overview_tally, scan_ids

ASSET_DIR = Path(__file__).parent / "assets"


def _pass(name: str) -> None:
    print(f"\nACCEPTANCE {name}: PASS")


def _schema(name: str) -> Draft202012Validator:
    root = resources.files("prolivis") / "schemas" / f"{name}.schema.json"
    return Draft202012Validator(json.loads(root.read_text(encoding="utf-8")))


@contextmanager
def no_network():
    """Fail the test if anything attempts an outbound connection."""

    def deny(*args, **kwargs):
        raise AssertionError("outbound network connection attempted")

    saved = (socket.socket.connect, socket.socket.connect_ex, socket.create_connection)
    socket.socket.connect = deny
    socket.socket.connect_ex = deny
    socket.create_connection = deny
    try:
        yield
    finally:
        socket.socket.connect, socket.socket.connect_ex, socket.create_connection = saved


def test_oracle_equivalence():
    """100 random record sets: model output equals brute-force tallies."""
    rng = random.Random(20260809)
    started = time.perf_counter()
    for trial in range(100):
        records = random_records(
            rng, max_records=200, n_methods=10, n_publications=30, n_proteins=40
        )
        theta = rng.choice((1, 2, 3, 5, 10))
        expected = overview_tally(records, theta)
        overview = build_overview(records, 10116, theta)

        assert {
            m.method_name.lower(): m.interaction_count for m in overview.methods
        } == expected["method_counts"]
        assert {
            (e.method_name.lower(), e.publication): e.support_count
            for e in overview.edges
        } == expected["pair_support"]
        assert {p.key for p in overview.publications} == expected["visible"]
        assert {
            key: c.method_name.lower()
            for c in overview.collectors
            for key in c.member_keys
        } == expected["collapsed_owner"]
        assert {p.key: p.interaction_count for p in overview.all_publications()} == expected[
            "pub_counts"
        ]

        for pub in list(overview.all_publications())[:5]:
            graph = publication_network(records, pub.key)
            tally = network_tally(records, pub.key)
            assert {p.symbol for p in graph.proteins} == tally["proteins"]
            assert {(e.a, e.b): e.multiplicity for e in graph.edges} == tally["multiplicity"]
            assert {
                (e.a, e.b): {m.lower() for m in e.methods} for e in graph.edges
            } == tally["methods"]
            assert graph.record_count == pub.interaction_count
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"oracle comparison took {elapsed:.1f}s"
    _pass(f"oracle equivalence (100 sets, {elapsed:.2f}s)")


def test_count_conservation():
    """Method counts and edge supports sum to the record total for every theta."""
    rng = random.Random(4)
    fixtures = [six_records()] + [random_records(rng) for _ in range(10)]
    for records in fixtures:
        for theta in (1, 2, 3, 5, 10):
            overview = build_overview(records, 10116, theta)
            total = len(records)
            assert sum(m.interaction_count for m in overview.methods) == total
            assert sum(e.support_count for e in overview.edges) == total
            assert (
                sum(p.interaction_count for p in overview.publications)
                + sum(c.total_count for c in overview.collectors)
                == total
            )
    _pass("count conservation (11 fixtures x theta {1,2,3,5,10})")


def test_store_roundtrip(tmp_path, monkeypatch):
    """Snapshot queries reproduce a linear scan; interrupted saves vanish."""
    rng = random.Random(77)
    records = [
        make_record(
            f"G{rng.randrange(250)}",
            f"G{rng.randrange(250)}",
            system=f"Method-{rng.randrange(12)}",
            author=f"Author{rng.randrange(40)} (2005)" if rng.random() < 0.9 else None,
            pubmed=10_000 + rng.randrange(60) if rng.random() < 0.8 else None,
            org_a=rng.choice((10116, 10090)),
            org_b=rng.choice((10116, 10090)),
            line_number=i + 2,
        )
        for i in range(1000)
    ]
    path = tmp_path / "snap"
    save_snapshot(records, path, source="random-1000")
    snapshot = load_snapshot(path)
    assert [r for _, r in snapshot.all_records()] == records

    methods = {r.experimental_system for r in records}
    pubs = {oracle_pub_key(r) for r in records}
    proteins = {r.symbol_a for r in records[:150]}
    for taxid in (10116, 10090, 4932):
        for value in methods:
            assert snapshot.query("method", value, taxid) == scan_ids(
                records, "method", value, taxid
            )
        for value in pubs:
            assert snapshot.query("pubmed", value, taxid) == scan_ids(
                records, "pubmed", value, taxid
            )
        for value in proteins:
            assert snapshot.query("protein", value, taxid) == scan_ids(
                records, "protein", value, taxid
            )

    # interrupted save: no partial snapshot, previous snapshot intact
    real = store_mod._write_record_block
    state = {"calls": 0}

    def failing(block_path, items):
        state["calls"] += 1
        if state["calls"] >= 2:
            raise OSError("simulated crash")
        real(block_path, items)

    monkeypatch.setattr(store_mod, "_write_record_block", failing)
    with pytest.raises(IoFailure):
        save_snapshot(records, tmp_path / "fresh")
    assert not (tmp_path / "fresh").exists()
    assert [p.name for p in tmp_path.iterdir()] == ["snap"]
    with pytest.raises(IoFailure):
        save_snapshot(records[:10], path, overwrite=True)
    assert load_snapshot(path).manifest.total == 1000
    _pass("store round-trip (1000 records) and interrupted-save atomicity")


def _random_graph(rng: random.Random):
    n = rng.randint(1, 40)
    nodes = [f"N{i}" for i in range(n)]
    edges = [
        (rng.choice(nodes), rng.choice(nodes)) for _ in range(rng.randint(0, 2 * n))
    ]
    return nodes, edges


def test_layout_determinism_and_sanity():
    """Bit-identical seeds, finite coordinates, spring equilibrium, no overlaps."""
    rng = random.Random(10)

    for seed in range(10):
        nodes, edges = _random_graph(rng)
        params = LayoutParams(seed=seed, iterations=60)
        assert spring_layout(nodes, edges, params) == spring_layout(nodes, edges, params)

    for trial in range(50):
        nodes, edges = _random_graph(rng)
        result = spring_layout(nodes, edges, LayoutParams(seed=trial, iterations=30))
        assert all(
            math.isfinite(x) and math.isfinite(y) for x, y in result.positions.values()
        )

    params = LayoutParams(seed=3)
    two = spring_layout(["A", "B"], [("A", "B")], params)
    d = math.dist(two.positions["A"], two.positions["B"])
    assert abs(d - params.ideal_edge_length) / params.ideal_edge_length <= 0.20

    margin = 4.0
    overviews = [build_overview(six_records(), 10116, 2)] + [
        build_overview(random_records(rng, max_records=100), 10116, rng.choice((1, 2, 3)))
        for _ in range(5)
    ]
    for overview in overviews:
        result = radial_overview(overview, margin=margin)
        sizes = overview_node_sizes(overview)
        ids = list(result.positions)
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                gap = math.dist(result.positions[a], result.positions[b])
                assert gap >= sizes[a] + sizes[b] - 1e-6
    _pass("layout determinism, finiteness, equilibrium, radial separation")


METHOD_POOL = (
    "Two-hybrid",
    "Affinity Capture-MS",
    "Affinity Capture-Western",
    "FRET",
    "Co-crystal Structure",
    "Protein-peptide",
    "Reconstituted Complex",
    "Biochemical Activity",
    "Co-fractionation",
    "PCA",
)


def _write_synthetic(path: Path, count: int) -> None:
    with path.open("w", encoding="utf-8") as handle:
        handle.write(TAB3_HEADER + "\n")
        for i in range(count):
            a = f"GENE{i % 2000}"
            b = f"GENE{(i * 7 + 3) % 2000}"
            method = METHOD_POOL[i % len(METHOD_POOL)]
            pubmed = 10_000 + (i % 5000)
            handle.write(
                f"{i}\t-\t-\t-\t-\t-\t-\t{a}\t{b}\t-\t-\t{method}\tphysical"
                f"\tAuthor{pubmed} (2005)\tPUBMED:{pubmed}\t10116\t10116\t-\t-\n"
            )


def test_parser_robustness(tab3_cols, tmp_path):
    """100k-line synthetic file under 10s; 20 malformed lines all reported."""
    big = tmp_path / "synthetic.tab3.txt"
    _write_synthetic(big, 100_000)
    started = time.perf_counter()
    records, report = parse_file(big)
    elapsed = time.perf_counter() - started
    assert report.accepted == 100_000
    assert report.rejected == 0
    assert len(records) == 100_000
    assert elapsed < 10.0, f"parse took {elapsed:.1f}s"

    def data(**kwargs):
        base = dict(
            symbol_a="A",
            symbol_b="B",
            experimental_system="FRET",
            experimental_system_type="physical",
            author="Smith (2004)",
            publication_source="PUBMED:1",
            organism_a="10116",
            organism_b="10116",
        )
        base.update(kwargs)
        return make_line(tab3_cols, **base)

    malformed = [
        ("no tabs at all", "too_few_fields"),
        ("only\tthree\tfields", "too_few_fields"),
        ("a\tb\tc\td\te\tf\tg\th", "too_few_fields"),
        (data(symbol_a="-"), "empty_symbol"),
        (data(symbol_a=" "), "empty_symbol"),
        (data(symbol_b="-"), "empty_symbol"),
        (data(symbol_b=""), "empty_symbol"),
        (data(experimental_system="-"), "empty_method"),
        (data(experimental_system=""), "empty_method"),
        (data(experimental_system=" "), "empty_method"),
        (data(experimental_system_type="quantum"), "bad_system_type"),
        (data(experimental_system_type="-"), "bad_system_type"),
        (data(experimental_system_type=""), "bad_system_type"),
        (data(experimental_system_type="physic"), "bad_system_type"),
        (data(organism_a="rat"), "bad_organism_id"),
        (data(organism_a="0"), "bad_organism_id"),
        (data(organism_a="-5"), "bad_organism_id"),
        (data(organism_b="-"), "bad_organism_id"),
        (data(organism_b="12.5"), "bad_organism_id"),
        (data(organism_b=""), "bad_organism_id"),
    ]
    assert len(malformed) == 20
    lines = [TAB3_HEADER]
    for bad_line, _ in malformed:
        lines.append(data())
        lines.append(bad_line)
    corpus = tmp_path / "malformed.txt"
    corpus.write_text("\n".join(lines) + "\n", encoding="utf-8")
    records, report = parse_file(corpus)
    assert report.accepted == 20
    assert report.rejected == 20
    got_codes = [r.code for r in report.rejections]
    assert got_codes == [code for _, code in malformed]
    _pass(f"parser robustness (100k lines in {elapsed:.2f}s; 20 malformed reported)")


def test_offline_contract(tab3_cols, tmp_path):
    """Ingest, export and serve all complete with networking disabled."""
    lines = [TAB3_HEADER] + [
        make_line(
            tab3_cols,
            symbol_a=f"P{i}",
            symbol_b=f"Q{i % 3}",
            experimental_system="FRET" if i % 2 else "Two-hybrid",
            experimental_system_type="physical",
            author=f"Author{i % 4} (2004)",
            publication_source=f"PUBMED:{100 + i % 4}",
            organism_a="10116",
            organism_b="10116",
        )
        for i in range(12)
    ]
    source = tmp_path / "input.txt"
    source.write_text("\n".join(lines) + "\n", encoding="utf-8")
    snap = tmp_path / "snap"
    svg_out = tmp_path / "view.svg"

    with no_network():
        assert main(["ingest", str(source), "--snapshot", str(snap), "--quiet"]) == 0
        assert (
            main(
                [
                    "export",
                    "--snapshot",
                    str(snap),
                    "--organism",
                    "10116",
                    "--out",
                    str(svg_out),
                    "--quiet",
                ]
            )
            == 0
        )
        config = ServiceConfig(snapshot_path=snap, theta=2)
        with TestClient(create_app(config)) as client:
            assert client.get("/api/organisms").status_code == 200
            assert client.get("/api/organisms/10116/overview").status_code == 200
            assert client.get("/api/publications/100/network").status_code == 200
    assert svg_out.exists()
    _pass("offline contract (ingest, export, serve with sockets disabled)")


@pytest.fixture(scope="module")
def api_client(tmp_path_factory):
    records = six_records()
    records.append(
        make_record("M", "N", system="Affinity Capture-MS", pubmed=None, author="Nameless (2001)")
    )
    records.append(make_record("Z", "Z", system="FRET", pubmed=9, org_a=10090))
    path = tmp_path_factory.mktemp("acceptance") / "snap"
    save_snapshot(records, path, source="fixture.txt")
    with TestClient(create_app(ServiceConfig(snapshot_path=path, theta=2))) as client:
        yield client


def test_api_conformance(api_client):
    """Every endpoint response validates against its published JSON schema."""
    checks = [
        ("/api/organisms", 200, "organisms"),
        ("/api/organisms/10116/overview?theta=2", 200, "overview"),
        ("/api/organisms/10116/overview?theta=10", 200, "overview"),
        ("/api/organisms/10116/collectors/FRET?theta=2", 200, "collector"),
        ("/api/publications/1/network", 200, "network"),
        ("/api/publications/unknown:Nameless (2001)/network", 200, "network"),
        ("/api/proteins/A?taxid=10116", 200, "protein"),
        ("/api/layout/publication/1?seed=5", 200, "layout"),
        ("/api/layout/overview/10116?theta=2&seed=5", 200, "layout"),
        ("/api/organisms/7227/overview", 404, "error"),
        ("/api/organisms/10116/collectors/Nothing?theta=2", 404, "error"),
        ("/api/publications/999999/network", 404, "error"),
        ("/api/proteins/NOPE?taxid=10116", 404, "error"),
        ("/api/proteins/A", 400, "error"),
        ("/api/organisms/10116/overview?theta=0", 400, "error"),
        ("/api/no/such/route", 404, "error"),
    ]
    for url, status, schema_name in checks:
        response = api_client.get(url)
        assert response.status_code == status, (url, response.status_code)
        _schema(schema_name).validate(response.json())
        again = api_client.get(url)
        assert again.content == response.content, f"non-deterministic body: {url}"
    _pass(f"API conformance ({len(checks)} endpoint checks against schemas)")


def test_real_data_smoke():
    """Optional: a checked-in Rattus norvegicus BioGRID export ingests cleanly."""
    candidates = []
    if ASSET_DIR.is_dir():
        candidates = sorted(
            p
            for p in ASSET_DIR.iterdir()
            if "rattus" in p.name.lower() and p.suffix in (".txt", ".gz")
        )
    if not candidates:
        pytest.skip(
            "no real BioGRID asset checked in; place a "
            "BIOGRID-ORGANISM-Rattus_norvegicus-*.tab3.txt[.gz] under tests/assets/"
        )
    records, report = parse_file(candidates[0])
    assert report.accepted > 0
    methods = {r.experimental_system.lower() for r in records}
    assert len(methods) < 50
    overview = build_overview(records, 10116, theta=3)
    overview_methods = {m.method_name.lower() for m in overview.methods}
    for name in ("fret", "co-crystal structure", "protein-peptide"):
        if name in methods:
            assert name in overview_methods
    _pass(f"real-data smoke ({candidates[0].name}: {report.accepted} records)")
