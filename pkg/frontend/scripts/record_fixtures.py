"""Record API fixture payloads for the frontend tests.

Builds the same fixture snapshot the engine's test suite uses, runs the API
in-process, and freezes selected responses into tests/fixtures.json so the
UI tests replay real payloads without a running server.

Run from the frontend/ directory:  python3 scripts/record_fixtures.py
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

sys.path.insert(0, str(Path(__file__).resolve().parents[2] / "tests"))
from helpers import make_record, six_records  # noqa: E402

from prolivis.config import ServiceConfig
from prolivis.server import create_app
from prolivis.store import save_snapshot

URLS = [
    "/api/organisms",
    "/api/organisms/10116/overview?theta=3",
    "/api/layout/overview/10116?theta=3",
    "/api/organisms/10116/overview?theta=1",
    "/api/layout/overview/10116?theta=1",
    "/api/organisms/10116/collectors/FRET?theta=3",
    "/api/publications/2/network",
    "/api/layout/publication/2",
    "/api/publications/1/network",
    "/api/layout/publication/1",
    "/api/proteins/D?taxid=10116",
    "/api/proteins/A?taxid=10116",
    "/api/proteins/NOPE?taxid=10116",
]


def fixture_records():
    records = six_records()
    records.append(
        make_record(
            "M", "N", system="Affinity Capture-MS", pubmed=None, author="Nameless (2001)"
        )
    )
    records.append(make_record("Z", "Z", system="FRET", pubmed=9, org_a=10090))
    return records


def main() -> None:
    out_path = Path(__file__).resolve().parents[1] / "tests" / "fixtures.json"
    snap_dir = Path(__file__).resolve().parents[1] / ".fixture-snapshot"
    save_snapshot(fixture_records(), snap_dir, source="fixture.txt", overwrite=True)
    try:
        app = create_app(ServiceConfig(snapshot_path=snap_dir, theta=3))
        fixtures = {}
        with TestClient(app) as client:
            for url in URLS:
                response = client.get(url)
                fixtures[url] = {"status": response.status_code, "body": response.json()}
        out_path.write_text(json.dumps(fixtures, indent=2, sort_keys=True) + "\n")
        print(f"wrote {out_path} ({len(fixtures)} responses)")
    finally:
        import shutil

        shutil.rmtree(snap_dir, ignore_errors=True)


if __name__ == "__main__":
    main()
