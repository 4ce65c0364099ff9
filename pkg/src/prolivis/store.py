"""Local indexed snapshot store.

A snapshot is a directory enabling fully offline operation:

    MANIFEST                 key=value text: version, created_utc, source,
                             total, organisms; CRC32 footer line
    <taxid>.records          length-prefixed binary record blocks
    <taxid>.method.idx       "key<TAB>id,id,id" lines, sorted by key
    <taxid>.pubmed.idx       publication key index (same shape)
    <taxid>.protein.idx      uppercased symbol index (same shape)

Record ids are global and sequential in source order. A record belongs to
the block of every organism it touches, so cross-species rows answer
organism-scoped queries on both sides without cross-block scans; the
manifest total counts distinct ids. Record payloads are compact JSON
(sorted keys, UTF-8) behind a big-endian u32 length prefix; every file —
binary or text — ends with a CRC32 of everything before it (binary: 4-byte
big-endian trailer; text: a final ``#crc32=XXXXXXXX`` line).

Saves are atomic: everything is written to a temp directory and renamed into
place, guarded by an exclusive lock file. An interrupted save leaves either
no snapshot or the previous intact one. Loaded snapshots are immutable;
record blocks load lazily per organism and are checksum-verified on first
access. There is no update-in-place: rebuilding from source is the only
refresh path.
"""

from __future__ import annotations

import json
import os
import shutil
import struct
import tempfile
import zlib
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ProlivisError
from .ingest import RawInteractionRecord, SystemType
from .model import publication_key

FORMAT_VERSION = 1
MANIFEST_NAME = "MANIFEST"
KEY_KINDS = ("method", "pubmed", "protein")


class StoreError(ProlivisError):
    code = "store_error"


class IoFailure(StoreError):
    code = "io_failure"


class PathExists(StoreError):
    code = "path_exists"


class CorruptSnapshot(StoreError):
    code = "corrupt_snapshot"


class UnsupportedVersion(StoreError):
    code = "unsupported_version"


class UnknownKeyKind(StoreError):
    code = "unknown_key_kind"


@dataclass(frozen=True)
class Manifest:
    version: int
    created_utc: str
    source: str
    total: int
    organisms: tuple[int, ...]


def _crc_text(content: str) -> str:
    crc = zlib.crc32(content.encode("utf-8")) & 0xFFFFFFFF
    return content + f"#crc32={crc:08X}\n"


def _read_crc_text(path: Path) -> str:
    data = path.read_bytes()
    head, _, tail = data.rpartition(b"#crc32=")
    if not tail or len(tail.rstrip(b"\n")) != 8:
        raise CorruptSnapshot(f"{path.name}: missing checksum footer")
    try:
        expected = int(tail.rstrip(b"\n"), 16)
    except ValueError:
        raise CorruptSnapshot(f"{path.name}: malformed checksum footer")
    if zlib.crc32(head) & 0xFFFFFFFF != expected:
        raise CorruptSnapshot(f"{path.name}: checksum mismatch")
    return head.decode("utf-8")


def _record_payload(record_id: int, record: RawInteractionRecord) -> bytes:
    obj = {
        "id": record_id,
        "symbol_a": record.symbol_a,
        "symbol_b": record.symbol_b,
        "display_a": record.display_a,
        "display_b": record.display_b,
        "system": record.experimental_system,
        "system_type": record.experimental_system_type.value,
        "author": record.first_author,
        "pubmed": record.pubmed_id,
        "organism_a": record.organism_a,
        "organism_b": record.organism_b,
        "line_number": record.line_number,
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def _record_from_payload(payload: bytes) -> tuple[int, RawInteractionRecord]:
    obj = json.loads(payload)
    record = RawInteractionRecord(
        symbol_a=obj["symbol_a"],
        symbol_b=obj["symbol_b"],
        display_a=obj["display_a"],
        display_b=obj["display_b"],
        experimental_system=obj["system"],
        experimental_system_type=SystemType(obj["system_type"]),
        first_author=obj["author"],
        pubmed_id=obj["pubmed"],
        organism_a=obj["organism_a"],
        organism_b=obj["organism_b"],
        line_number=obj["line_number"],
    )
    return obj["id"], record


def _write_record_block(path: Path, items: Sequence[tuple[int, RawInteractionRecord]]) -> None:
    buf = bytearray()
    for record_id, record in items:
        payload = _record_payload(record_id, record)
        buf += struct.pack(">I", len(payload))
        buf += payload
    buf += struct.pack(">I", zlib.crc32(bytes(buf)) & 0xFFFFFFFF)
    path.write_bytes(bytes(buf))


def _read_record_block(path: Path) -> dict[int, RawInteractionRecord]:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CorruptSnapshot(f"{path.name}: unreadable ({exc})")
    if len(data) < 4:
        raise CorruptSnapshot(f"{path.name}: truncated")
    body, trailer = data[:-4], data[-4:]
    if zlib.crc32(body) & 0xFFFFFFFF != struct.unpack(">I", trailer)[0]:
        raise CorruptSnapshot(f"{path.name}: checksum mismatch")
    records: dict[int, RawInteractionRecord] = {}
    offset = 0
    while offset < len(body):
        if offset + 4 > len(body):
            raise CorruptSnapshot(f"{path.name}: truncated length prefix")
        (length,) = struct.unpack(">I", body[offset : offset + 4])
        offset += 4
        if offset + length > len(body):
            raise CorruptSnapshot(f"{path.name}: truncated record payload")
        record_id, record = _record_from_payload(body[offset : offset + length])
        records[record_id] = record
        offset += length
    return records


def _write_index(path: Path, index: dict[str, set[int]]) -> None:
    lines = [
        f"{key}\t{','.join(str(i) for i in sorted(ids))}\n"
        for key, ids in sorted(index.items())
    ]
    path.write_text(_crc_text("".join(lines)), encoding="utf-8")


def _read_index(path: Path) -> dict[str, tuple[int, ...]]:
    content = _read_crc_text(path)
    index: dict[str, tuple[int, ...]] = {}
    for line in content.splitlines():
        if not line:
            continue
        key, _, ids = line.partition("\t")
        try:
            index[key] = tuple(int(i) for i in ids.split(","))
        except ValueError:
            raise CorruptSnapshot(f"{path.name}: malformed id list for key {key!r}")
    return index


def _block_name(taxid: int) -> str:
    return f"{taxid}.records"


def save_snapshot(
    records: Sequence[RawInteractionRecord],
    path: str | Path,
    source: str = "",
    overwrite: bool = False,
) -> Manifest:
    """Write an indexed snapshot directory atomically; returns its manifest."""
    path = Path(path)
    if path.exists() and not overwrite:
        raise PathExists(f"snapshot already exists: {path}")

    by_organism: dict[int, list[tuple[int, RawInteractionRecord]]] = {}
    for record_id, record in enumerate(records):
        for taxid in {record.organism_a, record.organism_b}:
            by_organism.setdefault(taxid, []).append((record_id, record))

    manifest = Manifest(
        version=FORMAT_VERSION,
        created_utc=datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
        source=source,
        total=len(records),
        organisms=tuple(sorted(by_organism)),
    )

    lock_path = path.parent / (path.name + ".lock")
    try:
        lock_fd = os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise IoFailure(f"another save holds the lock: {lock_path}")
    except OSError as exc:
        raise IoFailure(f"cannot create lock file: {exc}")

    tmp_dir: str | None = None
    try:
        tmp_dir = tempfile.mkdtemp(prefix=f".{path.name}.tmp.", dir=path.parent)
        tmp = Path(tmp_dir)
        for taxid, items in by_organism.items():
            _write_record_block(tmp / _block_name(taxid), items)
            method_idx: dict[str, set[int]] = {}
            pubmed_idx: dict[str, set[int]] = {}
            protein_idx: dict[str, set[int]] = {}
            for record_id, record in items:
                method_idx.setdefault(record.experimental_system.lower(), set()).add(record_id)
                pubmed_idx.setdefault(publication_key(record), set()).add(record_id)
                protein_idx.setdefault(record.symbol_a, set()).add(record_id)
                protein_idx.setdefault(record.symbol_b, set()).add(record_id)
            _write_index(tmp / f"{taxid}.method.idx", method_idx)
            _write_index(tmp / f"{taxid}.pubmed.idx", pubmed_idx)
            _write_index(tmp / f"{taxid}.protein.idx", protein_idx)

        manifest_text = (
            f"version={manifest.version}\n"
            f"created_utc={manifest.created_utc}\n"
            f"source={manifest.source}\n"
            f"total={manifest.total}\n"
            f"organisms={','.join(str(t) for t in manifest.organisms)}\n"
        )
        (tmp / MANIFEST_NAME).write_text(_crc_text(manifest_text), encoding="utf-8")

        if path.exists():
            graveyard = tempfile.mkdtemp(prefix=f".{path.name}.old.", dir=path.parent)
            os.rename(path, Path(graveyard) / "previous")
            os.rename(tmp_dir, path)
            tmp_dir = None
            shutil.rmtree(graveyard, ignore_errors=True)
        else:
            os.rename(tmp_dir, path)
            tmp_dir = None
    except OSError as exc:
        raise IoFailure(f"snapshot write failed: {exc}")
    finally:
        if tmp_dir is not None:
            shutil.rmtree(tmp_dir, ignore_errors=True)
        os.close(lock_fd)
        try:
            os.unlink(lock_path)
        except OSError:
            pass
    return manifest


class Snapshot:
    """A loaded, immutable snapshot; safe for unlimited concurrent readers."""

    def __init__(self, path: Path, manifest: Manifest, indices):
        self.path = path
        self.manifest = manifest
        self._indices = indices  # taxid -> kind -> key -> ids
        self._blocks: dict[int, dict[int, RawInteractionRecord]] = {}

    def organisms(self) -> list[int]:
        return list(self.manifest.organisms)

    def record_count(self, taxid: int) -> int:
        # every record carries exactly one publication key, so the pubmed
        # index covers each block id exactly once
        index = self._indices.get(taxid)
        if index is None:
            return 0
        return sum(len(ids) for ids in index["pubmed"].values())

    def _block(self, taxid: int) -> dict[int, RawInteractionRecord]:
        if taxid not in self._blocks:
            if taxid not in self._indices:
                return {}
            self._blocks[taxid] = _read_record_block(self.path / _block_name(taxid))
        return self._blocks[taxid]

    def records_for(self, taxid: int) -> list[tuple[int, RawInteractionRecord]]:
        return sorted(self._block(taxid).items())

    def all_records(self) -> list[tuple[int, RawInteractionRecord]]:
        merged: dict[int, RawInteractionRecord] = {}
        for taxid in self.manifest.organisms:
            merged.update(self._block(taxid))
        return sorted(merged.items())

    def query(self, kind: str, value, taxid: int) -> list[int]:
        if kind not in KEY_KINDS:
            raise UnknownKeyKind(f"key kind must be one of {KEY_KINDS}, got {kind!r}")
        index = self._indices.get(taxid)
        if index is None:
            return []
        if kind == "method":
            key = str(value).lower()
        elif kind == "protein":
            key = str(value).upper()
        else:
            key = str(value)
        return sorted(index[kind].get(key, ()))


def load_snapshot(path: str | Path) -> Snapshot:
    """Open a snapshot directory, validating checksums and format version."""
    path = Path(path)
    manifest_path = path / MANIFEST_NAME
    if not manifest_path.is_file():
        raise CorruptSnapshot(f"no manifest at {manifest_path}")
    fields: dict[str, str] = {}
    for line in _read_crc_text(manifest_path).splitlines():
        if line:
            key, _, value = line.partition("=")
            fields[key] = value
    try:
        version = int(fields["version"])
        total = int(fields["total"])
        organisms = tuple(
            int(t) for t in fields["organisms"].split(",") if t
        )
        manifest = Manifest(
            version=version,
            created_utc=fields["created_utc"],
            source=fields["source"],
            total=total,
            organisms=organisms,
        )
    except (KeyError, ValueError) as exc:
        raise CorruptSnapshot(f"manifest malformed: {exc}")
    if manifest.version != FORMAT_VERSION:
        raise UnsupportedVersion(
            f"snapshot version {manifest.version}, supported: {FORMAT_VERSION}"
        )

    indices: dict[int, dict[str, dict[str, tuple[int, ...]]]] = {}
    for taxid in manifest.organisms:
        indices[taxid] = {
            kind: _read_index(path / f"{taxid}.{kind}.idx") for kind in KEY_KINDS
        }
    return Snapshot(path, manifest, indices)


def query(snapshot: Snapshot, kind: str, value, taxid: int) -> list[int]:
    """Exact-match index lookup; results sorted by record id."""
    return snapshot.query(kind, value, taxid)
