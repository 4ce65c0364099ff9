"""BioGRID TAB 2.0/3.0 ingestion.

Reads the tab-delimited interaction exports BioGRID distributes per organism
and release. Both header dialects are supported through logical-column
resolution: the parser looks columns up by name ("Official Symbol Interactor
A", "Publication Source" / "Pubmed ID", ...) instead of assuming fixed
positions. Input may be plain text or gzip (detected by magic bytes).

Field conventions follow the BioGRID exports: a single TAB separates fields,
the single character "-" is the null value, and the publication source is
either "PUBMED:<digits>" or bare digits. Missing author/PubMed values become
``None`` (the UNKNOWN bucket); a missing symbol, organism or experimental
system rejects the line. Malformed lines never abort a parse: they are
recorded in the :class:`ParseReport` and parsing continues.
"""

from __future__ import annotations

import gzip
import io
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import BinaryIO, Iterable, Mapping, Sequence

from .errors import ProlivisError

GZIP_MAGIC = b"\x1f\x8b"

#: Logical name -> accepted header spellings (case-insensitive).
#: "Publication Source" is the TAB 3.0 name, "Pubmed ID" the TAB 2.0 one;
#: same for "Organism ID Interactor X" vs "Organism Interactor X".
REQUIRED_ALIASES: dict[str, tuple[str, ...]] = {
    "symbol_a": ("official symbol interactor a",),
    "symbol_b": ("official symbol interactor b",),
    "experimental_system": ("experimental system",),
    "experimental_system_type": ("experimental system type",),
    "author": ("author",),
    "publication_source": ("publication source", "pubmed id"),
    "organism_a": ("organism id interactor a", "organism interactor a"),
    "organism_b": ("organism id interactor b", "organism interactor b"),
}

OPTIONAL_ALIASES: dict[str, tuple[str, ...]] = {
    "entrez_a": ("entrez gene interactor a",),
    "entrez_b": ("entrez gene interactor b",),
    "throughput": ("throughput",),
    "score": ("score",),
}

#: Canonical TAB 3.0 header used when serializing records back to text.
TAB3_HEADER = (
    "#BioGRID Interaction ID\tEntrez Gene Interactor A\tEntrez Gene Interactor B"
    "\tBioGRID ID Interactor A\tBioGRID ID Interactor B"
    "\tSystematic Name Interactor A\tSystematic Name Interactor B"
    "\tOfficial Symbol Interactor A\tOfficial Symbol Interactor B"
    "\tSynonyms Interactor A\tSynonyms Interactor B"
    "\tExperimental System\tExperimental System Type\tAuthor\tPublication Source"
    "\tOrganism ID Interactor A\tOrganism ID Interactor B\tThroughput\tScore"
)


class IngestError(ProlivisError):
    code = "ingest_error"


class HeaderError(IngestError):
    code = "header_error"


class MissingColumn(HeaderError):
    code = "missing_column"

    def __init__(self, name: str):
        super().__init__(f"required column not found in header: {name!r}", name=name)
        self.name = name


class AmbiguousColumn(HeaderError):
    code = "ambiguous_column"

    def __init__(self, name: str, indices: Sequence[int]):
        super().__init__(
            f"column {name!r} matches more than one header field: {list(indices)}",
            name=name,
            indices=list(indices),
        )
        self.name = name


class UnreadableStream(IngestError):
    code = "unreadable_stream"


class RecordError(IngestError):
    """A single rejected line; carries its 1-based source line number."""

    code = "record_error"

    def __init__(self, message: str, line_number: int):
        super().__init__(message, line_number=line_number)
        self.line_number = line_number


class TooFewFields(RecordError):
    code = "too_few_fields"


class EmptySymbol(RecordError):
    code = "empty_symbol"


class EmptyMethod(RecordError):
    code = "empty_method"


class BadOrganismId(RecordError):
    code = "bad_organism_id"


class BadSystemType(RecordError):
    code = "bad_system_type"


class SystemType(str, Enum):
    PHYSICAL = "physical"
    GENETIC = "genetic"


@dataclass(frozen=True)
class ColumnMap:
    """Resolved logical-name -> column-index mapping for one header."""

    indices: Mapping[str, int]
    optional: Mapping[str, int]
    width: int

    def __getitem__(self, name: str) -> int:
        return self.indices[name]


@dataclass(frozen=True, slots=True)
class RawInteractionRecord:
    """One accepted BioGRID row.

    ``symbol_a``/``symbol_b`` are uppercased for identity; ``display_a``/
    ``display_b`` keep the file's casing. ``first_author`` and ``pubmed_id``
    are ``None`` when the source field was the null marker "-" (the UNKNOWN
    bucket), so interaction counts stay conserved.
    """

    symbol_a: str
    symbol_b: str
    display_a: str
    display_b: str
    experimental_system: str
    experimental_system_type: SystemType
    first_author: str | None
    pubmed_id: int | None
    organism_a: int
    organism_b: int
    line_number: int

    @property
    def is_cross_species(self) -> bool:
        return self.organism_a != self.organism_b

    @property
    def is_self_interaction(self) -> bool:
        return self.symbol_a == self.symbol_b


@dataclass(frozen=True)
class Rejection:
    line_number: int
    code: str
    message: str


@dataclass
class ParseReport:
    """Parse statistics; ``accepted + rejected == total_lines - skipped``."""

    total_lines: int = 0
    skipped: int = 0  # header, comment and blank lines
    accepted: int = 0
    rejected: int = 0
    rejections: list[Rejection] = field(default_factory=list)
    organisms: set[int] = field(default_factory=set)

    @property
    def data_lines(self) -> int:
        return self.accepted + self.rejected

    def summary(self) -> str:
        return f"accepted={self.accepted} rejected={self.rejected}"


def detect_columns(header_line: str) -> ColumnMap:
    """Resolve the logical columns from a TAB 2.0/3.0 header line.

    Matching is case-insensitive and ignores the conventional leading '#'.
    Raises :class:`MissingColumn` / :class:`AmbiguousColumn` when a required
    logical column cannot be resolved to exactly one index.
    """
    cells = header_line.rstrip("\r\n").split("\t")
    normalized = [c.strip().lstrip("#").strip().lower() for c in cells]

    def resolve(aliases: tuple[str, ...]) -> list[int]:
        return [i for i, cell in enumerate(normalized) if cell in aliases]

    indices: dict[str, int] = {}
    for logical, aliases in REQUIRED_ALIASES.items():
        hits = resolve(aliases)
        if not hits:
            raise MissingColumn(logical)
        if len(hits) > 1:
            raise AmbiguousColumn(logical, hits)
        indices[logical] = hits[0]

    if len(set(indices.values())) != len(indices):
        raise AmbiguousColumn("<header>", sorted(indices.values()))

    optional: dict[str, int] = {}
    for logical, aliases in OPTIONAL_ALIASES.items():
        hits = resolve(aliases)
        if len(hits) == 1:
            optional[logical] = hits[0]

    width = max(indices.values()) + 1
    return ColumnMap(indices=indices, optional=optional, width=width)


def _parse_pubmed(value: str) -> int | None:
    # "PUBMED:12345" and bare "12345" both yield 12345; anything that is not
    # a positive integer falls into the UNKNOWN bucket rather than rejecting
    # the line, so per-publication counts stay conserved.
    if value.upper().startswith("PUBMED:"):
        value = value[7:]
    if not value.isdigit():
        return None
    pubmed = int(value)
    return pubmed if pubmed > 0 else None


def parse_record(line: str, cols: ColumnMap, line_number: int) -> RawInteractionRecord:
    """Parse one data line into a validated record.

    Raises a :class:`RecordError` subclass (carrying ``line_number``) when the
    line is malformed.
    """
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) < cols.width:
        raise TooFewFields(
            f"line has {len(fields)} fields, {cols.width} required", line_number
        )
    idx = cols.indices

    display_a = fields[idx["symbol_a"]].strip()
    display_b = fields[idx["symbol_b"]].strip()
    if not display_a or display_a == "-" or not display_b or display_b == "-":
        raise EmptySymbol("missing interactor symbol", line_number)

    system = fields[idx["experimental_system"]].strip()
    if not system or system == "-":
        raise EmptyMethod("missing experimental system", line_number)

    stype_raw = fields[idx["experimental_system_type"]].strip().lower()
    if stype_raw == "physical":
        stype = SystemType.PHYSICAL
    elif stype_raw == "genetic":
        stype = SystemType.GENETIC
    else:
        raise BadSystemType(f"unknown system type {stype_raw!r}", line_number)

    author = fields[idx["author"]].strip()
    first_author = None if author in ("", "-") else author

    source = fields[idx["publication_source"]].strip()
    pubmed_id = None if source in ("", "-") else _parse_pubmed(source)

    def organism(key: str) -> int:
        raw = fields[idx[key]].strip()
        try:
            taxid = int(raw)
        except ValueError:
            raise BadOrganismId(f"organism id {raw!r} is not an integer", line_number)
        if taxid <= 0:
            raise BadOrganismId(f"organism id {taxid} is not positive", line_number)
        return taxid

    return RawInteractionRecord(
        symbol_a=display_a.upper(),
        symbol_b=display_b.upper(),
        display_a=display_a,
        display_b=display_b,
        experimental_system=system,
        experimental_system_type=stype,
        first_author=first_author,
        pubmed_id=pubmed_id,
        organism_a=organism("organism_a"),
        organism_b=organism("organism_b"),
        line_number=line_number,
    )


def _open_text(source: str | Path | BinaryIO) -> io.TextIOWrapper:
    if isinstance(source, (str, Path)):
        raw: BinaryIO = open(source, "rb")
    else:
        raw = source
    buffered = raw if isinstance(raw, io.BufferedReader) else io.BufferedReader(raw)
    if buffered.peek(2)[:2] == GZIP_MAGIC:
        buffered = io.BufferedReader(gzip.GzipFile(fileobj=buffered))
    return io.TextIOWrapper(buffered, encoding="utf-8", errors="replace", newline="")


def parse_file(
    source: str | Path | BinaryIO,
) -> tuple[list[RawInteractionRecord], ParseReport]:
    """Stream-parse a BioGRID export (plain or gzipped).

    The first non-empty line is the header. Records come back in file order;
    malformed lines land in the report instead of aborting the parse. Memory
    use is proportional to the number of accepted records, not the file size.
    """
    try:
        text = _open_text(source)
    except OSError as exc:
        raise UnreadableStream(str(exc)) from exc

    records: list[RawInteractionRecord] = []
    report = ParseReport()
    cols: ColumnMap | None = None
    try:
        for line_number, line in enumerate(text, start=1):
            report.total_lines += 1
            stripped = line.strip()
            if not stripped:
                report.skipped += 1
                continue
            if cols is None:
                cols = detect_columns(line)
                report.skipped += 1
                continue
            if stripped.startswith("#"):
                report.skipped += 1
                continue
            try:
                record = parse_record(line, cols, line_number)
            except RecordError as exc:
                report.rejected += 1
                report.rejections.append(
                    Rejection(exc.line_number, exc.code, exc.message)
                )
                continue
            records.append(record)
            report.accepted += 1
            report.organisms.add(record.organism_a)
            report.organisms.add(record.organism_b)
    except OSError as exc:
        raise UnreadableStream(str(exc)) from exc
    return records, report


def filter_organism(
    records: Iterable[RawInteractionRecord], taxid: int, mode: str = "either"
) -> list[RawInteractionRecord]:
    """Keep records involving ``taxid``; order is preserved.

    ``mode="either"`` (the default) keeps cross-species rows touching the
    organism; ``mode="both"`` requires both interactors to belong to it.
    """
    if taxid <= 0:
        raise ValueError("taxid must be positive")
    if mode == "either":
        return [r for r in records if taxid in (r.organism_a, r.organism_b)]
    if mode == "both":
        return [r for r in records if r.organism_a == taxid and r.organism_b == taxid]
    raise ValueError(f"unknown filter mode {mode!r}")


def record_to_line(record: RawInteractionRecord, cols: ColumnMap | None = None) -> str:
    """Serialize a record back to a canonical TAB line (round-trip safe)."""
    if cols is None:
        cols = detect_columns(TAB3_HEADER)
    fields = ["-"] * cols.width
    idx = cols.indices
    fields[idx["symbol_a"]] = record.display_a
    fields[idx["symbol_b"]] = record.display_b
    fields[idx["experimental_system"]] = record.experimental_system
    fields[idx["experimental_system_type"]] = record.experimental_system_type.value
    if record.first_author is not None:
        fields[idx["author"]] = record.first_author
    if record.pubmed_id is not None:
        fields[idx["publication_source"]] = f"PUBMED:{record.pubmed_id}"
    fields[idx["organism_a"]] = str(record.organism_a)
    fields[idx["organism_b"]] = str(record.organism_b)
    return "\t".join(fields)
