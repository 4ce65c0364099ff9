"""Three-level abstraction over interaction records.

Level 1 is the organism overview: one hub node per experimental method, one
leaf node per publication, and semantic edges asserting "this publication
used this method", weighted by supporting record count. Publications whose
contribution falls below a collapse threshold are grouped into a collector
node under their strongest method; expanding a collector is the third level.
Level 2 is the per-publication protein interaction network.

All graphs here are pure functions of the input records: immutable, ordered
deterministically, and safe to share across threads.
"""

from __future__ import annotations

import math
import urllib.parse
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ProlivisError
from .ingest import RawInteractionRecord, SystemType

UNKNOWN_KEY_PREFIX = "unknown:"


class ModelError(ProlivisError):
    code = "model_error"


class InvalidThreshold(ModelError):
    code = "invalid_threshold"


class UnknownCollector(ModelError):
    code = "unknown_collector"


class UnknownPublication(ModelError):
    code = "unknown_publication"


class InvalidScale(ModelError):
    code = "invalid_scale"


class BadTemplate(ModelError):
    code = "bad_template"


def publication_key(record: RawInteractionRecord) -> str:
    """Stable identity of a record's publication.

    The PubMed ID when known; otherwise a composite bucket keyed by first
    author so records without a PubMed ID still belong to exactly one
    publication node.
    """
    if record.pubmed_id is not None:
        return str(record.pubmed_id)
    return UNKNOWN_KEY_PREFIX + (record.first_author or "")


@dataclass(frozen=True)
class MethodNode:
    method_name: str
    system_type: SystemType
    interaction_count: int

    @property
    def node_id(self) -> str:
        return f"m:{self.method_name}"


@dataclass(frozen=True)
class PublicationNode:
    pubmed_id: int | None
    first_author: str | None
    interaction_count: int
    collapsed: bool

    @property
    def key(self) -> str:
        if self.pubmed_id is not None:
            return str(self.pubmed_id)
        return UNKNOWN_KEY_PREFIX + (self.first_author or "")

    @property
    def node_id(self) -> str:
        return f"p:{self.key}"

    @property
    def label(self) -> str:
        author = self.first_author or "UNKNOWN"
        pubmed = self.pubmed_id if self.pubmed_id is not None else "unknown"
        return f"{author} [{pubmed}]"


def _publication_order(node: PublicationNode) -> tuple:
    # count descending, then known PubMed IDs ascending, then author.
    return (
        -node.interaction_count,
        node.pubmed_id is None,
        node.pubmed_id or 0,
        node.first_author or "",
    )


@dataclass(frozen=True)
class CollectorNode:
    method_name: str
    members: tuple[PublicationNode, ...]
    total_count: int

    @property
    def collector_id(self) -> str:
        return self.method_name

    @property
    def node_id(self) -> str:
        return f"c:{self.method_name}"

    @property
    def member_keys(self) -> tuple[str, ...]:
        return tuple(m.key for m in self.members)


@dataclass(frozen=True)
class SemanticEdge:
    method_name: str
    publication: str
    support_count: int


@dataclass(frozen=True)
class OverviewGraph:
    taxid: int
    theta: int
    methods: tuple[MethodNode, ...]
    publications: tuple[PublicationNode, ...]  # visible (non-collapsed) only
    collectors: tuple[CollectorNode, ...]
    edges: tuple[SemanticEdge, ...]
    total_records: int

    def all_publications(self) -> list[PublicationNode]:
        members = [m for c in self.collectors for m in c.members]
        return list(self.publications) + members

    def collector(self, collector_id: str) -> CollectorNode:
        wanted = collector_id.lower()
        for col in self.collectors:
            if col.collector_id.lower() == wanted:
                return col
        raise UnknownCollector(f"no collector {collector_id!r}", collector_id=collector_id)


@dataclass(frozen=True)
class Protein:
    symbol: str
    display: str


@dataclass(frozen=True)
class PpiEdge:
    a: str
    b: str
    multiplicity: int
    methods: tuple[str, ...]

    @property
    def is_self_loop(self) -> bool:
        return self.a == self.b


@dataclass(frozen=True)
class PpiGraph:
    publication: str
    pubmed_id: int | None
    first_author: str | None
    proteins: tuple[Protein, ...]
    edges: tuple[PpiEdge, ...]

    @property
    def record_count(self) -> int:
        return sum(e.multiplicity for e in self.edges)


@dataclass(frozen=True)
class NodeSizeScale:
    min_size: float = 4.0
    max_size: float = 40.0
    scaling: str = "sqrt_area"  # or "linear"


@dataclass(frozen=True)
class ExternalLinks:
    biogrid_url: str
    uniprot_url: str
    amigo_url: str


def build_overview(
    records: Sequence[RawInteractionRecord], taxid: int, theta: int = 3
) -> OverviewGraph:
    """Build the level-1/level-3 overview for already organism-filtered records.

    One method node per distinct experimental system (case-insensitive
    identity, first-seen display casing), one publication node per publication
    key, and a semantic edge per observed (method, publication) pair. A
    publication whose count falls below ``theta`` is collapsed into the
    collector of its owning method, the method with the greatest support for
    it (ties broken lexicographically) — unless it is the only publication.
    """
    if theta < 1:
        raise InvalidThreshold(f"collapse threshold must be >= 1, got {theta}")

    method_counts: Counter[str] = Counter()
    method_display: dict[str, str] = {}
    method_type: dict[str, SystemType] = {}
    pub_counts: Counter[str] = Counter()
    pub_fields: dict[str, tuple[int | None, str | None]] = {}
    pair_support: Counter[tuple[str, str]] = Counter()

    for record in records:
        mkey = record.experimental_system.lower()
        method_counts[mkey] += 1
        method_display.setdefault(mkey, record.experimental_system)
        method_type.setdefault(mkey, record.experimental_system_type)
        pkey = publication_key(record)
        pub_counts[pkey] += 1
        if pkey not in pub_fields or (
            pub_fields[pkey][1] is None and record.first_author is not None
        ):
            pub_fields[pkey] = (record.pubmed_id, record.first_author)
        pair_support[(mkey, pkey)] += 1

    methods = tuple(
        MethodNode(method_display[k], method_type[k], method_counts[k])
        for k in sorted(method_counts, key=lambda k: (-method_counts[k], k))
    )

    collapsible = set()
    if len(pub_counts) > 1:
        collapsible = {k for k, n in pub_counts.items() if n < theta}

    def make_pub(pkey: str) -> PublicationNode:
        pubmed, author = pub_fields[pkey]
        return PublicationNode(pubmed, author, pub_counts[pkey], pkey in collapsible)

    visible = tuple(
        sorted(
            (make_pub(k) for k in pub_counts if k not in collapsible),
            key=_publication_order,
        )
    )

    # Owning method of a collapsed publication: the method with the greatest
    # support for it, so each publication joins exactly one collector.
    members_by_method: dict[str, list[PublicationNode]] = {}
    for pkey in collapsible:
        owner = min(
            (m for (m, p) in pair_support if p == pkey),
            key=lambda m: (-pair_support[(m, pkey)], m),
        )
        members_by_method.setdefault(owner, []).append(make_pub(pkey))

    collectors = []
    for method in methods:
        mkey = method.method_name.lower()
        members = members_by_method.get(mkey)
        if not members:
            continue
        members.sort(key=_publication_order)
        collectors.append(
            CollectorNode(
                method_name=method.method_name,
                members=tuple(members),
                total_count=sum(m.interaction_count for m in members),
            )
        )

    edges = tuple(
        SemanticEdge(method_display[m], p, pair_support[(m, p)])
        for (m, p) in sorted(pair_support)
    )

    return OverviewGraph(
        taxid=taxid,
        theta=theta,
        methods=methods,
        publications=visible,
        collectors=tuple(collectors),
        edges=edges,
        total_records=len(records),
    )


def expand_collector(overview: OverviewGraph, collector_id: str) -> list[PublicationNode]:
    """Member publications of a collector, largest contribution first."""
    return list(overview.collector(collector_id).members)


def publication_network(
    records: Iterable[RawInteractionRecord], pub_key: str
) -> PpiGraph:
    """Deduplicated undirected protein graph of one publication's records.

    At most one edge per unordered symbol pair; its multiplicity is the
    number of supporting records and its method set the distinct systems
    observed. Self-interactions stay as self-loops.
    """
    selected = [r for r in records if publication_key(r) == pub_key]
    if not selected:
        raise UnknownPublication(f"no records for publication {pub_key!r}", key=pub_key)

    display: dict[str, str] = {}
    multiplicity: Counter[tuple[str, str]] = Counter()
    edge_methods: dict[tuple[str, str], dict[str, str]] = {}
    for record in selected:
        display.setdefault(record.symbol_a, record.display_a)
        display.setdefault(record.symbol_b, record.display_b)
        pair = tuple(sorted((record.symbol_a, record.symbol_b)))
        multiplicity[pair] += 1
        edge_methods.setdefault(pair, {}).setdefault(
            record.experimental_system.lower(), record.experimental_system
        )

    proteins = tuple(Protein(sym, display[sym]) for sym in sorted(display))
    edges = tuple(
        PpiEdge(a, b, multiplicity[(a, b)], tuple(sorted(edge_methods[(a, b)].values())))
        for (a, b) in sorted(multiplicity)
    )
    first = selected[0]
    return PpiGraph(
        publication=pub_key,
        pubmed_id=first.pubmed_id,
        first_author=first.first_author,
        proteins=proteins,
        edges=edges,
    )


def node_size(count: int, counts_max: int, scale: NodeSizeScale = NodeSizeScale()) -> float:
    """Display size for a contribution count; monotone in ``count``."""
    if scale.min_size >= scale.max_size:
        raise InvalidScale(
            f"min_size {scale.min_size} must be < max_size {scale.max_size}"
        )
    if counts_max < 1:
        raise ValueError("counts_max must be >= 1")
    if not 0 <= count <= counts_max:
        raise ValueError(f"count {count} outside [0, {counts_max}]")
    ratio = count / counts_max
    if scale.scaling == "sqrt_area":
        ratio = math.sqrt(ratio)
    elif scale.scaling != "linear":
        raise InvalidScale(f"unknown scaling {scale.scaling!r}")
    return scale.min_size + (scale.max_size - scale.min_size) * ratio


def protein_links(
    symbol: str, taxid: int, templates: Mapping[str, str]
) -> ExternalLinks:
    """Build the outbound database URLs for a protein.

    ``templates`` maps {"biogrid", "uniprot", "amigo"} to URL templates with a
    mandatory ``{symbol}`` placeholder and an optional ``{taxid}``. Pure string
    construction; nothing is fetched.
    """
    if not symbol:
        raise ValueError("symbol must be non-empty")

    def fill(name: str) -> str:
        template = templates.get(name)
        if template is None or "{symbol}" not in template:
            raise BadTemplate(
                f"template {name!r} missing or lacks {{symbol}} placeholder", name=name
            )
        return template.replace(
            "{symbol}", urllib.parse.quote(symbol, safe="")
        ).replace("{taxid}", str(taxid))

    return ExternalLinks(
        biogrid_url=fill("biogrid"),
        uniprot_url=fill("uniprot"),
        amigo_url=fill("amigo"),
    )
