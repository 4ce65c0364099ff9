"""Offline explorer engine for protein-interaction literature.

Ingests BioGRID tab-delimited exports, abstracts them into a three-level
method/publication/interaction hierarchy, lays the graphs out
deterministically, persists everything as an indexed offline snapshot, and
serves it to interactive clients over a read-only JSON API.
"""

from .errors import ProlivisError
from .ingest import (
    ParseReport,
    RawInteractionRecord,
    SystemType,
    detect_columns,
    filter_organism,
    parse_file,
    parse_record,
)
from .layout import LayoutParams, LayoutResult, force_directed, normalize_positions, radial_overview
from .model import (
    NodeSizeScale,
    OverviewGraph,
    PpiGraph,
    build_overview,
    expand_collector,
    node_size,
    protein_links,
    publication_key,
    publication_network,
)
from .store import Snapshot, load_snapshot, query, save_snapshot

__version__ = "0.1.0"

__all__ = [
    "ProlivisError",
    "ParseReport",
    "RawInteractionRecord",
    "SystemType",
    "detect_columns",
    "filter_organism",
    "parse_file",
    "parse_record",
    "LayoutParams",
    "LayoutResult",
    "force_directed",
    "normalize_positions",
    "radial_overview",
    "NodeSizeScale",
    "OverviewGraph",
    "PpiGraph",
    "build_overview",
    "expand_collector",
    "node_size",
    "protein_links",
    "publication_key",
    "publication_network",
    "Snapshot",
    "load_snapshot",
    "query",
    "save_snapshot",
    "__version__",
]
