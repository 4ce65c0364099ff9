"""Shared record builders and the seeded random-fixture generator."""

from __future__ import annotations

import random

from prolivis.ingest import ColumnMap, RawInteractionRecord, SystemType


def make_record(
    a: str,
    b: str,
    system: str = "FRET",
    stype: SystemType = SystemType.PHYSICAL,
    author: str | None = "Smith (2004)",
    pubmed: int | None = 15123456,
    org_a: int = 10116,
    org_b: int | None = None,
    line_number: int = 0,
    display_a: str | None = None,
    display_b: str | None = None,
) -> RawInteractionRecord:
    return RawInteractionRecord(
        symbol_a=a.upper(),
        symbol_b=b.upper(),
        display_a=display_a if display_a is not None else a,
        display_b=display_b if display_b is not None else b,
        experimental_system=system,
        experimental_system_type=stype,
        first_author=author,
        pubmed_id=pubmed,
        organism_a=org_a,
        organism_b=org_b if org_b is not None else org_a,
        line_number=line_number,
    )


def make_line(cols: ColumnMap, **values: str) -> str:
    """Build one TAB data line; unset columns get the '-' null marker."""
    fields = ["-"] * cols.width
    for logical, value in values.items():
        fields[cols[logical]] = value
    return "\t".join(fields)


# the worked fixture used throughout: two methods, three publications
# FRET carries publications 1 (x3) and 2 (x1); Two-hybrid carries 3 (x2)
def six_records() -> list[RawInteractionRecord]:
    return [
        make_record("A", "B", "FRET", author="X", pubmed=1),
        make_record("B", "A", "FRET", author="X", pubmed=1),
        make_record("A", "C", "FRET", author="X", pubmed=1),
        make_record("D", "E", "FRET", author="Y", pubmed=2),
        make_record("A", "C", "Two-hybrid", author="Z", pubmed=3),
        make_record("C", "D", "Two-hybrid", author="Z", pubmed=3),
    ]


def random_records(
    rng: random.Random,
    max_records: int = 200,
    n_methods: int = 10,
    n_publications: int = 30,
    n_proteins: int = 40,
    organisms: tuple[int, ...] = (10116,),
    cross_species_rate: float = 0.0,
) -> list[RawInteractionRecord]:
    """Random but structurally valid record sets for oracle comparisons."""
    methods = [f"Method-{i}" for i in range(1, rng.randint(1, n_methods) + 1)]
    publications: list[tuple[int | None, str | None]] = []
    for i in range(1, rng.randint(1, n_publications) + 1):
        if rng.random() < 0.75:
            publications.append((10_000 + i, f"Author{i} ({1990 + i % 30})"))
        elif rng.random() < 0.5:
            publications.append((None, f"Author{i} ({1990 + i % 30})"))
        else:
            publications.append((None, None))
    proteins = [f"Prot{i}" for i in range(1, rng.randint(1, n_proteins) + 1)]

    records = []
    for line_number in range(2, rng.randint(1, max_records) + 2):
        method = rng.choice(methods)
        pubmed, author = rng.choice(publications)
        a = rng.choice(proteins)
        b = rng.choice(proteins)  # may equal a: self-loops stay in
        org_a = rng.choice(organisms)
        org_b = org_a
        if rng.random() < cross_species_rate:
            org_b = rng.choice(organisms + (9606,))
        records.append(
            make_record(
                a.swapcase() if rng.random() < 0.1 else a,
                b,
                system=method.upper() if rng.random() < 0.2 else method,
                stype=rng.choice((SystemType.PHYSICAL, SystemType.GENETIC)),
                author=author,
                pubmed=pubmed,
                org_a=org_a,
                org_b=org_b,
                line_number=line_number,
            )
        )
    return records
