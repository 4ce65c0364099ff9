from __future__ import annotations

import pytest

from prolivis.ingest import TAB3_HEADER, detect_columns

TAB2_HEADER = (
    "#BioGRID Interaction ID\tEntrez Gene Interactor A\tEntrez Gene Interactor B"
    "\tBioGRID ID Interactor A\tBioGRID ID Interactor B"
    "\tSystematic Name Interactor A\tSystematic Name Interactor B"
    "\tOfficial Symbol Interactor A\tOfficial Symbol Interactor B"
    "\tSynonyms Interactor A\tSynonyms Interactor B"
    "\tExperimental System\tExperimental System Type\tAuthor\tPubmed ID"
    "\tOrganism Interactor A\tOrganism Interactor B\tThroughput\tScore"
    "\tModification\tPhenotypes\tQualifications\tTags\tSource Database"
)


@pytest.fixture(scope="session")
def tab3_cols():
    return detect_columns(TAB3_HEADER)
