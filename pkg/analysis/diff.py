from classification.validation import check_taxonomy
from core.exceptions import TaxonomyMismatch

from .constants import ALL_ATTRIBUTES, DETERMINED_ONLY
from .models import DIFFERING, SHARED, UNDETERMINED, DiffReport, SimilarityScore


def _cell(attribute, selection):
    """Comparable form of a selection; cumulative attributes compare by index."""
    if attribute.is_cumulative:
        ids = frozenset(attribute.index_of(c) for c in selection.characteristic_ids)
    else:
        ids = selection.characteristic_ids
    return ids, selection.subtype_id


def _check_pair(taxonomy, a, b):
    if a.taxonomy_key != b.taxonomy_key:
        raise TaxonomyMismatch(
            f"cannot compare {a.asset_name!r} ({a.taxonomy_id} {a.taxonomy_version}) "
            f"with {b.asset_name!r} ({b.taxonomy_id} {b.taxonomy_version})"
        )
    check_taxonomy(taxonomy, a)


def diff(taxonomy, a, b):
    _check_pair(taxonomy, a, b)
    rows = []
    partition = {SHARED: set(), DIFFERING: set(), UNDETERMINED: set()}
    for attribute in taxonomy.attributes:
        left = a.selection(attribute.id)
        right = b.selection(attribute.id)
        if left is None or right is None:
            status = UNDETERMINED
        elif _cell(attribute, left) == _cell(attribute, right):
            status = SHARED
        else:
            status = DIFFERING
        partition[status].add(attribute.id)
        rows.append((attribute.id, status, left, right))
    return DiffReport(
        left_name=a.asset_name,
        right_name=b.asset_name,
        shared=frozenset(partition[SHARED]),
        differing=frozenset(partition[DIFFERING]),
        undetermined=frozenset(partition[UNDETERMINED]),
        rows=tuple(rows),
    )


def similarity(taxonomy, a, b, basis=DETERMINED_ONLY):
    report = diff(taxonomy, a, b)
    shared = len(report.shared)
    if basis == DETERMINED_ONLY:
        return SimilarityScore(basis, shared, shared + len(report.differing))
    if basis == ALL_ATTRIBUTES:
        return SimilarityScore(basis, shared, len(taxonomy.attributes))
    raise ValueError(f"unknown similarity basis {basis!r}")
