import json
import logging
from functools import cache
from pathlib import Path
from types import MappingProxyType

from core.exceptions import UnknownFramework
from taxonomy.builtin import builtin_taxonomy

from .constants import FRAMEWORK_LABELS
from .models import CoverageCounts, CoverageMatrix, Framework, FrameworkCoverage

logger = logging.getLogger(__name__)

COVERAGE_MATRIX_PATH = Path(__file__).resolve().parent / "data" / "coverage_matrix.json"


def parse_coverage_matrix(document):
    """Build a matrix from ``{framework_id: [attribute_id, ...]}`` JSON text."""
    data = json.loads(document)
    labels = dict(FRAMEWORK_LABELS)
    return CoverageMatrix(
        frameworks=tuple(Framework(fid, labels.get(fid, fid)) for fid in data),
        covered=data,
    )


@cache
def coverage_matrix():
    """The shared framework coverage matrix, loaded once."""
    logger.debug("loading coverage matrix from %s", COVERAGE_MATRIX_PATH)
    return parse_coverage_matrix(COVERAGE_MATRIX_PATH.read_text(encoding="utf-8"))


def framework_coverage(matrix, framework_id, classification):
    """Split the attributes ``classification`` sets by whether a framework covers them."""
    if framework_id not in matrix:
        raise UnknownFramework(
            f"unknown framework {framework_id!r}; known: {', '.join(matrix.framework_ids)}"
        )
    set_attributes = classification.set_attributes
    covered = frozenset(a for a in set_attributes if matrix.covers(framework_id, a))
    return FrameworkCoverage(framework_id, covered, set_attributes - covered)


def coverage_counts(matrix, attribute_ids=None):
    if attribute_ids is None:
        attribute_ids = builtin_taxonomy().attribute_ids
    per_framework = {fid: len(matrix.covered[fid]) for fid in matrix.framework_ids}
    per_attribute = {a: len(matrix.frameworks_covering(a)) for a in attribute_ids}
    return CoverageCounts(MappingProxyType(per_framework), MappingProxyType(per_attribute))
