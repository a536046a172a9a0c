import logging
from pathlib import Path

from core.documents import load_json
from core.exceptions import DocumentValidationError

from .forms import ClassificationDocumentForm, SelectionDocumentForm
from .models import ClassificationBuilder

logger = logging.getLogger(__name__)


def classification_from_document(document):
    """Build an AssetClassification from an already-decoded JSON value."""
    form = ClassificationDocumentForm(document)
    if not form.is_valid():
        raise DocumentValidationError(form.problems())
    data = form.cleaned_data

    problems = []
    builder = ClassificationBuilder(
        data["asset_name"],
        data["taxonomy_id"],
        data["taxonomy_version"],
        asset_id=data["asset_id"] or None,
    )
    for attribute_id, note in data["notes"].items():
        if attribute_id in data["selections"]:
            problems.append((f"notes.{attribute_id}", "notes of set attributes belong in the selection"))
        else:
            builder.note(attribute_id, note)

    for attribute_id, selection_document in data["selections"].items():
        selection_form = SelectionDocumentForm(selection_document, f"selections.{attribute_id}")
        if not selection_form.is_valid():
            problems.extend(selection_form.problems())
            continue
        selection = selection_form.cleaned_data
        builder.select(
            attribute_id,
            *selection["characteristics"],
            subtype=selection["subtype"] or None,
            note=selection["note"] or None,
        )

    if problems:
        logger.debug("classification document rejected: %d problem(s)", len(problems))
        raise DocumentValidationError(problems)
    return builder.build()


def parse_classification(document):
    """Parse a UTF-8 classification document (text or bytes)."""
    return classification_from_document(load_json(document))


def load_classification(path):
    return parse_classification(Path(path).read_bytes())
