import logging
from pathlib import Path

from core.documents import load_json
from core.exceptions import DocumentValidationError

from .forms import (
    AttributeDocumentForm,
    CharacteristicDocumentForm,
    SubtypeDocumentForm,
    TaxonomyDocumentForm,
)
from .models import AttributeDef, CharacteristicDef, SubtypeDef, Taxonomy
from .validators import validate_taxonomy

logger = logging.getLogger(__name__)


def _clean(form, problems):
    if form.is_valid():
        return form.cleaned_data
    problems.extend(form.problems())
    return None


def _parse_characteristic(document, path, problems):
    data = _clean(CharacteristicDocumentForm(document, path), problems)
    if data is None:
        return None
    subtypes = []
    for k, sub_document in enumerate(data["subtypes"]):
        sub = _clean(SubtypeDocumentForm(sub_document, f"{path}.subtypes[{k}]"), problems)
        if sub is not None:
            subtypes.append(SubtypeDef(sub["id"], sub["label"], sub["code_letter"]))
    return CharacteristicDef(
        id=data["id"],
        label=data["label"],
        code_letter=data["code_letter"],
        description=data["description"],
        subtypes=tuple(subtypes),
    )


def _parse_attribute(document, path, problems):
    data = _clean(AttributeDocumentForm(document, path), problems)
    if data is None:
        return None
    characteristics = []
    for j, char_document in enumerate(data["characteristics"]):
        characteristic = _parse_characteristic(
            char_document, f"{path}.characteristics[{j}]", problems
        )
        if characteristic is not None:
            characteristics.append(characteristic)
    return AttributeDef(
        id=data["id"],
        name=data["name"],
        question=data["question"],
        characteristics=tuple(characteristics),
        ordering=data["ordering"],
        multi_select_allowed=data["multi_select_allowed"],
    )


def taxonomy_from_document(document):
    """Build a Taxonomy from an already-decoded JSON value."""
    problems = []
    data = _clean(TaxonomyDocumentForm(document), problems)
    if data is None:
        raise DocumentValidationError(problems)

    attributes = []
    for i, attr_document in enumerate(data["attributes"]):
        attribute = _parse_attribute(attr_document, f"attributes[{i}]", problems)
        if attribute is not None:
            attributes.append(attribute)
    if problems:
        logger.debug("taxonomy document rejected: %d problem(s)", len(problems))
        raise DocumentValidationError(problems)

    taxonomy = Taxonomy(
        id=data["id"],
        name=data["name"],
        version=data["version"],
        attributes=tuple(attributes),
    )
    violations = validate_taxonomy(taxonomy)
    if violations:
        logger.debug("taxonomy %s violates the schema: %s", taxonomy.id, violations)
        raise DocumentValidationError((v.path, v.message) for v in violations)
    return taxonomy


def parse_taxonomy(document):
    """Parse a UTF-8 taxonomy document (text or bytes) into a Taxonomy."""
    return taxonomy_from_document(load_json(document))


def load_taxonomy(path):
    return parse_taxonomy(Path(path).read_bytes())
