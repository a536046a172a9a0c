import logging

from core.exceptions import TaxonomyMismatch

from .constants import STRICT, VALIDATION_MODE
from .lints import lint, lint_rules
from .models import AssetClassification, ValidationReport

logger = logging.getLogger(__name__)


def check_taxonomy(taxonomy, classification):
    if classification.taxonomy_key != taxonomy.key:
        raise TaxonomyMismatch(
            f"{classification.asset_name!r} is classified against "
            f"{classification.taxonomy_id} {classification.taxonomy_version}, "
            f"not {taxonomy.id} {taxonomy.version}"
        )


def selection_errors(attribute, selection):
    """Structural problems of one selection against its attribute definition."""
    ids = selection.characteristic_ids
    if not ids:
        return ["selection is empty"]

    errors = []
    for characteristic_id in sorted(ids):
        if attribute.characteristic(characteristic_id) is None:
            errors.append(f"unknown characteristic for attribute: {characteristic_id!r}")
    if len(ids) > 1 and not attribute.multi_select_allowed:
        errors.append("multiple characteristics selected but the attribute is single-select")

    if selection.subtype_id is not None:
        if len(ids) != 1:
            errors.append("a subtype requires exactly one selected characteristic")
        else:
            characteristic = attribute.characteristic(selection.sole)
            if characteristic is not None and characteristic.subtype(selection.subtype_id) is None:
                errors.append(
                    f"unknown subtype {selection.subtype_id!r} "
                    f"for characteristic {characteristic.id!r}"
                )
    return errors


def validate_classification(taxonomy, classification, mode=STRICT, rules=None):
    """Check ``classification`` against ``taxonomy``.

    Strict mode additionally requires every attribute to be set. Lints run in
    both modes over the attributes whose selections are structurally sound.
    """
    if mode not in dict(VALIDATION_MODE):
        raise ValueError(f"unknown validation mode {mode!r}")
    check_taxonomy(taxonomy, classification)

    errors = []
    for attribute_id in sorted(classification.selections):
        if taxonomy.attribute(attribute_id) is None:
            errors.append((attribute_id, "unknown attribute"))

    sound = {}
    for attribute in taxonomy.attributes:
        selection = classification.selection(attribute.id)
        if selection is None:
            if mode == STRICT:
                errors.append((attribute.id, "attribute is unset"))
            continue
        problems = selection_errors(attribute, selection)
        errors.extend((attribute.id, problem) for problem in problems)
        if not problems:
            sound[attribute.id] = selection

    findings = lint(
        taxonomy,
        AssetClassification(
            classification.asset_name,
            classification.taxonomy_id,
            classification.taxonomy_version,
            selections=sound,
        ),
        rules=lint_rules if rules is None else rules,
    )
    logger.debug(
        "validated %s (%s): %d error(s), %d lint finding(s)",
        classification.asset_name, mode, len(errors), len(findings),
    )
    return ValidationReport(mode=mode, errors=tuple(errors), lint_findings=tuple(findings))


def unset_attributes(taxonomy, classification):
    return frozenset(a.id for a in taxonomy.attributes if a.id not in classification.selections)


def describe(taxonomy, classification):
    """Pair each attribute's question with the labels selected for it.

    Returns ``(attribute, labels)`` tuples in box order; ``labels`` is an
    empty tuple for unset attributes.
    """
    readout = []
    for attribute in taxonomy.attributes:
        selection = classification.selection(attribute.id)
        labels = ()
        if selection is not None:
            labels = []
            for characteristic in attribute.characteristics:
                if characteristic.id not in selection:
                    continue
                subtype = None
                if selection.subtype_id is not None:
                    subtype = characteristic.subtype(selection.subtype_id)
                labels.append(f"{characteristic.label} ({subtype.label})" if subtype else characteristic.label)
            labels = tuple(labels)
        readout.append((attribute, labels))
    return readout
