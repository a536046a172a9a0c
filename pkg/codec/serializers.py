"""Canonical JSON for taxonomy and classification documents.

Keys are sorted, normative arrays keep their order, indentation is two
spaces and the text ends with a newline, so output is stable across runs.
"""

import json

from .constants import JSON_INDENT


def dumps(value):
    return json.dumps(value, indent=JSON_INDENT, sort_keys=True, ensure_ascii=False) + "\n"


def taxonomy_document(taxonomy):
    return {
        "id": taxonomy.id,
        "name": taxonomy.name,
        "version": taxonomy.version,
        "attributes": [
            {
                "id": attribute.id,
                "name": attribute.name,
                "question": attribute.question,
                "ordering": attribute.ordering,
                "multi_select_allowed": attribute.multi_select_allowed,
                "characteristics": [
                    _characteristic_document(c) for c in attribute.characteristics
                ],
            }
            for attribute in taxonomy.attributes
        ],
    }


def _characteristic_document(characteristic):
    document = {
        "id": characteristic.id,
        "label": characteristic.label,
        "code_letter": characteristic.code_letter,
        "description": characteristic.description,
    }
    if characteristic.subtypes:
        document["subtypes"] = [
            {"id": s.id, "label": s.label, "code_letter": s.code_letter}
            for s in characteristic.subtypes
        ]
    return document


def classification_document(classification):
    selections = {}
    for attribute_id, selection in classification.selections.items():
        entry = {"characteristics": sorted(selection.characteristic_ids)}
        if selection.subtype_id is not None:
            entry["subtype"] = selection.subtype_id
        note = classification.notes.get(attribute_id)
        if note:
            entry["note"] = note
        selections[attribute_id] = entry

    document = {
        "asset_name": classification.asset_name,
        "taxonomy_id": classification.taxonomy_id,
        "taxonomy_version": classification.taxonomy_version,
        "selections": selections,
    }
    if classification.asset_id:
        document["asset_id"] = classification.asset_id
    unset_notes = {
        attribute_id: note
        for attribute_id, note in classification.notes.items()
        if attribute_id not in classification.selections and note
    }
    if unset_notes:
        document["notes"] = unset_notes
    return document


def serialize_taxonomy(taxonomy):
    return dumps(taxonomy_document(taxonomy))


def serialize_classification(classification):
    return dumps(classification_document(classification))
