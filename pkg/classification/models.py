from dataclasses import dataclass, field
from types import MappingProxyType

from .constants import WARNING


def _frozen_mapping(mapping=None):
    return MappingProxyType(dict(mapping or {}))


@dataclass(frozen=True)
class Selection:
    characteristic_ids: frozenset
    subtype_id: str | None = None

    @classmethod
    def of(cls, *characteristic_ids, subtype=None):
        return cls(frozenset(characteristic_ids), subtype)

    @property
    def is_multi(self):
        return len(self.characteristic_ids) > 1

    @property
    def sole(self):
        """The single selected characteristic id, or None for multi-selections."""
        if len(self.characteristic_ids) != 1:
            return None
        return next(iter(self.characteristic_ids))

    def __contains__(self, characteristic_id):
        return characteristic_id in self.characteristic_ids


@dataclass(frozen=True)
class AssetClassification:
    """One asset's cells of the morphological box.

    ``selections`` maps attribute ids to Selection; an absent attribute is
    unset. ``notes`` maps attribute ids (set or not) to provenance text.
    Instances are read-only; assemble them with ClassificationBuilder.
    """

    asset_name: str
    taxonomy_id: str
    taxonomy_version: str
    selections: MappingProxyType = field(default_factory=_frozen_mapping)
    notes: MappingProxyType = field(default_factory=_frozen_mapping)
    asset_id: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "selections", _frozen_mapping(self.selections))
        object.__setattr__(self, "notes", _frozen_mapping(self.notes))

    def __str__(self):
        return self.asset_name

    @property
    def taxonomy_key(self):
        return (self.taxonomy_id, self.taxonomy_version)

    @property
    def set_attributes(self):
        return frozenset(self.selections)

    def selection(self, attribute_id):
        return self.selections.get(attribute_id)

    def builder(self):
        return ClassificationBuilder(
            self.asset_name,
            self.taxonomy_id,
            self.taxonomy_version,
            asset_id=self.asset_id,
            selections=self.selections,
            notes=self.notes,
        )


class ClassificationBuilder:
    """Mutable assembly step for an AssetClassification."""

    def __init__(self, asset_name, taxonomy_id, taxonomy_version, *, asset_id=None,
                 selections=None, notes=None):
        self.asset_name = asset_name
        self.taxonomy_id = taxonomy_id
        self.taxonomy_version = taxonomy_version
        self.asset_id = asset_id
        self.selections = dict(selections or {})
        self.notes = dict(notes or {})

    @classmethod
    def for_taxonomy(cls, taxonomy, asset_name):
        return cls(asset_name, taxonomy.id, taxonomy.version)

    def select(self, attribute_id, *characteristic_ids, subtype=None, note=None):
        self.selections[attribute_id] = Selection.of(*characteristic_ids, subtype=subtype)
        if note is not None:
            self.notes[attribute_id] = note
        return self

    def unset(self, attribute_id, note=None):
        self.selections.pop(attribute_id, None)
        if note is not None:
            self.notes[attribute_id] = note
        else:
            self.notes.pop(attribute_id, None)
        return self

    def note(self, attribute_id, text):
        self.notes[attribute_id] = text
        return self

    def build(self):
        return AssetClassification(
            asset_name=self.asset_name,
            taxonomy_id=self.taxonomy_id,
            taxonomy_version=self.taxonomy_version,
            selections=self.selections,
            notes=self.notes,
            asset_id=self.asset_id,
        )


@dataclass(frozen=True)
class LintFinding:
    rule_id: str
    attributes_involved: frozenset
    message: str
    severity: str = WARNING

    def __str__(self):
        return f"{self.rule_id} [{self.severity}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    mode: str
    errors: tuple = ()
    lint_findings: tuple = ()

    @property
    def is_valid(self):
        return not self.errors

    def as_dict(self):
        return {
            "mode": self.mode,
            "is_valid": self.is_valid,
            "errors": [{"attribute": a, "message": m} for a, m in self.errors],
            "lint_findings": [
                {
                    "rule_id": f.rule_id,
                    "severity": f.severity,
                    "attributes": sorted(f.attributes_involved),
                    "message": f.message,
                }
                for f in self.lint_findings
            ],
        }
