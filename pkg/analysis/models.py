from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

SHARED = "shared"
DIFFERING = "differing"
UNDETERMINED = "undetermined"

_STATUS_MARK = {SHARED: "=", DIFFERING: "!", UNDETERMINED: "?"}


def format_selection(selection):
    if selection is None:
        return "-"
    text = ", ".join(sorted(selection.characteristic_ids))
    if selection.subtype_id is not None:
        text = f"{text}/{selection.subtype_id}"
    return text


@dataclass(frozen=True)
class DiffReport:
    """Partition of a taxonomy's attributes for two classifications.

    ``rows`` keeps one ``(attribute_id, status, selection_a, selection_b)``
    entry per attribute in taxonomy order, for printing.
    """

    left_name: str
    right_name: str
    shared: frozenset
    differing: frozenset
    undetermined: frozenset
    rows: tuple = ()

    @property
    def per_attribute(self):
        return MappingProxyType(
            {attr: (a, b) for attr, status, a, b in self.rows if status == DIFFERING}
        )

    def as_dict(self):
        return {
            "left": self.left_name,
            "right": self.right_name,
            "shared": [r[0] for r in self.rows if r[1] == SHARED],
            "differing": [r[0] for r in self.rows if r[1] == DIFFERING],
            "undetermined": [r[0] for r in self.rows if r[1] == UNDETERMINED],
            "per_attribute": {
                attr: {"left": format_selection(a), "right": format_selection(b)}
                for attr, (a, b) in self.per_attribute.items()
            },
        }

    def as_text(self):
        lines = [(" ", "attribute", self.left_name, self.right_name)]
        for attr, status, a, b in self.rows:
            lines.append((_STATUS_MARK[status], attr, format_selection(a), format_selection(b)))
        name_width = max(len(line[1]) for line in lines) + 2
        left_width = max(len(line[2]) for line in lines) + 2
        return "\n".join(
            f"{mark} {attr.ljust(name_width)}{left.ljust(left_width)}{right}".rstrip()
            for mark, attr, left, right in lines
        ) + "\n"


@dataclass(frozen=True)
class SimilarityScore:
    """Share of attributes on which two classifications agree.

    ``value`` is None when the determined-only basis has no attribute set
    on both sides.
    """

    basis: str
    shared: int
    total: int

    @property
    def value(self):
        if self.total == 0:
            return None
        return Fraction(self.shared, self.total)

    def __str__(self):
        if self.value is None:
            return f"similarity ({self.basis}): undefined"
        return f"similarity ({self.basis}): {self.shared}/{self.total} = {float(self.value):.3f}"

    def as_dict(self):
        return {
            "basis": self.basis,
            "shared": self.shared,
            "total": self.total,
            "value": None if self.value is None else float(self.value),
        }


@dataclass(frozen=True)
class Framework:
    id: str
    label: str


@dataclass(frozen=True)
class CoverageMatrix:
    frameworks: tuple
    covered: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(
            self,
            "covered",
            MappingProxyType({fid: frozenset(attrs) for fid, attrs in self.covered.items()}),
        )

    @property
    def framework_ids(self):
        return tuple(f.id for f in self.frameworks)

    def __contains__(self, framework_id):
        return framework_id in self.covered

    def covers(self, framework_id, attribute_id):
        return attribute_id in self.covered[framework_id]

    def frameworks_covering(self, attribute_id):
        return tuple(fid for fid in self.framework_ids if self.covers(fid, attribute_id))

    def uncovered_attributes(self, attribute_ids):
        return tuple(a for a in attribute_ids if not self.frameworks_covering(a))


@dataclass(frozen=True)
class FrameworkCoverage:
    framework_id: str
    covered: frozenset
    dropped: frozenset

    def as_dict(self):
        return {
            "framework": self.framework_id,
            "covered": sorted(self.covered),
            "dropped": sorted(self.dropped),
        }


@dataclass(frozen=True)
class CoverageCounts:
    per_framework: MappingProxyType
    per_attribute: MappingProxyType

    def as_dict(self):
        return {
            "per_framework": dict(self.per_framework),
            "per_attribute": dict(self.per_attribute),
        }
