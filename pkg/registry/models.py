from dataclasses import dataclass

from core.exceptions import UnresolvedPredicate


@dataclass(frozen=True)
class RegistryEntry:
    asset_id: str
    asset_name: str
    created_at: str
    updated_at: str
    offset: int
    selections: tuple

    def selects(self, attribute_id, characteristic_id):
        for attr, characteristics in self.selections:
            if attr == attribute_id:
                return characteristic_id in characteristics
        return False

    def as_index(self):
        return {
            "asset_name": self.asset_name,
            "created_at": self.created_at,
            "updated_at": self.updated_at,
            "offset": self.offset,
            "selections": {attr: list(chars) for attr, chars in self.selections},
        }

    @classmethod
    def from_index(cls, asset_id, data):
        return cls(
            asset_id=asset_id,
            asset_name=data["asset_name"],
            created_at=data["created_at"],
            updated_at=data["updated_at"],
            offset=data["offset"],
            selections=tuple(
                (attr, tuple(chars)) for attr, chars in sorted(data["selections"].items())
            ),
        )


@dataclass(frozen=True)
class Query:
    """Conjunction of ``(attribute_id, characteristic_id)`` predicates.

    An entry matches when each named attribute is set and its selection
    contains the characteristic. No predicates match everything.
    """

    predicates: tuple = ()

    @classmethod
    def parse(cls, expressions):
        predicates = []
        for expression in expressions:
            attribute_id, sep, characteristic_id = expression.partition("=")
            if not sep or not attribute_id or not characteristic_id:
                raise ValueError(f"predicate {expression!r} is not of the form attr=characteristic")
            predicates.append((attribute_id.strip(), characteristic_id.strip()))
        return cls(tuple(predicates))

    def resolve(self, taxonomy):
        for attribute_id, characteristic_id in self.predicates:
            attribute = taxonomy.attribute(attribute_id)
            if attribute is None:
                raise UnresolvedPredicate(f"unknown attribute {attribute_id!r}")
            if attribute.characteristic(characteristic_id) is None:
                raise UnresolvedPredicate(
                    f"unknown characteristic {characteristic_id!r} for attribute {attribute_id!r}"
                )

    def matches(self, entry):
        return all(entry.selects(a, c) for a, c in self.predicates)
