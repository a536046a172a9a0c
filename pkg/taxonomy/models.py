from dataclasses import dataclass

from django.utils.functional import cached_property

from .constants import CUMULATIVE, UNORDERED


@dataclass(frozen=True)
class SubtypeDef:
    id: str
    label: str
    code_letter: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class CharacteristicDef:
    id: str
    label: str
    code_letter: str
    description: str = ""
    subtypes: tuple = ()

    def __str__(self):
        return self.label

    def subtype(self, subtype_id):
        for subtype in self.subtypes:
            if subtype.id == subtype_id:
                return subtype
        return None


@dataclass(frozen=True)
class AttributeDef:
    """One row of the morphological box.

    ``characteristics`` is ordered; for a cumulative attribute each
    characteristic contains the information of the ones before it.
    """

    id: str
    name: str
    question: str
    characteristics: tuple
    ordering: str = UNORDERED
    multi_select_allowed: bool = True

    def __str__(self):
        return self.name

    @property
    def is_cumulative(self):
        return self.ordering == CUMULATIVE

    @cached_property
    def characteristic_ids(self):
        return tuple(c.id for c in self.characteristics)

    def characteristic(self, characteristic_id):
        for characteristic in self.characteristics:
            if characteristic.id == characteristic_id:
                return characteristic
        return None

    def index_of(self, characteristic_id):
        return self.characteristic_ids.index(characteristic_id)

    def entails(self, selected, other):
        """Whether selecting ``selected`` implies the semantics of ``other``."""
        if selected == other:
            return True
        if not self.is_cumulative:
            return False
        return self.index_of(other) < self.index_of(selected)

    @cached_property
    def alphabet(self):
        """Code letters in box order, each subtype letter after its parent's."""
        letters = []
        for characteristic in self.characteristics:
            letters.append(characteristic.code_letter)
            letters.extend(s.code_letter for s in characteristic.subtypes)
        return tuple(letters)

    @cached_property
    def _by_letter(self):
        table = {}
        for characteristic in self.characteristics:
            table[characteristic.code_letter] = (characteristic.id, None)
            for subtype in characteristic.subtypes:
                table[subtype.code_letter] = (characteristic.id, subtype.id)
        return table

    def letter_for(self, characteristic_id, subtype_id=None):
        characteristic = self.characteristic(characteristic_id)
        if subtype_id is None:
            return characteristic.code_letter
        return characteristic.subtype(subtype_id).code_letter

    def resolve_letter(self, letter):
        """Return ``(characteristic_id, subtype_id)`` for a code letter, or None."""
        return self._by_letter.get(letter)


@dataclass(frozen=True)
class Taxonomy:
    id: str
    name: str
    version: str
    attributes: tuple

    def __str__(self):
        return f"{self.name} ({self.id} {self.version})"

    @property
    def key(self):
        return (self.id, self.version)

    @cached_property
    def attribute_ids(self):
        return tuple(a.id for a in self.attributes)

    @cached_property
    def _by_id(self):
        return {a.id: a for a in self.attributes}

    def attribute(self, attribute_id):
        return self._by_id.get(attribute_id)

    @property
    def characteristic_count(self):
        return sum(len(a.characteristics) for a in self.attributes)


@dataclass(frozen=True)
class SchemaViolation:
    path: str
    message: str

    def __str__(self):
        return f"{self.path}: {self.message}"
