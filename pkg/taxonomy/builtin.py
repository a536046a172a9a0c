from functools import cache

from .constants import (
    BUILTIN_ATTRIBUTES,
    BUILTIN_TAXONOMY_ID,
    BUILTIN_TAXONOMY_NAME,
    BUILTIN_TAXONOMY_VERSION,
)
from .models import AttributeDef, CharacteristicDef, SubtypeDef, Taxonomy


@cache
def builtin_taxonomy():
    """The fourteen-attribute asset taxonomy shipped with taxobox."""
    attributes = []
    for attr_id, name, question, ordering, characteristics in BUILTIN_ATTRIBUTES:
        attributes.append(
            AttributeDef(
                id=attr_id,
                name=name,
                question=question,
                ordering=ordering,
                multi_select_allowed=True,
                characteristics=tuple(
                    CharacteristicDef(
                        id=char_id,
                        label=label,
                        code_letter=letter,
                        description=description,
                        subtypes=tuple(SubtypeDef(*subtype) for subtype in subtypes),
                    )
                    for char_id, label, letter, description, subtypes in characteristics
                ),
            )
        )
    return Taxonomy(
        id=BUILTIN_TAXONOMY_ID,
        name=BUILTIN_TAXONOMY_NAME,
        version=BUILTIN_TAXONOMY_VERSION,
        attributes=tuple(attributes),
    )
