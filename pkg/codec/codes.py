"""Fixed-width compact codes, one symbol per attribute of a taxonomy.

Position i holds the code letter of the characteristic (or subtype) selected
for attribute i, ``-`` when the attribute is unset and ``*`` when several
characteristics are selected. ``*`` is lossy: decoding yields an unset
attribute carrying a note.

>>> from taxonomy.builtin import builtin_taxonomy
>>> str(encode(builtin_taxonomy(), decode(builtin_taxonomy(), "NTNP-DCNNFCNTF")))
'NTNP-DCNNFCNTF'
"""

from dataclasses import dataclass

from classification.models import ClassificationBuilder
from core.exceptions import CodeError

from .constants import DECODED_NAME, MULTI, MULTI_NOTE, UNSET


@dataclass(frozen=True)
class CompactCode:
    text: str

    def __str__(self):
        return self.text

    def __len__(self):
        return len(self.text)


def position_alphabet(attribute):
    return (*attribute.alphabet, UNSET, MULTI)


def encode(taxonomy, classification):
    """Encode a classification that is valid in partial mode against ``taxonomy``."""
    symbols = []
    for attribute in taxonomy.attributes:
        selection = classification.selection(attribute.id)
        if selection is None:
            symbols.append(UNSET)
        elif selection.is_multi:
            symbols.append(MULTI)
        else:
            symbols.append(attribute.letter_for(selection.sole, selection.subtype_id))
    return CompactCode("".join(symbols))


def decode(taxonomy, code):
    text = str(code)
    expected = len(taxonomy.attributes)
    if len(text) != expected:
        raise CodeError(f"code has {len(text)} symbols, expected {expected}")

    builder = ClassificationBuilder.for_taxonomy(taxonomy, DECODED_NAME.format(code=text))
    for position, (attribute, symbol) in enumerate(zip(taxonomy.attributes, text), start=1):
        if symbol == UNSET:
            continue
        if symbol == MULTI:
            builder.note(attribute.id, MULTI_NOTE)
            continue
        resolved = attribute.resolve_letter(symbol)
        if resolved is None:
            alphabet = position_alphabet(attribute)
            raise CodeError(
                f"position {position}: {symbol!r} not in {{{','.join(alphabet)}}}",
                position=position,
                symbol=symbol,
                alphabet=alphabet,
            )
        characteristic_id, subtype_id = resolved
        builder.select(attribute.id, characteristic_id, subtype=subtype_id)
    return builder.build()
