"""Nine-character asset identifiers.

Eight base-36 characters followed by one check character, the base-36
digit of the sum of the eight character values modulo 36. Any single
substituted character changes the sum by a non-multiple of 36, so it is
always detected.

>>> str(AssetId.from_payload("AAAAAAAA"))
'AAAAAAAA8'
>>> verify("AAAAAAAA7")
False
"""

import logging
from collections.abc import Mapping, Set as AbstractSet
from dataclasses import dataclass

from django.conf import settings
from django.utils.crypto import get_random_string

from core.exceptions import IdentifierExhausted, InvalidAssetId

from .constants import ID_ALPHABET, ID_PAYLOAD_LENGTH

logger = logging.getLogger(__name__)


def check_character(payload):
    total = sum(ID_ALPHABET.index(ch) for ch in payload)
    return ID_ALPHABET[total % len(ID_ALPHABET)]


@dataclass(frozen=True, order=True)
class AssetId:
    text: str

    def __str__(self):
        return self.text

    @property
    def payload(self):
        return self.text[:ID_PAYLOAD_LENGTH]

    @property
    def check(self):
        return self.text[ID_PAYLOAD_LENGTH]

    @classmethod
    def from_payload(cls, payload):
        if len(payload) != ID_PAYLOAD_LENGTH or any(ch not in ID_ALPHABET for ch in payload):
            raise InvalidAssetId(payload, f"payload must be {ID_PAYLOAD_LENGTH} base-36 characters")
        return cls(payload + check_character(payload))

    @classmethod
    def parse(cls, value):
        text = str(value).strip().upper()
        validate_asset_id(text)
        return cls(text)


def validate_asset_id(value):
    if len(value) != ID_PAYLOAD_LENGTH + 1:
        raise InvalidAssetId(value, f"expected {ID_PAYLOAD_LENGTH + 1} characters")
    if any(ch not in ID_ALPHABET for ch in value):
        raise InvalidAssetId(value, "only 0-9 and A-Z are allowed")
    if check_character(value[:ID_PAYLOAD_LENGTH]) != value[ID_PAYLOAD_LENGTH]:
        raise InvalidAssetId(value, "check character does not match")


def verify(value):
    try:
        validate_asset_id(str(value))
    except InvalidAssetId:
        return False
    return True


def _random_payload():
    return get_random_string(ID_PAYLOAD_LENGTH, ID_ALPHABET)


def mint_id(draw=None, taken=()):
    """Draw a fresh identifier, re-drawing on collision with ``taken``.

    ``draw`` is the entropy source: a callable returning eight base-36
    characters. ``taken`` holds id strings; sets and mappings are used as
    they are, other iterables are collected first.
    """
    draw = draw or _random_payload
    if not isinstance(taken, (AbstractSet, Mapping)):
        taken = {str(t) for t in taken}
    for _ in range(settings.TAXO_MINT_ATTEMPTS):
        asset_id = AssetId.from_payload(draw())
        if asset_id.text not in taken:
            return asset_id
        logger.info("asset id %s already taken, drawing again", asset_id)
    raise IdentifierExhausted(
        f"no free identifier after {settings.TAXO_MINT_ATTEMPTS} draws"
    )
