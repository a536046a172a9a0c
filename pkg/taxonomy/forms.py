from django import forms

from core.documents import DocumentForm

from .constants import ORDERING_TYPE
from .validators import validate_code_letter, validate_slug_id, validate_snake_id


def _id_field(validator=validate_snake_id):
    return forms.CharField(strip=False, validators=[validator])


def _array(form, name):
    # The raw value: JSONField would happily decode a string holding JSON.
    value = form.document.get(name) if isinstance(form.document, dict) else None
    if value is None:
        return []
    if not isinstance(value, list):
        raise forms.ValidationError("must be an array", code="type")
    return value


class SubtypeDocumentForm(DocumentForm):
    id = _id_field()
    label = forms.CharField(strip=False)
    code_letter = forms.CharField(strip=False, validators=[validate_code_letter])


class CharacteristicDocumentForm(DocumentForm):
    optional_keys = frozenset({"subtypes"})

    id = _id_field()
    label = forms.CharField(strip=False)
    code_letter = forms.CharField(strip=False, validators=[validate_code_letter])
    description = forms.CharField(strip=False, required=False)
    subtypes = forms.JSONField(required=False)

    def clean_subtypes(self):
        return _array(self, "subtypes")


class AttributeDocumentForm(DocumentForm):
    id = _id_field()
    name = forms.CharField(strip=False)
    question = forms.CharField(strip=False)
    ordering = forms.ChoiceField(choices=ORDERING_TYPE)
    multi_select_allowed = forms.BooleanField(required=False)
    characteristics = forms.JSONField(required=False)

    def clean_characteristics(self):
        return _array(self, "characteristics")


class TaxonomyDocumentForm(DocumentForm):
    id = _id_field(validate_slug_id)
    name = forms.CharField(strip=False)
    version = forms.CharField(strip=False)
    attributes = forms.JSONField(required=False)

    def clean_attributes(self):
        return _array(self, "attributes")
