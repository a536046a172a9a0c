import json
import logging

from django import forms
from django.forms.forms import NON_FIELD_ERRORS

from .exceptions import DocumentSyntaxError

logger = logging.getLogger(__name__)


def load_json(document):
    """Parse UTF-8 JSON text, reporting syntax errors with their position."""
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(
                "document is not valid UTF-8", line=1, column=exc.start + 1
            ) from exc
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        logger.debug("JSON syntax error: %s", exc)
        raise DocumentSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from exc


class DocumentForm(forms.Form):
    """A form bound to one JSON object of a document.

    Keys outside ``fields`` are rejected, every field must be present unless
    listed in ``optional_keys``, and JSON types must match the field kind:
    no coercion of numbers into strings or strings into booleans.
    """

    optional_keys = frozenset()

    def __init__(self, document, path=""):
        self.document = document
        self.path = path
        super().__init__(data=document if isinstance(document, dict) else {})

    def clean(self):
        cleaned_data = super().clean()
        if not isinstance(self.document, dict):
            raise forms.ValidationError("expected a JSON object", code="type")

        unknown = sorted(set(self.document) - set(self.fields))
        if unknown:
            raise forms.ValidationError(
                "unknown keys: %(keys)s",
                params={"keys": ", ".join(unknown)},
                code="unknown_keys",
            )

        for name, field in self.fields.items():
            if name in self.errors:
                continue
            if name not in self.document:
                if name not in self.optional_keys:
                    self.add_error(name, forms.ValidationError("missing key", code="missing"))
                continue
            value = self.document[name]
            if isinstance(field, forms.JSONField):
                continue
            if isinstance(field, forms.BooleanField) and not isinstance(value, bool):
                self.add_error(name, forms.ValidationError("must be a boolean", code="type"))
            elif isinstance(field, forms.CharField) and not isinstance(value, str):
                self.add_error(name, forms.ValidationError("must be a string", code="type"))
        return cleaned_data

    def problems(self):
        """Yield ``(path, message)`` for every error found by this form."""
        if not isinstance(self.document, dict):
            yield self.path or "$", "expected a JSON object"
            return
        for name, errors in self.errors.get_json_data().items():
            if name == NON_FIELD_ERRORS:
                where = self.path or "$"
            else:
                where = f"{self.path}.{name}" if self.path else name
            for error in errors:
                yield where, error["message"]
