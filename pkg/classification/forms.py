from django import forms

from core.documents import DocumentForm


def _raw(form, name):
    return form.document.get(name) if isinstance(form.document, dict) else None


class SelectionDocumentForm(DocumentForm):
    optional_keys = frozenset({"subtype", "note"})

    characteristics = forms.JSONField(required=False)
    subtype = forms.CharField(strip=False, required=False)
    note = forms.CharField(strip=False, required=False)

    def clean_characteristics(self):
        characteristics = _raw(self, "characteristics")
        if not isinstance(characteristics, list) or not all(
            isinstance(c, str) for c in characteristics
        ):
            raise forms.ValidationError("must be an array of characteristic ids", code="type")
        if not characteristics:
            raise forms.ValidationError("selection must not be empty", code="empty")
        if len(set(characteristics)) != len(characteristics):
            raise forms.ValidationError("characteristic ids must be distinct", code="duplicate")
        return characteristics


class ClassificationDocumentForm(DocumentForm):
    optional_keys = frozenset({"asset_id", "notes"})

    asset_id = forms.CharField(strip=False, required=False)
    asset_name = forms.CharField(strip=False)
    taxonomy_id = forms.CharField(strip=False)
    taxonomy_version = forms.CharField(strip=False)
    selections = forms.JSONField(required=False)
    notes = forms.JSONField(required=False)

    def clean_selections(self):
        selections = _raw(self, "selections")
        if selections is None:
            return {}
        if not isinstance(selections, dict):
            raise forms.ValidationError("must be an object keyed by attribute id", code="type")
        return selections

    def clean_notes(self):
        notes = _raw(self, "notes")
        if notes is None:
            return {}
        if not isinstance(notes, dict) or not all(isinstance(v, str) for v in notes.values()):
            raise forms.ValidationError("must map attribute ids to text", code="type")
        return notes
