from django.core.exceptions import ValidationError
from django.core.validators import RegexValidator

from .constants import (
    CODE_LETTER_PATTERN,
    MIN_CHARACTERISTICS,
    ORDERING_TYPE,
    SLUG_ID_PATTERN,
    SNAKE_ID_PATTERN,
)
from .models import SchemaViolation

validate_snake_id = RegexValidator(
    SNAKE_ID_PATTERN, "must be a snake-case token", code="invalid_id"
)
validate_slug_id = RegexValidator(
    SLUG_ID_PATTERN, "must be a slug of letters, digits, '-' or '_'", code="invalid_id"
)
validate_code_letter = RegexValidator(
    CODE_LETTER_PATTERN, "must be a single uppercase ASCII letter", code="invalid_code_letter"
)

ORDERINGS = frozenset(value for value, _ in ORDERING_TYPE)


def _check(validator, value, path, violations):
    try:
        validator(value)
    except ValidationError as exc:
        violations.extend(SchemaViolation(path, message) for message in exc.messages)


def _duplicates(items, path_of, what, violations):
    """Report each repeated key once per repeat, naming both positions."""
    first_seen = {}
    for position, key in enumerate(items):
        if key in first_seen:
            violations.append(
                SchemaViolation(
                    path_of(position),
                    f"duplicate {what} {key!r} (positions {first_seen[key]} and {position})",
                )
            )
        else:
            first_seen[key] = position


def validate_taxonomy(taxonomy):
    """Return every structural violation of ``taxonomy``; empty means valid."""
    violations = []
    _check(validate_slug_id, taxonomy.id, "id", violations)
    if not taxonomy.attributes:
        violations.append(SchemaViolation("attributes", "taxonomy requires at least one attribute"))

    _duplicates(
        [a.id for a in taxonomy.attributes],
        lambda i: f"attributes[{i}].id",
        "attribute id",
        violations,
    )

    for i, attribute in enumerate(taxonomy.attributes):
        path = f"attributes[{i}]"
        _check(validate_snake_id, attribute.id, f"{path}.id", violations)
        if attribute.ordering not in ORDERINGS:
            violations.append(
                SchemaViolation(f"{path}.ordering", f"unknown ordering {attribute.ordering!r}")
            )
        if len(attribute.characteristics) < MIN_CHARACTERISTICS:
            violations.append(
                SchemaViolation(
                    f"{path}.characteristics",
                    f"attribute requires ≥{MIN_CHARACTERISTICS} characteristics",
                )
            )
        _validate_characteristics(attribute, path, violations)

    return violations


def _validate_characteristics(attribute, path, violations):
    _duplicates(
        [c.id for c in attribute.characteristics],
        lambda j: f"{path}.characteristics[{j}].id",
        "characteristic id",
        violations,
    )

    # Characteristic and subtype letters share the attribute's code position.
    letters = []
    letter_paths = []
    for j, characteristic in enumerate(attribute.characteristics):
        char_path = f"{path}.characteristics[{j}]"
        _check(validate_snake_id, characteristic.id, f"{char_path}.id", violations)
        _check(validate_code_letter, characteristic.code_letter, f"{char_path}.code_letter", violations)
        letters.append(characteristic.code_letter)
        letter_paths.append(f"{char_path}.code_letter")

        _duplicates(
            [s.id for s in characteristic.subtypes],
            lambda k, p=char_path: f"{p}.subtypes[{k}].id",
            "subtype id",
            violations,
        )
        for k, subtype in enumerate(characteristic.subtypes):
            sub_path = f"{char_path}.subtypes[{k}]"
            _check(validate_snake_id, subtype.id, f"{sub_path}.id", violations)
            _check(validate_code_letter, subtype.code_letter, f"{sub_path}.code_letter", violations)
            letters.append(subtype.code_letter)
            letter_paths.append(f"{sub_path}.code_letter")

    _duplicates(letters, lambda n: letter_paths[n], "code_letter", violations)
