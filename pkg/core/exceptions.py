from django.core.exceptions import ValidationError


class DocumentSyntaxError(ValidationError):
    """The document is not parseable JSON."""

    def __init__(self, message, *, line, column):
        self.line = line
        self.column = column
        super().__init__(
            f"{message} (line {line}, column {column})", code="syntax"
        )


class DocumentValidationError(ValidationError):
    """A taxonomy or classification document is structurally invalid.

    Each entry of ``messages`` has the form ``"<path>: <message>"``.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__(
            [f"{path}: {message}" for path, message in self.problems],
            code="invalid_document",
        )


class CodeError(ValidationError):
    def __init__(self, message, *, position=None, symbol=None, alphabet=()):
        self.position = position
        self.symbol = symbol
        self.alphabet = tuple(alphabet)
        super().__init__(message, code="invalid_code")


class InvalidAssetId(ValidationError):
    def __init__(self, value, reason):
        self.value = value
        super().__init__(
            f"{value!r} is not a valid asset identifier: {reason}",
            code="invalid_asset_id",
        )


class TaxoboxError(Exception):
    pass


class TaxonomyMismatch(TaxoboxError):
    pass


class UnknownFramework(TaxoboxError):
    pass


class InvalidOverlay(TaxoboxError):
    pass


class UnresolvedPredicate(TaxoboxError):
    pass


class AssetNotFound(TaxoboxError):
    def __init__(self, asset_id):
        self.asset_id = asset_id
        super().__init__(f"asset {asset_id} not found")


class RegistryValidationError(TaxoboxError):
    def __init__(self, report):
        self.report = report
        errors = "; ".join(f"{attr}: {msg}" for attr, msg in report.errors)
        super().__init__(f"classification rejected: {errors}")


class LockTimeout(TaxoboxError):
    pass


class StoreCorrupted(TaxoboxError):
    def __init__(self, path, line_number, reason):
        self.path = path
        self.line_number = line_number
        super().__init__(f"{path}: line {line_number}: {reason}")


class IdentifierExhausted(TaxoboxError):
    pass
