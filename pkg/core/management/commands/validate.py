from classification.constants import PARTIAL, STRICT
from classification.documents import load_classification
from classification.validation import describe, validate_classification
from core.exceptions import DocumentValidationError
from core.management.base import TaxoboxCommand


class Command(TaxoboxCommand):
    help = "Validate a classification document against the taxonomy."

    def add_arguments(self, parser):
        parser.add_argument("file", help="Classification document (JSON).")
        parser.add_argument(
            "--strict", action="store_true", help="Require every attribute to be set."
        )

    def run(self, *args, **options):
        try:
            classification = load_classification(options["file"])
        except DocumentValidationError as exc:
            if self.json_output:
                self.emit({"is_valid": False, "errors": exc.messages})
            else:
                for message in exc.messages:
                    self.stdout.write(f"error: {message}")
            raise self.findings(f"{options['file']} is not a valid classification document")

        mode = STRICT if options["strict"] else PARTIAL
        report = validate_classification(self.taxonomy, classification, mode)
        if self.json_output:
            self.emit({"asset_name": classification.asset_name, **report.as_dict()})
        else:
            verdict = "valid" if report.is_valid else "invalid"
            self.stdout.write(f"{classification.asset_name}: {verdict} ({mode})")
            for attribute, labels in describe(self.taxonomy, classification):
                self.stdout.write(f"  {attribute.question} {', '.join(labels) or '-'}")
            for attribute_id, message in report.errors:
                self.stdout.write(f"error: {attribute_id}: {message}")
            for finding in report.lint_findings:
                self.stdout.write(f"lint: {finding}")
        if not report.is_valid:
            raise self.findings(f"{len(report.errors)} validation error(s)")
