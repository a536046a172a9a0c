from classification.constants import PARTIAL
from classification.documents import load_classification
from classification.validation import validate_classification
from codec.codes import encode
from core.management.base import TaxoboxCommand


class Command(TaxoboxCommand):
    help = "Print the compact code of a classification document."

    def add_arguments(self, parser):
        parser.add_argument("file", help="Classification document (JSON).")

    def run(self, *args, **options):
        classification = load_classification(options["file"])
        report = validate_classification(self.taxonomy, classification, PARTIAL)
        if not report.is_valid:
            if self.json_output:
                self.emit(report.as_dict())
            for attribute_id, message in report.errors:
                self.stderr.write(f"{attribute_id}: {message}")
            raise self.findings(f"cannot encode {classification.asset_name!r}")

        code = encode(self.taxonomy, classification)
        if self.json_output:
            self.emit({"asset_name": classification.asset_name, "code": str(code)})
        else:
            self.stdout.write(str(code))
