from analysis.constants import FRAMEWORK_LABELS
from analysis.coverage import coverage_counts, coverage_matrix, framework_coverage
from classification.documents import load_classification
from core.management.base import TaxoboxCommand


class Command(TaxoboxCommand):
    help = "Map a classification onto an earlier framework, or count framework coverage."

    def add_arguments(self, parser):
        mode = parser.add_mutually_exclusive_group(required=True)
        mode.add_argument(
            "--framework",
            choices=[value for value, _ in FRAMEWORK_LABELS],
            help="Framework to project the classification onto.",
        )
        mode.add_argument("--counts", action="store_true", help="Print coverage counts.")
        parser.add_argument("file", nargs="?", help="Classification document, with --framework.")

    def run(self, *args, **options):
        matrix = coverage_matrix()
        if options["counts"]:
            self.print_counts(coverage_counts(matrix, self.taxonomy.attribute_ids))
            return
        if options["file"] is None:
            raise self.failure("--framework needs a classification document")
        classification = load_classification(options["file"])
        result = framework_coverage(matrix, options["framework"], classification)
        if self.json_output:
            self.emit(result.as_dict())
            return
        self.stdout.write(f"framework: {result.framework_id}")
        self.stdout.write(f"covered: {', '.join(sorted(result.covered)) or '-'}")
        self.stdout.write(f"dropped: {', '.join(sorted(result.dropped)) or '-'}")

    def print_counts(self, counts):
        if self.json_output:
            self.emit(counts.as_dict())
            return
        self.stdout.write("attributes covered per framework:")
        for framework_id, count in counts.per_framework.items():
            self.stdout.write(f"  {framework_id}: {count}")
        self.stdout.write("frameworks covering each attribute:")
        for attribute_id, count in counts.per_attribute.items():
            self.stdout.write(f"  {attribute_id}: {count}")
