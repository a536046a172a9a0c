from analysis.constants import DETERMINED_ONLY, SIMILARITY_BASIS
from analysis.diff import diff, similarity
from classification.documents import load_classification
from core.management.base import TaxoboxCommand


class Command(TaxoboxCommand):
    help = "Compare two classifications attribute by attribute."

    def add_arguments(self, parser):
        parser.add_argument("left")
        parser.add_argument("right")
        parser.add_argument(
            "--similarity",
            choices=[value for value, _ in SIMILARITY_BASIS],
            default=DETERMINED_ONLY,
            help="Denominator of the similarity score.",
        )

    def run(self, *args, **options):
        a = load_classification(options["left"])
        b = load_classification(options["right"])
        report = diff(self.taxonomy, a, b)
        score = similarity(self.taxonomy, a, b, options["similarity"])
        if self.json_output:
            self.emit({**report.as_dict(), "similarity": score.as_dict()})
        else:
            self.stdout.write(report.as_text(), ending="")
            self.stdout.write(str(score))
