import re

from codec.codes import decode
from codec.serializers import classification_document, serialize_classification
from core.management.base import TaxoboxCommand

# Codes of classifications with the first attribute unset start with '-'.
DASHED_CODE = re.compile(r"-[-A-Z*]+")


class Command(TaxoboxCommand):
    help = "Print the canonical classification document of a compact code."

    def add_arguments(self, parser):
        parser.add_argument("code")

    def run_from_argv(self, argv):
        head, rest = argv[:2], argv[2:]
        codes = [arg for arg in rest if DASHED_CODE.fullmatch(arg)]
        if codes and "--" not in rest:
            options = [arg for arg in rest if not DASHED_CODE.fullmatch(arg)]
            argv = [*head, *options, "--", *codes]
        return super().run_from_argv(argv)

    def run(self, *args, **options):
        classification = decode(self.taxonomy, options["code"])
        if self.json_output:
            self.emit(classification_document(classification))
        else:
            self.stdout.write(serialize_classification(classification), ending="")
