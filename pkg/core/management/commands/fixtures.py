from pathlib import Path

from classification.constants import EXAMPLE_ASSETS
from classification.fixtures import fixture
from codec.serializers import serialize_classification
from core.management.base import TaxoboxCommand


class Command(TaxoboxCommand):
    help = "Export the reference classification fixtures as canonical documents."

    def add_arguments(self, parser):
        parser.add_argument("action", choices=["export"])
        parser.add_argument("directory")

    def run(self, *args, **options):
        directory = Path(options["directory"])
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for name in EXAMPLE_ASSETS:
            path = directory / f"{name}.json"
            path.write_text(serialize_classification(fixture(name)), encoding="utf-8")
            written.append(str(path))
        if self.json_output:
            self.emit({"written": written})
        else:
            for path in written:
                self.stdout.write(path)
