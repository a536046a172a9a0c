from pathlib import Path

from classification.documents import load_classification
from core.management.base import TaxoboxCommand
from render.box import render
from render.constants import RENDER_FORMAT, TEXT
from render.models import RenderSpec


class Command(TaxoboxCommand):
    help = "Render the morphological box, optionally highlighting up to two classifications."

    def add_arguments(self, parser):
        parser.add_argument("overlays", nargs="*", metavar="overlay", help="Classification documents to highlight.")
        parser.add_argument("--format", choices=[value for value, _ in RENDER_FORMAT], default=TEXT)
        parser.add_argument("--out", metavar="FILE", help="Write the rendering to FILE instead of stdout.")

    def run(self, *args, **options):
        overlays = [load_classification(path) for path in options["overlays"]]
        spec = RenderSpec(self.taxonomy, overlays, options["format"])
        output = render(spec)
        if options["out"]:
            Path(options["out"]).write_text(output, encoding="utf-8")
            if self.json_output:
                self.emit({"format": spec.format, "out": options["out"]})
        elif self.json_output:
            self.emit({"format": spec.format, "output": output})
        else:
            self.stdout.write(output, ending="")
