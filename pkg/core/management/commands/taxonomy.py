from codec.serializers import serialize_taxonomy, taxonomy_document
from core.exceptions import DocumentValidationError
from core.management.base import TaxoboxCommand


class Command(TaxoboxCommand):
    help = "Print the canonical taxonomy document, or check a custom taxonomy."

    def add_arguments(self, parser):
        parser.add_argument(
            "--check", action="store_true", help="Only report whether the taxonomy is valid."
        )

    def load_taxonomy(self, path):
        try:
            return super().load_taxonomy(path)
        except DocumentValidationError as exc:
            if self.json_output:
                self.emit({"is_valid": False, "errors": exc.messages})
            else:
                for message in exc.messages:
                    self.stdout.write(f"error: {message}")
            raise self.findings(f"{path} is not a valid taxonomy")

    def run(self, *args, **options):
        taxonomy = self.taxonomy
        if not options["check"]:
            if self.json_output:
                self.emit(taxonomy_document(taxonomy))
            else:
                self.stdout.write(serialize_taxonomy(taxonomy), ending="")
            return
        summary = (
            f"{taxonomy}: valid, {len(taxonomy.attributes)} attributes, "
            f"{taxonomy.characteristic_count} characteristics"
        )
        if self.json_output:
            self.emit({"is_valid": True, "id": taxonomy.id, "version": taxonomy.version,
                       "attributes": len(taxonomy.attributes),
                       "characteristics": taxonomy.characteristic_count})
        else:
            self.stdout.write(summary)
