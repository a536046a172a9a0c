import json
import logging
import sys

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from codec.serializers import dumps
from core.exceptions import RegistryValidationError, TaxoboxError
from taxonomy.builtin import builtin_taxonomy
from taxonomy.documents import load_taxonomy

logger = logging.getLogger(__name__)

FINDINGS = 1
FAILURE = 2


def error_message(exc):
    if isinstance(exc, ValidationError):
        return "; ".join(exc.messages)
    if isinstance(exc, OSError) and exc.filename:
        return f"{exc.filename}: {exc.strerror}"
    return str(exc)


class TaxoboxCommand(BaseCommand):
    """Base for every taxobox subcommand.

    Subclasses implement ``run``. Payload goes to stdout, diagnostics to
    stderr. Domain and I/O errors exit 2, validation findings exit 1.
    """

    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.add_argument("--json", action="store_true", help="Emit one JSON document on stdout.")
        parser.add_argument("--taxonomy", metavar="FILE", help="Taxonomy document to use instead of the built-in one.")
        parser.add_argument("--color", action="store_true", help="Colorize diagnostics on a terminal.")
        return parser

    def execute(self, *args, **options):
        if not options.get("force_color"):
            options["no_color"] = not (options.get("color") and sys.stderr.isatty())
        return super().execute(*args, **options)

    def handle(self, *args, **options):
        self.json_output = options["json"]
        logger.debug("running %s", self.__class__.__module__.rsplit(".", 1)[-1])
        try:
            self.taxonomy = self.load_taxonomy(options["taxonomy"])
            self.run(*args, **options)
        except RegistryValidationError as exc:
            if self.json_output:
                self.emit(exc.report.as_dict())
            raise CommandError(str(exc), returncode=FINDINGS)
        except (ValidationError, TaxoboxError, OSError, ValueError) as exc:
            raise self.failure(error_message(exc))

    def run(self, *args, **options):
        raise NotImplementedError("subclasses of TaxoboxCommand must provide a run() method")

    def load_taxonomy(self, path):
        if path is None:
            return builtin_taxonomy()
        return load_taxonomy(path)

    def emit(self, payload):
        self.stdout.write(dumps(payload), ending="")

    def failure(self, message):
        if self.json_output:
            self.emit({"error": message})
        return CommandError(message, returncode=FAILURE)

    def findings(self, message):
        return CommandError(message, returncode=FINDINGS)
