from django.conf import settings

from classification.documents import load_classification
from codec.serializers import classification_document, serialize_classification
from core.management.base import TaxoboxCommand
from registry.models import Query
from registry.store import RegistryStore


class Command(TaxoboxCommand):
    help = "Add, fetch, update, remove and query classified assets in a registry store."

    def add_arguments(self, parser):
        parser.add_argument(
            "--store",
            metavar="DIR",
            default=settings.TAXO_STORE,
            help="Store directory (default: $TAXO_STORE).",
        )
        actions = parser.add_subparsers(dest="action", required=True, metavar="action")

        add = actions.add_parser("add", help="Store a classification under a new id.")
        add.add_argument("file")

        get = actions.add_parser("get", help="Print the stored classification.")
        get.add_argument("asset_id")

        update = actions.add_parser("update", help="Replace a stored classification.")
        update.add_argument("asset_id")
        update.add_argument("file")

        remove = actions.add_parser("remove", help="Delete a stored classification.")
        remove.add_argument("asset_id")

        query = actions.add_parser("query", help="List assets matching every predicate.")
        query.add_argument(
            "--where",
            action="append",
            default=[],
            metavar="ATTR=CHARACTERISTIC",
            help="Predicate; repeat for a conjunction.",
        )

    def run(self, *args, **options):
        if not options["store"]:
            raise self.failure("no store directory; pass --store or set TAXO_STORE")
        with RegistryStore(options["store"], taxonomy=self.taxonomy) as store:
            getattr(self, f"do_{options['action']}")(store, options)

    def do_add(self, store, options):
        classification = load_classification(options["file"])
        asset_id = store.add(classification)
        self.report_id(asset_id, classification.asset_name)

    def do_get(self, store, options):
        classification = store.get(options["asset_id"])
        if self.json_output:
            self.emit(classification_document(classification))
        else:
            self.stdout.write(serialize_classification(classification), ending="")

    def do_update(self, store, options):
        classification = load_classification(options["file"])
        store.update(options["asset_id"], classification)
        self.report_id(store.entry(options["asset_id"]).asset_id, classification.asset_name)

    def do_remove(self, store, options):
        entry = store.entry(options["asset_id"])
        store.remove(entry.asset_id)
        self.report_id(entry.asset_id, entry.asset_name)

    def do_query(self, store, options):
        matches = store.query(Query.parse(options["where"]))
        if self.json_output:
            self.emit([{"id": str(asset_id), "asset_name": name} for asset_id, name in matches])
            return
        for asset_id, name in matches:
            self.stdout.write(f"{asset_id}  {name}")

    def report_id(self, asset_id, asset_name):
        if self.json_output:
            self.emit({"id": str(asset_id), "asset_name": asset_name})
        else:
            self.stdout.write(str(asset_id))
