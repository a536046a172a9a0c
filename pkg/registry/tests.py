import fcntl
import json
import os
import random
import tempfile
import unittest
from dataclasses import replace
from pathlib import Path
from unittest import mock

from django.test import SimpleTestCase, override_settings

from classification.fixtures import fixture, example_assets
from core.exceptions import (
    AssetNotFound,
    IdentifierExhausted,
    InvalidAssetId,
    LockTimeout,
    RegistryValidationError,
    StoreCorrupted,
    UnresolvedPredicate,
)
from taxonomy.builtin import builtin_taxonomy

from .constants import ID_ALPHABET
from .identifiers import AssetId, check_character, mint_id, verify
from .models import Query
from .store import RegistryStore


class AssetIdTests(SimpleTestCase):
    def test_check_character(self):
        self.assertEqual(check_character("AAAAAAAA"), "8")
        self.assertEqual(str(AssetId.from_payload("AAAAAAAA")), "AAAAAAAA8")
        self.assertEqual(str(AssetId.from_payload("00000000")), "000000000")

    def test_verify(self):
        self.assertTrue(verify("AAAAAAAA8"))
        self.assertFalse(verify("AAAAAAAA7"))
        self.assertFalse(verify("AAAAAAAA"))
        self.assertFalse(verify("AAAAAAAA8A"))
        self.assertFalse(verify("aaaaaaaa8"))
        self.assertFalse(verify("AAAA-AAA8"))

    def test_every_single_substitution_is_detected(self):
        rng = random.Random(36)
        for _ in range(200):
            asset_id = str(AssetId.from_payload("".join(rng.choices(ID_ALPHABET, k=8))))
            for position, original in enumerate(asset_id):
                for replacement in ID_ALPHABET:
                    if replacement == original:
                        continue
                    corrupted = asset_id[:position] + replacement + asset_id[position + 1:]
                    self.assertFalse(verify(corrupted), corrupted)

    def test_parse_normalises_input(self):
        self.assertEqual(AssetId.parse("  aaaaaaaa8\n"), AssetId("AAAAAAAA8"))

    def test_parse_rejects(self):
        for value, reason in (
            ("AAAAAAAA", "expected 9 characters"),
            ("AAAA_AAA8", "only 0-9 and A-Z are allowed"),
            ("AAAAAAAA7", "check character does not match"),
        ):
            with self.subTest(value=value):
                with self.assertRaises(InvalidAssetId) as ctx:
                    AssetId.parse(value)
                self.assertIn(reason, ctx.exception.messages[0])

    def test_parts(self):
        asset_id = AssetId("AAAAAAAA8")
        self.assertEqual((asset_id.payload, asset_id.check), ("AAAAAAAA", "8"))


class MintTests(SimpleTestCase):
    def test_minted_ids_verify(self):
        minted = {str(mint_id()) for _ in range(100)}
        self.assertTrue(all(verify(asset_id) for asset_id in minted))

    def test_redraw_on_collision(self):
        draws = iter(["AAAAAAAA", "BBBBBBBB"])
        asset_id = mint_id(draw=lambda: next(draws), taken={"AAAAAAAA8"})
        self.assertEqual(str(asset_id), "BBBBBBBBG")

    @override_settings(TAXO_MINT_ATTEMPTS=3)
    def test_exhaustion(self):
        calls = []

        def draw():
            calls.append(1)
            return "AAAAAAAA"

        with self.assertRaises(IdentifierExhausted):
            mint_id(draw=draw, taken=[AssetId("AAAAAAAA8")])
        self.assertEqual(len(calls), 3)


class QueryTests(SimpleTestCase):
    def test_parse(self):
        query = Query.parse(["legal_status=regulated", " fungibility = fungible "])
        self.assertEqual(
            query.predicates, (("legal_status", "regulated"), ("fungibility", "fungible"))
        )

    def test_parse_rejects_malformed_predicates(self):
        for expression in ("legal_status", "=regulated", "legal_status="):
            with self.subTest(expression=expression):
                with self.assertRaises(ValueError):
                    Query.parse([expression])

    def test_resolve(self):
        taxonomy = builtin_taxonomy()
        with self.assertRaises(UnresolvedPredicate):
            Query.parse(["colour=red"]).resolve(taxonomy)
        with self.assertRaises(UnresolvedPredicate):
            Query.parse(["legal_status=pending"]).resolve(taxonomy)


class RegistryStoreTests(SimpleTestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.path = Path(tmp.name) / "store"

    def seeded_store(self):
        store = RegistryStore(self.path)
        ids = {c.asset_name: store.add(c) for c in example_assets()}
        return store, ids

    def names(self, results):
        return [name for _, name in results]

    def read_index(self, store):
        return json.loads(store.index_path.read_text(encoding="utf-8"))

    def assertLockFree(self, store):
        with open(store.lock_path, "a") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX | fcntl.LOCK_NB)
            fcntl.flock(fh, fcntl.LOCK_UN)

    def test_add_and_get(self):
        store = RegistryStore(self.path)
        asset_id = store.add(fixture("cash"))
        self.assertTrue(verify(str(asset_id)))
        self.assertIn(asset_id, store)
        self.assertEqual(store.get(asset_id), replace(fixture("cash"), asset_id=str(asset_id)))
        self.assertEqual(store.get(str(asset_id).lower()).asset_name, "Cash")

    def test_update(self):
        store = RegistryStore(self.path)
        asset_id = store.add(fixture("cash"))
        created = store.entry(asset_id)
        store.update(asset_id, fixture("bitcoin"))

        self.assertEqual(store.get(asset_id).asset_name, "Bitcoin")
        updated = store.entry(asset_id)
        self.assertEqual(updated.created_at, created.created_at)
        self.assertGreater(updated.updated_at, created.updated_at)
        self.assertEqual(len(store), 1)

    def test_remove(self):
        store = RegistryStore(self.path)
        asset_id = store.add(fixture("cash"))
        store.remove(asset_id)
        self.assertEqual(len(store), 0)
        with self.assertRaises(AssetNotFound):
            store.get(asset_id)
        with self.assertRaises(AssetNotFound):
            store.remove(asset_id)

    def test_unknown_and_malformed_ids(self):
        store = RegistryStore(self.path)
        with self.assertRaises(AssetNotFound):
            store.get("AAAAAAAA8")
        with self.assertRaises(InvalidAssetId):
            store.get("AAAAAAAA7")
        with self.assertRaises(AssetNotFound):
            store.update("AAAAAAAA8", fixture("cash"))

    def test_invalid_classification_is_rejected(self):
        store = RegistryStore(self.path)
        broken = fixture("cash").builder().select("technology", "analog").build()
        with self.assertRaises(RegistryValidationError) as ctx:
            store.add(broken)
        self.assertFalse(ctx.exception.report.is_valid)
        self.assertEqual(len(store), 0)
        self.assertFalse(store.journal_path.exists())

    def test_partial_classifications_are_accepted(self):
        store = RegistryStore(self.path)
        store.add(fixture("cryptokitties"))
        self.assertEqual(len(store), 1)

    def test_query(self):
        store, _ = self.seeded_store()
        self.assertEqual(
            self.names(store.query(Query.parse(["legal_status=regulated"]))),
            ["Cash", "Crowdlitoken", "Traditional share"],
        )
        self.assertEqual(
            self.names(store.query(Query.parse(["fungibility=non_fungible"]))), ["CryptoKitties"]
        )
        self.assertEqual(
            self.names(store.query(Query.parse(["legal_status=regulated", "technology=physical"]))),
            ["Cash", "Traditional share"],
        )
        self.assertEqual(len(store.query(Query())), 6)

    def test_query_skips_unset_attributes(self):
        store, _ = self.seeded_store()
        self.assertEqual(
            self.names(store.query(Query.parse(["legal_status=unregulated"]))),
            ["Ether", "CryptoKitties"],
        )

    def test_query_with_unknown_predicate(self):
        store, _ = self.seeded_store()
        with self.assertRaises(UnresolvedPredicate):
            store.query(Query.parse(["colour=red"]))

    def test_reopen_from_index(self):
        store, ids = self.seeded_store()
        store.close()
        self.assertEqual(self.read_index(store)["journal_lines"], 6)
        with self.assertNoLogs("registry.store", "WARNING"):
            reopened = RegistryStore(self.path)
        self.assertEqual(reopened.entries(), store.entries())
        self.assertEqual(reopened.get(ids["Ether"]), store.get(ids["Ether"]))

    @override_settings(TAXO_INDEX_INTERVAL=4)
    def test_index_lags_behind_the_journal(self):
        store, ids = self.seeded_store()
        index = self.read_index(store)
        self.assertEqual(index["journal_lines"], 4)
        self.assertLess(index["journal_size"], store.journal_path.stat().st_size)

        reopened = RegistryStore(self.path)
        self.assertEqual(reopened.entries(), store.entries())
        self.assertEqual(reopened.get(ids["Traditional share"]).asset_name, "Traditional share")

    def test_context_manager_writes_the_index(self):
        with RegistryStore(self.path) as store:
            store.add(fixture("cash"))
            self.assertFalse(store.index_path.exists())
        self.assertEqual(self.read_index(store)["journal_size"], store.journal_path.stat().st_size)

    def test_reopen_without_index(self):
        store, ids = self.seeded_store()
        store.remove(ids["Cash"])
        store.close()
        store.index_path.unlink()
        with self.assertLogs("registry.store", "INFO") as logs:
            reopened = RegistryStore(self.path)
        self.assertTrue(any("no index" in line for line in logs.output))
        self.assertEqual(reopened.entries(), store.entries())
        self.assertNotIn(ids["Cash"], reopened)

    def test_index_ahead_of_the_journal_is_ignored(self):
        store, _ = self.seeded_store()
        store.close()
        store.journal_path.write_bytes(b"")
        with self.assertLogs("registry.store", "WARNING"):
            reopened = RegistryStore(self.path)
        self.assertEqual(len(reopened), 0)

    def test_rebuild_index(self):
        store, _ = self.seeded_store()
        store.index_path.write_text("{broken", encoding="utf-8")
        store.rebuild_index()
        index = self.read_index(store)
        self.assertEqual(index["journal_size"], store.journal_path.stat().st_size)
        self.assertEqual(index["journal_lines"], 6)
        self.assertEqual(len(index["entries"]), 6)

    def test_two_handles_share_the_journal(self):
        first = RegistryStore(self.path)
        second = RegistryStore(self.path)
        cash = first.add(fixture("cash"))
        bitcoin = second.add(fixture("bitcoin"))

        self.assertIn(cash, second)
        self.assertNotIn(bitcoin, first)
        first.refresh()
        self.assertEqual(first.entries(), second.entries())
        self.assertEqual(first.get(cash).asset_name, "Cash")

    @override_settings(TAXO_LOCK_TIMEOUT=0.05, TAXO_LOCK_POLL=0.01)
    def test_lock_timeout(self):
        store = RegistryStore(self.path)
        with open(store.lock_path, "w") as holder:
            holder.write("4242")
            holder.flush()
            fcntl.flock(holder, fcntl.LOCK_EX)
            with self.assertRaises(LockTimeout) as ctx:
                store.add(fixture("cash"))
        self.assertIn("pid 4242", str(ctx.exception))
        self.assertEqual(len(store), 0)

    @override_settings(TAXO_LOCK_TIMEOUT=0.05, TAXO_LOCK_POLL=0.01)
    def test_leftover_lock_file_does_not_block(self):
        store = RegistryStore(self.path)
        store.lock_path.write_text("4242", encoding="ascii")
        store.add(fixture("cash"))
        self.assertEqual(len(store), 1)
        self.assertEqual(store.lock_path.read_text(encoding="ascii"), str(os.getpid()))

    def test_lock_is_released(self):
        store = RegistryStore(self.path)
        store.add(fixture("cash"))
        self.assertLockFree(store)
        with self.assertRaises(AssetNotFound):
            store.remove("AAAAAAAA8")
        self.assertLockFree(store)

    def test_corrupted_line_is_reported(self):
        store = RegistryStore(self.path)
        store.add(fixture("cash"))
        with open(store.journal_path, "ab") as fh:
            fh.write(b"not json\n")
        with self.assertRaises(StoreCorrupted) as ctx:
            RegistryStore(self.path)
        self.assertEqual(ctx.exception.line_number, 2)

    def test_corrupted_line_past_the_index_is_reported(self):
        with RegistryStore(self.path) as store:
            store.add(fixture("cash"))
            store.add(fixture("bitcoin"))
        with open(store.journal_path, "ab") as fh:
            fh.write(b'{"op": "rename"}\n')
        with self.assertRaises(StoreCorrupted) as ctx:
            RegistryStore(self.path)
        self.assertEqual(ctx.exception.line_number, 3)

    @override_settings(TAXO_LOCK_TIMEOUT=1.0, TAXO_INDEX_INTERVAL=1)
    @unittest.skipUnless(hasattr(os, "fork"), "needs os.fork")
    def test_writer_killed_mid_write_does_not_block_later_writers(self):
        store = RegistryStore(self.path)
        store.add(fixture("cash"))

        pid = os.fork()
        if pid == 0:
            try:
                with mock.patch.object(RegistryStore, "_write_index", lambda self: os._exit(9)):
                    RegistryStore(self.path).add(fixture("bitcoin"))
            finally:
                os._exit(1)
        _, status = os.waitpid(pid, 0)
        self.assertEqual(os.waitstatus_to_exitcode(status), 9)

        reopened = RegistryStore(self.path)
        self.assertEqual(
            sorted(entry.asset_name for entry in reopened.entries()), ["Bitcoin", "Cash"]
        )
        reopened.add(fixture("ether"))
        self.assertEqual(len(reopened), 3)
        self.assertLockFree(reopened)

    @mock.patch("registry.store.os.fsync")
    def test_crash_between_append_and_index_rewrite(self, fsync):
        store = RegistryStore(self.path)
        fixtures = example_assets()
        ids = [
            store.add(replace(fixtures[i % len(fixtures)], asset_name=f"asset {i}"))
            for i in range(1000)
        ]
        self.assertEqual(len(set(ids)), 1000)

        with override_settings(TAXO_INDEX_INTERVAL=1), mock.patch.object(
            RegistryStore, "_write_index", side_effect=OSError("killed")
        ):
            with self.assertRaises(OSError):
                store.add(replace(fixture("ether"), asset_name="last words"))
        self.assertLockFree(store)
        # A second writer dies halfway through its journal line.
        with open(store.journal_path, "ab") as fh:
            fh.write(b'{"doc": {"asset_name": "torn')

        with self.assertLogs("registry.store", "WARNING"):
            reopened = RegistryStore(self.path)
        self.assertEqual(len(reopened), 1001)
        for i, asset_id in enumerate(ids):
            self.assertEqual(reopened.entry(asset_id).asset_name, f"asset {i}")
        self.assertEqual(
            self.names(reopened.query(Query.parse(["technology=physical"])))[:2],
            ["asset 0", "asset 5"],
        )
        self.assertIn("last words", [entry.asset_name for entry in reopened.entries()])

        with self.assertLogs("registry.store", "WARNING") as logs:
            asset_id = reopened.add(fixture("cash"))
        self.assertTrue(any("truncating" in line for line in logs.output))
        reopened.close()
        index = self.read_index(reopened)
        self.assertEqual(index["journal_size"], reopened.journal_path.stat().st_size)
        self.assertEqual(index["journal_lines"], 1002)
        self.assertTrue(reopened.journal_path.read_bytes().endswith(b"\n"))

        final = RegistryStore(self.path)
        self.assertEqual(len(final), 1002)
        self.assertEqual(final.get(asset_id).asset_name, "Cash")
