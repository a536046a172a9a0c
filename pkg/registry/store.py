"""File-backed registry of classified assets.

Layout of a store directory::

    journal.jsonl   append-only, one {op, id, ts, doc?} object per line
    index.json      snapshot of the entries as of some journal prefix
    .lock           flock()ed by the writer mutating the store

The journal is the source of truth. Every mutation appends and fsyncs one
journal line. The index records how many journal bytes and lines it covers;
opening a store loads the index and replays only the journal beyond it, so
the index may lag behind the journal (it is rewritten every
``TAXO_INDEX_INTERVAL`` mutations and on ``close``) and a crash at any point
loses nothing.

The lock is an advisory ``flock`` held on ``.lock``; the operating system
releases it when the writer exits, killed or not.
"""

import fcntl
import json
import logging
import os
import time
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path

from django.conf import settings
from django.utils import timezone

from classification.constants import PARTIAL
from classification.documents import classification_from_document
from classification.validation import validate_classification
from codec.serializers import classification_document
from core.exceptions import (
    AssetNotFound,
    LockTimeout,
    RegistryValidationError,
    StoreCorrupted,
)
from taxonomy.builtin import builtin_taxonomy

from .constants import ADD, INDEX_FILE, JOURNAL_FILE, JOURNAL_OP, LOCK_FILE, REMOVE, UPDATE
from .identifiers import AssetId, mint_id
from .models import RegistryEntry

logger = logging.getLogger(__name__)


def _compact_selections(document):
    return tuple(
        (attr, tuple(sorted(selection["characteristics"])))
        for attr, selection in sorted(document["selections"].items())
    )


class RegistryStore:
    """Handle on one store directory.

    A handle is not thread-safe; open one per thread. Readers never take
    the lock and see the journal as of their last ``refresh``. Close the
    handle (or use it as a context manager) to leave a current index behind.
    """

    def __init__(self, path, taxonomy=None):
        self.path = Path(path)
        self.taxonomy = taxonomy or builtin_taxonomy()
        self.path.mkdir(parents=True, exist_ok=True)
        self._entries = {}
        self._journal_size = 0
        self._journal_lines = 0
        self._unindexed = 0
        self.refresh()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()

    @property
    def journal_path(self):
        return self.path / JOURNAL_FILE

    @property
    def index_path(self):
        return self.path / INDEX_FILE

    @property
    def lock_path(self):
        return self.path / LOCK_FILE

    def __len__(self):
        return len(self._entries)

    def __contains__(self, asset_id):
        return str(asset_id) in self._entries

    def _file_size(self):
        try:
            return self.journal_path.stat().st_size
        except FileNotFoundError:
            return 0

    # ----- loading -----

    def refresh(self):
        """Reload from the index, then replay the journal beyond it."""
        size = self._file_size()
        index = self._read_index()
        if index is None:
            if size:
                logger.info("no index for %s; replaying journal", self.path)
            self._replay({}, 0, 0)
        elif index["journal_size"] > size:
            logger.warning("index of %s is ahead of its journal; replaying journal", self.path)
            self._replay({}, 0, 0)
        else:
            entries = {
                asset_id: RegistryEntry.from_index(asset_id, data)
                for asset_id, data in index["entries"].items()
            }
            self._replay(entries, index["journal_size"], index["journal_lines"])
        logger.info("opened %s: %d entries", self.path, len(self._entries))

    def _read_index(self):
        try:
            with open(self.index_path, encoding="utf-8") as fh:
                index = json.load(fh)
        except FileNotFoundError:
            return None
        except ValueError as exc:
            logger.warning("ignoring unreadable index %s: %s", self.index_path, exc)
            return None
        if (
            not isinstance(index, dict)
            or not isinstance(index.get("entries"), dict)
            or not isinstance(index.get("journal_size"), int)
            or not isinstance(index.get("journal_lines"), int)
        ):
            logger.warning("ignoring malformed index %s", self.index_path)
            return None
        return index

    def _replay(self, entries, offset, lines):
        """Apply the journal from byte ``offset`` (after ``lines`` lines) onto ``entries``."""
        try:
            fh = open(self.journal_path, "rb")
        except FileNotFoundError:
            self._entries, self._journal_size, self._journal_lines = entries, 0, 0
            return
        start = offset
        with fh:
            fh.seek(offset)
            for line_number, raw in enumerate(fh, start=lines + 1):
                if not raw.endswith(b"\n"):
                    logger.warning(
                        "ignoring torn journal tail at %s line %d", self.journal_path, line_number
                    )
                    break
                try:
                    record = json.loads(raw)
                except ValueError as exc:
                    raise StoreCorrupted(self.journal_path, line_number, f"invalid JSON ({exc})")
                self._apply(entries, record, offset, line_number)
                offset += len(raw)
                lines = line_number
        self._entries, self._journal_size, self._journal_lines = entries, offset, lines
        if offset > start:
            logger.debug("replayed %s from byte %d to %d", self.journal_path, start, offset)

    def _apply(self, entries, record, offset, line_number):
        def corrupted(reason):
            return StoreCorrupted(self.journal_path, line_number, reason)

        if not isinstance(record, dict):
            raise corrupted("journal record is not an object")
        op, asset_id, ts = record.get("op"), record.get("id"), record.get("ts")
        if op not in dict(JOURNAL_OP) or not isinstance(asset_id, str) or not isinstance(ts, str):
            raise corrupted("journal record needs op, id and ts")

        if op == REMOVE:
            if entries.pop(asset_id, None) is None:
                raise corrupted(f"remove of unknown asset {asset_id}")
            return

        document = record.get("doc")
        try:
            asset_name = document["asset_name"]
            selections = _compact_selections(document)
        except (KeyError, TypeError) as exc:
            raise corrupted(f"malformed classification document ({exc!r})")

        if op == ADD:
            if asset_id in entries:
                raise corrupted(f"duplicate add of asset {asset_id}")
            created_at = ts
        else:
            if asset_id not in entries:
                raise corrupted(f"update of unknown asset {asset_id}")
            created_at = entries[asset_id].created_at
        entries[asset_id] = RegistryEntry(
            asset_id=asset_id,
            asset_name=asset_name,
            created_at=created_at,
            updated_at=ts,
            offset=offset,
            selections=selections,
        )

    # ----- writing -----

    @contextmanager
    def _write_lock(self):
        fd = os.open(self.lock_path, os.O_CREAT | os.O_RDWR, 0o644)
        try:
            deadline = time.monotonic() + settings.TAXO_LOCK_TIMEOUT
            while True:
                try:
                    fcntl.flock(fd, fcntl.LOCK_EX | fcntl.LOCK_NB)
                    break
                except BlockingIOError:
                    if time.monotonic() >= deadline:
                        holder = os.pread(fd, 32, 0).decode("ascii", "replace").strip()
                        raise LockTimeout(
                            f"{self.lock_path} is held by another writer (pid {holder or '?'})"
                        )
                    logger.debug("waiting for %s", self.lock_path)
                    time.sleep(settings.TAXO_LOCK_POLL)
            try:
                os.ftruncate(fd, 0)
                os.pwrite(fd, str(os.getpid()).encode("ascii"), 0)
                self._catch_up()
                yield
            finally:
                fcntl.flock(fd, fcntl.LOCK_UN)
        finally:
            os.close(fd)

    def _catch_up(self):
        """Pick up other writers' appends and cut off a torn tail."""
        size = self._file_size()
        if size < self._journal_size:
            logger.warning("journal of %s shrank; replaying journal", self.path)
            self._replay({}, 0, 0)
        elif size > self._journal_size:
            self._replay(self._entries, self._journal_size, self._journal_lines)
        if self._file_size() > self._journal_size:
            logger.warning("truncating torn journal tail of %s", self.journal_path)
            os.truncate(self.journal_path, self._journal_size)

    def _append(self, op, asset_id, classification=None):
        record = {"op": op, "id": str(asset_id), "ts": timezone.now().isoformat(timespec="microseconds")}
        if classification is not None:
            record["doc"] = classification_document(classification)
        line = (json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")

        offset = self._journal_size
        with open(self.journal_path, "ab") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())
        self._journal_size += len(line)
        self._journal_lines += 1
        self._apply(self._entries, record, offset, line_number=self._journal_lines)
        self._unindexed += 1
        if self._unindexed >= settings.TAXO_INDEX_INTERVAL:
            self._write_index()

    def _write_index(self):
        index = {
            "journal_size": self._journal_size,
            "journal_lines": self._journal_lines,
            "entries": {
                asset_id: entry.as_index() for asset_id, entry in sorted(self._entries.items())
            },
        }
        tmp_path = self.index_path.with_suffix(f".json.{os.getpid()}.tmp")
        with open(tmp_path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(index, sort_keys=True, ensure_ascii=False))
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp_path, self.index_path)
        self._unindexed = 0
        logger.debug("wrote index of %s at byte %d", self.path, self._journal_size)

    def close(self):
        """Write the index if this handle appended past it."""
        if self._unindexed:
            self._write_index()

    def rebuild_index(self):
        with self._write_lock():
            self._replay({}, 0, 0)
            self._write_index()

    def _require_valid(self, classification):
        report = validate_classification(self.taxonomy, classification, PARTIAL)
        if not report.is_valid:
            raise RegistryValidationError(report)

    def _require_existing(self, asset_id):
        key = str(AssetId.parse(asset_id))
        if key not in self._entries:
            raise AssetNotFound(key)
        return key

    def add(self, classification):
        """Store a classification under a freshly minted id and return the id."""
        self._require_valid(classification)
        with self._write_lock():
            asset_id = mint_id(taken=self._entries)
            self._append(ADD, asset_id, replace(classification, asset_id=str(asset_id)))
        logger.info("added %s (%s)", asset_id, classification.asset_name)
        return asset_id

    def update(self, asset_id, classification):
        self._require_valid(classification)
        with self._write_lock():
            key = self._require_existing(asset_id)
            self._append(UPDATE, key, replace(classification, asset_id=key))
        logger.info("updated %s", key)

    def remove(self, asset_id):
        with self._write_lock():
            key = self._require_existing(asset_id)
            self._append(REMOVE, key)
        logger.info("removed %s", key)

    # ----- reading -----

    def get(self, asset_id):
        key = self._require_existing(asset_id)
        entry = self._entries[key]
        with open(self.journal_path, "rb") as fh:
            fh.seek(entry.offset)
            record = json.loads(fh.readline())
        return classification_from_document(record["doc"])

    def entry(self, asset_id):
        return self._entries[self._require_existing(asset_id)]

    def entries(self):
        return sorted(self._entries.values(), key=lambda e: (e.created_at, e.asset_id))

    def query(self, query):
        """Return ``(AssetId, asset_name)`` of matching entries by creation time, then id."""
        query.resolve(self.taxonomy)
        return [
            (AssetId(entry.asset_id), entry.asset_name)
            for entry in self.entries()
            if query.matches(entry)
        ]
