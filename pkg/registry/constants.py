import string

ID_ALPHABET = string.digits + string.ascii_uppercase
ID_PAYLOAD_LENGTH = 8

ADD = "add"
UPDATE = "update"
REMOVE = "remove"

JOURNAL_OP = (
    (ADD, "Add"),
    (UPDATE, "Update"),
    (REMOVE, "Remove"),
)

JOURNAL_FILE = "journal.jsonl"
INDEX_FILE = "index.json"
LOCK_FILE = ".lock"
