UNSET = "-"
MULTI = "*"

MULTI_NOTE = "multi-valued in source code"
DECODED_NAME = "decoded {code}"

JSON_INDENT = 2
