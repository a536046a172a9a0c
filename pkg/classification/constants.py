STRICT = "strict"
PARTIAL = "partial"

VALIDATION_MODE = (
    (STRICT, "Strict"),
    (PARTIAL, "Partial"),
)

WARNING = "warning"

SEVERITY = ((WARNING, "Warning"),)

EXAMPLE_ASSETS = (
    "cash",
    "bitcoin",
    "ether",
    "crowdlitoken",
    "cryptokitties",
    "traditional_share",
)
