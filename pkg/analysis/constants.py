DETERMINED_ONLY = "determined"
ALL_ATTRIBUTES = "all"

SIMILARITY_BASIS = (
    (DETERMINED_ONLY, "Determined attributes only"),
    (ALL_ATTRIBUTES, "All attributes"),
)

FRAMEWORK_LABELS = (
    ("iso10962", "ISO 10962 (CFI)"),
    ("actus", "ACTUS (Brammertz & Mendelsohn)"),
    ("finma", "FINMA ICO guidelines"),
    ("oliveira", "Oliveira et al."),
    ("ballandies", "Ballandies et al."),
    ("mme", "MME"),
    ("itsa", "ITSA"),
    ("eea-tti", "EEA Token Taxonomy Initiative"),
)
