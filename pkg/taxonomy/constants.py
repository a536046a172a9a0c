UNORDERED = "unordered"
CUMULATIVE = "cumulative"

ORDERING_TYPE = (
    (UNORDERED, "Unordered"),
    (CUMULATIVE, "Cumulative"),
)

SNAKE_ID_PATTERN = r"^[a-z][a-z0-9_]*$"
SLUG_ID_PATTERN = r"^[-a-zA-Z0-9_]+$"
CODE_LETTER_PATTERN = r"^[A-Z]$"

MIN_CHARACTERISTICS = 2

BUILTIN_TAXONOMY_ID = "asset_taxonomy"
BUILTIN_TAXONOMY_NAME = "Universal Asset Taxonomy"
BUILTIN_TAXONOMY_VERSION = "1.0"

# Rows of the morphological box, in normative order:
# (id, name, question, ordering, characteristics)
# with characteristics as (id, label, code_letter, description, subtypes)
# and subtypes as (id, label, code_letter).
BUILTIN_ATTRIBUTES = (
    (
        "claim_structure",
        "Claim structure",
        "Does the asset represent a claim?",
        UNORDERED,
        (
            ("no_claim", "No claim(s)", "N", "Represents no claim of any kind.", ()),
            ("flexible_claim", "Flexible claim(s)", "F",
             "Claims whose possession or exercise depends on conditions.", ()),
            ("fixed_claim", "Fixed claim(s)", "X",
             "Claims that cannot be restricted under any condition.", ()),
        ),
    ),
    (
        "technology",
        "Technology",
        "Which technology is the asset based on?",
        UNORDERED,
        (
            ("physical", "Physical", "P", "Exists in physical form.", ()),
            ("digital", "Digital", "D", "Digital, but not on a distributed ledger.", ()),
            ("dlt", "Distributed ledger technology", "L", "Based on a distributed ledger.", (
                ("native", "Native token", "T"),
                ("protocol", "Protocol token", "R"),
            )),
        ),
    ),
    (
        "underlying",
        "Underlying",
        "Which underlying or collateral is the asset's value based on?",
        UNORDERED,
        (
            ("none", "No underlying", "N", "Value is not derived from another asset.", ()),
            ("company", "Company", "C", "Value represents a stake in a company.", ()),
            ("bankable_asset", "Bankable asset", "B",
             "Value represents an asset that can be held in a bank or custody account.", ()),
            ("cryptographic_asset", "Cryptographic asset", "Y",
             "Value represents an asset based on a distributed ledger.", ()),
            ("tangible_asset", "Tangible asset", "T", "Value represents a physical asset.", ()),
            ("contract", "Contract", "K", "Value represents a contract.", ()),
        ),
    ),
    (
        "consensus",
        "Consensus/validation mechanism",
        "How is agreement on the finality of the asset reached?",
        UNORDERED,
        (
            ("instant_finality", "Instant finality", "I", "Consensus is final.", ()),
            ("probabilistic_finality", "Probabilistic finality", "P",
             "Consensus is reached with a level of confidence only.", ()),
        ),
    ),
    (
        "legal_status",
        "Legal status",
        "What is the regulatory framework governing the asset?",
        UNORDERED,
        (
            ("regulated", "Regulated", "R",
             "Issuance, redemption and governance are subject to regulation.", ()),
            ("unregulated", "Unregulated", "U", "No specific regulatory framework applies.", ()),
        ),
    ),
    (
        "governance",
        "Governance",
        "In which way is the asset governed?",
        UNORDERED,
        (
            ("centralised", "Centralised", "C", "Governed by an authoritative party or consortium.", ()),
            ("decentralised", "Decentralised", "D", "Governed without centralised control.", ()),
        ),
    ),
    (
        "information_complexity",
        "Information complexity",
        "What type of information complexity is associated with the asset?",
        CUMULATIVE,
        (
            ("value", "Value", "V", "Represents a specific value.", ()),
            ("contract", "Contract", "C", "Carries conditional information besides its value.", ()),
            ("turing_complete", "Turing completeness", "T",
             "Based on a universally programmable computational model.", ()),
        ),
    ),
    (
        "legal_structure",
        "Legal structure",
        "What is the legal form of the asset?",
        UNORDERED,
        (
            ("none", "No legal structure", "N", "No legal structure governs the asset.", ()),
            ("foundation", "Foundation", "F", "Governed by a foundation or trust.", ()),
            ("note_bond", "Note/bond", "B", "Structured as a note or bond.", ()),
            ("share", "Share", "S", "Structured as a share.", ()),
            ("other", "Other", "O", "Any alternative legal structure.", ()),
        ),
    ),
    (
        "information_interface",
        "Information interface",
        "How does the asset receive and/or send relevant information?",
        UNORDERED,
        (
            ("none", "No interface", "N", "No information interface.", ()),
            ("qualitative", "Qualitative", "Q",
             "Information flows through an authorised instance.", ()),
            ("quantitative", "Quantitative", "A",
             "Information arrives automatically from authorised sources.", ()),
        ),
    ),
    (
        "total_supply",
        "Total supply",
        "To which limit can the asset be generated?",
        UNORDERED,
        (
            ("fixed", "Fixed", "F", "The total supply is fixed.", ()),
            ("conditional", "Conditional", "C", "The total supply depends on predefined conditions.", ()),
            ("flexible", "Flexible", "X", "Authorised parties manage the total supply.", ()),
        ),
    ),
    (
        "issuance",
        "Issuance",
        "How is the asset generated?",
        UNORDERED,
        (
            ("once", "Once", "O", "No units are issued after the initial issuance.", ()),
            ("conditional", "Conditional", "C", "Units are issued once predefined conditions are met.", ()),
            ("flexible", "Flexible", "F", "Authorised parties issue units at will.", ()),
        ),
    ),
    (
        "redemption",
        "Redemption",
        "How is the number of outstanding assets reduced?",
        UNORDERED,
        (
            ("none", "No redemption", "N", "Outstanding units cannot be reduced.", ()),
            ("fixed", "Fixed", "F", "Reduction follows a predefined protocol.", ()),
            ("conditional", "Conditional", "C", "Reduction starts once predefined conditions are met.", ()),
            ("flexible", "Flexible", "X", "Authorised parties reduce units at will.", ()),
        ),
    ),
    (
        "transferability",
        "Transferability",
        "Can the asset's ownership be transferred to another party?",
        UNORDERED,
        (
            ("transferable", "Transferable", "T", "Ownership can be transferred.", ()),
            ("non_transferable", "Non-transferable", "N", "Ownership cannot be transferred.", ()),
        ),
    ),
    (
        "fungibility",
        "Fungibility",
        "Can the asset be interchanged with another asset of the same type?",
        UNORDERED,
        (
            ("fungible", "Fungible", "F", "Substitutable with another unit of the same type.", ()),
            ("non_fungible", "Non-fungible", "N", "Not substitutable; every unit is unique.", ()),
        ),
    ),
)
