import json

from django.test import SimpleTestCase

from core.exceptions import DocumentValidationError, TaxonomyMismatch
from taxonomy.builtin import builtin_taxonomy
from taxonomy.models import AttributeDef, CharacteristicDef, Taxonomy

from .constants import EXAMPLE_ASSETS, PARTIAL, STRICT
from .documents import classification_from_document, parse_classification
from .fixtures import fixture, example_assets
from .lints import LintRule, LintRuleRegistry, lint, lint_rules
from .models import AssetClassification, ClassificationBuilder, Selection
from .validation import describe, unset_attributes, validate_classification

UNSET_IN_FIXTURES = {
    "cash": {"claim_structure"},
    "bitcoin": {"legal_status"},
    "ether": {"total_supply"},
    "crowdlitoken": set(),
    "cryptokitties": {"information_complexity"},
    "traditional_share": set(),
}


def builder(name="Test asset"):
    return ClassificationBuilder.for_taxonomy(builtin_taxonomy(), name)


class FixtureCorpusTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()

    def test_six_fixtures(self):
        self.assertEqual(
            [c.asset_name for c in example_assets()],
            ["Cash", "Bitcoin", "Ether", "Crowdlitoken", "CryptoKitties", "Traditional share"],
        )

    def test_fixtures_valid_in_partial_mode_without_lints(self):
        for classification in example_assets():
            with self.subTest(asset=classification.asset_name):
                report = validate_classification(self.taxonomy, classification, PARTIAL)
                self.assertEqual(report.errors, ())
                self.assertEqual(report.lint_findings, ())

    def test_strict_mode_flags_exactly_the_unset_cells(self):
        for name in EXAMPLE_ASSETS:
            with self.subTest(asset=name):
                classification = fixture(name)
                report = validate_classification(self.taxonomy, classification, STRICT)
                self.assertEqual(
                    set(report.errors),
                    {(attr, "attribute is unset") for attr in UNSET_IN_FIXTURES[name]},
                )
                self.assertEqual(
                    unset_attributes(self.taxonomy, classification), UNSET_IN_FIXTURES[name]
                )

    def test_every_cell_has_provenance(self):
        for classification in example_assets():
            for attribute_id in self.taxonomy.attribute_ids:
                with self.subTest(asset=classification.asset_name, attribute=attribute_id):
                    self.assertTrue(classification.notes.get(attribute_id))

    def test_traditional_share_is_multi_valued(self):
        technology = fixture("traditional_share").selection("technology")
        self.assertTrue(technology.is_multi)
        self.assertEqual(technology.characteristic_ids, {"physical", "digital"})

    def test_describe(self):
        readout = dict(
            (attribute.id, labels) for attribute, labels in describe(self.taxonomy, fixture("bitcoin"))
        )
        self.assertEqual(readout["technology"], ("Distributed ledger technology (Native token)",))
        self.assertEqual(readout["legal_status"], ())
        self.assertEqual(len(readout), 14)


class ValidationTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()

    def test_unknown_characteristic(self):
        classification = builder().select("technology", "analog").build()
        report = validate_classification(self.taxonomy, classification, PARTIAL)
        self.assertFalse(report.is_valid)
        self.assertEqual(
            report.errors, (("technology", "unknown characteristic for attribute: 'analog'"),)
        )

    def test_unknown_attribute(self):
        classification = builder().select("colour", "red").build()
        report = validate_classification(self.taxonomy, classification, PARTIAL)
        self.assertEqual(report.errors, (("colour", "unknown attribute"),))

    def test_subtype_must_belong_to_the_characteristic(self):
        classification = builder().select("technology", "physical", subtype="native").build()
        report = validate_classification(self.taxonomy, classification, PARTIAL)
        self.assertEqual(
            report.errors,
            (("technology", "unknown subtype 'native' for characteristic 'physical'"),),
        )

    def test_subtype_needs_a_single_characteristic(self):
        classification = builder().select("technology", "dlt", "digital", subtype="native").build()
        report = validate_classification(self.taxonomy, classification, PARTIAL)
        self.assertEqual(
            report.errors,
            (("technology", "a subtype requires exactly one selected characteristic"),),
        )

    def test_empty_selection(self):
        classification = builder().select("technology").build()
        report = validate_classification(self.taxonomy, classification, PARTIAL)
        self.assertEqual(report.errors, (("technology", "selection is empty"),))

    def test_single_select_attribute(self):
        attribute = AttributeDef(
            id="size",
            name="Size",
            question="How big?",
            multi_select_allowed=False,
            characteristics=(CharacteristicDef("small", "Small", "S"), CharacteristicDef("large", "Large", "L")),
        )
        taxonomy = Taxonomy("toy", "Toy", "1", (attribute,))
        classification = (
            ClassificationBuilder.for_taxonomy(taxonomy, "Box").select("size", "small", "large").build()
        )
        report = validate_classification(taxonomy, classification, STRICT)
        self.assertEqual(
            report.errors,
            (("size", "multiple characteristics selected but the attribute is single-select"),),
        )

    def test_taxonomy_mismatch(self):
        classification = AssetClassification("Other", "asset_taxonomy", "2.0")
        with self.assertRaises(TaxonomyMismatch):
            validate_classification(self.taxonomy, classification)

    def test_empty_classification(self):
        classification = builder().build()
        self.assertTrue(validate_classification(self.taxonomy, classification, PARTIAL).is_valid)
        self.assertEqual(
            len(validate_classification(self.taxonomy, classification, STRICT).errors), 14
        )

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            validate_classification(self.taxonomy, builder().build(), "lenient")

    def test_report_as_dict(self):
        classification = builder().select("issuance", "once").select("total_supply", "flexible").build()
        report = validate_classification(self.taxonomy, classification, PARTIAL)
        self.assertEqual(
            report.as_dict(),
            {
                "mode": "partial",
                "is_valid": True,
                "errors": [],
                "lint_findings": [
                    {
                        "rule_id": "L2",
                        "severity": "warning",
                        "attributes": ["issuance", "total_supply"],
                        "message": "an asset issued once typically has a fixed total supply",
                    }
                ],
            },
        )


class LintTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()

    def rule_ids(self, classification, rules=None):
        return [f.rule_id for f in lint(self.taxonomy, classification, rules)]

    def test_builtin_rules(self):
        self.assertEqual([rule.rule_id for rule in lint_rules], ["L1", "L2", "L3", "L4"])

    def test_physical_with_probabilistic_finality(self):
        classification = (
            builder().select("technology", "physical").select("consensus", "probabilistic_finality").build()
        )
        self.assertEqual(self.rule_ids(classification), ["L1"])

    def test_ledger_with_instant_finality(self):
        classification = (
            builder().select("technology", "dlt", subtype="native").select("consensus", "instant_finality").build()
        )
        self.assertEqual(self.rule_ids(classification), ["L3"])

    def test_flexible_supply_without_movement(self):
        classification = (
            builder()
            .select("redemption", "none")
            .select("total_supply", "flexible")
            .select("issuance", "once")
            .build()
        )
        self.assertEqual(self.rule_ids(classification), ["L2", "L4"])

    def test_rules_skip_unset_attributes(self):
        classification = builder().select("issuance", "once").build()
        self.assertEqual(self.rule_ids(classification), [])

    def test_lints_never_invalidate(self):
        classification = (
            builder().select("technology", "physical").select("consensus", "probabilistic_finality").build()
        )
        report = validate_classification(self.taxonomy, classification, PARTIAL)
        self.assertTrue(report.is_valid)
        self.assertEqual(len(report.lint_findings), 1)

    def test_custom_registry(self):
        rules = LintRuleRegistry()

        @rules.register
        class NonFungibleShare(LintRule):
            rule_id = "X1"
            attributes = ("legal_structure", "fungibility")
            message = "shares are usually fungible"

            def applies(self, selections):
                return "share" in selections["legal_structure"] and "non_fungible" in selections["fungibility"]

        classification = (
            builder().select("legal_structure", "share").select("fungibility", "non_fungible").build()
        )
        self.assertEqual(self.rule_ids(classification, rules), ["X1"])
        self.assertIn("X1", rules)

        with self.assertRaises(ValueError):
            rules.register(NonFungibleShare)

        rules.unregister("X1")
        self.assertEqual(len(rules), 0)

    def test_rule_severity_must_be_known(self):
        class Shouting(LintRule):
            rule_id = "X2"
            severity = "fatal"

            def applies(self, selections):
                return True

        with self.assertRaisesMessage(ValueError, "unknown severity 'fatal'"):
            LintRuleRegistry().register(Shouting)


class ClassificationDocumentTests(SimpleTestCase):
    def document(self, **changes):
        document = {
            "asset_name": "Coupon",
            "taxonomy_id": "asset_taxonomy",
            "taxonomy_version": "1.0",
            "selections": {
                "technology": {"characteristics": ["digital"], "note": "issued online"},
                "fungibility": {"characteristics": ["fungible"]},
            },
            "notes": {"legal_status": "unclear"},
        }
        document.update(changes)
        return document

    def assertProblems(self, document, expected):
        with self.assertRaises(DocumentValidationError) as ctx:
            classification_from_document(document)
        self.assertEqual(ctx.exception.messages, expected)

    def test_parse(self):
        classification = parse_classification(json.dumps(self.document()))
        self.assertEqual(classification.selection("technology"), Selection.of("digital"))
        self.assertEqual(classification.notes["technology"], "issued online")
        self.assertEqual(classification.notes["legal_status"], "unclear")
        self.assertIsNone(classification.asset_id)
        self.assertEqual(classification.set_attributes, {"technology", "fungibility"})

    def test_asset_id(self):
        classification = classification_from_document(self.document(asset_id="AAAAAAAA8"))
        self.assertEqual(classification.asset_id, "AAAAAAAA8")

    def test_notes_of_set_attributes_belong_in_the_selection(self):
        self.assertProblems(
            self.document(notes={"technology": "twice"}),
            ["notes.technology: notes of set attributes belong in the selection"],
        )

    def test_empty_characteristics(self):
        self.assertProblems(
            self.document(selections={"technology": {"characteristics": []}}),
            ["selections.technology.characteristics: selection must not be empty"],
        )

    def test_repeated_characteristics(self):
        self.assertProblems(
            self.document(selections={"technology": {"characteristics": ["dlt", "dlt"]}}),
            ["selections.technology.characteristics: characteristic ids must be distinct"],
        )

    def test_unknown_selection_key(self):
        self.assertProblems(
            self.document(selections={"technology": {"characteristics": ["dlt"], "weight": 1}}),
            ["selections.technology: unknown keys: weight"],
        )

    def test_selections_must_be_an_object(self):
        self.assertProblems(
            self.document(selections=["technology"]),
            ["selections: must be an object keyed by attribute id"],
        )

    def test_not_an_object(self):
        self.assertProblems([], ["$: expected a JSON object"])


class ClassificationModelTests(SimpleTestCase):
    def test_builder_round_trip(self):
        original = fixture("cash")
        self.assertEqual(original.builder().build(), original)

    def test_unset_keeps_a_note(self):
        classification = fixture("cash").builder().unset("technology", note="withdrawn").build()
        self.assertIsNone(classification.selection("technology"))
        self.assertEqual(classification.notes["technology"], "withdrawn")

    def test_selection_helpers(self):
        self.assertEqual(Selection.of("dlt", subtype="native").sole, "dlt")
        self.assertIsNone(Selection.of("dlt", "digital").sole)
        self.assertIn("dlt", Selection.of("dlt"))

    def test_read_only(self):
        classification = fixture("bitcoin")
        with self.assertRaises(TypeError):
            classification.selections["technology"] = Selection.of("digital")
