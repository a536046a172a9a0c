import copy
import json

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from codec.serializers import serialize_taxonomy, taxonomy_document
from core.exceptions import DocumentSyntaxError, DocumentValidationError

from .builtin import builtin_taxonomy
from .constants import CUMULATIVE
from .documents import parse_taxonomy, taxonomy_from_document
from .models import AttributeDef, CharacteristicDef, Taxonomy
from .validators import validate_taxonomy

BOX_ORDER = [
    "claim_structure",
    "technology",
    "underlying",
    "consensus",
    "legal_status",
    "governance",
    "information_complexity",
    "legal_structure",
    "information_interface",
    "total_supply",
    "issuance",
    "redemption",
    "transferability",
    "fungibility",
]


def toy_document():
    return {
        "id": "toy",
        "name": "Toy taxonomy",
        "version": "0.1",
        "attributes": [
            {
                "id": "colour",
                "name": "Colour",
                "question": "Which colour?",
                "ordering": "unordered",
                "multi_select_allowed": True,
                "characteristics": [
                    {"id": "red", "label": "Red", "code_letter": "R", "description": ""},
                    {"id": "blue", "label": "Blue", "code_letter": "B", "description": ""},
                ],
            },
            {
                "id": "size",
                "name": "Size",
                "question": "How big?",
                "ordering": "cumulative",
                "multi_select_allowed": False,
                "characteristics": [
                    {"id": "small", "label": "Small", "code_letter": "S", "description": ""},
                    {
                        "id": "large",
                        "label": "Large",
                        "code_letter": "L",
                        "description": "",
                        "subtypes": [{"id": "huge", "label": "Huge", "code_letter": "H"}],
                    },
                ],
            },
        ],
    }


class BuiltinTaxonomyTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()

    def test_attributes_in_box_order(self):
        self.assertEqual(list(self.taxonomy.attribute_ids), BOX_ORDER)

    def test_characteristic_counts(self):
        self.assertEqual(self.taxonomy.characteristic_count, 43)
        for attribute in self.taxonomy.attributes:
            self.assertGreaterEqual(len(attribute.characteristics), 2, attribute.id)

    def test_builtin_is_valid(self):
        self.assertEqual(validate_taxonomy(self.taxonomy), [])

    def test_identity(self):
        self.assertEqual(self.taxonomy.key, ("asset_taxonomy", "1.0"))
        self.assertEqual(str(self.taxonomy), "Universal Asset Taxonomy (asset_taxonomy 1.0)")

    def test_only_information_complexity_is_cumulative(self):
        cumulative = [a.id for a in self.taxonomy.attributes if a.ordering == CUMULATIVE]
        self.assertEqual(cumulative, ["information_complexity"])

    def test_cumulative_entailment(self):
        complexity = self.taxonomy.attribute("information_complexity")
        self.assertTrue(complexity.entails("turing_complete", "value"))
        self.assertTrue(complexity.entails("contract", "value"))
        self.assertFalse(complexity.entails("value", "contract"))

        technology = self.taxonomy.attribute("technology")
        self.assertTrue(technology.entails("dlt", "dlt"))
        self.assertFalse(technology.entails("dlt", "digital"))

    def test_subtype_letters_follow_their_characteristic(self):
        technology = self.taxonomy.attribute("technology")
        self.assertEqual(technology.alphabet, ("P", "D", "L", "T", "R"))
        self.assertEqual(technology.resolve_letter("T"), ("dlt", "native"))
        self.assertEqual(technology.resolve_letter("L"), ("dlt", None))
        self.assertIsNone(technology.resolve_letter("Z"))
        self.assertEqual(technology.letter_for("dlt", "protocol"), "R")

    def test_lookup_of_unknown_ids(self):
        self.assertIsNone(self.taxonomy.attribute("colour"))
        self.assertIsNone(self.taxonomy.attribute("technology").characteristic("analog"))


class TaxonomyDocumentTests(SimpleTestCase):
    def assertProblems(self, document, expected):
        with self.assertRaises(DocumentValidationError) as ctx:
            taxonomy_from_document(document)
        for message in expected:
            self.assertIn(message, ctx.exception.messages)

    def test_builtin_round_trip(self):
        taxonomy = builtin_taxonomy()
        self.assertEqual(parse_taxonomy(serialize_taxonomy(taxonomy)), taxonomy)

    def test_toy_document(self):
        taxonomy = taxonomy_from_document(toy_document())
        self.assertEqual(taxonomy.attribute_ids, ("colour", "size"))
        size = taxonomy.attribute("size")
        self.assertTrue(size.is_cumulative)
        self.assertFalse(size.multi_select_allowed)
        self.assertEqual(size.characteristic("large").subtype("huge").code_letter, "H")
        self.assertEqual(taxonomy_document(taxonomy), toy_document())

    def test_bytes_are_accepted(self):
        text = json.dumps(toy_document()).encode("utf-8")
        self.assertEqual(parse_taxonomy(text).id, "toy")

    def test_syntax_error_has_position(self):
        with self.assertRaises(DocumentSyntaxError) as ctx:
            parse_taxonomy('{\n  "id": "toy",\n  oops\n}')
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 3))

    def test_duplicate_attribute_id(self):
        document = toy_document()
        document["attributes"][1]["id"] = "colour"
        self.assertProblems(
            document, ["attributes[1].id: duplicate attribute id 'colour' (positions 0 and 1)"]
        )

    def test_attribute_with_one_characteristic(self):
        document = toy_document()
        del document["attributes"][0]["characteristics"][1]
        self.assertProblems(
            document, ["attributes[0].characteristics: attribute requires ≥2 characteristics"]
        )

    def test_no_attributes(self):
        document = toy_document()
        document["attributes"] = []
        self.assertProblems(document, ["attributes: taxonomy requires at least one attribute"])

    def test_code_letters_shared_with_subtypes(self):
        document = toy_document()
        document["attributes"][1]["characteristics"][1]["subtypes"][0]["code_letter"] = "S"
        self.assertProblems(
            document,
            [
                "attributes[1].characteristics[1].subtypes[0].code_letter: "
                "duplicate code_letter 'S' (positions 0 and 2)"
            ],
        )

    def test_field_problems_carry_their_path(self):
        document = toy_document()
        document["attributes"][0]["characteristics"][0]["code_letter"] = "rr"
        document["attributes"][1]["ordering"] = "ranked"
        del document["attributes"][1]["multi_select_allowed"]
        with self.assertRaises(DocumentValidationError) as ctx:
            taxonomy_from_document(document)
        paths = {path for path, _ in ctx.exception.problems}
        self.assertEqual(
            paths,
            {
                "attributes[0].characteristics[0].code_letter",
                "attributes[1].ordering",
                "attributes[1].multi_select_allowed",
            },
        )

    def test_unknown_keys_are_rejected(self):
        document = toy_document()
        document["owner"] = "nobody"
        self.assertProblems(document, ["$: unknown keys: owner"])

    def test_types_are_not_coerced(self):
        document = toy_document()
        document["version"] = 1
        self.assertProblems(document, ["version: must be a string"])

        document = toy_document()
        document["attributes"][0]["multi_select_allowed"] = "yes"
        self.assertProblems(document, ["attributes[0].multi_select_allowed: must be a boolean"])

    def test_characteristics_must_be_an_array(self):
        document = toy_document()
        document["attributes"][0]["characteristics"] = '[{"id": "red"}]'
        self.assertProblems(document, ["attributes[0].characteristics: must be an array"])

    def test_snake_case_ids(self):
        document = toy_document()
        document["attributes"][0]["id"] = "Colour"
        self.assertProblems(document, ["attributes[0].id: must be a snake-case token"])

    @settings(max_examples=200, deadline=None)
    @given(
        st.recursive(
            st.none() | st.booleans() | st.integers() | st.text(max_size=8),
            lambda children: st.lists(children, max_size=4)
            | st.dictionaries(
                st.sampled_from(["id", "name", "version", "attributes", "label", "x"]),
                children,
                max_size=5,
            ),
            max_leaves=20,
        )
    )
    def test_arbitrary_json_fails_cleanly(self, document):
        try:
            taxonomy_from_document(document)
        except DocumentValidationError as exc:
            self.assertTrue(exc.messages)

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_mutated_toy_documents_fail_cleanly(self, data):
        document = copy.deepcopy(toy_document())
        attribute = data.draw(st.sampled_from(document["attributes"]))
        key = data.draw(st.sampled_from(sorted(attribute)))
        attribute[key] = data.draw(st.none() | st.integers() | st.text(max_size=3) | st.just([]))
        try:
            taxonomy = taxonomy_from_document(document)
        except DocumentValidationError:
            return
        self.assertEqual(validate_taxonomy(taxonomy), [])


class ValidateTaxonomyTests(SimpleTestCase):
    def test_collects_every_violation(self):
        attribute = AttributeDef(
            id="Bad id",
            name="Bad",
            question="?",
            ordering="ranked",
            characteristics=(CharacteristicDef("a", "A", "A"), CharacteristicDef("a", "A2", "A")),
        )
        violations = validate_taxonomy(Taxonomy("t", "T", "1", (attribute,)))
        self.assertEqual(
            [str(v) for v in violations],
            [
                "attributes[0].id: must be a snake-case token",
                "attributes[0].ordering: unknown ordering 'ranked'",
                "attributes[0].characteristics[1].id: duplicate characteristic id 'a' (positions 0 and 1)",
                "attributes[0].characteristics[1].code_letter: duplicate code_letter 'A' (positions 0 and 1)",
            ],
        )
