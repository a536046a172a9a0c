import random
import string
from dataclasses import replace

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from classification.constants import EXAMPLE_ASSETS, PARTIAL
from classification.documents import parse_classification
from classification.fixtures import fixture, fixture_path
from classification.models import ClassificationBuilder
from classification.validation import validate_classification
from core.exceptions import CodeError
from taxonomy.builtin import builtin_taxonomy
from taxonomy.documents import parse_taxonomy
from taxonomy.models import AttributeDef, CharacteristicDef, SubtypeDef, Taxonomy
from taxonomy.validators import validate_taxonomy

from .codes import decode, encode, position_alphabet
from .constants import MULTI_NOTE
from .serializers import serialize_classification, serialize_taxonomy

FIXTURE_CODES = {
    "cash": "-PNIRCVONXFXTF",
    "bitcoin": "NTNP-DCNNFCNTF",
    "ether": "NTNPUDTFA-CNTF",
    "crowdlitoken": "XRCPRCCBQXFXTF",
    "cryptokitties": "NRNPUD-NNFCNTN",
    "traditional_share": "X*CIRCCSQXFXTF",
}


def random_taxonomy(rng, attributes=5):
    """A valid taxonomy with random characteristic counts, subtypes and letters."""
    built = []
    for i in range(attributes):
        count = rng.randint(2, 5)
        letters = iter(rng.sample(string.ascii_uppercase, count * 3))
        characteristics = []
        for j in range(count):
            subtypes = tuple(
                SubtypeDef(f"s{j}_{k}", f"Subtype {j}.{k}", next(letters))
                for k in range(rng.choice((0, 0, 1, 2)))
            )
            characteristics.append(
                CharacteristicDef(f"c{j}", f"Characteristic {j}", next(letters), subtypes=subtypes)
            )
        built.append(
            AttributeDef(
                id=f"a{i}",
                name=f"Attribute {i}",
                question=f"Question {i}?",
                characteristics=tuple(characteristics),
                multi_select_allowed=rng.random() < 0.5,
            )
        )
    return Taxonomy("random", "Random taxonomy", "1", tuple(built))


def random_classification(rng, taxonomy):
    builder = ClassificationBuilder.for_taxonomy(taxonomy, "random asset")
    for attribute in taxonomy.attributes:
        if rng.random() < 0.25:
            continue
        characteristic = rng.choice(attribute.characteristics)
        subtype = None
        if characteristic.subtypes and rng.random() < 0.5:
            subtype = rng.choice(characteristic.subtypes).id
        builder.select(attribute.id, characteristic.id, subtype=subtype)
    return builder.build()


class CompactCodeTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()

    def test_fixture_codes(self):
        for name, code in FIXTURE_CODES.items():
            with self.subTest(asset=name):
                self.assertEqual(str(encode(self.taxonomy, fixture(name))), code)

    def test_decode_bitcoin(self):
        decoded = decode(self.taxonomy, "NTNP-DCNNFCNTF")
        self.assertEqual(dict(decoded.selections), dict(fixture("bitcoin").selections))
        self.assertEqual(decoded.asset_name, "decoded NTNP-DCNNFCNTF")
        self.assertEqual(decoded.taxonomy_key, self.taxonomy.key)

    def test_multi_symbol_decodes_to_unset_with_note(self):
        decoded = decode(self.taxonomy, "X*CIRCCSQXFXTF")
        self.assertIsNone(decoded.selection("technology"))
        self.assertEqual(decoded.notes["technology"], MULTI_NOTE)
        self.assertEqual(str(encode(self.taxonomy, decoded)), "X-CIRCCSQXFXTF")

    def test_all_unset(self):
        decoded = decode(self.taxonomy, "-" * 14)
        self.assertEqual(decoded.set_attributes, frozenset())

    def test_invalid_symbol(self):
        with self.assertRaises(CodeError) as ctx:
            decode(self.taxonomy, "ZTNP-DCNNFCNTF")
        self.assertEqual(ctx.exception.messages, ["position 1: 'Z' not in {N,F,X,-,*}"])
        self.assertEqual(ctx.exception.position, 1)
        self.assertEqual(ctx.exception.symbol, "Z")
        self.assertEqual(ctx.exception.alphabet, ("N", "F", "X", "-", "*"))

    def test_letters_are_case_sensitive(self):
        with self.assertRaises(CodeError) as ctx:
            decode(self.taxonomy, "nTNP-DCNNFCNTF")
        self.assertEqual(ctx.exception.position, 1)

    def test_wrong_length(self):
        for code in ("", "NTN", "NTNP-DCNNFCNTFF"):
            with self.subTest(code=code):
                with self.assertRaises(CodeError) as ctx:
                    decode(self.taxonomy, code)
                self.assertIsNone(ctx.exception.position)
                self.assertEqual(
                    ctx.exception.messages, [f"code has {len(code)} symbols, expected 14"]
                )

    def test_position_alphabet(self):
        self.assertEqual(
            position_alphabet(self.taxonomy.attribute("technology")),
            ("P", "D", "L", "T", "R", "-", "*"),
        )

    def test_round_trip_builtin(self):
        rng = random.Random(20240501)
        for _ in range(10_000):
            classification = random_classification(rng, self.taxonomy)
            decoded = decode(self.taxonomy, encode(self.taxonomy, classification))
            self.assertEqual(dict(decoded.selections), dict(classification.selections))

    def test_round_trip_random_taxonomy(self):
        rng = random.Random(7)
        taxonomy = random_taxonomy(rng)
        self.assertEqual(validate_taxonomy(taxonomy), [])
        for _ in range(10_000):
            classification = random_classification(rng, taxonomy)
            code = encode(taxonomy, classification)
            self.assertEqual(len(code), 5)
            self.assertEqual(dict(decode(taxonomy, code).selections), dict(classification.selections))

    @settings(max_examples=300, deadline=None)
    @given(st.data())
    def test_decode_then_encode_is_idempotent(self, data):
        code = "".join(
            data.draw(st.sampled_from(position_alphabet(attribute)))
            for attribute in self.taxonomy.attributes
        )
        decoded = decode(self.taxonomy, code)
        self.assertTrue(validate_classification(self.taxonomy, decoded, PARTIAL).is_valid)
        self.assertEqual(str(encode(self.taxonomy, decoded)), code.replace("*", "-"))

    @settings(max_examples=300, deadline=None)
    @given(st.text(alphabet="NTPFX-*DCZ ", max_size=16))
    def test_arbitrary_strings_decode_or_raise_code_error(self, code):
        try:
            decoded = decode(self.taxonomy, code)
        except CodeError:
            return
        self.assertEqual(len(encode(self.taxonomy, decoded)), 14)


class CanonicalSerializationTests(SimpleTestCase):
    def test_fixture_files_are_canonical(self):
        for name in EXAMPLE_ASSETS:
            with self.subTest(asset=name):
                expected = fixture_path(name).read_text(encoding="utf-8")
                self.assertEqual(serialize_classification(fixture(name)), expected)

    def test_classification_round_trip(self):
        for name in EXAMPLE_ASSETS:
            with self.subTest(asset=name):
                classification = fixture(name)
                text = serialize_classification(classification)
                self.assertEqual(parse_classification(text), classification)
                self.assertEqual(serialize_classification(parse_classification(text)), text)

    def test_asset_id_is_serialized_when_set(self):
        classification = replace(fixture("ether"), asset_id="AAAAAAAA8")
        text = serialize_classification(classification)
        self.assertIn('"asset_id": "AAAAAAAA8"', text)
        self.assertEqual(parse_classification(text), classification)

    def test_taxonomy_is_stable(self):
        text = serialize_taxonomy(builtin_taxonomy())
        self.assertTrue(text.endswith("}\n"))
        self.assertEqual(serialize_taxonomy(parse_taxonomy(text)), text)

    def test_non_ascii_is_kept(self):
        classification = (
            ClassificationBuilder.for_taxonomy(builtin_taxonomy(), "Franken-Münze")
            .select("technology", "physical")
            .build()
        )
        self.assertIn("Franken-Münze", serialize_classification(classification))
