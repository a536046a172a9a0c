import itertools
from fractions import Fraction

from django.test import SimpleTestCase

from classification.constants import EXAMPLE_ASSETS
from classification.fixtures import fixture, example_assets
from classification.models import AssetClassification, ClassificationBuilder
from core.exceptions import TaxonomyMismatch, UnknownFramework
from taxonomy.builtin import builtin_taxonomy
from taxonomy.constants import CUMULATIVE
from taxonomy.models import AttributeDef, CharacteristicDef, Taxonomy

from .constants import ALL_ATTRIBUTES, DETERMINED_ONLY
from .coverage import coverage_counts, coverage_matrix, framework_coverage, parse_coverage_matrix
from .diff import diff, similarity


def toy_taxonomy():
    return Taxonomy(
        "toy",
        "Toy",
        "1",
        tuple(
            AttributeDef(
                id=f"a{i}",
                name=f"A{i}",
                question="?",
                ordering=CUMULATIVE if i == 0 else "unordered",
                characteristics=(CharacteristicDef("x", "X", "X"), CharacteristicDef("y", "Y", "Y")),
            )
            for i in range(3)
        ),
    )


def all_classifications(taxonomy):
    """Every classification of ``taxonomy``: each attribute unset or any non-empty selection."""
    choices = [None, ("x",), ("y",), ("x", "y")]
    for cells in itertools.product(choices, repeat=len(taxonomy.attributes)):
        builder = ClassificationBuilder.for_taxonomy(taxonomy, str(cells))
        for attribute, cell in zip(taxonomy.attributes, cells):
            if cell is not None:
                builder.select(attribute.id, *cell)
        yield cells, builder.build()


class DiffTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()

    def test_cash_and_bitcoin(self):
        report = diff(self.taxonomy, fixture("cash"), fixture("bitcoin"))
        self.assertEqual(
            report.shared,
            {"underlying", "information_interface", "transferability", "fungibility"},
        )
        self.assertEqual(
            report.differing,
            {
                "technology",
                "consensus",
                "governance",
                "information_complexity",
                "legal_structure",
                "total_supply",
                "issuance",
                "redemption",
            },
        )
        self.assertEqual(report.undetermined, {"claim_structure", "legal_status"})
        left, right = report.per_attribute["technology"]
        self.assertEqual(left.characteristic_ids, {"physical"})
        self.assertEqual(right.subtype_id, "native")

    def test_similarity_of_cash_and_bitcoin(self):
        score = similarity(self.taxonomy, fixture("cash"), fixture("bitcoin"))
        self.assertEqual((score.shared, score.total), (4, 12))
        self.assertEqual(score.value, Fraction(1, 3))
        self.assertEqual(str(score), "similarity (determined): 4/12 = 0.333")

        score = similarity(self.taxonomy, fixture("cash"), fixture("bitcoin"), ALL_ATTRIBUTES)
        self.assertEqual(score.value, Fraction(4, 14))

    def test_partition_is_complete_and_disjoint(self):
        for a, b in itertools.product(example_assets(), repeat=2):
            with self.subTest(a=a.asset_name, b=b.asset_name):
                report = diff(self.taxonomy, a, b)
                self.assertEqual(report.shared | report.differing | report.undetermined, set(self.taxonomy.attribute_ids))
                self.assertEqual(
                    len(report.shared) + len(report.differing) + len(report.undetermined), 14
                )

    def test_symmetric(self):
        for a, b in itertools.combinations(example_assets(), 2):
            with self.subTest(a=a.asset_name, b=b.asset_name):
                forward, backward = diff(self.taxonomy, a, b), diff(self.taxonomy, b, a)
                self.assertEqual(forward.shared, backward.shared)
                self.assertEqual(forward.differing, backward.differing)
                self.assertEqual(forward.undetermined, backward.undetermined)
                self.assertEqual(
                    similarity(self.taxonomy, a, b).value, similarity(self.taxonomy, b, a).value
                )

    def test_identical_assets(self):
        for name in EXAMPLE_ASSETS:
            with self.subTest(asset=name):
                classification = fixture(name)
                report = diff(self.taxonomy, classification, classification)
                self.assertEqual(report.differing, frozenset())
                self.assertEqual(similarity(self.taxonomy, classification, classification).value, 1)

    def test_undefined_similarity(self):
        empty = AssetClassification("Empty", "asset_taxonomy", "1.0")
        score = similarity(self.taxonomy, empty, fixture("cash"))
        self.assertIsNone(score.value)
        self.assertEqual(str(score), "similarity (determined): undefined")
        self.assertEqual(similarity(self.taxonomy, empty, fixture("cash"), ALL_ATTRIBUTES).value, 0)

    def test_unknown_basis(self):
        with self.assertRaises(ValueError):
            similarity(self.taxonomy, fixture("cash"), fixture("ether"), "weighted")

    def test_mismatched_taxonomies(self):
        other = AssetClassification("Other", "asset_taxonomy", "2.0")
        with self.assertRaises(TaxonomyMismatch):
            diff(self.taxonomy, fixture("cash"), other)

    def test_text_and_json_output(self):
        report = diff(self.taxonomy, fixture("cash"), fixture("bitcoin"))
        lines = report.as_text().splitlines()
        self.assertTrue(lines[0].strip().startswith("attribute"))
        self.assertTrue(lines[1].startswith("? claim_structure"))
        self.assertTrue(lines[2].startswith("! technology"))
        self.assertTrue(lines[3].startswith("= underlying"))
        self.assertEqual(lines[2].split()[-1], "dlt/native")

        data = report.as_dict()
        self.assertEqual(data["shared"], ["underlying", "information_interface", "transferability", "fungibility"])
        self.assertEqual(data["per_attribute"]["technology"], {"left": "physical", "right": "dlt/native"})

    def test_matches_cell_comparison_oracle(self):
        taxonomy = toy_taxonomy()
        universe = list(all_classifications(taxonomy))
        self.assertEqual(len(universe), 64)
        for (cells_a, a), (cells_b, b) in itertools.product(universe, repeat=2):
            expected = {"shared": set(), "differing": set(), "undetermined": set()}
            for attribute, left, right in zip(taxonomy.attribute_ids, cells_a, cells_b):
                if left is None or right is None:
                    expected["undetermined"].add(attribute)
                elif set(left) == set(right):
                    expected["shared"].add(attribute)
                else:
                    expected["differing"].add(attribute)
            report = diff(taxonomy, a, b)
            self.assertEqual(report.shared, expected["shared"])
            self.assertEqual(report.differing, expected["differing"])
            self.assertEqual(report.undetermined, expected["undetermined"])

            determined = len(expected["shared"]) + len(expected["differing"])
            score = similarity(taxonomy, a, b, DETERMINED_ONLY)
            self.assertEqual(
                score.value, Fraction(len(expected["shared"]), determined) if determined else None
            )


class CoverageTests(SimpleTestCase):
    def setUp(self):
        self.matrix = coverage_matrix()
        self.taxonomy = builtin_taxonomy()

    def test_counts_per_framework(self):
        counts = coverage_counts(self.matrix)
        self.assertEqual(
            dict(counts.per_framework),
            {
                "iso10962": 4,
                "actus": 7,
                "finma": 6,
                "oliveira": 10,
                "ballandies": 10,
                "mme": 8,
                "itsa": 5,
                "eea-tti": 8,
            },
        )

    def test_counts_per_attribute(self):
        per_attribute = coverage_counts(self.matrix).per_attribute
        self.assertEqual(list(per_attribute), list(self.taxonomy.attribute_ids))
        self.assertEqual(per_attribute["underlying"], 8)
        self.assertEqual(per_attribute["information_interface"], 2)
        self.assertEqual(per_attribute["fungibility"], 2)

    def test_every_attribute_is_covered_somewhere(self):
        self.assertEqual(self.matrix.uncovered_attributes(self.taxonomy.attribute_ids), ())

    def test_no_framework_covers_everything(self):
        for framework_id in self.matrix.framework_ids:
            with self.subTest(framework=framework_id):
                self.assertLess(len(self.matrix.covered[framework_id]), 14)

    def test_matrix_only_names_known_attributes(self):
        known = set(self.taxonomy.attribute_ids)
        for framework_id, attributes in self.matrix.covered.items():
            with self.subTest(framework=framework_id):
                self.assertLessEqual(attributes, known)

    def test_framework_labels(self):
        labels = {f.id: f.label for f in self.matrix.frameworks}
        self.assertEqual(labels["iso10962"], "ISO 10962 (CFI)")

    def test_project_cash_onto_iso10962(self):
        result = framework_coverage(self.matrix, "iso10962", fixture("cash"))
        self.assertEqual(result.covered, {"underlying", "information_complexity", "legal_structure"})
        self.assertEqual(len(result.dropped), 10)
        self.assertNotIn("claim_structure", result.dropped)
        self.assertEqual(result.as_dict()["framework"], "iso10962")

    def test_unknown_framework(self):
        with self.assertRaises(UnknownFramework):
            framework_coverage(self.matrix, "cfi2", fixture("cash"))

    def test_custom_matrix(self):
        matrix = parse_coverage_matrix('{"mine": ["technology"], "yours": []}')
        self.assertEqual(matrix.frameworks_covering("technology"), ("mine",))
        counts = coverage_counts(matrix, ["technology", "fungibility"])
        self.assertEqual(dict(counts.per_framework), {"mine": 1, "yours": 0})
        self.assertEqual(dict(counts.per_attribute), {"technology": 1, "fungibility": 0})
