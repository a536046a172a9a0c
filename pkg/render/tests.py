import itertools
from pathlib import Path
from xml.etree import ElementTree

from django.test import SimpleTestCase

from analysis.diff import diff
from classification.fixtures import example_assets, fixture
from classification.models import AssetClassification, ClassificationBuilder
from core.exceptions import InvalidOverlay
from taxonomy.builtin import builtin_taxonomy
from taxonomy.models import AttributeDef, CharacteristicDef, Taxonomy

from .box import render
from .constants import SVG, TEXT
from .models import RenderSpec

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"
SVG_NS = "{http://www.w3.org/2000/svg}"


def golden(name):
    return (GOLDEN_DIR / name).read_text(encoding="utf-8")


class GoldenRenderTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()
        self.overlays = (fixture("cash"), fixture("bitcoin"))

    def test_bare_text(self):
        self.assertEqual(render(RenderSpec(self.taxonomy)), golden("bare.txt"))

    def test_bare_svg(self):
        self.assertEqual(render(RenderSpec(self.taxonomy, format=SVG)), golden("bare.svg"))

    def test_cash_and_bitcoin_text(self):
        self.assertEqual(
            render(RenderSpec(self.taxonomy, self.overlays, TEXT)), golden("cash_bitcoin.txt")
        )

    def test_cash_and_bitcoin_svg(self):
        self.assertEqual(
            render(RenderSpec(self.taxonomy, self.overlays, SVG)), golden("cash_bitcoin.svg")
        )


class TextGridTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()

    def grid(self, text):
        """The box rows of a text rendering, without header and legend."""
        lines = text.splitlines()
        return lines[2:2 + 2 * len(self.taxonomy.attributes)]

    def test_one_label_line_and_one_marker_line_per_attribute(self):
        grid = self.grid(render(RenderSpec(self.taxonomy)))
        for attribute, label_line in zip(self.taxonomy.attributes, grid[::2]):
            self.assertTrue(label_line.startswith(attribute.name))
            for characteristic in attribute.characteristics:
                self.assertIn(characteristic.label, label_line)
        self.assertEqual(set(grid[1::2]), {""})

    def test_both_markers_match_shared_attributes(self):
        for a, b in itertools.permutations(example_assets(), 2):
            with self.subTest(a=a.asset_name, b=b.asset_name):
                grid = self.grid(render(RenderSpec(self.taxonomy, (a, b))))
                marked_both = {
                    attribute.id
                    for attribute, marker_line in zip(self.taxonomy.attributes, grid[1::2])
                    if "[12]" in marker_line
                }
                self.assertEqual(marked_both, diff(self.taxonomy, a, b).shared)

    def test_different_subtypes_keep_separate_markers(self):
        overlays = (fixture("bitcoin"), fixture("crowdlitoken"))
        grid = self.grid(render(RenderSpec(self.taxonomy, overlays)))
        self.assertEqual(grid[3].split(), ["[1T][2R]"])
        self.assertIn("technology", diff(self.taxonomy, *overlays).differing)

    def test_same_cells_of_a_differing_multi_selection(self):
        overlays = (fixture("cash"), fixture("traditional_share"))
        grid = self.grid(render(RenderSpec(self.taxonomy, overlays)))
        self.assertEqual(grid[3].split(), ["[1][2]", "[2]"])

    def test_underlying_none_is_marked_by_both(self):
        text = render(RenderSpec(self.taxonomy, (fixture("cash"), fixture("bitcoin"))))
        lines = text.splitlines()
        row = lines.index(next(line for line in lines if line.startswith("Underlying")))
        label_column = lines[row].index("No underlying")
        self.assertEqual(lines[row + 1][label_column:label_column + 4], "[12]")

    def test_multi_select_marks_every_selected_cell(self):
        grid = self.grid(render(RenderSpec(self.taxonomy, (fixture("traditional_share"),))))
        technology_markers = grid[3]
        self.assertEqual(technology_markers.split(), ["[1]", "[1]"])

    def test_empty_overlay_only_adds_a_legend(self):
        empty = AssetClassification("Nothing yet", "asset_taxonomy", "1.0")
        bare = render(RenderSpec(self.taxonomy))
        overlaid = render(RenderSpec(self.taxonomy, (empty,)))
        self.assertEqual(self.grid(overlaid), self.grid(bare))
        self.assertTrue(overlaid.endswith("\n\n[1] Nothing yet\n"))

    def test_single_overlay_has_no_both_entry(self):
        text = render(RenderSpec(self.taxonomy, (fixture("ether"),)))
        self.assertNotIn("[12]", text)
        self.assertNotIn("[2]", text)


class SvgTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()

    def cells(self, svg):
        root = ElementTree.fromstring(svg.encode("utf-8"))
        return root, root.findall(f".//{SVG_NS}rect")

    def test_one_rect_per_cell(self):
        for overlays in ((), (fixture("cash"),), (fixture("cash"), fixture("bitcoin"))):
            with self.subTest(overlays=len(overlays)):
                _, rects = self.cells(render(RenderSpec(self.taxonomy, overlays, SVG)))
                self.assertEqual(len(rects), 43)
                self.assertEqual({r.get("class") for r in rects}, {"cell"})

    def test_fills(self):
        svg = render(RenderSpec(self.taxonomy, (fixture("cash"), fixture("bitcoin")), SVG))
        root, rects = self.cells(svg)
        fills = [r.get("fill") for r in rects]
        self.assertEqual(fills.count("url(#both)"), 4)
        self.assertEqual(fills.count("#9fd89f"), 9)
        self.assertEqual(fills.count("#f7c16b"), 9)
        self.assertEqual(root.get("width"), "1300")
        self.assertEqual(root.get("height"), "512")

    def test_different_subtypes_are_not_filled_as_both(self):
        svg = render(RenderSpec(self.taxonomy, (fixture("bitcoin"), fixture("crowdlitoken")), SVG))
        _, rects = self.cells(svg)
        apart = [r for r in rects if r.get("fill") == "url(#apart)"]
        self.assertEqual(len(apart), 1)
        self.assertEqual(apart[0].find(f"{SVG_NS}title").text, "[1T][2R]")
        self.assertEqual(len(rects), 43)

    def test_long_labels_are_fitted_to_their_box(self):
        root, _ = self.cells(render(RenderSpec(self.taxonomy, format=SVG)))
        fitted = {
            text.text: text.get("textLength")
            for text in root.findall(f"{SVG_NS}text")
            if text.get("textLength")
        }
        self.assertEqual(
            fitted,
            {"Distributed ledger technology": "168", "Consensus/validation mechanism": "204"},
        )

    def test_text_is_escaped(self):
        attribute = AttributeDef(
            id="terms",
            name="Terms & <conditions>",
            question="?",
            characteristics=(CharacteristicDef("a", "A & B", "A"), CharacteristicDef("b", "B", "B")),
        )
        taxonomy = Taxonomy("toy", "Toy", "1", (attribute,))
        svg = render(RenderSpec(taxonomy, format=SVG))
        self.assertIn("Terms &amp; &lt;conditions&gt;", svg)
        self.assertIn(">A &amp; B<", svg)
        self.assertEqual(len(self.cells(svg)[1]), 2)


class OverlayValidationTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = builtin_taxonomy()

    def test_at_most_two_overlays(self):
        with self.assertRaises(InvalidOverlay):
            RenderSpec(self.taxonomy, (fixture("cash"), fixture("bitcoin"), fixture("ether")))

    def test_invalid_overlay(self):
        broken = (
            ClassificationBuilder.for_taxonomy(self.taxonomy, "Broken")
            .select("technology", "analog")
            .build()
        )
        with self.assertRaises(InvalidOverlay) as ctx:
            render(RenderSpec(self.taxonomy, (fixture("cash"), broken)))
        self.assertIn("overlay 2 (Broken)", str(ctx.exception))

    def test_overlay_for_another_taxonomy(self):
        other = AssetClassification("Other", "asset_taxonomy", "2.0")
        with self.assertRaises(InvalidOverlay):
            render(RenderSpec(self.taxonomy, (other,)))

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            RenderSpec(self.taxonomy, format="pdf")
