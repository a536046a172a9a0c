import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path

from django.core.management import ManagementUtility
from django.test import SimpleTestCase, override_settings

from classification.constants import EXAMPLE_ASSETS
from classification.fixtures import fixture, fixture_path
from codec.codes import decode
from codec.serializers import dumps, serialize_classification, taxonomy_document
from render.box import render
from render.constants import SVG
from render.models import RenderSpec
from taxonomy.builtin import builtin_taxonomy
from taxonomy.documents import parse_taxonomy

CASH = str(fixture_path("cash"))
BITCOIN = str(fixture_path("bitcoin"))


def run(*argv):
    """Run ``manage.py <argv>`` and return ``(exit code, stdout, stderr)``."""
    stdout, stderr = StringIO(), StringIO()
    code = 0
    with redirect_stdout(stdout), redirect_stderr(stderr):
        try:
            ManagementUtility(["manage.py", *argv]).execute()
        except SystemExit as exc:
            code = exc.code
    return code, stdout.getvalue(), stderr.getvalue()


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.tmp = Path(tmp.name)

    def write(self, name, content):
        path = self.tmp / name
        path.write_text(content if isinstance(content, str) else dumps(content), encoding="utf-8")
        return str(path)

    def assertExit(self, expected, *argv):
        code, out, err = run(*argv)
        self.assertEqual(code, expected, f"stdout: {out!r}\nstderr: {err!r}")
        return out, err


class ValidateCommandTests(CommandTestCase):
    def test_valid_in_partial_mode(self):
        out, _ = self.assertExit(0, "validate", CASH)
        self.assertTrue(out.startswith("Cash: valid (partial)\n"))
        self.assertIn("Which technology is the asset based on? Physical", out)

    def test_strict_mode_flags_unset_attribute(self):
        out, err = self.assertExit(1, "validate", CASH, "--strict")
        self.assertIn("error: claim_structure: attribute is unset", out)
        self.assertIn("1 validation error(s)", err)

    def test_lints_alone_exit_zero(self):
        path = self.write(
            "lint.json",
            {
                "asset_name": "Odd",
                "taxonomy_id": "asset_taxonomy",
                "taxonomy_version": "1.0",
                "selections": {
                    "issuance": {"characteristics": ["once"]},
                    "total_supply": {"characteristics": ["flexible"]},
                },
            },
        )
        out, _ = self.assertExit(0, "validate", path)
        self.assertIn("lint: L2 [warning]", out)

    def test_invalid_document(self):
        path = self.write("bad.json", {"asset_name": "Bad"})
        out, _ = self.assertExit(1, "validate", path)
        self.assertIn("error: taxonomy_id:", out)

    def test_json_report(self):
        out, _ = self.assertExit(1, "validate", CASH, "--strict", "--json")
        report = json.loads(out)
        self.assertEqual(report["asset_name"], "Cash")
        self.assertFalse(report["is_valid"])
        self.assertEqual(
            report["errors"], [{"attribute": "claim_structure", "message": "attribute is unset"}]
        )

    def test_missing_file(self):
        _, err = self.assertExit(2, "validate", str(self.tmp / "missing.json"))
        self.assertIn("No such file or directory", err)

    def test_missing_file_json(self):
        out, _ = self.assertExit(2, "validate", str(self.tmp / "missing.json"), "--json")
        self.assertIn("missing.json", json.loads(out)["error"])

    def test_syntax_error(self):
        path = self.write("broken.json", '{"asset_name": ')
        _, err = self.assertExit(2, "validate", path)
        self.assertIn("line 1, column 16", err)

    def test_unknown_flag(self):
        _, err = self.assertExit(2, "validate", CASH, "--lenient")
        self.assertIn("unrecognized arguments: --lenient", err)


class CodecCommandTests(CommandTestCase):
    def test_encode(self):
        out, _ = self.assertExit(0, "encode", BITCOIN)
        self.assertEqual(out, "NTNP-DCNNFCNTF\n")

    def test_encode_json(self):
        out, _ = self.assertExit(0, "encode", BITCOIN, "--json")
        self.assertEqual(json.loads(out), {"asset_name": "Bitcoin", "code": "NTNP-DCNNFCNTF"})

    def test_encode_invalid_classification(self):
        path = self.write(
            "analog.json",
            {
                "asset_name": "Analog",
                "taxonomy_id": "asset_taxonomy",
                "taxonomy_version": "1.0",
                "selections": {"technology": {"characteristics": ["analog"]}},
            },
        )
        out, err = self.assertExit(1, "encode", path)
        self.assertEqual(out, "")
        self.assertIn("technology: unknown characteristic for attribute: 'analog'", err)

    def test_decode(self):
        out, _ = self.assertExit(0, "decode", "NTNP-DCNNFCNTF")
        self.assertEqual(
            out, serialize_classification(decode(builtin_taxonomy(), "NTNP-DCNNFCNTF"))
        )

    def test_decode_code_with_leading_dash(self):
        expected = serialize_classification(decode(builtin_taxonomy(), "-PNIRCVONXFXTF"))
        out, _ = self.assertExit(0, "decode", "-PNIRCVONXFXTF")
        self.assertEqual(out, expected)
        out, _ = self.assertExit(0, "decode", "-PNIRCVONXFXTF", "--json")
        self.assertEqual(json.loads(out)["asset_name"], "decoded -PNIRCVONXFXTF")
        out, _ = self.assertExit(0, "decode", "--json", "-PNIRCVONXFXTF")
        self.assertNotIn("claim_structure", json.loads(out)["selections"])

    def test_decode_all_unset(self):
        out, _ = self.assertExit(0, "decode", "--------------", "--json")
        self.assertEqual(json.loads(out)["selections"], {})

    def test_decode_invalid_code(self):
        _, err = self.assertExit(2, "decode", "ZTNP-DCNNFCNTF")
        self.assertIn("position 1: 'Z' not in {N,F,X,-,*}", err)

    def test_decode_against_custom_taxonomy(self):
        document = {
            "id": "toy",
            "name": "Toy",
            "version": "1",
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
                }
            ],
        }
        path = self.write("toy.json", document)
        out, _ = self.assertExit(0, "decode", "B", "--taxonomy", path, "--json")
        self.assertEqual(
            json.loads(out)["selections"], {"colour": {"characteristics": ["blue"]}}
        )


class DiffCommandTests(CommandTestCase):
    def test_text(self):
        out, _ = self.assertExit(0, "diff", CASH, BITCOIN)
        self.assertIn("= underlying", out)
        self.assertTrue(out.endswith("similarity (determined): 4/12 = 0.333\n"))

    def test_json_all_attributes(self):
        out, _ = self.assertExit(0, "diff", CASH, BITCOIN, "--similarity", "all", "--json")
        data = json.loads(out)
        self.assertEqual(data["undetermined"], ["claim_structure", "legal_status"])
        self.assertEqual(data["similarity"]["shared"], 4)
        self.assertEqual(data["similarity"]["total"], 14)

    def test_unknown_basis(self):
        self.assertExit(2, "diff", CASH, BITCOIN, "--similarity", "weighted")


class RenderCommandTests(CommandTestCase):
    def test_text_to_stdout(self):
        out, _ = self.assertExit(0, "render", CASH, BITCOIN)
        self.assertEqual(out, render(RenderSpec(builtin_taxonomy(), (fixture("cash"), fixture("bitcoin")))))

    def test_svg_to_file(self):
        target = self.tmp / "box.svg"
        out, _ = self.assertExit(0, "render", "--format", "svg", "--out", str(target))
        self.assertEqual(out, "")
        self.assertEqual(
            target.read_text(encoding="utf-8"), render(RenderSpec(builtin_taxonomy(), format=SVG))
        )

    def test_too_many_overlays(self):
        _, err = self.assertExit(2, "render", CASH, BITCOIN, CASH)
        self.assertIn("at most 2 overlays", err)


class CoverageCommandTests(CommandTestCase):
    def test_counts(self):
        out, _ = self.assertExit(0, "coverage", "--counts")
        self.assertIn("iso10962: 4", out)
        self.assertIn("underlying: 8", out)

    def test_counts_json(self):
        out, _ = self.assertExit(0, "coverage", "--counts", "--json")
        self.assertEqual(json.loads(out)["per_framework"]["oliveira"], 10)

    def test_framework(self):
        out, _ = self.assertExit(0, "coverage", "--framework", "iso10962", CASH)
        self.assertIn("covered: information_complexity, legal_structure, underlying", out)

    def test_framework_needs_a_file(self):
        self.assertExit(2, "coverage", "--framework", "iso10962")

    def test_mode_is_required(self):
        self.assertExit(2, "coverage", CASH)

    def test_unknown_framework(self):
        self.assertExit(2, "coverage", "--framework", "cfi2", CASH)


class RegistryCommandTests(CommandTestCase):
    def setUp(self):
        super().setUp()
        self.store = str(self.tmp / "store")

    def registry(self, expected, *argv):
        return self.assertExit(expected, "registry", "--store", self.store, *argv)

    def test_round_trip(self):
        out, _ = self.registry(0, "add", CASH)
        asset_id = out.strip()
        self.assertEqual(len(asset_id), 9)

        out, _ = self.registry(0, "get", asset_id)
        self.assertIn(f'"asset_id": "{asset_id}"', out)

        self.registry(0, "update", asset_id, BITCOIN)
        out, _ = self.registry(0, "--json", "query", "--where", "technology=dlt")
        self.assertEqual(json.loads(out), [{"id": asset_id, "asset_name": "Bitcoin"}])

        self.registry(0, "remove", asset_id)
        self.registry(2, "get", asset_id)

    def test_each_invocation_leaves_a_current_index(self):
        self.registry(0, "add", CASH)
        store = Path(self.store)
        index = json.loads((store / "index.json").read_text(encoding="utf-8"))
        self.assertEqual(index["journal_size"], (store / "journal.jsonl").stat().st_size)
        self.assertEqual(index["journal_lines"], 1)

    def test_query_seeded_fixtures(self):
        for name in EXAMPLE_ASSETS:
            self.registry(0, "add", str(fixture_path(name)))
        out, _ = self.registry(0, "query", "--where", "fungibility=non_fungible")
        self.assertEqual(len(out.splitlines()), 1)
        self.assertTrue(out.rstrip().endswith("CryptoKitties"))

    def test_rejected_classification(self):
        path = self.write(
            "analog.json",
            {
                "asset_name": "Analog",
                "taxonomy_id": "asset_taxonomy",
                "taxonomy_version": "1.0",
                "selections": {"technology": {"characteristics": ["analog"]}},
            },
        )
        _, err = self.registry(1, "add", path)
        self.assertIn("classification rejected", err)

    def test_unknown_asset(self):
        _, err = self.registry(2, "get", "AAAAAAAA8")
        self.assertIn("asset AAAAAAAA8 not found", err)

    def test_malformed_id(self):
        self.registry(2, "get", "AAAAAAAA7")

    def test_unknown_predicate(self):
        self.registry(2, "query", "--where", "colour=red")

    def test_action_is_required(self):
        self.registry(2)

    @override_settings(TAXO_STORE=None)
    def test_store_is_required(self):
        self.assertExit(2, "registry", "query")

    def test_store_from_settings(self):
        with override_settings(TAXO_STORE=self.store):
            self.assertExit(0, "registry", "add", CASH)
        out, _ = self.registry(0, "query")
        self.assertTrue(out.rstrip().endswith("Cash"))


class FixturesAndTaxonomyCommandTests(CommandTestCase):
    def test_export(self):
        target = self.tmp / "fixtures"
        out, _ = self.assertExit(0, "fixtures", "export", str(target))
        self.assertEqual(len(out.splitlines()), 6)
        for name in EXAMPLE_ASSETS:
            with self.subTest(asset=name):
                self.assertEqual(
                    (target / f"{name}.json").read_bytes(), fixture_path(name).read_bytes()
                )

    def test_taxonomy_document(self):
        out, _ = self.assertExit(0, "taxonomy")
        self.assertEqual(parse_taxonomy(out), builtin_taxonomy())

    def test_taxonomy_check(self):
        out, _ = self.assertExit(0, "taxonomy", "--check")
        self.assertIn("valid, 14 attributes, 43 characteristics", out)

    def test_taxonomy_check_of_invalid_document(self):
        document = taxonomy_document(builtin_taxonomy())
        document["attributes"][1]["id"] = "claim_structure"
        path = self.write("dup.json", document)
        out, _ = self.assertExit(1, "taxonomy", "--check", "--taxonomy", path)
        self.assertIn("duplicate attribute id 'claim_structure'", out)

    def test_invalid_taxonomy_elsewhere_is_an_error(self):
        path = self.write("dup.json", {"id": "x"})
        self.assertExit(2, "encode", CASH, "--taxonomy", path)


class JsonOutputTests(CommandTestCase):
    def test_every_command_emits_one_json_document(self):
        store = str(self.tmp / "store")
        invocations = [
            ["validate", CASH],
            ["validate", CASH, "--strict"],
            ["encode", CASH],
            ["decode", "-PNIRCVONXFXTF"],
            ["decode", "nonsense"],
            ["diff", CASH, BITCOIN],
            ["render", CASH],
            ["coverage", "--counts"],
            ["coverage", "--framework", "mme", BITCOIN],
            ["fixtures", "export", str(self.tmp / "export")],
            ["taxonomy"],
        ]
        # Registry options precede the action.
        invocations = [[*argv, "--json"] for argv in invocations] + [
            ["registry", "--store", store, "--json", "add", CASH],
            ["registry", "--store", store, "--json", "query"],
            ["registry", "--store", store, "--json", "get", "AAAAAAAA8"],
        ]
        for argv in invocations:
            with self.subTest(argv=argv):
                code, out, _ = run(*argv)
                self.assertIn(code, (0, 1, 2))
                json.loads(out)
