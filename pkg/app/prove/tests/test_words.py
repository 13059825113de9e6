"""
Tests for symbolic words.
"""

from django.test import SimpleTestCase

from core.exceptions import ConfigurationError, MissingPremise
from cover import CertificateKind
from prove.scenarios import GLUING
from prove.tests.test_report import K, complete_report
from prove.words import DISC, SymbolicWord, WordKind, certify_word, expand, loop_premises


class ParseTests(SimpleTestCase):
    """Test the word grammar."""

    def test_cyclic(self):
        """Test letters over {c, o} form a cyclic word."""
        word = SymbolicWord.parse("coo")

        self.assertEqual(word.kind, WordKind.CYCLIC)
        self.assertEqual(word.symbols, ("c", "o", "o"))

    def test_depths(self):
        """Test comma separated depths, ignoring blanks."""
        word = SymbolicWord.parse("1, 2,3")

        self.assertEqual(word.kind, WordKind.DEPTHS)
        self.assertEqual(word.symbols, (1, 2, 3))

    def test_schema(self):
        """Test motion schemas X/Y."""
        word = SymbolicWord.parse("Oc/A")

        self.assertEqual(word.kind, WordKind.SCHEMA)
        self.assertEqual(word.symbols, ("Oc", "A"))

    def test_invalid(self):
        """Test unknown words and zero depths are rejected."""
        for text in ("cx", "Z/A", "1,0", "", "A/"):
            with self.assertRaises(ConfigurationError):
                SymbolicWord.parse(text)


class ExpansionTests(SimpleTestCase):
    """Test the premises each word needs."""

    def test_cyclic_c_uses_c1_c2(self):
        """Test the word c needs exactly c1 and c2."""
        premises, statement, _ = expand(SymbolicWord.parse("c"), K)

        self.assertEqual(premises, ["N0=>N1", "N1=>N2", "N2<=N3", "N3<=N0"])
        self.assertIn("periodic orbit", statement)

    def test_cyclic_o_visits_nk(self):
        """Test the word o runs through N_K and back."""
        premises, _, _ = expand(SymbolicWord.parse("o"), K)

        self.assertIn("N17=>N18", premises)
        self.assertIn("N18<=SN17", premises)
        self.assertEqual(premises[-1], "SN1<=N0")

    def test_depths_use_approach_family(self):
        """Test depth words need the gluing and the mirrored tail."""
        premises, _, display = expand(SymbolicWord.parse("1,2,3"), K)

        self.assertIn(GLUING, premises)
        self.assertIn("SN6<=SN5", premises)
        self.assertNotIn("SN1<=N0", premises)
        self.assertEqual(display, "NK -1-> NK -2-> NK -3-> NK")
        self.assertEqual(premises, loop_premises(K))

    def test_collision_schemas_need_disc(self):
        """Test schemas ending or starting in collision attach the disc."""
        to_collision, _, _ = expand(SymbolicWord.parse("A/C"), K)
        from_collision, _, _ = expand(SymbolicWord.parse("C/Os"), K)
        oscillating, _, _ = expand(SymbolicWord.parse("Oc/Oc"), K)

        self.assertIn(DISC, to_collision)
        self.assertIn("SN1<=N0", to_collision)
        self.assertIn(DISC, from_collision)
        self.assertIn("N0=>N1", from_collision)
        self.assertNotIn(DISC, oscillating)

    def test_ejection_collision(self):
        """Test C/C only needs the h0 certificate."""
        premises, _, _ = expand(SymbolicWord.parse("C/C"), K)

        self.assertEqual(premises, ["h0"])


class CertifyTests(SimpleTestCase):
    """Test certify_word."""

    def test_certify_cyclic(self):
        """Test a verified report licenses a periodic orbit."""
        cert = certify_word("co", complete_report())

        self.assertEqual(cert.relation_id, "word:co")
        self.assertEqual(cert.kind, CertificateKind.WORD)
        self.assertIn("N0=>N1", cert.premises)

    def test_certify_schema(self):
        """Test an Oc/A conclusion names both motions."""
        cert = certify_word("Oc/A", complete_report())

        self.assertIn("Oc^- and A^+ intersect", cert.details["statement"])

    def test_every_motion_schema(self):
        """Test each motion schema is certified by a complete report."""
        report = complete_report()

        for schema in ("Oc/Oc", "Oc/A", "A/Oc", "A/A", "A/C", "C/A"):
            with self.subTest(schema=schema):
                cert = certify_word(schema, report)
                past, future = schema.split("/")

                self.assertEqual(cert.relation_id, f"word:{schema}")
                self.assertEqual(cert.kind, CertificateKind.WORD)
                self.assertTrue(all(report.has(rid) for rid in cert.premises))
                self.assertIn(f"{past}^- and {future}^+ intersect", cert.details["statement"])

    def test_missing_premise(self):
        """Test a word whose relation was never verified raises MissingPremise."""
        report = complete_report()
        del report.certificates["cone:g2"]

        with self.assertRaises(MissingPremise) as ctx:
            certify_word("1,2", report)

        self.assertEqual(ctx.exception.relation_id, "cone:g2")

    def test_missing_disc(self):
        """Test collision words need the disc certificate."""
        report = complete_report()
        del report.certificates[DISC]

        with self.assertRaises(MissingPremise):
            certify_word("Oc/C", report)
