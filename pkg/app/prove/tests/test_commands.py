"""
Tests for the proof management commands.
"""

import json
import tempfile
from dataclasses import replace
from fractions import Fraction
from io import StringIO
from pathlib import Path
from unittest.mock import patch

import numpy as np

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from core.exceptions import AvoidanceFailed, NewtonFailure
from core.models import CertificateRecord, ProofRun
from cover import CertificateKind
from ivl import Interval
from model import Frame
from prove.dataset import ChartDataset
from prove.energy import H0Result
from prove.report import ProofReport, Theorem
from prove.scenarios import SequenceResult, expected_sequences
from prove.tests.test_report import K, complete_report, stub
from prove.tracing import Trace

COMMANDS = "prove.management.commands"


def h0_result():
    return H0Result(
        h0=Interval(-0.7110551, -0.7110550),
        w1=Interval(np.zeros(4)),
        w2=Interval(np.zeros(4)),
        tau=Interval(1.4, 1.5),
        s1=Fraction(58696, 65536),
        iterations=3,
    )


def expected_certificates(theorem, kind=CertificateKind.COVERING):
    return [stub(rid, kind) for rid in ProofReport(K=K).expected(theorem)]


def sequence_result():
    return SequenceResult(
        sequences=expected_sequences(K),
        certificates=expected_certificates(Theorem.COVERINGS),
        flags={"N0": True, "N2": True, "N18": True, "N3=SN1": True},
        scale=1.0,
    )


def refined_tail(dataset, config):
    return replace(dataset, orbit_refined=True), None


def run(name, *args, **options):
    stdout, stderr = StringIO(), StringIO()
    call_command(name, *args, stdout=stdout, stderr=stderr, **options)
    return stdout.getvalue()


@patch("prove.management.base.find_h0", return_value=h0_result())
class ScenarioCommandTests(TestCase):
    """Test commands that run one scenario."""

    def setUp(self):
        patcher = patch("prove.management.base.refine_dataset", side_effect=refined_tail)
        self.refine = patcher.start()
        self.addCleanup(patcher.stop)

    def test_find_h0(self, patched_find):
        """Test find_h0 prints the enclosure and passes."""
        with patch(f"{COMMANDS}.find_h0.find_h0", return_value=h0_result()) as patched:
            output = run("find_h0", s1="58696/65536")

        self.assertIn("h0 in [", output)
        self.assertEqual(patched.call_args.kwargs["s1"], Fraction(58696, 65536))

    def test_find_h0_bad_s1(self, patched_find):
        """Test a malformed --s1 exits with the configuration code."""
        with self.assertRaises(CommandError) as ctx:
            run("find_h0", s1="one/two")

        self.assertEqual(ctx.exception.returncode, 2)

    def test_find_h0_newton_failure(self, patched_find):
        """Test an unverified zero exits with the failure code."""
        with patch(f"{COMMANDS}.find_h0.find_h0", side_effect=NewtonFailure("no contraction")):
            with self.assertRaises(CommandError) as ctx:
                run("find_h0")

        self.assertEqual(ctx.exception.returncode, 1)

    def test_verify_avoidance_writes_report(self, patched_find):
        """Test a passing avoidance run writes its JSON report."""
        certs = expected_certificates(Theorem.AVOIDANCE, CertificateKind.AVOIDANCE)
        with tempfile.TemporaryDirectory() as tmp, patch(
            f"{COMMANDS}.verify_avoidance.verify_avoidance", return_value=certs
        ):
            path = Path(tmp) / "report.json"
            output = run("verify_avoidance", json_path=str(path))
            data = json.loads(path.read_text())

        self.assertIn("avoidance: pass", output)
        self.assertEqual(data["verdicts"]["avoidance"], "pass")
        self.assertEqual(data["verdicts"]["energy"], "pass")
        patched_find.assert_called_once()

    def test_verify_avoidance_failure(self, patched_find):
        """Test a colliding leg exits with code 1."""
        with patch(
            f"{COMMANDS}.verify_avoidance.verify_avoidance",
            side_effect=AvoidanceFailed("P3", 2),
        ):
            with self.assertRaises(CommandError) as ctx:
                run("verify_avoidance")

        self.assertEqual(ctx.exception.returncode, 1)

    def test_unrefined_tail_refined_first(self, patched_find):
        """Test tables without a closed tail are refined before h0 is verified on them."""
        certs = expected_certificates(Theorem.AVOIDANCE, CertificateKind.AVOIDANCE)
        with patch(f"{COMMANDS}.verify_avoidance.verify_avoidance", return_value=certs):
            run("verify_avoidance")

        self.refine.assert_called_once()
        dataset = patched_find.call_args.args[0]
        self.assertTrue(dataset.orbit_refined)
        self.assertIsNone(patched_find.call_args.kwargs["guess"])

    def test_refined_tables_reused(self, patched_find):
        """Test refined tables with a stored h0 skip both refinement and Newton."""
        certs = expected_certificates(Theorem.AVOIDANCE, CertificateKind.AVOIDANCE)
        dataset = replace(ChartDataset.load(), orbit_refined=True).with_h0(h0_result().h0)
        with tempfile.TemporaryDirectory() as tmp, patch(
            f"{COMMANDS}.verify_avoidance.verify_avoidance", return_value=certs
        ):
            path = Path(tmp) / "tables.json"
            dataset.dump(path)
            output = run("verify_avoidance", dataset=str(path))

        self.assertIn("avoidance: pass", output)
        self.refine.assert_not_called()
        patched_find.assert_not_called()

    def test_missing_dataset(self, patched_find):
        """Test an unreadable dataset exits with code 2."""
        with self.assertRaises(CommandError) as ctx:
            run("verify_avoidance", dataset="/nonexistent/tables.json")

        self.assertEqual(ctx.exception.returncode, 2)
        patched_find.assert_not_called()

    def test_verify_approach_rejects_shear(self, patched_find):
        """Test --L outside (0, 1) is a configuration error."""
        with self.assertRaises(CommandError) as ctx:
            run("verify_approach", shear="1.5")

        self.assertEqual(ctx.exception.returncode, 2)

    def test_save_records_run(self, patched_find):
        """Test --save stores the run and one record per certificate."""
        certs = expected_certificates(Theorem.AVOIDANCE, CertificateKind.AVOIDANCE)
        with patch(f"{COMMANDS}.verify_avoidance.verify_avoidance", return_value=certs):
            run("verify_avoidance", save=True)

        saved = ProofRun.objects.get()
        self.assertEqual(saved.scenario, "avoidance")
        self.assertEqual(saved.status, ProofRun.Status.PASS)
        self.assertEqual(saved.certificates.count(), len(certs) + 1)
        self.assertTrue(CertificateRecord.objects.filter(kind="h0").exists())


class ProveAllCommandTests(TestCase):
    """Test prove_all."""

    def patches(self, avoidance=None):
        avoidance = avoidance or {
            "return_value": expected_certificates(Theorem.AVOIDANCE, CertificateKind.AVOIDANCE)
        }
        return [
            patch("prove.management.base.find_h0", return_value=h0_result()),
            patch("prove.management.base.refine_dataset", side_effect=refined_tail),
            patch(f"{COMMANDS}.prove_all.collision_disc", return_value=stub("disc:N0", CertificateKind.DISC)),
            patch(f"{COMMANDS}.prove_all.verify_sequences", return_value=sequence_result()),
            patch(f"{COMMANDS}.prove_all.verify_avoidance", **avoidance),
            patch(
                f"{COMMANDS}.prove_all.verify_approach",
                return_value=expected_certificates(Theorem.APPROACH, CertificateKind.CONE),
            ),
        ]

    def call(self, avoidance=None, **options):
        patches = self.patches(avoidance)
        for p in patches:
            p.start()
            self.addCleanup(p.stop)
        return run("prove_all", **options)

    def test_all_pass_with_word(self):
        """Test every verdict passes and a word is certified."""
        output = self.call(words=["Oc/A"], save=True)

        for theorem in Theorem:
            self.assertIn(f"{theorem.value}: pass", output)
        self.assertIn("Oc^- and A^+ intersect", output)
        saved = ProofRun.objects.get()
        self.assertEqual(saved.report["conclusions"][0]["word"], "Oc/A")

    def test_failing_step_continues(self):
        """Test a failing avoidance step still runs the approach step and fails the run."""
        with self.assertRaises(CommandError) as ctx:
            self.call(avoidance={"side_effect": AvoidanceFailed("P9", 0)}, save=True)

        self.assertEqual(ctx.exception.returncode, 1)
        saved = ProofRun.objects.get()
        self.assertEqual(saved.status, ProofRun.Status.FAIL)
        self.assertEqual(saved.report["verdicts"]["avoidance"], "fail")
        self.assertEqual(saved.report["verdicts"]["approach"], "pass")


class CertifyWordCommandTests(TestCase):
    """Test certify_word."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.path = Path(self.tmp.name) / "report.json"

    def test_from_report_file(self):
        """Test a word is certified from a report file."""
        complete_report().dump(self.path)

        output = run("certify_word", "co", report_path=str(self.path))

        self.assertIn("periodic orbit", output)

    def test_from_saved_run(self):
        """Test the latest passing run supplies the premises."""
        ProofRun.objects.create(
            scenario="prove_all",
            status=ProofRun.Status.PASS,
            report=complete_report().to_dict(),
        )

        output = run("certify_word", "1,2,3")

        self.assertIn("NK -1-> NK -2-> NK -3-> NK", output)

    def test_no_premises(self):
        """Test no saved run and no report is a configuration error."""
        with self.assertRaises(CommandError) as ctx:
            run("certify_word", "c")

        self.assertEqual(ctx.exception.returncode, 2)

    def test_missing_premise(self):
        """Test an unverified relation exits with code 1."""
        report = complete_report()
        del report.certificates["N1=>N2"]
        report.dump(self.path)

        with self.assertRaises(CommandError) as ctx:
            run("certify_word", "c", report_path=str(self.path))

        self.assertEqual(ctx.exception.returncode, 1)


class TraceOrbitCommandTests(TestCase):
    """Test trace_orbit."""

    def test_writes_csv(self):
        """Test the trace is written with the standard header."""
        trace = Trace(np.array([0.0, 0.5]), np.ones((2, 4)), Frame.STD)
        with tempfile.TemporaryDirectory() as tmp, patch(
            f"{COMMANDS}.trace_orbit.trace_orbit", return_value=trace
        ):
            path = Path(tmp) / "orbit.csv"
            output = run("trace_orbit", start="w2", time=0.5, csv_path=str(path))
            lines = path.read_text().splitlines()

        self.assertIn("2 rows written", output)
        self.assertEqual(lines[0], "t,q1,q2,q3,q4,frame")
        self.assertTrue(lines[1].endswith(",std"))
