"""
Django command to verify that the legs never reach collision.
"""

from prove.management.base import ProofCommand
from prove.report import Theorem, Verdict
from prove.scenarios import verify_avoidance


class Command(ProofCommand):
    help = "Verify collision avoidance along every leg and in the psi0 chart."
    scenario = "avoidance"

    def run(self, report, dataset, config, workers=None, **options):
        dataset = self.with_energy(report, dataset, config)
        report.add(*verify_avoidance(dataset, config, workers=workers))
        return report.verdict(Theorem.AVOIDANCE) is Verdict.PASS
