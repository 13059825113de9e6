"""
Django command to run every step of the proof.
"""

from core.exceptions import ProofError
from cover import collision_disc
from prove.management.base import ProofCommand
from prove.report import Theorem
from prove.scenarios import verify_approach, verify_avoidance, verify_sequences
from prove.words import certify_word


class Command(ProofCommand):
    """Energy, coverings, avoidance and approach; a failing step does not stop the others."""

    help = "Run the whole proof and report a verdict per theorem."
    scenario = "prove_all"

    def add_scenario_arguments(self, parser):
        parser.add_argument("--grid", type=int, help="initial subdivision per side")
        parser.add_argument("--depth", type=int, help="maximum refinement depth")
        parser.add_argument(
            "--word",
            action="append",
            default=[],
            dest="words",
            help="symbolic word to certify once the steps pass (repeatable)",
        )

    def step(self, report, theorem, action):
        try:
            with report.timed(theorem.value):
                action()
        except ProofError as exc:
            report.fail(theorem.value, exc)
        verdict = report.verdict(theorem)
        self.stdout.write(f"{theorem.value}: {verdict.value}")

    def run(self, report, dataset, config, grid=None, depth=None, workers=None, words=(), **options):
        try:
            dataset = self.with_energy(report, dataset, config, verify=True)
        except ProofError as exc:
            report.fail(Theorem.ENERGY.value, exc)
            self.stdout.write(f"{Theorem.ENERGY.value}: fail")
            return False
        self.stdout.write(f"{Theorem.ENERGY.value}: {report.verdict(Theorem.ENERGY).value}")

        def coverings():
            report.add(collision_disc(dataset.hset(0)))
            report.add_sequences(verify_sequences(dataset, config, grid=grid, depth=depth, workers=workers))

        def avoidance():
            report.add(*verify_avoidance(dataset, config, workers=workers))

        def approach():
            report.add(*verify_approach(dataset, config, grid=grid, depth=depth, workers=workers))

        self.step(report, Theorem.COVERINGS, coverings)
        self.step(report, Theorem.AVOIDANCE, avoidance)
        self.step(report, Theorem.APPROACH, approach)

        for word in words:
            conclusion = certify_word(word, report)
            report.add(conclusion)
            report.conclusions.append({"word": word, **conclusion.details})
            self.stdout.write(conclusion.details["statement"])
        return report.passed
