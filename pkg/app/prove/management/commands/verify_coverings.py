"""
Django command to verify the covering sequences c1, c2, o1, o2.
"""

from cover import collision_disc
from prove.management.base import ProofCommand
from prove.report import Theorem, Verdict
from prove.scenarios import verify_sequences


class Command(ProofCommand):
    """Integrated legs plus the relations derived from them by symmetry."""

    help = "Verify the covering sequences and the collision disc in N0."
    scenario = "coverings"

    def add_scenario_arguments(self, parser):
        parser.add_argument("--grid", type=int, help="initial subdivision per side")
        parser.add_argument("--depth", type=int, help="maximum refinement depth")
        parser.add_argument("--scale", type=float, help="initial h-set scale factor")
        parser.add_argument("--max-scale", type=float, help="largest h-set scale factor")
        parser.add_argument(
            "--no-cross-check",
            action="store_false",
            dest="cross_check",
            help="skip verifying N2<=N3 by integration",
        )

    def run(
        self, report, dataset, config, grid=None, depth=None, scale=None, max_scale=None,
        cross_check=True, workers=None, **options
    ):
        dataset = self.with_energy(report, dataset, config)
        report.add(collision_disc(dataset.hset(0)))
        result = verify_sequences(
            dataset,
            config,
            grid=grid,
            depth=depth,
            workers=workers,
            scale=scale,
            max_scale=max_scale,
            cross_check=cross_check,
        )
        report.add_sequences(result)
        for name, ids in result.sequences.items():
            self.stdout.write(f"{name}: {' '.join(ids)}")
        return report.verdict(Theorem.COVERINGS) is Verdict.PASS
