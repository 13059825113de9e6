"""
Django command to verify the approach family near collision.
"""

from dataclasses import replace
from fractions import Fraction

from core.exceptions import ConfigurationError
from prove.management.base import ProofCommand
from prove.report import Theorem, Verdict
from prove.scenarios import verify_approach


def parse_shear(value):
    try:
        L = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"--L must be a number, got {value!r}") from exc
    if not 0 < L < 1:
        raise ConfigurationError(f"--L must lie in (0, 1), got {value}")
    return L


class Command(ProofCommand):
    """Cone bounds for g0..g3, the gluing S R1 <= N4 and the resulting family."""

    help = "Verify the cone bounds and the approach sequences R_k => R_k+1, R_k => Q_k+1."
    scenario = "approach"

    def add_scenario_arguments(self, parser):
        parser.add_argument("--L", dest="shear", help="shear parameter of eta_L (default: from the dataset)")
        parser.add_argument("--grid", type=int, help="initial subdivision per side")
        parser.add_argument("--depth", type=int, help="maximum refinement depth")

    def run(self, report, dataset, config, shear=None, grid=None, depth=None, workers=None, **options):
        if shear is not None:
            dataset = replace(dataset, shear=parse_shear(shear))
        dataset = self.with_energy(report, dataset, config)
        certificates = verify_approach(dataset, config, grid=grid, depth=depth, workers=workers)
        report.add(*certificates)
        family = certificates[-1]
        self.stdout.write(f"approach family contracts by {family.details['decay']} per step")
        return report.verdict(Theorem.APPROACH) is Verdict.PASS
