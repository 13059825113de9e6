"""
Django command to verify the energy of the ejection-collision orbit.
"""

from fractions import Fraction

from core.exceptions import ConfigurationError
from prove.energy import find_h0
from prove.management.base import ProofCommand
from prove.report import Theorem, Verdict


def fraction(value):
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"--s1 must be a rational like 58696/65536, got {value!r}") from exc


class Command(ProofCommand):
    """Interval Newton on Psi(h, w) around the shooting solution."""

    help = "Enclose h0 and w1 for the ejection-collision orbit of primary 2."
    scenario = "energy"

    def add_scenario_arguments(self, parser):
        parser.add_argument("--s1", help="flow time from w0 to w1, as NUM/DEN")
        parser.add_argument("--budget", type=float, help="largest accepted width of the h0 enclosure")

    def run(self, report, dataset, config, s1=None, budget=None, **options):
        result = find_h0(dataset, config, s1=fraction(s1) if s1 else None, budget=budget)
        report.add_h0(result)
        self.stdout.write(
            f"h0 in [{float(result.h0.lo)!r}, {float(result.h0.hi)!r}] (width {result.width:.3e})"
        )
        self.stdout.write(f"half period tau in [{float(result.tau.lo)!r}, {float(result.tau.hi)!r}]")
        return report.verdict(Theorem.ENERGY) is Verdict.PASS
