"""
Django command to regenerate the chart dataset.
"""

from prove.dataset import default_path
from prove.energy import find_h0, refine_dataset
from prove.management.base import ProofCommand, output_path
from prove.management.commands.find_h0 import fraction


class Command(ProofCommand):
    """Shoot for h0, rebuild the tables around the orbit and write them as hex floats."""

    help = "Refine the chart dataset from a non-rigorous shooting for h0, w1, w2 and the tail w4..wK."
    scenario = "charts"

    def add_scenario_arguments(self, parser):
        parser.add_argument("--s1", help="flow time from w0 to w1, as NUM/DEN")
        parser.add_argument("--out", help="where to write the dataset (default: overwrite the input)")
        parser.add_argument(
            "--verify",
            action="store_true",
            help="also verify h0 and store its enclosure in the dataset",
        )

    def run(self, report, dataset, config, s1=None, out=None, verify=False, **options):
        s1 = fraction(s1) if s1 else None
        refined, x = refine_dataset(dataset, config, s1)
        if verify:
            result = find_h0(refined, config, s1=s1, guess=x)
            report.add_h0(result)
            refined = refined.with_h0(result.h0)
        path = output_path(out) if out else (options.get("dataset_path") or default_path())
        refined.dump(path)
        self.stdout.write(f"h0 ~ {x[0]!r}; dataset written to {path}")
        return True
