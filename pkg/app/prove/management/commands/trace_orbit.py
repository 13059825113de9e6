"""
Django command to write a sampled orbit as CSV.
"""

from prove.management.base import ProofCommand, output_path
from prove.tracing import DEFAULT_SAMPLES, trace_orbit


class Command(ProofCommand):
    help = "Integrate an orbit without rigour and write t,q1,q2,q3,q4,frame rows."
    scenario = "trace"

    def add_scenario_arguments(self, parser):
        parser.add_argument("--start", default="w0", help="w0..wK or a JSON file with a start point")
        parser.add_argument("--frame", choices=["std", "reg"], default="std")
        parser.add_argument("--time", type=float, required=True, help="regularized integration time")
        parser.add_argument("--csv", dest="csv_path", required=True)
        parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)

    def run(self, report, dataset, config, start="w0", frame="std", time=None, csv_path=None,
            samples=DEFAULT_SAMPLES, **options):
        trace = trace_orbit(dataset, start, frame, time, config, samples=samples)
        rows = trace.write(output_path(csv_path))
        self.stdout.write(f"{rows} rows written to {csv_path}")
        return True
