"""
Django command to state what a symbolic word proves.
"""

from core.exceptions import ConfigurationError
from core.models import ProofRun
from prove.management.base import ProofCommand
from prove.report import ProofReport
from prove.words import SymbolicWord, certify_word


def premises_from(report_path=None, run_id=None):
    """Certificates of an earlier run: a report file, a saved run, or the latest passing run."""
    if report_path:
        try:
            return ProofReport.load(report_path)
        except (OSError, ValueError) as exc:
            raise ConfigurationError(f"cannot read report {report_path}: {exc}") from exc
    runs = ProofRun.objects.all()
    if run_id is not None:
        run = runs.filter(id=run_id).first()
        if run is None:
            raise ConfigurationError(f"no saved run {run_id}")
    else:
        run = runs.filter(status=ProofRun.Status.PASS).order_by("-started", "-id").first()
        if run is None:
            raise ConfigurationError("no passing run saved; give --report or run prove_all --save")
    return ProofReport.from_dict(run.report)


class Command(ProofCommand):
    """Checks the word's premises against stored certificates; no integration."""

    help = "Certify a cyclic {c,o} word, a list of approach depths or a motion schema X/Y."
    scenario = "word"

    def add_scenario_arguments(self, parser):
        parser.add_argument("word", help="e.g. coo, 1,2,3 or Oc/A")
        parser.add_argument("--report", dest="report_path", help="proof report JSON holding the premises")
        parser.add_argument("--run", dest="run_id", type=int, help="saved run holding the premises")

    def run(self, report, dataset, config, word=None, report_path=None, run_id=None, **options):
        word = SymbolicWord.parse(word)
        premises = premises_from(report_path, run_id)
        report.K = premises.K
        report.h0 = premises.h0
        report.add(*premises.certificates.values())
        conclusion = certify_word(word, report)
        report.add(conclusion)
        report.conclusions.append({"word": word.text, **conclusion.details})
        self.stdout.write(conclusion.details["statement"])
        self.stdout.write(conclusion.details["sequence"])
        return True
