"""
Shared options and exit codes of the proof commands.
"""

import json
import logging
import time
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from django.utils import timezone

from core.exceptions import ConfigurationError, ProofError
from core.models import ProofRun
from flow import IntegratorConfig
from prove.dataset import ChartDataset
from prove.energy import find_h0, refine_dataset
from prove.report import ProofReport

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_CONFIGURATION = 2


class ProofCommand(BaseCommand):
    """Base for commands that run a proof scenario and report a verdict.

    Subclasses implement `run(report, dataset, config, **options)`, adding
    certificates to the report and returning True when their verdict passes.
    """

    scenario = ""

    def add_arguments(self, parser):
        parser.add_argument("--config", dest="config_path", help="JSON file overriding the integrator settings")
        parser.add_argument("--dataset", dest="dataset_path", help="chart dataset JSON (default: settings.PROOF['DATASET'])")
        parser.add_argument("--json", dest="json_path", help="write the proof report to this file")
        parser.add_argument("--save", action="store_true", help="store the run and its certificates")
        parser.add_argument("--workers", type=int, help="process pool size")
        self.add_scenario_arguments(parser)

    def add_scenario_arguments(self, parser):
        pass

    def run(self, report, dataset, config, **options):
        raise NotImplementedError

    # helpers

    def integrator(self, options):
        if options.get("config_path"):
            return IntegratorConfig.from_file(options["config_path"])
        return IntegratorConfig.from_settings()

    def with_energy(self, report, dataset, config, verify=False):
        """The dataset with its h0 enclosure.

        Tables whose tail was never closed are refined first, which moves
        the charts, so h0 is then verified again on the refined tables.
        """
        guess = None
        if not dataset.orbit_refined:
            logger.info("chart tail of %s is not refined, refining before the proof", dataset.source or "dataset")
            with report.timed("charts"):
                dataset, guess = refine_dataset(dataset, config)
        elif dataset.h0 is not None and not verify:
            report.h0 = dataset.h0
            return dataset
        with report.timed("energy"):
            result = find_h0(dataset, config, guess=guess)
        report.add_h0(result)
        return dataset.with_h0(result.h0)

    def success(self, message):
        self.stdout.write(self.style.SUCCESS(message))

    def failure(self, message):
        self.stderr.write(self.style.ERROR(message))

    # entrypoint

    def handle(self, *args, **options):
        """Entrypoint for command"""
        started = timezone.now()
        clock = time.perf_counter()
        try:
            config = self.integrator(options)
            dataset = ChartDataset.load(options.get("dataset_path"))
        except ConfigurationError as exc:
            self.failure(f"configuration error: {exc}")
            raise CommandError(str(exc), returncode=EXIT_CONFIGURATION) from exc

        report = ProofReport(K=dataset.K, config_hash=config.config_hash())
        code = EXIT_PASS
        try:
            with report.timed(self.scenario):
                passed = self.run(report, dataset, config, **options)
            if not passed:
                code = EXIT_FAILURE
        except ConfigurationError as exc:
            report.fail(self.scenario, exc)
            code = EXIT_CONFIGURATION
        except ProofError as exc:
            report.fail(self.scenario, exc)
            code = EXIT_FAILURE

        if options.get("json_path"):
            report.dump(options["json_path"])
        if options.get("save"):
            status = {
                EXIT_PASS: ProofRun.Status.PASS,
                EXIT_FAILURE: ProofRun.Status.FAIL,
            }.get(code, ProofRun.Status.ERROR)
            run = ProofRun.record(self.scenario, report, status, started, time.perf_counter() - clock)
            self.stdout.write(f"saved run {run.id}")

        if code == EXIT_PASS:
            self.success(f"{self.scenario}: pass")
            return
        detail = json.dumps({"failures": report.failures, "verdicts": report.verdicts()}, indent=2)
        self.failure(f"{self.scenario}: {'fail' if code == EXIT_FAILURE else 'configuration error'}\n{detail}")
        raise CommandError(f"{self.scenario} did not pass", returncode=code)


def output_path(value):
    path = Path(value)
    if path.parent and not path.parent.exists():
        raise ConfigurationError(f"directory {path.parent} does not exist")
    return path
