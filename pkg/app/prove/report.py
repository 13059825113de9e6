"""
Proof report: certificates collected by the scenarios and the verdict per theorem.
"""

import enum
import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from cover import Certificate, CertificateKind
from ivl import Interval
from prove.scenarios import CHART_AVOIDANCE, FAMILY, GLUING, expected_sequences

logger = logging.getLogger(__name__)


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    MISSING = "missing"


class Theorem(str, enum.Enum):
    ENERGY = "energy"
    COVERINGS = "coverings"
    AVOIDANCE = "avoidance"
    APPROACH = "approach"


@dataclass
class ProofReport:
    K: int = 18
    certificates: dict = field(default_factory=dict)
    sequences: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    h0: Interval = None
    scale: float = 1.0
    config_hash: str = ""
    wall_times: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    conclusions: list = field(default_factory=list)

    # collection

    def add(self, *certificates):
        for cert in certificates:
            self.certificates[cert.relation_id] = cert

    def get(self, relation_id):
        return self.certificates.get(relation_id)

    def has(self, relation_id):
        cert = self.certificates.get(relation_id)
        return cert is not None and cert.verdict

    def fail(self, step, exc):
        self.failures[step] = f"{type(exc).__name__}: {exc}"
        logger.warning("%s failed: %s", step, self.failures[step])

    @contextmanager
    def timed(self, step):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.wall_times[step] = time.perf_counter() - start

    def add_h0(self, result):
        self.h0 = result.h0
        self.add(result.certificate(self.config_hash))

    def add_sequences(self, result):
        self.add(*result.certificates)
        self.sequences.update(result.sequences)
        self.flags.update(result.flags)
        self.scale = result.scale
        for cert in result.cross_checks:
            self.flags[f"cross-check {cert.relation_id}"] = True

    # verdicts

    def _complete(self, ids, step):
        if step in self.failures:
            return Verdict.FAIL
        return Verdict.PASS if all(self.has(relation_id) for relation_id in ids) else Verdict.MISSING

    def expected(self, theorem):
        K = self.K
        if theorem is Theorem.ENERGY:
            return ["h0"]
        if theorem is Theorem.COVERINGS:
            return sorted({rid for ids in expected_sequences(K).values() for rid in ids})
        if theorem is Theorem.AVOIDANCE:
            return [f"avoid:P{k}" for k in range(1, K + 1)] + [CHART_AVOIDANCE]
        return [f"cone:g{i}" for i in range(4)] + [GLUING, FAMILY]

    def verdict(self, theorem):
        theorem = Theorem(theorem)
        verdict = self._complete(self.expected(theorem), theorem.value)
        if theorem is Theorem.COVERINGS and verdict is Verdict.PASS:
            expected = expected_sequences(self.K)
            for name, ids in expected.items():
                if sorted(self.sequences.get(name, [])) != sorted(ids):
                    return Verdict.MISSING
        return verdict

    def verdicts(self):
        return {theorem.value: self.verdict(theorem).value for theorem in Theorem}

    @property
    def passed(self):
        return all(value == Verdict.PASS.value for value in self.verdicts().values())

    def missing(self, ids):
        return [relation_id for relation_id in ids if not self.has(relation_id)]

    # persistence

    def to_dict(self):
        return {
            "K": self.K,
            "verdicts": self.verdicts(),
            "h0": None if self.h0 is None else self.h0.to_pairs(),
            "scale": self.scale,
            "config_hash": self.config_hash,
            "sequences": self.sequences,
            "flags": self.flags,
            "wall_times": self.wall_times,
            "failures": self.failures,
            "conclusions": self.conclusions,
            "certificates": [cert.to_dict() for cert in self.certificates.values()],
        }

    @classmethod
    def from_dict(cls, data):
        report = cls(
            K=data.get("K", 18),
            sequences=data.get("sequences", {}),
            flags=data.get("flags", {}),
            h0=None if data.get("h0") is None else Interval.from_pairs(data["h0"]),
            scale=data.get("scale", 1.0),
            config_hash=data.get("config_hash", ""),
            wall_times=data.get("wall_times", {}),
            failures=data.get("failures", {}),
            conclusions=data.get("conclusions", []),
        )
        report.add(*(Certificate.from_dict(item) for item in data.get("certificates", [])))
        return report

    def dump(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")
        logger.info("wrote proof report to %s", path)

    @classmethod
    def load(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))

    def of_kind(self, kind):
        kind = CertificateKind(kind)
        return [cert for cert in self.certificates.values() if CertificateKind(cert.kind) is kind]
