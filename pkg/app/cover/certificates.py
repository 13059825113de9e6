"""
Verified facts and their JSON form.
"""

import dataclasses
import enum
import json
from datetime import datetime, timezone


class CertificateKind(str, enum.Enum):
    COVERING = "covering"
    BACK_COVERING = "back-covering"
    DERIVED = "derived"
    AVOIDANCE = "avoidance"
    CONE = "cone"
    DISC = "disc"
    H0 = "h0"
    WORD = "word"


class Direction(str, enum.Enum):
    FORWARD = "forward"
    BACK = "back"

    @property
    def arrow(self):
        return "=>" if self is Direction.FORWARD else "<="

    def flipped(self):
        return Direction.BACK if self is Direction.FORWARD else Direction.FORWARD


def relation_id(source, target, direction=Direction.FORWARD):
    """'N0=>N1' for N0 covering N1, 'N2<=N3' for N2 back-covering N3."""
    return f"{source}{Direction(direction).arrow}{target}"


def _now():
    return datetime.now(timezone.utc).isoformat()


@dataclasses.dataclass
class Certificate:
    relation_id: str
    kind: CertificateKind
    source: str = ""
    target: str = ""
    direction: Direction = None
    leg: str = ""
    provenance: str = "integrated"
    premises: tuple = ()
    details: dict = dataclasses.field(default_factory=dict)
    config_hash: str = ""
    created: str = dataclasses.field(default_factory=_now)

    verdict = True

    def to_dict(self):
        data = dataclasses.asdict(self)
        data["kind"] = CertificateKind(self.kind).value
        data["direction"] = None if self.direction is None else Direction(self.direction).value
        data["premises"] = list(self.premises)
        data["verdict"] = self.verdict
        return data

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data.pop("verdict", None)
        kind = CertificateKind(data["kind"])
        target_cls = CoveringCertificate if kind in COVERING_KINDS else Certificate
        names = {f.name for f in dataclasses.fields(target_cls)}
        values = {key: value for key, value in data.items() if key in names}
        values["kind"] = kind
        if values.get("direction") is not None:
            values["direction"] = Direction(values["direction"])
        values["premises"] = tuple(values.get("premises", ()))
        return target_cls(**values)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclasses.dataclass
class CoveringCertificate(Certificate):
    """N =>(f) M or N <=(f) M, established on every sub-box of a grid."""

    orientation: int = 1
    boxes: int = 0
    depth: int = 0
    contraction_margin: float = 0.0
    expansion_margin: float = 0.0
    max_width: float = 0.0
    scale: float = 1.0

    @property
    def arrow(self):
        return Direction(self.direction).arrow


COVERING_KINDS = (CertificateKind.COVERING, CertificateKind.BACK_COVERING, CertificateKind.DERIVED)


def dump_certificates(certificates, fp):
    json.dump([c.to_dict() for c in certificates], fp, indent=2)


def load_certificates(fp):
    return [Certificate.from_dict(item) for item in json.load(fp)]
