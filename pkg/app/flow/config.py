"""
Integrator settings.
"""

import dataclasses
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from django.conf import settings

from core.exceptions import ConfigurationError


@dataclass(frozen=True)
class IntegratorConfig:
    order: int = 20
    step: float = 0.01
    tol: float = 1e-14
    min_step: float = 1e-12
    max_step: float = 0.1
    max_steps: int = 200_000
    max_diameter: float = 1.0
    fast_rtol: float = 1e-13
    fast_atol: float = 1e-14

    def __post_init__(self):
        if self.order < 2:
            raise ConfigurationError(f"order must be at least 2, got {self.order}")
        if self.step <= 0:
            raise ConfigurationError(f"step must be positive, got {self.step}")
        if self.tol <= 0:
            raise ConfigurationError(f"tol must be positive, got {self.tol}")
        if self.min_step <= 0 or self.max_step < self.min_step:
            raise ConfigurationError("need 0 < min_step <= max_step")
        if self.max_steps < 1:
            raise ConfigurationError("max_steps must be positive")

    @classmethod
    def from_dict(cls, data):
        fields = {f.name: f.type for f in dataclasses.fields(cls)}
        unknown = set(data) - set(fields)
        if unknown:
            raise ConfigurationError(f"unknown integrator settings: {sorted(unknown)}")
        try:
            values = {
                key: int(value) if fields[key] is int else float(value)
                for key, value in data.items()
            }
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"invalid integrator setting: {exc}") from exc
        return cls(**values)

    @classmethod
    def from_settings(cls, **overrides):
        data = dict(getattr(settings, "INTEGRATOR", {}))
        data.update(overrides)
        return cls.from_dict(data)

    @classmethod
    def from_file(cls, path, **overrides):
        """Settings defaults overlaid with a JSON file."""
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read integrator config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigurationError(f"{path}: expected a JSON object")
        data.update(overrides)
        return cls.from_settings(**data)

    def as_dict(self):
        return dataclasses.asdict(self)

    def config_hash(self):
        canonical = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)
