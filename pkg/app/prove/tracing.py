"""
Sampled orbits for plotting, in the regularized or the rotating frame.
"""

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from core.exceptions import ConfigurationError
from flow import flow_fast, write_trace
from ivl import Interval
from model import Frame, RegularizedField, lc_forward, lc_preimages

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 2001
ROW_PATTERN = re.compile(r"^w(\d+)$")


@dataclass(frozen=True)
class Trace:
    times: np.ndarray
    states: np.ndarray
    frame: Frame

    def __len__(self):
        return len(self.times)

    def write(self, target):
        return write_trace(target, self.times, self.states, self.frame)


def _energy(dataset):
    h = dataset.energy
    return float(h.mid()) if isinstance(h, Interval) else float(h)


def _from_file(path, dataset):
    """A start point stored as JSON: a list of four numbers or {"w": [...], "frame": "std"|"reg"}."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read start point {path}: {exc}") from exc
    if isinstance(data, dict):
        point, frame = data.get("w"), Frame(data.get("frame", Frame.REG.value))
    else:
        point, frame = data, Frame.REG
    point = np.asarray(point, dtype=np.float64)
    if point.shape != (4,):
        raise ConfigurationError(f"{path}: a start point has four coordinates")
    if frame is Frame.STD:
        point, _ = lc_preimages(point, dataset.params, dataset.primary)
    return point


def start_point(dataset, start):
    """Regularized start for "w0", "wk" (a dataset row) or a JSON file."""
    match = ROW_PATTERN.match(str(start))
    if match:
        k = int(match.group(1))
        if k > dataset.K:
            raise ConfigurationError(f"no row {k}: the dataset stops at w{dataset.K}")
        return dataset.w[k].copy()
    if Path(str(start)).exists():
        return _from_file(start, dataset)
    raise ConfigurationError(f"start must be w0..w{dataset.K} or a file, got {start!r}")


def _to_standard(times, states, dataset):
    kept_times, kept = [], []
    for t, w in zip(times, states):
        # the collision itself has no rotating-frame image
        if w[0] == 0 and w[1] == 0:
            continue
        kept_times.append(t)
        kept.append(lc_forward(w, dataset.params, dataset.primary))
    dropped = len(times) - len(kept_times)
    if dropped:
        logger.debug("dropped %d samples at collision", dropped)
    return np.array(kept_times), np.array(kept, dtype=np.float64)


def trace_orbit(dataset, start, frame=Frame.STD, duration=1.0, config=None, samples=DEFAULT_SAMPLES):
    """Non-rigorous orbit of the regularized field at the dataset energy over regularized time."""
    frame = Frame(frame)
    if duration <= 0:
        raise ConfigurationError(f"duration must be positive, got {duration}")
    w = start_point(dataset, start)
    field = RegularizedField(_energy(dataset), dataset.params, dataset.primary)
    result = flow_fast(field, w, duration, config, samples=samples)
    times, states = result.trajectory
    if frame is Frame.STD:
        times, states = _to_standard(times, states, dataset)
    logger.info("traced %s over %.6g in the %s frame (%d samples)", start, duration, frame.value, len(times))
    return Trace(times, states, frame)
