"""
CSV export of sampled orbits.
"""

import csv
import logging
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)

HEADER = ("t", "q1", "q2", "q3", "q4", "frame")


def write_trace(target, times, states, frame):
    """Write rows t,q1..q4,frame to a path or an open text stream."""
    states = np.asarray(states, dtype=np.float64)
    if isinstance(target, (str, Path)):
        with open(target, "w", newline="") as stream:
            return write_trace(stream, times, states, frame)

    writer = csv.writer(target)
    writer.writerow(HEADER)
    for t, q in zip(times, states):
        writer.writerow([repr(float(t))] + [repr(float(c)) for c in q[:4]] + [str(getattr(frame, "value", frame))])
    logger.info("wrote %d trace rows", len(states))
    return len(states)


def read_trace(source):
    """Inverse of write_trace: (times, states, frames)."""
    if isinstance(source, (str, Path)):
        with open(source, newline="") as stream:
            return read_trace(stream)
    reader = csv.DictReader(source)
    times, states, frames = [], [], []
    for row in reader:
        times.append(float(row["t"]))
        states.append([float(row[f"q{i}"]) for i in range(1, 5)])
        frames.append(row["frame"])
    return np.array(times), np.array(states), frames
