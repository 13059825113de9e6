"""
Whole-trajectory enclosures.
"""

from dataclasses import dataclass

import numpy as np

from ivl import Interval, hull


@dataclass(frozen=True)
class TubeSegment:
    time: Interval
    box: Interval


class TubeEnclosure:
    """Ordered segments; each box holds every trajectory piece over its time window."""

    def __init__(self, segments=()):
        self.segments = list(segments)

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __getitem__(self, index):
        return self.segments[index]

    def append(self, segment):
        self.segments.append(segment)

    def extend(self, other):
        self.segments.extend(other)

    @property
    def span(self):
        return hull(self.segments[0].time, self.segments[-1].time)

    def hull(self):
        return hull(*(segment.box for segment in self.segments))

    def first_violation(self, predicate):
        """Index of the first segment whose box fails `predicate`, or None."""
        for index, segment in enumerate(self.segments):
            if not predicate(segment.box):
                return index
        return None

    def covers(self, t, point):
        point = np.asarray(point, dtype=np.float64)
        return any(
            bool(segment.time.contains(t)) and bool(np.all(segment.box.contains(point)))
            for segment in self.segments
        )

    def coarsen(self, factor):
        """Merge runs of `factor` consecutive segments into their hull."""
        merged = []
        for start in range(0, len(self.segments), factor):
            chunk = self.segments[start:start + factor]
            merged.append(
                TubeSegment(
                    hull(*(s.time for s in chunk)),
                    hull(*(s.box for s in chunk)),
                )
            )
        return TubeEnclosure(merged)


def tube_enclosure(field, W, until, config=None):
    """Tube over a duration, or up to the first crossing of a section."""
    if hasattr(until, "value_enclosure"):
        from section.crossing import crossing_map

        return crossing_map(field, W, until, config=config, want_derivative=False, record_tube=True).tube

    from flow.rigorous import flow_rigorous

    return flow_rigorous(field, W, until, config=config, tube=True).tube
