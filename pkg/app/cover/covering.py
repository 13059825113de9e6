"""
Covering and back-covering checks by interval enclosure.

For N =>(f) M the composite F = c_M^-1 o f o c_N is enclosed over a grid
of N_c. Three conditions are required:
  contraction       pi_2 F(N_c) inside (-1, 1)
  left expansion    pi_1 F({-1} x B) < -1
  right expansion   pi_1 F({+1} x B) > +1
Cells that fail are split dyadically up to `depth` times before the
failure is reported. A map that reverses the unstable direction (left
edge beyond +1, right edge beyond -1) also covers; the orientation is
recorded.
"""

import logging
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from core.exceptions import ConditionFailed
from cover.certificates import CertificateKind, CoveringCertificate, Direction, relation_id
from cover.hsets import HSet
from ivl import Interval

logger = logging.getLogger(__name__)

DEFAULT_GRID = 4
DEFAULT_DEPTH = 8

CONTRACTION = "contraction"
LEFT = "left expansion"
RIGHT = "right expansion"


def _unwrap(hset):
    """HSet and label from an HSet or an HSetOnSection."""
    if isinstance(hset, HSet):
        return hset, hset.label
    return hset.hset, hset.label


def grid_cells(n):
    """n x n cells of N_c in row-major order."""
    ticks = np.linspace(-1.0, 1.0, n + 1)
    return [
        Interval([ticks[i], ticks[j]], [ticks[i + 1], ticks[j + 1]])
        for i in range(n)
        for j in range(n)
    ]


def edge_segments(n, side):
    ticks = np.linspace(-1.0, 1.0, n + 1)
    return [Interval([side, ticks[j]], [side, ticks[j + 1]]) for j in range(n)]


def _split(box, along=(0, 1)):
    """Halve a box along the given axes."""
    pieces = [box]
    for axis in along:
        halves = []
        for piece in pieces:
            mid = float(piece[axis].mid())
            lower = piece.replace(axis, Interval(float(piece.lo[axis]), mid))
            upper = piece.replace(axis, Interval(mid, float(piece.hi[axis])))
            halves.extend([lower, upper])
        pieces = halves
    return pieces


@dataclass
class _Tally:
    boxes: int = 0
    depth: int = 0
    contraction_margin: float = np.inf
    expansion_margin: float = np.inf
    max_width: float = 0.0

    def merge(self, other):
        self.boxes += other.boxes
        self.depth = max(self.depth, other.depth)
        self.contraction_margin = min(self.contraction_margin, other.contraction_margin)
        self.expansion_margin = min(self.expansion_margin, other.expansion_margin)
        self.max_width = max(self.max_width, other.max_width)


class _CellCheck:
    """Checks one grid cell or edge segment, refining on failure."""

    def __init__(self, f, source, target, depth):
        self.f = f
        self.source = source
        self.target = target
        self.depth = depth

    def image(self, box):
        return self.target.from_support(self.f(self.source.to_support(box)))

    def _contraction(self, box, tally):
        image = self.image(box)
        y = image[1]
        margin = min(1.0 - float(y.hi), float(y.lo) + 1.0)
        if margin <= 0:
            return False
        tally.contraction_margin = min(tally.contraction_margin, margin)
        tally.max_width = max(tally.max_width, image.max_width())
        return True

    def _expansion(self, box, tally, sign):
        x = self.image(box)[0]
        margin = float(x.lo) - 1.0 if sign > 0 else -1.0 - float(x.hi)
        if margin <= 0:
            return False
        tally.expansion_margin = min(tally.expansion_margin, margin)
        return True

    def _refine(self, box, condition, test, along, level, tally):
        tally.boxes += 1
        tally.depth = max(tally.depth, level)
        if test(box, tally):
            return None
        if level >= self.depth:
            return ConditionFailed(box, condition)
        logger.debug("%s failed on %r, refining to level %d", condition, box, level + 1)
        for piece in _split(box, along):
            failure = self._refine(piece, condition, test, along, level + 1, tally)
            if failure is not None:
                return failure
        return None

    def __call__(self, job):
        """job = (condition, box, sign); returns (tally, failure or None)."""
        condition, box, sign = job
        tally = _Tally()
        if condition == CONTRACTION:
            test = self._contraction
            along = (0, 1)
        else:
            def test(b, t):
                return self._expansion(b, t, sign)
            along = (1,)
        return tally, self._refine(box, condition, test, along, 0, tally)


def _edge_orientation(check):
    """+1 if the left edge goes beyond -1, -1 if beyond +1, judged at its midpoint."""
    midpoint = Interval([-1.0, 0.0])
    x = check.image(midpoint)[0]
    if float(x.hi) < -1:
        return 1
    if float(x.lo) > 1:
        return -1
    raise ConditionFailed(midpoint, LEFT, f"left edge midpoint maps to {x!r}, inside [-1, 1]")


def _run(check, jobs, workers):
    if workers and workers > 1:
        with Pool(workers) as pool:
            return pool.map(check, jobs)
    return [check(job) for job in jobs]


def check_covering(
    f,
    N,
    M,
    grid=DEFAULT_GRID,
    depth=DEFAULT_DEPTH,
    leg="",
    workers=1,
    config_hash="",
    scale=1.0,
):
    """Verify N =>(f) M, where f maps N's chart coordinates to M's.

    Raises ConditionFailed naming the first failing sub-box in grid order.
    """
    source, source_label = _unwrap(N)
    target, target_label = _unwrap(M)
    check = _CellCheck(f, source, target, depth)

    orientation = _edge_orientation(check)
    jobs = [(CONTRACTION, box, 0) for box in grid_cells(grid)]
    jobs += [(LEFT, box, -orientation) for box in edge_segments(grid, -1.0)]
    jobs += [(RIGHT, box, orientation) for box in edge_segments(grid, 1.0)]

    total = _Tally()
    for tally, failure in _run(check, jobs, workers):
        if failure is not None:
            logger.info("%s => %s: %s", source_label, target_label, failure)
            raise failure
        total.merge(tally)

    logger.info(
        "%s => %s verified on %d boxes (depth %d, orientation %+d)",
        source_label, target_label, total.boxes, total.depth, orientation,
    )
    return CoveringCertificate(
        relation_id=relation_id(source_label, target_label, Direction.FORWARD),
        kind=CertificateKind.COVERING,
        source=source_label,
        target=target_label,
        direction=Direction.FORWARD,
        leg=leg,
        config_hash=config_hash,
        orientation=orientation,
        boxes=total.boxes,
        depth=total.depth,
        contraction_margin=float(total.contraction_margin),
        expansion_margin=float(total.expansion_margin),
        max_width=float(total.max_width),
        scale=float(scale),
    )


def check_backcovering(f_inverse, N, M, **kwargs):
    """Verify N <=(g) M, i.e. M^T =>(g^-1) N^T; `f_inverse` maps M's chart to N's."""
    forward = check_covering(f_inverse, M.transpose(), N.transpose(), **kwargs)
    _, source_label = _unwrap(N)
    _, target_label = _unwrap(M)
    forward.relation_id = relation_id(source_label, target_label, Direction.BACK)
    forward.kind = CertificateKind.BACK_COVERING
    forward.source = source_label
    forward.target = target_label
    forward.direction = Direction.BACK
    return forward
