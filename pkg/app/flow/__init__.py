from flow.config import IntegratorConfig  # noqa: F401
from flow.fast import flow_fast  # noqa: F401
from flow.rigorous import (  # noqa: F401
    DoubletonSet,
    FlowResult,
    FlowState,
    LohnerIntegrator,
    flow_rigorous,
)
from flow.taylor import TaylorSeries, TaylorTape  # noqa: F401
from flow.trace import read_trace, write_trace  # noqa: F401
from flow.tube import TubeEnclosure, TubeSegment, tube_enclosure  # noqa: F401
