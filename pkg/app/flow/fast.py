"""
Non-rigorous integration with scipy's DOP853.
"""

import logging

import numpy as np
from scipy.integrate import solve_ivp

from core.exceptions import SingularityHit, StepUnderflow
from flow.config import IntegratorConfig
from flow.rigorous import FlowResult

logger = logging.getLogger(__name__)


def _augmented(field, n):
    def rhs(_, y):
        x = y[:n]
        V = y[n:].reshape(n, n)
        return np.concatenate([field.evaluate(x), (field.jacobian(x) @ V).ravel()])

    return rhs


def flow_fast(field, w, t, config=None, want_derivative=False, samples=0, events=None):
    """Integrate w over time t; `samples` > 1 records an evenly spaced trajectory."""
    config = config or IntegratorConfig.from_settings()
    w = np.asarray(w, dtype=np.float64)
    n = w.size
    t = float(t)
    if t == 0:
        return FlowResult(w.copy(), np.eye(n) if want_derivative else None, 0.0)

    if want_derivative:
        rhs = _augmented(field, n)
        y0 = np.concatenate([w, np.eye(n).ravel()])
    else:
        rhs = lambda _, y: field.evaluate(y)  # noqa: E731
        y0 = w
    t_eval = np.linspace(0.0, t, samples) if samples > 1 else None

    try:
        sol = solve_ivp(
            rhs,
            (0.0, t),
            y0,
            method="DOP853",
            rtol=config.fast_rtol,
            atol=config.fast_atol,
            max_step=np.inf,
            t_eval=t_eval,
            events=events,
        )
    except ZeroDivisionError as exc:
        raise SingularityHit(f"{field} hit a singularity: {exc}") from exc
    if sol.status == -1:
        raise StepUnderflow(f"{field}: {sol.message}")
    if not np.all(np.isfinite(sol.y[:, -1])):
        raise SingularityHit(f"{field} produced non-finite values")

    y_end = sol.y[:, -1]
    elapsed = float(sol.t[-1])
    logger.debug("fast flow of %s over %.6g: %d evaluations", field, elapsed, sol.nfev)
    trajectory = (sol.t, sol.y[:n].T) if samples > 1 else None
    result = FlowResult(
        y_end[:n].copy(),
        y_end[n:].reshape(n, n) if want_derivative else None,
        elapsed,
        trajectory=trajectory,
        events=(sol.t_events, sol.y_events),
    )
    return result
