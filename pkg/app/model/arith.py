"""
Arithmetic helpers shared by floats, arrays, intervals and Taylor variables.

Model formulas are written once against these helpers and evaluated on
any of the supported number types.
"""

from fractions import Fraction

import numpy as np

from ivl import Interval


def is_symbolic(x):
    """True for Taylor tape variables."""
    return hasattr(x, "tape")


def is_rigorous(x):
    return isinstance(x, Interval) or is_symbolic(x)


def lift(value, like):
    """Constant in the number type of `like`; rationals stay exact for intervals."""
    if isinstance(value, Interval) and is_rigorous(like) or is_symbolic(value):
        return value
    if is_rigorous(like):
        return Interval.exact(Fraction(value) if not isinstance(value, str) else value)
    if isinstance(value, Interval):
        return float(value.mid())
    return float(value)


def sqrt(x):
    if isinstance(x, Interval) or is_symbolic(x):
        return x.sqrt()
    return np.sqrt(x)


def sqr(x):
    if isinstance(x, Interval) or is_symbolic(x):
        return x.square()
    return x * x


def absolute(x):
    if isinstance(x, Interval):
        return x.abs()
    return np.abs(x)


def may_vanish(x):
    """Whether x may be zero: enclosure test for intervals, exact test for floats."""
    if is_symbolic(x):
        return False
    if isinstance(x, Interval):
        return bool(np.any(x.contains_zero()))
    return bool(np.any(np.asarray(x) == 0))


def split(w, n=4):
    """First n components of a state given as array, interval or sequence."""
    return tuple(w[i] for i in range(n))


def assemble(parts):
    """Pack components back into the container type they came from."""
    if any(is_symbolic(p) for p in parts):
        return list(parts)
    if any(isinstance(p, Interval) for p in parts):
        return Interval.stack(parts)
    return np.array(parts)
