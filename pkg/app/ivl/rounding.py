"""
Directed rounding on top of round-to-nearest binary64.

Error-free transforms decide the rounding direction; where they are not
safe (overflow of the split, underflow of the residual) the result is
nudged one ulp outward.
"""

import numpy as np

EPS = 2.0 ** -53
SPLITTER = 134217729.0  # 2**27 + 1
_BIG = 2.0 ** 500
_SMALL = 2.0 ** -900

_INF = np.inf


def _down(x):
    return np.nextafter(x, -_INF)


def _up(x):
    return np.nextafter(x, _INF)


def _as_arrays(a, b):
    return np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)


def _split(a):
    c = SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _direct(value, err, exact):
    """Bounds of value + err where err is the exact rounding residual."""
    lo = np.where(exact | (err > 0), value, _down(value))
    hi = np.where(exact | (err < 0), value, _up(value))
    return lo, hi


def add(a, b):
    """Return (lo, hi) bracketing a + b."""
    a, b = _as_arrays(a, b)
    with np.errstate(all="ignore"):
        s = a + b
        bb = s - a
        err = (a - (s - bb)) + (b - bb)
        exact = (err == 0) & np.isfinite(s)
    return _direct(s, err, exact)


def sub(a, b):
    return add(a, -np.asarray(b, dtype=np.float64))


def two_prod_residual(a, b, p):
    ah, al = _split(a)
    bh, bl = _split(b)
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def mul(a, b):
    """Return (lo, hi) bracketing a * b."""
    a, b = _as_arrays(a, b)
    with np.errstate(all="ignore"):
        p = a * b
        zero = (a == 0) | (b == 0)
        safe = (
            (np.abs(a) < _BIG)
            & (np.abs(b) < _BIG)
            & (np.abs(p) > _SMALL)
        )
        err = np.where(safe, two_prod_residual(a, b, p), np.nan)
        exact = zero & np.isfinite(a) & np.isfinite(b)
        exact = exact | (safe & (err == 0))
        lo, hi = _direct(p, err, exact)
        # 0 * inf
        lo = np.where(np.isnan(p), -_INF, lo)
        hi = np.where(np.isnan(p), _INF, hi)
    return lo, hi


def div(a, b):
    """Return (lo, hi) bracketing a / b for b != 0."""
    a, b = _as_arrays(a, b)
    with np.errstate(all="ignore"):
        q = a / b
        safe = (
            (np.abs(q) < _BIG)
            & (np.abs(b) < _BIG)
            & (np.abs(a) > _SMALL)
            & (np.abs(q) > _SMALL)
            & (np.abs(b) > _SMALL)
        )
        prod = q * b
        e = two_prod_residual(q, b, prod)
        # a / b = q + r / b with r = a - q * b
        r = (a - prod) - e
        err = np.where(safe, r * np.sign(b), np.nan)
        exact = (a == 0) & (b != 0) & np.isfinite(b)
        exact = exact | (safe & (err == 0))
        lo, hi = _direct(q, err, exact)
        lo = np.where(np.isnan(q), -_INF, lo)
        hi = np.where(np.isnan(q), _INF, hi)
    return lo, hi


def sqrt(a):
    """Return (lo, hi) bracketing sqrt(a) for a >= 0."""
    a = np.asarray(a, dtype=np.float64)
    with np.errstate(all="ignore"):
        r = np.sqrt(a)
        safe = (a > _SMALL) & (a < _BIG)
        prod = r * r
        e = two_prod_residual(r, r, prod)
        err = np.where(safe, (a - prod) - e, np.nan)
        exact = (a == 0) | (safe & (err == 0))
        lo, hi = _direct(r, err, exact)
        lo = np.maximum(lo, 0.0)
    return lo, hi


def sum_down(x, axis=0):
    """Lower bound of the exact sum along an axis."""
    return _sum_bound(x, axis, -1)


def sum_up(x, axis=0):
    """Upper bound of the exact sum along an axis."""
    return _sum_bound(x, axis, +1)


def _sum_bound(x, axis, sign):
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[axis]
    with np.errstate(all="ignore"):
        s = np.sum(x, axis=axis)
        if n <= 1:
            return s
        if n == 2:
            first = np.take(x, 0, axis=axis)
            second = np.take(x, 1, axis=axis)
            lo, hi = add(first, second)
            return lo if sign < 0 else hi
        magnitude = np.sum(np.abs(x), axis=axis)
        # recursive or pairwise summation error is below (n - 1) eps sum|x|
        err = (2 * n * EPS) * magnitude
        err = _up(err)
        if sign < 0:
            bound = add(s, -err)[0]
            bound = np.where(np.isnan(bound), -_INF, bound)
        else:
            bound = add(s, err)[1]
            bound = np.where(np.isnan(bound), _INF, bound)
    return bound
