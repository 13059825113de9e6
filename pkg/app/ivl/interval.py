"""
Outward-rounded interval arrays.
"""

from fractions import Fraction

import numpy as np

from core.exceptions import DivisionByZeroInterval, DomainError, InvalidInterval
from ivl import rounding


def _exact_bounds(value):
    """Tightest binary64 bracket of an exact rational or decimal value."""
    if isinstance(value, str):
        value = value.strip()
    exact = Fraction(value)
    nearest = float(exact)
    lo = nearest if Fraction(nearest) <= exact else float(np.nextafter(nearest, -np.inf))
    hi = nearest if Fraction(nearest) >= exact else float(np.nextafter(nearest, np.inf))
    return lo, hi


def _defer_to_series(method):
    """Let Taylor tape variables handle mixed operations."""

    def wrapper(self, other):
        if hasattr(other, "tape"):
            return NotImplemented
        return method(self, other)

    wrapper.__name__ = method.__name__
    wrapper.__doc__ = method.__doc__
    return wrapper


def _pow_nonneg(x, n, upward):
    result = x
    pick = 1 if upward else 0
    for _ in range(n - 1):
        result = rounding.mul(result, x)[pick]
    return result


class Interval:
    """Array of closed intervals [lo, hi] with outward rounding."""

    __slots__ = ("lo", "hi")
    # make numpy defer mixed operations to the reflected methods below
    __array_ufunc__ = None

    def __init__(self, lo, hi=None, check=True):
        if isinstance(lo, Interval):
            lo, hi = lo.lo, lo.hi
        lo = np.array(lo, dtype=np.float64)
        hi = lo.copy() if hi is None else np.array(hi, dtype=np.float64)
        if lo.shape != hi.shape:
            lo, hi = (np.array(x) for x in np.broadcast_arrays(lo, hi))
        if check:
            if np.any(np.isnan(lo)) or np.any(np.isnan(hi)):
                raise InvalidInterval("interval endpoint is NaN")
            if np.any(lo > hi):
                raise InvalidInterval(f"lo > hi in [{lo}, {hi}]")
        lo.flags.writeable = False
        hi.flags.writeable = False
        self.lo = lo
        self.hi = hi

    # construction

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Interval):
            return value
        if isinstance(value, (Fraction, str)):
            return cls.exact(value)
        return cls(value)

    @classmethod
    def exact(cls, value):
        """Enclose exact rationals or decimal strings, scalar or nested."""
        items = np.asarray(value, dtype=object)
        lo = np.empty(items.shape)
        hi = np.empty(items.shape)
        for index, item in np.ndenumerate(items):
            lo[index], hi[index] = _exact_bounds(item)
        return cls(lo, hi, check=False)

    @classmethod
    def stack(cls, items, axis=0):
        items = [cls.coerce(item) for item in items]
        return cls(
            np.stack([item.lo for item in items], axis=axis),
            np.stack([item.hi for item in items], axis=axis),
            check=False,
        )

    @classmethod
    def concatenate(cls, items, axis=0):
        items = [cls.coerce(item) for item in items]
        return cls(
            np.concatenate([np.atleast_1d(item.lo) for item in items], axis=axis),
            np.concatenate([np.atleast_1d(item.hi) for item in items], axis=axis),
            check=False,
        )

    @classmethod
    def zeros(cls, shape):
        return cls(np.zeros(shape), check=False)

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n), check=False)

    @classmethod
    def from_pairs(cls, pairs):
        data = np.asarray(pairs, dtype=np.float64)
        return cls(data[..., 0], data[..., 1])

    def to_pairs(self):
        return np.stack([self.lo, self.hi], axis=-1).tolist()

    # array protocol

    @property
    def shape(self):
        return self.lo.shape

    @property
    def ndim(self):
        return self.lo.ndim

    @property
    def size(self):
        return self.lo.size

    @property
    def T(self):
        return Interval(self.lo.T, self.hi.T, check=False)

    def __len__(self):
        return len(self.lo)

    def __getitem__(self, key):
        return Interval(self.lo[key], self.hi[key], check=False)

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def reshape(self, *shape):
        return Interval(self.lo.reshape(*shape), self.hi.reshape(*shape), check=False)

    def replace(self, key, value):
        """Copy with the entries at key replaced by value."""
        value = Interval.coerce(value)
        lo = self.lo.copy()
        hi = self.hi.copy()
        lo[key] = value.lo
        hi[key] = value.hi
        return Interval(lo, hi, check=False)

    def __repr__(self):
        if self.ndim == 0:
            return f"Interval([{self.lo!r}, {self.hi!r}])"
        return f"Interval(shape={self.shape}, lo={self.lo.tolist()}, hi={self.hi.tolist()})"

    # arithmetic

    def __pos__(self):
        return self

    def __neg__(self):
        return Interval(-self.hi, -self.lo, check=False)

    @_defer_to_series
    def __add__(self, other):
        other = Interval.coerce(other)
        return Interval(
            rounding.add(self.lo, other.lo)[0],
            rounding.add(self.hi, other.hi)[1],
            check=False,
        )

    __radd__ = __add__

    @_defer_to_series
    def __sub__(self, other):
        other = Interval.coerce(other)
        return Interval(
            rounding.sub(self.lo, other.hi)[0],
            rounding.sub(self.hi, other.lo)[1],
            check=False,
        )

    @_defer_to_series
    def __rsub__(self, other):
        return Interval.coerce(other) - self

    @_defer_to_series
    def __mul__(self, other):
        other = Interval.coerce(other)
        if other.ndim == 0 and other.lo == other.hi and self.ndim == 0 and self.lo == self.hi:
            lo, hi = rounding.mul(self.lo, other.lo)
            return Interval(lo, hi, check=False)
        pairs = [
            rounding.mul(self.lo, other.lo),
            rounding.mul(self.lo, other.hi),
            rounding.mul(self.hi, other.lo),
            rounding.mul(self.hi, other.hi),
        ]
        lows = np.stack(np.broadcast_arrays(*[p[0] for p in pairs]))
        highs = np.stack(np.broadcast_arrays(*[p[1] for p in pairs]))
        return Interval(lows.min(axis=0), highs.max(axis=0), check=False)

    __rmul__ = __mul__

    @_defer_to_series
    def __truediv__(self, other):
        other = Interval.coerce(other)
        if np.any((other.lo <= 0) & (other.hi >= 0)):
            raise DivisionByZeroInterval(f"divisor {other!r} contains zero")
        pairs = [
            rounding.div(self.lo, other.lo),
            rounding.div(self.lo, other.hi),
            rounding.div(self.hi, other.lo),
            rounding.div(self.hi, other.hi),
        ]
        lows = np.stack(np.broadcast_arrays(*[p[0] for p in pairs]))
        highs = np.stack(np.broadcast_arrays(*[p[1] for p in pairs]))
        return Interval(lows.min(axis=0), highs.max(axis=0), check=False)

    @_defer_to_series
    def __rtruediv__(self, other):
        return Interval.coerce(other) / self

    def __pow__(self, exponent):
        if not float(exponent).is_integer():
            raise DomainError("only integer powers are supported")
        return self.ipow(int(exponent))

    @_defer_to_series
    def __matmul__(self, other):
        other = Interval.coerce(other)
        if self.ndim == 1 and other.ndim == 1:
            return (self * other).sum()
        if other.ndim == 1:
            return (self * other.reshape(1, -1)).sum(axis=1)
        if self.ndim == 1:
            return (self.reshape(-1, 1) * other).sum(axis=0)
        left = Interval(self.lo[:, :, None], self.hi[:, :, None], check=False)
        right = Interval(other.lo[None, :, :], other.hi[None, :, :], check=False)
        return (left * right).sum(axis=1)

    def __rmatmul__(self, other):
        return Interval.coerce(other) @ self

    def sum(self, axis=None):
        lo, hi = self.lo, self.hi
        if axis is None:
            lo, hi, axis = lo.reshape(-1), hi.reshape(-1), 0
        return Interval(rounding.sum_down(lo, axis), rounding.sum_up(hi, axis), check=False)

    # elementary functions

    def ipow(self, n):
        if n == 0:
            return Interval(np.ones(self.shape), check=False)
        if n < 0:
            return 1.0 / self.ipow(-n)
        if n == 1:
            return self
        if n % 2 == 0:
            return Interval(
                _pow_nonneg(self.mig(), n, upward=False),
                _pow_nonneg(self.mag(), n, upward=True),
                check=False,
            )
        lo = np.where(
            self.lo >= 0,
            _pow_nonneg(np.abs(self.lo), n, upward=False),
            -_pow_nonneg(np.abs(self.lo), n, upward=True),
        )
        hi = np.where(
            self.hi >= 0,
            _pow_nonneg(np.abs(self.hi), n, upward=True),
            -_pow_nonneg(np.abs(self.hi), n, upward=False),
        )
        return Interval(lo, hi, check=False)

    def square(self):
        return self.ipow(2)

    def sqrt(self, clamp=False):
        """Square root; with clamp=True the negative part of lo is cut off."""
        if np.any(self.hi < 0):
            raise DomainError(f"sqrt of negative interval {self!r}")
        if np.any(self.lo < 0) and not clamp:
            raise DomainError(f"sqrt of interval straddling zero {self!r}")
        lo = np.maximum(self.lo, 0.0)
        return Interval(rounding.sqrt(lo)[0], rounding.sqrt(self.hi)[1], check=False)

    def abs(self):
        lo = np.where(self.lo >= 0, self.lo, np.where(self.hi <= 0, -self.hi, 0.0))
        return Interval(lo, self.mag(), check=False)

    __abs__ = abs

    # set and metric helpers

    def mid(self):
        with np.errstate(invalid="ignore", over="ignore"):
            m = 0.5 * self.lo + 0.5 * self.hi
        m = np.where(np.isfinite(m), m, np.where(np.isfinite(self.lo), self.lo, self.hi))
        m = np.where(np.isfinite(m), m, 0.0)
        return np.clip(m, self.lo, self.hi)

    def rad(self):
        m = self.mid()
        return np.maximum(rounding.sub(self.hi, m)[1], rounding.sub(m, self.lo)[1])

    def width(self):
        return rounding.sub(self.hi, self.lo)[1]

    def mag(self):
        return np.maximum(np.abs(self.lo), np.abs(self.hi))

    def mig(self):
        inside = (self.lo <= 0) & (self.hi >= 0)
        return np.where(inside, 0.0, np.minimum(np.abs(self.lo), np.abs(self.hi)))

    def contains(self, value):
        value = Interval.coerce(value)
        return (self.lo <= value.lo) & (value.hi <= self.hi)

    def contains_zero(self):
        return (self.lo <= 0) & (self.hi >= 0)

    def subset(self, other):
        other = Interval.coerce(other)
        return bool(np.all((other.lo <= self.lo) & (self.hi <= other.hi)))

    def interior(self, other):
        """True when self lies in the topological interior of other."""
        other = Interval.coerce(other)
        return bool(np.all((other.lo < self.lo) & (self.hi < other.hi)))

    def intersect(self, other):
        """Intersection, or None when some component is empty."""
        other = Interval.coerce(other)
        lo = np.maximum(self.lo, other.lo)
        hi = np.minimum(self.hi, other.hi)
        if np.any(lo > hi):
            return None
        return Interval(lo, hi, check=False)

    def hull(self, other):
        other = Interval.coerce(other)
        return Interval(
            np.minimum(self.lo, other.lo), np.maximum(self.hi, other.hi), check=False
        )

    def inflate(self, absolute=0.0, relative=0.0):
        delta = rounding.add(absolute, rounding.mul(relative, self.rad())[1])[1]
        return Interval(
            rounding.sub(self.lo, delta)[0], rounding.add(self.hi, delta)[1], check=False
        )

    def certainly_less(self, other):
        other = Interval.coerce(other)
        return self.hi < other.lo

    def certainly_greater(self, other):
        other = Interval.coerce(other)
        return self.lo > other.hi

    def is_bounded(self):
        return bool(np.all(np.isfinite(self.lo)) and np.all(np.isfinite(self.hi)))

    def max_width(self):
        return float(np.max(self.width())) if self.size else 0.0


IntervalVector = Interval
IntervalMatrix = Interval


def hull(*items):
    result = Interval.coerce(items[0])
    for item in items[1:]:
        result = result.hull(item)
    return result


def isqrt(x, clamp=False):
    return Interval.coerce(x).sqrt(clamp=clamp)
