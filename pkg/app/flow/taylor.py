"""
Taylor coefficients of ODE solutions in interval arithmetic.

A field is recorded once on a tape of elementary operations. The tape is
then evaluated on a box to produce the normalized Taylor coefficients
x_k = x^(k)(0)/k! of every solution starting in the box, optionally
together with their derivatives with respect to the initial point.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ivl import Interval
from model.arith import split

logger = logging.getLogger(__name__)

OPS = ("var", "const", "add", "sub", "mul", "div", "neg", "sqr", "sqrt")


class TaylorVar:
    """Handle to a tape node; arithmetic records new nodes."""

    __slots__ = ("tape", "index")
    __array_ufunc__ = None

    def __init__(self, tape, index):
        self.tape = tape
        self.index = index

    def _node(self, other):
        if isinstance(other, TaylorVar):
            return other.index
        return self.tape.constant(other)

    def _binary(self, op, other, swap=False):
        a, b = self.index, self._node(other)
        if swap:
            a, b = b, a
        return TaylorVar(self.tape, self.tape.push(op, a, b))

    def __add__(self, other):
        return self._binary("add", other)

    def __radd__(self, other):
        return self._binary("add", other, swap=True)

    def __sub__(self, other):
        return self._binary("sub", other)

    def __rsub__(self, other):
        return self._binary("sub", other, swap=True)

    def __mul__(self, other):
        return self._binary("mul", other)

    def __rmul__(self, other):
        return self._binary("mul", other, swap=True)

    def __truediv__(self, other):
        return self._binary("div", other)

    def __rtruediv__(self, other):
        return self._binary("div", other, swap=True)

    def __neg__(self):
        return TaylorVar(self.tape, self.tape.push("neg", self.index))

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not float(n).is_integer() or n < 1:
            raise ValueError("tape supports positive integer powers only")
        result = self
        for _ in range(int(n) - 1):
            result = result * self
        return result

    def square(self):
        return TaylorVar(self.tape, self.tape.push("sqr", self.index))

    def sqrt(self):
        return TaylorVar(self.tape, self.tape.push("sqrt", self.index))


@dataclass(frozen=True)
class TaylorSeries:
    """coeffs[k, i] encloses x_{k,i}; jac[k, i, j] encloses d x_{k,i} / d x0_j."""

    coeffs: Interval
    jac: Interval = None

    @property
    def order(self):
        return self.coeffs.shape[0] - 2


def _dual_products(A, B):
    """Sum over rows of the dual products A[r] * B[r]; column 0 is the value."""
    value = (A[:, 0] * B[:, 0]).sum(axis=0)
    if A.shape[1] == 1:
        return value.reshape(1)
    grad = (A[:, 0:1] * B[:, 1:] + A[:, 1:] * B[:, 0:1]).sum(axis=0)
    return Interval.concatenate([value.reshape(1), grad])


def _dual_divide(N, D):
    quotient = N[0] / D[0]
    if N.shape[0] == 1:
        return quotient.reshape(1)
    grad = (N[1:] - quotient * D[1:]) / D[0]
    return Interval.concatenate([quotient.reshape(1), grad])


class TaylorTape:
    """Recorded expression graph of a vector field."""

    def __init__(self, field):
        self.dimension = field.dimension
        self.nodes = []
        self._constants = {}
        self.variables = [self.push("var", i) for i in range(self.dimension)]
        handles = [TaylorVar(self, index) for index in self.variables]
        outputs = split(field(handles), self.dimension)
        self.outputs = [
            out.index if isinstance(out, TaylorVar) else self.constant(out) for out in outputs
        ]
        logger.debug("recorded %s on %d tape nodes", field, len(self.nodes))

    def push(self, op, *args):
        self.nodes.append((op, args))
        return len(self.nodes) - 1

    def constant(self, value):
        if isinstance(value, Interval):
            enclosure = value
        elif isinstance(value, (Fraction, str)):
            enclosure = Interval.exact(value)
        else:
            enclosure = Interval(float(value))
        key = (float(enclosure.lo), float(enclosure.hi))
        if key not in self._constants:
            self._constants[key] = self.push("const", enclosure)
        return self._constants[key]

    def series(self, box, order, gradient=False):
        """Coefficients 0..order+1 of all solutions through `box`."""
        box = Interval.coerce(box)
        n = self.dimension
        width = 1 + n if gradient else 1
        rows = order + 2
        lo = np.zeros((len(self.nodes), rows, width))
        hi = np.zeros((len(self.nodes), rows, width))

        def view(node, rows_slice):
            return Interval(lo[node, rows_slice], hi[node, rows_slice], check=False)

        def store(node, k, value):
            lo[node, k] = value.lo
            hi[node, k] = value.hi

        for node, (op, args) in enumerate(self.nodes):
            if op == "var":
                i = args[0]
                lo[node, 0, 0], hi[node, 0, 0] = box.lo[i], box.hi[i]
                if gradient:
                    lo[node, 0, 1 + i] = hi[node, 0, 1 + i] = 1.0
            elif op == "const":
                lo[node, 0, 0], hi[node, 0, 0] = args[0].lo, args[0].hi

        for k in range(order + 1):
            for node, (op, args) in enumerate(self.nodes):
                if op in ("var", "const"):
                    continue
                store(node, k, self._coefficient(node, op, args, k, view))
            for i, node in enumerate(self.variables):
                store(node, k + 1, view(self.outputs[i], k) / (k + 1))

        coeffs = Interval(lo[self.variables, :, 0].T, hi[self.variables, :, 0].T, check=False)
        if not gradient:
            return TaylorSeries(coeffs)
        jac = Interval(
            lo[self.variables, :, 1:].transpose(1, 0, 2),
            hi[self.variables, :, 1:].transpose(1, 0, 2),
            check=False,
        )
        return TaylorSeries(coeffs, jac)

    @staticmethod
    def _coefficient(c, op, args, k, view):
        """Coefficient k of node c; rows below k of every node are final."""
        a = args[0]
        if op == "add":
            return view(a, k) + view(args[1], k)
        if op == "sub":
            return view(a, k) - view(args[1], k)
        if op == "neg":
            return -view(a, k)
        if op == "mul":
            return _dual_products(view(a, slice(0, k + 1)), view(args[1], slice(k, None, -1)))
        if op == "sqr":
            if k == 0:
                x = view(a, 0)
                if x.shape[0] == 1:
                    return x[0].square().reshape(1)
                return Interval.concatenate([x[0].square().reshape(1), 2 * x[0] * x[1:]])
            return _dual_products(view(a, slice(0, k + 1)), view(a, slice(k, None, -1)))
        if op == "div":
            b = args[1]
            numerator = view(a, k)
            if k > 0:
                numerator = numerator - _dual_products(
                    view(b, slice(1, k + 1)), view(c, slice(k - 1, None, -1))
                )
            return _dual_divide(numerator, view(b, 0))
        if op == "sqrt":
            if k == 0:
                x = view(a, 0)
                root = x[0].sqrt()
                if x.shape[0] == 1:
                    return root.reshape(1)
                return Interval.concatenate([root.reshape(1), x[1:] / (2 * root)])
            numerator = view(a, k)
            if k > 1:
                numerator = numerator - _dual_products(
                    view(c, slice(1, k)), view(c, slice(k - 1, 0, -1))
                )
            return _dual_divide(numerator, 2 * view(c, 0))
        raise ValueError(f"unknown tape op {op!r}")
