"""Piecewise-linear tables with strict range checking."""

from __future__ import annotations

import numpy as np


class RangeError(ValueError):
    """Evaluation point outside the tabulated range."""


class PiecewiseLinear:
    """Linear interpolant through sorted knots. No extrapolation.

    >>> f = PiecewiseLinear([0.0, 1.0, 3.0], [0.0, 2.0, 0.0])
    >>> float(f(2.0))
    1.0
    """

    def __init__(self, x, y):
        x = np.array(x, dtype=float)
        y = np.array(y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or x.size < 2:
            raise ValueError("need matching 1D knot arrays with at least two entries")
        if np.any(np.diff(x) <= 0):
            raise ValueError("knot abscissae must be strictly increasing")
        x.setflags(write=False)
        y.setflags(write=False)
        self.x = x
        self.y = y

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.x[0]), float(self.x[-1])

    def _check(self, t):
        t = np.asarray(t, dtype=float)
        lo, hi = self.domain
        if np.any(~(t >= lo)) or np.any(~(t <= hi)):
            raise RangeError(f"argument outside [{lo:.6g}, {hi:.6g}]")
        return t

    def __call__(self, t):
        t = self._check(t)
        out = np.interp(t, self.x, self.y)
        return float(out) if out.ndim == 0 else out

    def slopes(self) -> np.ndarray:
        return np.diff(self.y) / np.diff(self.x)

    def inverse(self, v):
        """Abscissa where the (strictly monotone) interpolant takes value ``v``."""
        dy = np.diff(self.y)
        if np.all(dy > 0):
            return PiecewiseLinear(self.y, self.x)(v)
        if np.all(dy < 0):
            return PiecewiseLinear(self.y[::-1], self.x[::-1])(v)
        raise ValueError("interpolant is not strictly monotone")

    def __repr__(self):
        lo, hi = self.domain
        return f"PiecewiseLinear({self.x.size} knots on [{lo:.6g}, {hi:.6g}])"
