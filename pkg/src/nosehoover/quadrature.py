"""Gauss-Legendre rules, including the sine map for square-root endpoints.

On an interval [lo, hi] whose endpoints are simple zeros of a gap function
g(x) (turning points), integrands like sqrt(g) or 1/sqrt(g) are singular in
their derivatives. Writing x = mid + half*sin(s) puts a factor cos(s) into
the Jacobian that cancels the singularity, leaving a smooth integrand on
s in [-pi/2, pi/2].
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

DEFAULT_NODES = 256


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def fixed(f, lo: float, hi: float, n: int = DEFAULT_NODES) -> float:
    """Plain n-point Gauss-Legendre on [lo, hi]; ``f`` is vectorized."""
    x, w = gauss_legendre(n)
    half = 0.5 * (hi - lo)
    return float(half * np.sum(w * f(lo + half * (x + 1.0))))


def composite(f, breaks, n: int = 64) -> float:
    """Gauss-Legendre on each panel between consecutive ``breaks``."""
    return sum(fixed(f, a, b, n) for a, b in zip(breaks[:-1], breaks[1:]) if b > a)


def sine_nodes(n: int = DEFAULT_NODES, s_breaks=None):
    """Nodes s and weights for integrating over s in [-pi/2, pi/2].

    ``s_breaks`` optionally splits the s interval into panels, each
    receiving ``n`` nodes, so that kinks of a piecewise-smooth integrand
    can sit on panel edges.
    """
    x, w = gauss_legendre(n)
    if s_breaks is None:
        s_breaks = [-0.5 * np.pi, 0.5 * np.pi]
    nodes, weights = [], []
    for a, b in zip(s_breaks[:-1], s_breaks[1:]):
        if b <= a:
            continue
        half = 0.5 * (b - a)
        nodes.append(a + half * (x + 1.0))
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)
