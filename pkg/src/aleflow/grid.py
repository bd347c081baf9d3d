"""Compactified 1-D radial mesh.

The radial coordinate r in [r_min, r_max] is mapped to x = r/(r+L), and the
nodes are uniform in x.  This concentrates resolution at small r while
reaching r_max ~ 1e4 with a few thousand nodes.  All radial derivatives are
taken as 4th-order finite differences in x and chained through dr/dx, which
is known in closed form, so fields that are smooth functions of x (all the
decaying profiles we evolve) differentiate with near-machine accuracy even
where the r-spacing is huge.

Quadrature: integrands are split as (smooth factor S) * r^p dr; the weights
for each power p integrate the piecewise-cubic interpolant of S in x against
the exact measure r^p dr.  Constants in S are then integrated exactly, which
is what the large-radius volume and flux ladders need.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateGrid, GridTooCoarse

# one-sided 4th-order first-derivative stencils, integer numerators so that
# constants differentiate to exact zeros
_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0])
_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0])

# 24 points per interval: near x = 1 the measure's pole sits within an
# interval-width of the integration range on coarse grids, and the extra
# points keep even those intervals exact to rounding
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


@dataclass(frozen=True)
class RadialGrid:
    """Radial mesh with compactification map, derivative and quadrature data.

    Attributes
    ----------
    r : node radii, strictly increasing, r[0] = r_min > 0.
    x : compactified coordinate of each node, uniform spacing dx.
    L : compactification scale of x = r/(r+L).
    w : quadrature weights such that sum(w * f) ~ integral of f dr.
    """

    r: np.ndarray
    x: np.ndarray
    dx: float
    L: float
    r_min: float
    r_max: float
    w: np.ndarray = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return self.r.size

    @property
    def dr_dx(self) -> np.ndarray:
        return self.L / (1.0 - self.x) ** 2

    def d_dx(self, f: np.ndarray) -> np.ndarray:
        """4th-order first derivative with respect to x."""
        if f.size < 5:
            raise GridTooCoarse("need at least 5 nodes for the stencil")
        out = np.empty_like(f)
        h12 = 12.0 * self.dx
        out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / h12
        out[0] = np.dot(_EDGE0, f[:5]) / h12
        out[1] = np.dot(_EDGE1, f[:5]) / h12
        out[-1] = -np.dot(_EDGE0, f[-1:-6:-1]) / h12
        out[-2] = -np.dot(_EDGE1, f[-1:-6:-1]) / h12
        return out

    def d_dr(self, f: np.ndarray) -> np.ndarray:
        return self.d_dx(f) / self.dr_dx

    def quad(self, f: np.ndarray) -> float:
        """Integral of a nodal field over [r_min, r_max] in dr."""
        return float(np.dot(self.w, f))

    def weights_for_power(self, p: float, upto: int | None = None) -> np.ndarray:
        """Weights W with sum(W * S) ~ integral of S(r) r^p dr.

        S is interpolated piecewise-cubically in x; the r^p dr measure is
        integrated exactly (10-point Gauss per interval), so any S that is
        polynomial of degree <= 3 in x -- constants in particular -- is
        integrated to machine precision.  With upto = i the integral stops
        at node i (weights have length i+1).
        """
        cache = self.__dict__.setdefault("_wcache", {})
        key = (float(p), upto)
        if key not in cache:
            x = self.x if upto is None else self.x[:upto + 1]
            cache[key] = _moment_weights(x, self.L, float(p))
        return cache[key]

    def quad_power(self, smooth: np.ndarray, p: float, upto: int | None = None) -> float:
        """Integral of smooth(r) * r^p dr, optionally only up to node upto."""
        w = self.weights_for_power(p, upto)
        return float(np.dot(w, smooth if upto is None else smooth[:upto + 1]))

    def index_at(self, radius: float) -> int:
        """Index of the node nearest to the given radius."""
        return int(np.argmin(np.abs(self.r - radius)))


def make_grid(n: int, r_min: float, r_max: float, L: float | None = None) -> RadialGrid:
    """Build a grid of n nodes uniform in x = r/(r+L).

    L defaults to 30*r_min, which puts roughly half the nodes below ~30*r_min
    where curvature lives.
    """
    if n < 5:
        raise GridTooCoarse(f"n={n} < 5")
    if r_min <= 0.0 or r_max <= r_min:
        raise DegenerateGrid(f"bad radial range [{r_min}, {r_max}]")
    if L is None:
        L = 30.0 * r_min
    x0 = r_min / (r_min + L)
    x1 = r_max / (r_max + L)
    x = np.linspace(x0, x1, n)
    dx = (x1 - x0) / (n - 1)
    r = L * x / (1.0 - x)
    if np.any(np.diff(r) <= 0.0):
        raise DegenerateGrid("nodes not strictly increasing")
    w = _moment_weights(x, L, 0.0)
    return RadialGrid(r=r, x=x, dx=dx, L=L, r_min=r_min, r_max=r_max, w=w)


def _moment_weights(x: np.ndarray, L: float, p: float) -> np.ndarray:
    """Nodal weights integrating cubic-in-x interpolants against r^p dr."""
    n = x.size
    w = np.zeros(n)
    # stencil of 4 nodes per interval, centered where possible
    left = np.clip(np.arange(n - 1) - 1, 0, n - 4)
    mid = 0.5 * (x[:-1] + x[1:])
    half = 0.5 * np.diff(x)
    # Gauss points for every interval: shape (n-1, 10)
    xg = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    rg = L * xg / (1.0 - xg)
    meas = rg ** p * (L / (1.0 - xg) ** 2) * half[:, None] * _GL_WEIGHTS[None, :]
    xs = x[left[:, None] + np.arange(4)[None, :]]  # stencil abscissae (n-1, 4)
    for j in range(4):
        # Lagrange basis ell_j evaluated at the Gauss points
        ell = np.ones_like(xg)
        for m in range(4):
            if m != j:
                ell *= (xg - xs[:, m][:, None]) / (xs[:, j] - xs[:, m])[:, None]
        contrib = np.sum(ell * meas, axis=1)
        np.add.at(w, left + j, contrib)
    return w
