"""Rotationally symmetric metrics g = a(r)^2 dr^2 + b(r)^2 g_{S^{n-1}} on a radial grid."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from scipy.interpolate import make_interp_spline

from .errors import InterpolationOutOfRange, NonPositiveMetric
from .grid import RadialGrid, make_grid


def sphere_area(n: int) -> float:
    """Volume of the unit (n-1)-sphere (omega_n)."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def ball_volume(n: int) -> float:
    """Volume of the unit n-ball (Omega_n = omega_n / n)."""
    return sphere_area(n) / n


@dataclass(frozen=True)
class AsymptoticProfile:
    """Declared asymptotic orders: metric decay tau, optional scalar-curvature
    decay q, and the volume-growth constant."""

    tau: float
    q: float | None = None
    v_lower: float = 0.5

    def __post_init__(self):
        if self.tau <= 0.0:
            raise ValueError(f"tau must be positive, got {self.tau}")

    def mass_well_defined(self, n: int) -> bool:
        return self.tau > 0.5 * (n - 2)


@dataclass(frozen=True)
class QuotientStructure:
    """Finite quotient at infinity; only the group order enters any formula."""

    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"quotient order must be >= 1, got {self.order}")

    @property
    def cross_section_area_factor(self) -> float:
        return 1.0 / self.order


@dataclass(frozen=True)
class WarpedMetric:
    """Per-node samples of the radial lapse a and areal radius b.

    Internally all differentiation works on (a, b/r): both tend to 1 with
    r^-tau tails and are smooth functions of the compactified coordinate, so
    the flat metric differentiates to exact zeros and decaying tails keep
    full stencil accuracy out to r_max.
    """

    n: int
    grid: RadialGrid
    a: np.ndarray
    b: np.ndarray
    gamma_order: int = 1
    profile: AsymptoticProfile = AsymptoticProfile(tau=1.0)

    def __post_init__(self):
        if np.any(self.a <= 0.0) or np.any(self.b <= 0.0):
            raise NonPositiveMetric("a and b must be positive everywhere")

    @property
    def beta(self) -> np.ndarray:
        return self.b / self.grid.r

    @property
    def quotient(self) -> QuotientStructure:
        return QuotientStructure(self.gamma_order)

    def with_fields(self, a: np.ndarray, b: np.ndarray) -> "WarpedMetric":
        return replace(self, a=a, b=b)

    def validate(self, beta_monotone: bool = True) -> None:
        """Raise if type invariants fail (positivity checked on construction)."""
        if beta_monotone and np.any(np.diff(self.b) <= 0.0):
            raise NonPositiveMetric("b must be strictly increasing (no neck)")

    # -- interpolation -----------------------------------------------------

    def interpolators(self):
        """Quintic splines (in x) for a - 1 and beta - 1; cached on first use.

        Splining the deviations keeps the flat metric exact: zero data gives
        identically zero spline coefficients, so flat fluxes vanish to the
        last bit instead of to spline-solve noise.
        """
        cache = self.__dict__.get("_interp")
        if cache is None:
            k = 5 if self.grid.n_nodes > 5 else 3
            cache = (
                make_interp_spline(self.grid.x, self.a - 1.0, k=k),
                make_interp_spline(self.grid.x, self.beta - 1.0, k=k),
            )
            object.__setattr__(self, "_interp", cache)
        return cache

    def profiles_at(self, r):
        """a, beta and r-derivatives (a', beta', a'', beta'') at radius r."""
        r = np.asarray(r, dtype=float)
        if np.any(r < self.grid.r_min) or np.any(r > self.grid.r_max):
            raise InterpolationOutOfRange(f"radius {r} outside grid")
        sa, sb = self.interpolators()
        L = self.grid.L
        x = r / (r + L)
        xp = L / (r + L) ** 2          # dx/dr
        xpp = -2.0 * L / (r + L) ** 3  # d2x/dr2
        a = 1.0 + sa(x)
        beta = 1.0 + sb(x)
        a_r = sa(x, 1) * xp
        beta_r = sb(x, 1) * xp
        a_rr = sa(x, 2) * xp ** 2 + sa(x, 1) * xpp
        beta_rr = sb(x, 2) * xp ** 2 + sb(x, 1) * xpp
        return a, beta, a_r, beta_r, a_rr, beta_rr


# -- snapshot file format --------------------------------------------------
# CSV "r,a,b" + JSON sidecar with the metric metadata and the grid
# parameters needed to rebuild the mesh bit-identically.


def write_snapshot(metric: WarpedMetric, csv_path, time: float = 0.0) -> None:
    csv_path = Path(csv_path)
    g = metric.grid
    with open(csv_path, "w") as f:
        f.write("r,a,b\n")
        for r, a, b in zip(g.r, metric.a, metric.b):
            f.write("%.17g,%.17g,%.17g\n" % (r, a, b))
    sidecar = {
        "n": metric.n,
        "gamma_order": metric.gamma_order,
        "tau": metric.profile.tau,
        "time": time,
        "q": metric.profile.q,
        "v_lower": metric.profile.v_lower,
        "grid": {"n_nodes": g.n_nodes, "r_min": g.r_min, "r_max": g.r_max, "L": g.L},
    }
    csv_path.with_suffix(".json").write_text(json.dumps(sidecar, indent=1))


def read_snapshot(csv_path) -> tuple[WarpedMetric, float]:
    csv_path = Path(csv_path)
    meta = json.loads(csv_path.with_suffix(".json").read_text())
    gp = meta["grid"]
    grid = make_grid(gp["n_nodes"], gp["r_min"], gp["r_max"], gp["L"])
    data = np.loadtxt(csv_path, delimiter=",", skiprows=1)
    metric = WarpedMetric(
        n=meta["n"],
        grid=grid,
        a=np.ascontiguousarray(data[:, 1]),
        b=np.ascontiguousarray(data[:, 2]),
        gamma_order=meta["gamma_order"],
        profile=AsymptoticProfile(tau=meta["tau"], q=meta.get("q"),
                                  v_lower=meta.get("v_lower", 0.5)),
    )
    return metric, float(meta["time"])
