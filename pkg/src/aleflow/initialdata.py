"""Analytic and randomized initial metrics with controlled asymptotics.

Every constructor returns data that is exactly flat below 2*r_min (the grid
never has to treat the coordinate origin) and approaches a = 1, b = r at the
declared rate tau.  The conformal family additionally carries a prescribed
scalar-curvature decay exponent q via a subleading harmonic-violating term.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace

import numpy as np

from .errors import AmplitudeTooLarge, UnsupportedDimension
from .grid import RadialGrid
from .metric import AsymptoticProfile, WarpedMetric

KINDS = ("flat", "schwarzschild_slice", "conformal_bump", "perturbed_flat",
         "convergent_family_member")


@dataclass(frozen=True)
class InitialDataSpec:
    kind: str
    n: int = 3
    mass_parameter: float = 1.0      # schwarzschild_slice
    amplitude: float = 0.1           # conformal / random kinds
    scalar_amplitude: float = -0.05  # coefficient of the r^-(q-2) conformal term
    tau: float = 1.0
    q: float | None = None
    gamma_order: int = 1
    seed: int = 0
    family_index: int = 0
    family_step: float = 0.05

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "InitialDataSpec":
        return InitialDataSpec(**json.loads(text))


def smoothstep(r, r_on, r_off):
    """C-infinity switch: 0 below r_on, 1 above r_off."""
    s = np.clip((np.asarray(r, dtype=float) - r_on) / (r_off - r_on), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        lo = np.where(s > 0.0, np.exp(-1.0 / np.maximum(s, 1e-300)), 0.0)
        hi = np.where(s < 1.0, np.exp(-1.0 / np.maximum(1.0 - s, 1e-300)), 0.0)
    return lo / (lo + hi)


def build(spec: InitialDataSpec, grid: RadialGrid) -> WarpedMetric:
    """Construct the initial metric for a spec on a given grid."""
    if not 3 <= spec.n <= 6:
        raise UnsupportedDimension(f"n={spec.n} outside [3, 6]")
    r = grid.r
    builder = {
        "flat": _flat,
        "schwarzschild_slice": _schwarzschild,
        "conformal_bump": _conformal,
        "perturbed_flat": _perturbed,
        "convergent_family_member": _family_member,
    }[spec.kind]
    a, beta, profile = builder(spec, grid)
    if np.any(a <= 0.0) or np.any(beta <= 0.0):
        raise AmplitudeTooLarge("metric degenerates: a or b <= 0")
    b = beta * r
    if np.any(np.diff(b) <= 0.0):
        raise AmplitudeTooLarge("areal radius not increasing")
    return WarpedMetric(n=spec.n, grid=grid, a=a, b=b,
                        gamma_order=spec.gamma_order, profile=profile)


def convergent_family(base_spec: InitialDataSpec, index: int,
                      grid: RadialGrid) -> WarpedMetric:
    """Member k of a family converging geometrically to the base bump."""
    if index < 0:
        raise ValueError("family index must be >= 0")
    spec = replace(base_spec, kind="convergent_family_member", family_index=index)
    return build(spec, grid)


def family_limit(base_spec: InitialDataSpec, grid: RadialGrid) -> WarpedMetric:
    """The limit metric of the convergent family (the plain bump)."""
    return build(replace(base_spec, kind="conformal_bump"), grid)


def _flat(spec, grid):
    ones = np.ones_like(grid.r)
    return ones.copy(), ones.copy(), AsymptoticProfile(tau=spec.tau, q=spec.q)


def _schwarzschild(spec, grid):
    m = spec.mass_parameter
    r = grid.r
    chi = smoothstep(r, 4.0 * m, 8.0 * m)
    safe = np.maximum(r, 4.0 * m)  # only sampled where chi > 0
    a_exact = 1.0 / np.sqrt(1.0 - 2.0 * m / safe)
    a = 1.0 + chi * (a_exact - 1.0)
    beta = np.ones_like(r)
    return a, beta, AsymptoticProfile(tau=1.0, q=spec.q)


def _conformal_factor(grid, n, tau, q, amplitude, scalar_amplitude):
    r = grid.r
    r0 = grid.r_min
    chi = smoothstep(r, 2.0 * r0, 4.0 * r0)
    u = 1.0 + amplitude * chi * r ** (-tau)
    if q is not None:
        p = q - 2.0
        if abs(p * (p + 2.0 - n)) < 1e-12:
            raise ValueError(f"conformal term r^-{p} is harmonic in n={n}; "
                             "cannot prescribe that q")
        u = u + scalar_amplitude * chi * r0 ** p * r ** (-p)
    if np.any(u <= 0.05):
        raise AmplitudeTooLarge("conformal factor too close to zero")
    return u


def _conformal(spec, grid):
    u = _conformal_factor(grid, spec.n, spec.tau, spec.q,
                          spec.amplitude, spec.scalar_amplitude)
    w = u ** (2.0 / (spec.n - 2.0))
    profile = AsymptoticProfile(tau=spec.tau, q=spec.q)
    return w.copy(), w.copy(), profile


def _family_member(spec, grid):
    amp = spec.amplitude + spec.family_step * 0.5 ** spec.family_index
    u = _conformal_factor(grid, spec.n, spec.tau, spec.q,
                          amp, spec.scalar_amplitude)
    w = u ** (2.0 / (spec.n - 2.0))
    profile = AsymptoticProfile(tau=spec.tau, q=spec.q)
    return w.copy(), w.copy(), profile


def _perturbed(spec, grid):
    """Random smooth bumps on (log a, log b/r) under a tau-decay envelope."""
    rng = np.random.default_rng(spec.seed)
    r = grid.r
    x = grid.x
    r0 = grid.r_min
    env = smoothstep(r, 2.0 * r0, 4.0 * r0) * (4.0 * r0 / np.maximum(r, 4.0 * r0)) ** spec.tau
    n_bumps = 6
    centers = rng.uniform(x[0] + 0.1 * (x[-1] - x[0]), x[0] + 0.8 * (x[-1] - x[0]), n_bumps)
    widths = rng.uniform(0.03, 0.12, n_bumps) * (x[-1] - x[0])
    log_a = np.zeros_like(r)
    log_beta = np.zeros_like(r)
    for c, wdt in zip(centers, widths):
        bump = np.exp(-0.5 * ((x - c) / wdt) ** 2)
        log_a += rng.normal(0.0, spec.amplitude) * bump
        log_beta += rng.normal(0.0, spec.amplitude) * bump
    a = np.exp(log_a * env)
    beta = np.exp(log_beta * env)
    return a, beta, AsymptoticProfile(tau=spec.tau, q=spec.q)
