"""Time integration: Ricci flow of the warped metric, plus a passive scalar
obeying the heat equation on the evolving background.

The flow in the fixed radial coordinate reduces to

    da/dt = -a * Rc_rad,     db/dt = -b * Rc_sph,

since Rc_rr = a^2 Rc_rad and the spherical Ricci eigenvalue scales the b^2
block.  No gauge modification is used: rotational symmetry removes the
degeneracy a DeTurck term would fix, and the diagnostics want coordinate
spheres untouched.

Integrator: classical RK4 with a conservative parabolic step limit.  After
every full step the outermost nodes are re-pinned to a fitted c*r^-tau tail
of (a-1) and (b/r-1), which keeps the declared asymptotics intact without
injecting a hard a=1, b=r wall at finite radius.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .curvature import CurvatureFields, curvature_of, laplacian
from .errors import (AsymptoticsViolated, CurvatureBlowUp, DegenerateGrid,
                     MismatchedGrids, StabilityViolated)
from .metric import WarpedMetric

# absolute floors so exactly-flat runs (zero initial curvature / zero decay
# weight) never trip the relative thresholds on roundoff noise
_RM_FLOOR = 1e-6
_ASYM_FLOOR = 1e-8


@dataclass(frozen=True)
class FlowControls:
    safety: float = 0.2
    blow_up_factor: float = 1e3
    asym_factor: float = 10.0
    pin_nodes: int = 4
    fit_nodes: int = 8

    def __post_init__(self):
        if not 0.0 < self.safety <= 1.0:
            raise ValueError(f"safety must be in (0, 1], got {self.safety}")


@dataclass(frozen=True)
class FlowState:
    """Metric at one instant plus the curvature cache and the reference
    levels the blow-up / asymptotics monitors compare against."""

    metric: WarpedMetric
    time: float
    curv: CurvatureFields
    max_curv: float            # running sup over the run of sup|Rm|
    sup_rm_init: float
    decay_weight_init: float


@dataclass(frozen=True)
class HeatField:
    """Passive scalar evolved by u_t = Laplacian u on the flowing metric."""

    u: np.ndarray
    sigma: float = 2.0


def decay_weight(metric: WarpedMetric) -> float:
    """sup over the outer quarter of the grid of max(|a-1|, |b/r-1|) r^tau."""
    g = metric.grid
    i0 = 3 * g.n_nodes // 4
    wt = g.r[i0:] ** metric.profile.tau
    return float(max(np.max(np.abs(metric.a[i0:] - 1.0) * wt),
                     np.max(np.abs(metric.beta[i0:] - 1.0) * wt)))


def initial_state(metric: WarpedMetric) -> FlowState:
    curv = curvature_of(metric)
    sup_rm = float(np.max(curv.riem_norm))
    return FlowState(metric=metric, time=0.0, curv=curv, max_curv=sup_rm,
                     sup_rm_init=sup_rm, decay_weight_init=decay_weight(metric))


def ricci_flow_rhs(metric: WarpedMetric, curv: CurvatureFields | None = None):
    """Per-node (da/dt, db/dt) of the reduced flow."""
    if curv is None:
        curv = curvature_of(metric)
    return -metric.a * curv.Rc_rad, -metric.b * curv.Rc_sph


def cfl_dt(state: FlowState, safety: float) -> float:
    """Parabolic step limit: safety * min_nodes (proper spacing)^2 / (2n)."""
    if not 0.0 < safety <= 1.0:
        raise ValueError(f"safety must be in (0, 1], got {safety}")
    m = state.metric
    ds = 0.5 * (m.a[:-1] + m.a[1:]) * np.diff(m.grid.r)
    if np.any(ds <= 0.0):
        raise DegenerateGrid("zero proper spacing between adjacent nodes")
    return safety * float(np.min(ds)) ** 2 / (2.0 * m.n)


def _pin_tail(metric: WarpedMetric, f: np.ndarray, controls: FlowControls) -> None:
    """Overwrite the last pin_nodes of f (a field tending to 1) with the
    c*r^-tau tail fitted on the adjacent interior window.  In place."""
    r = metric.grid.r
    tau = metric.profile.tau
    pin, fit = controls.pin_nodes, controls.fit_nodes
    win = slice(-(pin + fit), -pin)
    c = float(np.mean((f[win] - 1.0) * r[win] ** tau))
    f[-pin:] = 1.0 + c * r[-pin:] ** (-tau)


def step(state: FlowState, dt: float,
         controls: FlowControls = FlowControls()) -> FlowState:
    """One RK4 step of the Ricci flow; re-pins the outer tail and recomputes
    the curvature cache, enforcing the blow-up and asymptotics monitors."""
    m = state.metric
    a0, b0 = m.a, m.b

    da1, db1 = ricci_flow_rhs(m, state.curv)
    m2 = m.with_fields(a0 + 0.5 * dt * da1, b0 + 0.5 * dt * db1)
    da2, db2 = ricci_flow_rhs(m2)
    m3 = m.with_fields(a0 + 0.5 * dt * da2, b0 + 0.5 * dt * db2)
    da3, db3 = ricci_flow_rhs(m3)
    m4 = m.with_fields(a0 + dt * da3, b0 + dt * db3)
    da4, db4 = ricci_flow_rhs(m4)

    a1 = a0 + (dt / 6.0) * (da1 + 2.0 * da2 + 2.0 * da3 + da4)
    b1 = b0 + (dt / 6.0) * (db1 + 2.0 * db2 + 2.0 * db3 + db4)

    beta1 = b1 / m.grid.r
    _pin_tail(m, a1, controls)
    _pin_tail(m, beta1, controls)
    b1 = beta1 * m.grid.r

    new_metric = m.with_fields(a1, b1)
    t1 = state.time + dt
    curv = curvature_of(new_metric)
    sup_rm = float(np.max(curv.riem_norm))
    if sup_rm > controls.blow_up_factor * state.sup_rm_init + _RM_FLOOR:
        raise CurvatureBlowUp(
            f"sup|Rm| = {sup_rm:.3e} at t = {t1:.6g} exceeds "
            f"{controls.blow_up_factor:g} x initial", time=t1, sup_rm=sup_rm)
    wgt = decay_weight(new_metric)
    if wgt > controls.asym_factor * state.decay_weight_init + _ASYM_FLOOR:
        raise AsymptoticsViolated(
            f"outer decay weight {wgt:.3e} at t = {t1:.6g} exceeds "
            f"{controls.asym_factor:g} x initial", time=t1)
    return replace(state, metric=new_metric, time=t1, curv=curv,
                   max_curv=max(state.max_curv, sup_rm))


def heat_step(field: HeatField, state: FlowState, dt: float) -> HeatField:
    """One RK4 step of u_t = Laplacian^{g(t)} u with the metric frozen over
    the step (the flow advances it separately)."""
    limit = cfl_dt(state, 1.0)
    if dt > limit * (1.0 + 1e-12):
        raise StabilityViolated(f"dt = {dt:.3e} exceeds parabolic limit {limit:.3e}")
    m = state.metric
    u = field.u
    k1 = laplacian(m, u)
    k2 = laplacian(m, u + 0.5 * dt * k1)
    k3 = laplacian(m, u + 0.5 * dt * k2)
    k4 = laplacian(m, u + dt * k3)
    return replace(field, u=u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))


def evolve(state: FlowState, t_final: float,
           controls: FlowControls = FlowControls(),
           observer=None, record_every: int = 1,
           heat: HeatField | None = None,
           max_steps: int = 10_000_000):
    """March the flow to t_final, calling observer(state, heat) every
    record_every steps (and on the initial and final states).

    Returns (final_state, final_heat).  Failures raised by step propagate;
    whatever the observer recorded up to that point is the partial series.
    """
    if t_final <= state.time:
        raise ValueError(f"t_final = {t_final} not past t = {state.time}")
    if observer is not None:
        observer(state, heat)
    k = 0
    while state.time < t_final:
        dt = min(cfl_dt(state, controls.safety), t_final - state.time)
        if heat is not None:
            heat = heat_step(heat, state, dt)
        state = step(state, dt, controls)
        k += 1
        if observer is not None and (k % record_every == 0 or state.time >= t_final):
            observer(state, heat)
        if k >= max_steps:
            raise RuntimeError(f"step budget {max_steps} exhausted at t = {state.time}")
    return state, heat


def scalar_evolution_residual(state_before: FlowState, state_after: FlowState,
                              dt: float) -> np.ndarray:
    """Per-node defect of d/dt R = Laplacian R + 2|Rc|^2 over one step,
    with the right-hand side evaluated on the midpoint metric."""
    m0, m1 = state_before.metric, state_after.metric
    if m0.grid is not m1.grid and not np.array_equal(m0.grid.r, m1.grid.r):
        raise MismatchedGrids("states live on different grids")
    mid = m0.with_fields(0.5 * (m0.a + m1.a), 0.5 * (m0.b + m1.b))
    cmid = curvature_of(mid)
    rate = (state_after.curv.R - state_before.curv.R) / dt
    return rate - laplacian(mid, cmid.R) - 2.0 * cmid.ricci_norm_sq(mid.n)
