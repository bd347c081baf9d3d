"""Asymptotic and integral diagnostics of the evolving metric: flux mass and
its extrapolation ladder, quasi-local mass, volume ratio, decay-exponent
fits, truncated L1 / weighted Sobolev norms, and the pointwise / integral
identity residuals that certify the discretization.

Conventions fixed here once for the whole package:
  * outward normals on all flux spheres;
  * every sphere area carries the quotient factor 1/|Gamma| while omega_n in
    the mass normalization stays the full unit-sphere volume;
  * all reductions are fixed-order sums, so repeated runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.interpolate import make_interp_spline

from .cartesian import to_cartesian_components
from .curvature import curvature_of
from .errors import (InsufficientSpan, MassIllDefined, MismatchedGrids,
                     OutsideAsymptoticRegime, WindowTooShort, WrongDimension)
from .flow import FlowState, HeatField, cfl_dt, scalar_evolution_residual, step
from .metric import WarpedMetric, ball_volume, sphere_area

_FLOOR = 1e-30


# -- ladder extrapolation ----------------------------------------------------

def default_ladder(grid) -> np.ndarray:
    """Geometric radius ladder R_j = 0.1 r_max 2^{j/2}, j = 0..6."""
    return 0.1 * grid.r_max * 2.0 ** (0.5 * np.arange(7))


def richardson_ladder(radii, values, exponent, sweeps=2):
    """Extrapolate a geometric ladder assuming residual c R^-p (+ c' R^-p-1).

    Returns (extrapolated, uncertainty); uncertainty is the gap between the
    last two entries of the final elimination sweep.
    """
    radii = np.asarray(radii, dtype=float)
    vals = np.asarray(values, dtype=float)
    for s in range(sweeps):
        if vals.size < 2:
            break
        # per-pair ratios: the radii need not be exactly geometric (e.g.
        # when snapped to grid nodes)
        f = (radii[1:] / radii[:-1]) ** (-(exponent + s))
        vals = (vals[1:] - f * vals[:-1]) / (1.0 - f)
        radii = radii[1:]
    unc = abs(vals[-1] - vals[-2]) if vals.size >= 2 else math.inf
    return float(vals[-1]), float(unc)


# -- mass --------------------------------------------------------------------

@dataclass(frozen=True)
class MassEstimate:
    flux_at_radius: tuple          # ((R, m_R), ...)
    extrapolated: float
    extrapolation_exponent: float
    uncertainty: float


def _check_asymptotic(metric, R_sphere):
    if R_sphere < 0.1 * metric.grid.r_max * (1.0 - 1e-9):
        raise OutsideAsymptoticRegime(
            f"R = {R_sphere:g} below 0.1 r_max = {0.1 * metric.grid.r_max:g}")


def adm_mass_flux(metric: WarpedMetric, R_sphere: float) -> float:
    """Flux mass (1/4 omega_n) over the coordinate sphere of radius R.

    The integrand flux vector (d_i g_ij - d_j g_ii) is radial by symmetry,
    so the sphere integral is its radial component times the quotient-sphere
    area; the components come from the Cartesian view of the metric.
    """
    _check_asymptotic(metric, R_sphere)
    n = metric.n
    e = np.zeros(n)
    e[0] = 1.0
    _, dg = to_cartesian_components(metric, e, R_sphere)
    flux = np.einsum("iij->j", dg) - np.einsum("jii->j", dg)
    radial = float(np.dot(flux, e))
    return radial * R_sphere ** (n - 1) / (4.0 * metric.gamma_order)


def adm_mass(metric: WarpedMetric, radii=None) -> MassEstimate:
    """Ladder of flux masses Richardson-extrapolated to R -> infinity.

    The leading flux residual for tau-decaying data is O(R^-(2 tau - n + 2)).
    """
    tau = metric.profile.tau
    n = metric.n
    if tau <= 0.5 * (n - 2):
        raise MassIllDefined(f"tau = {tau} <= (n-2)/2 = {0.5 * (n - 2)}")
    if radii is None:
        radii = default_ladder(metric.grid)
    pairs = tuple((float(R), adm_mass_flux(metric, R)) for R in radii)
    p = 2.0 * tau - n + 2.0
    extrap, unc = richardson_ladder([R for R, _ in pairs],
                                    [m for _, m in pairs], p)
    return MassEstimate(flux_at_radius=pairs, extrapolated=extrap,
                        extrapolation_exponent=p, uncertainty=unc)


def hawking_mass(metric: WarpedMetric, r: float) -> float:
    """Quasi-local mass (b/2)(1 - (b_r/a)^2) of the r-sphere; n = 3 only."""
    if metric.n != 3:
        raise WrongDimension(f"Hawking mass needs n = 3, got n = {metric.n}")
    a, beta, _, beta_r, _, _ = metric.profiles_at(r)
    b = beta * r
    b_s = (beta + r * beta_r) / a
    return float(0.5 * b * (1.0 - b_s ** 2))


def mass_rate_flux(state: FlowState, R_sphere) -> float | np.ndarray:
    """Flux form of dm/dt: (1/4 omega_n) of the radial R-gradient flux,
    i.e. R^{n-1} dR_scalar/dr / (4 |Gamma|) at the sampling radius."""
    m = state.metric
    R_sphere = np.asarray(R_sphere, dtype=float)
    _check_asymptotic(m, float(np.min(R_sphere)))
    g = m.grid
    k = 5 if g.n_nodes > 5 else 3
    spl = make_interp_spline(g.x, state.curv.R, k=k)
    x = R_sphere / (R_sphere + g.L)
    dR_dr = spl(x, 1) * g.L / (R_sphere + g.L) ** 2
    out = R_sphere ** (m.n - 1) * dR_dr / (4.0 * m.gamma_order)
    return out if out.ndim else float(out)


# -- volumes -----------------------------------------------------------------

def volume_ball(metric: WarpedMetric, R: float) -> float:
    """Riemannian volume of the coordinate ball of radius R (snapped to the
    nearest node), including the exactly-flat core below r_min."""
    g = metric.grid
    i = g.index_at(R)
    smooth = metric.a * metric.beta ** (metric.n - 1)
    inner = ball_volume(metric.n) * g.r_min ** metric.n
    shell = sphere_area(metric.n) * g.quad_power(smooth, metric.n - 1, upto=i)
    return (inner + shell) / metric.gamma_order


def asymptotic_volume_ratio(metric: WarpedMetric, radii=None):
    """mu = lim V(B_r) / (Omega_n r^n), ladder-extrapolated.

    Returns (mu, uncertainty).  Exact model metrics give 1/|Gamma| to
    machine precision because the quadrature integrates r^{n-1} exactly.
    """
    g = metric.grid
    if radii is None:
        radii = default_ladder(g)
    mus = []
    rs = []
    for R in radii:
        rn = g.r[g.index_at(R)]
        if rs and rn <= rs[-1]:   # coarse outer spacing can snap two rungs
            continue              # to the same node
        mus.append(volume_ball(metric, R) / (ball_volume(metric.n) * rn ** metric.n))
        rs.append(rn)
    return richardson_ladder(rs, mus, metric.profile.tau)


def volume_rate_residual(state_before: FlowState, state_after: FlowState,
                         dt: float, r: float) -> float:
    """Defect of d/dt V(B_r) = -int_{B_r} R dv over one step.

    Two deliberate choices keep the defect measurable in floating point:
    the rate side differences the flat-subtracted volume (the huge
    time-independent flat part would otherwise cancel below machine
    precision), and the right side is evaluated at the step start, leaving
    a first-order-in-dt defect that dominates roundoff.  Under the
    parabolic step limit dt ~ h^2 a grid-refinement study then observes
    second-order decay.  Identical quadrature weights on both sides keep
    the flat case an exact zero."""
    m0, m1 = state_before.metric, state_after.metric
    if m0.grid is not m1.grid and not np.array_equal(m0.grid.r, m1.grid.r):
        raise MismatchedGrids("states live on different grids")
    n = m0.n
    g = m0.grid
    i = g.index_at(r)
    area = sphere_area(n) / m0.gamma_order

    def excess(m):
        return area * g.quad_power(m.a * m.beta ** (n - 1) - 1.0, n - 1, upto=i)

    rate = (excess(m1) - excess(m0)) / dt
    smooth = state_before.curv.R * m0.a * m0.beta ** (n - 1)
    intR = area * g.quad_power(smooth, n - 1, upto=i)
    return rate + intR


# -- decay fits --------------------------------------------------------------

@dataclass(frozen=True)
class DecayFit:
    exponent: float     # value ~ C r^-exponent
    residual: float     # rms misfit of log|value|
    floored: bool       # some samples were below the positivity floor


def decay_fit(r_samples, values) -> DecayFit:
    """Least-squares power-law fit of |value| vs r over the sample window."""
    r = np.asarray(r_samples, dtype=float)
    v = np.abs(np.asarray(values, dtype=float))
    if r.size < 8:
        raise InsufficientSpan(f"{r.size} samples < 8")
    if r[-1] / r[0] < 10.0 * (1.0 - 1e-9):
        raise InsufficientSpan(f"span {r[0]:g}..{r[-1]:g} under one decade")
    floored = bool(np.any(v < _FLOOR))
    v = np.maximum(v, _FLOOR)
    slope, intercept = np.polyfit(np.log(r), np.log(v), 1)
    misfit = np.log(v) - (slope * np.log(r) + intercept)
    return DecayFit(exponent=float(-slope),
                    residual=float(np.sqrt(np.mean(misfit ** 2))),
                    floored=floored)


def outer_window(grid, lo_frac=0.004, hi_frac=0.063):
    """Node index slice of the standard outer fitting window."""
    mask = (grid.r >= lo_frac * grid.r_max) & (grid.r <= hi_frac * grid.r_max)
    idx = np.nonzero(mask)[0]
    return slice(int(idx[0]), int(idx[-1]) + 1)


def fit_field_decay(metric: WarpedMetric, values, lo_frac=0.004, hi_frac=0.063) -> DecayFit:
    win = outer_window(metric.grid, lo_frac, hi_frac)
    return decay_fit(metric.grid.r[win], values[win])


# -- truncated global integrals ---------------------------------------------

@dataclass(frozen=True)
class TruncatedIntegral:
    value: float
    tail_bound: float
    tail_exponent: float
    tail_divergent: bool


def l1_scalar(metric: WarpedMetric, curv=None) -> TruncatedIntegral:
    """Truncated int |R| dv with an analytic tail bound from the fitted
    outer decay; the tail is certified finite only if the exponent > n."""
    if curv is None:
        curv = curvature_of(metric)
    n = metric.n
    g = metric.grid
    smooth = np.abs(curv.R) * metric.a * metric.beta ** (n - 1)
    value = sphere_area(n) / metric.gamma_order * g.quad_power(smooth, n - 1)
    win = outer_window(g, 0.04, 0.6)
    r_w = g.r[win]
    v_w = np.abs(curv.R[win])
    if np.max(v_w) < 1e-18:   # numerically scalar-flat: no tail to bound
        return TruncatedIntegral(value, 0.0, math.inf, False)
    fit = decay_fit(r_w, v_w)
    p = fit.exponent
    if p <= n:
        return TruncatedIntegral(value, math.inf, p, True)
    C = v_w[-1] * r_w[-1] ** p
    tail = sphere_area(n) / metric.gamma_order * C * g.r_max ** (n - p) / (p - n)
    return TruncatedIntegral(value, tail, p, False)


def _deriv_3pt(t, y, i):
    """Derivative of y(t) at index i from the three points i-1, i, i+1
    (nonuniform spacing)."""
    t0, t1, t2 = t[i - 1], t[i], t[i + 1]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    return (y0 * (t1 - t2) / ((t0 - t1) * (t0 - t2))
            + y1 * (2.0 * t1 - t0 - t2) / ((t1 - t0) * (t1 - t2))
            + y2 * (t1 - t0) / ((t2 - t0) * (t2 - t1)))


def total_scalar_rate_residual(times, int_R, int_Rc2, int_R2, i=None) -> float:
    """Defect of d/dt int R dv = int (2|Rc|^2 - R^2) dv at record i (middle
    of the window by default), from centered differencing of the tabulated
    truncated integrals."""
    times = np.asarray(times, dtype=float)
    if times.size < 3:
        raise WindowTooShort(f"{times.size} records < 3")
    if i is None:
        i = times.size // 2
    i = min(max(i, 1), times.size - 2)
    rate = _deriv_3pt(times, np.asarray(int_R, dtype=float), i)
    return float(rate - (2.0 * int_Rc2[i] - int_R2[i]))


# -- weighted norms ----------------------------------------------------------

@dataclass(frozen=True)
class WeightedNormSpec:
    k: int = 1
    q_exp: float = 2.0
    tau: float | None = None   # None: take the metric's declared tau

    def __post_init__(self):
        if self.k not in (0, 1, 2):
            raise ValueError(f"k must be 0, 1 or 2, got {self.k}")
        if self.q_exp < 1.0:
            raise ValueError(f"q_exp must be >= 1, got {self.q_exp}")


@dataclass(frozen=True)
class NormResult:
    value: float
    terms: tuple          # one weighted term per derivative order
    divergent: bool       # outer fit says decay does not beat the weight


@lru_cache(maxsize=None)
def _second_deriv_gram(n: int):
    """Gram matrix of the six constant tensors spanning d^2 g for a radial
    profile metric (direction fixed to e1 -- the norm is direction-free)."""
    e = np.zeros(n)
    e[0] = 1.0
    eye = np.eye(n)
    proj = eye - np.outer(e, e)          # r * d_l e_m
    T = np.einsum("k,i,j->kij", e, e, e)
    U = np.einsum("k,ij->kij", e, eye)
    W = (np.einsum("ki,j->kij", eye, e) + np.einsum("kj,i->kij", eye, e) - 2.0 * T)
    dT = (np.einsum("lk,i,j->lkij", proj, e, e)
          + np.einsum("k,li,j->lkij", e, proj, e)
          + np.einsum("k,i,lj->lkij", e, e, proj))
    dU = np.einsum("lk,ij->lkij", proj, eye)
    dW = (np.einsum("ki,lj->lkij", eye, proj)
          + np.einsum("kj,li->lkij", eye, proj) - 2.0 * dT)
    basis = [np.einsum("l,kij->lkij", e, T),
             np.einsum("l,kij->lkij", e, U),
             np.einsum("l,kij->lkij", e, W),
             dT, dU, dW]
    gram = np.empty((6, 6))
    for i in range(6):
        for j in range(6):
            gram[i, j] = np.sum(basis[i] * basis[j])
    return gram


def _deviation_magnitudes(metric: WarpedMetric, relative_to=None):
    """Pointwise Frobenius sizes |u|, |du|, |d2u| of u = g - delta (or the
    difference of two metrics) in Cartesian components, per node."""
    g = metric.grid
    r = g.r
    n = metric.n
    A = metric.a ** 2 - 1.0
    B = metric.beta ** 2 - 1.0
    if relative_to is not None:
        A = A - (relative_to.a ** 2 - 1.0)
        B = B - (relative_to.beta ** 2 - 1.0)
    Ap = g.d_dr(A)
    Bp = g.d_dr(B)
    C = (A - B) / r
    u0 = np.sqrt(A ** 2 + (n - 1) * B ** 2)
    u1 = np.sqrt(Ap ** 2 + (n - 1) * Bp ** 2 + (2 * n - 2) * C ** 2)
    # second derivative: six radial coefficients against a fixed tensor basis
    P = Ap - Bp
    coeffs = np.stack([g.d_dr(P), g.d_dr(Bp), g.d_dr(C), P / r, Bp / r, C / r])
    gram = _second_deriv_gram(n)
    u2 = np.sqrt(np.maximum(np.einsum("ax,ab,bx->x", coeffs, gram, coeffs), 0.0))
    return u0, u1, u2


def weighted_sobolev_norm(metric: WarpedMetric, spec: WeightedNormSpec,
                          relative_to: WarpedMetric | None = None) -> NormResult:
    """|| g - delta ||_{W^{k,q}_tau}: sum over i <= k of the weighted L^q
    norm of the i-th Cartesian derivative, weight r^{tau+i}, measure
    r^{-n} dvol.  Finite iff the actual decay beats the weight; an outer
    power-law fit flags divergence instead of trusting the truncation."""
    tau = metric.profile.tau if spec.tau is None else spec.tau
    n = metric.n
    g = metric.grid
    q = spec.q_exp
    mags = _deviation_magnitudes(metric, relative_to)
    vol_smooth = metric.a * metric.beta ** (n - 1)
    area = sphere_area(n) / metric.gamma_order
    terms = []
    divergent = False
    win = outer_window(g, 0.04, 0.6)
    for i in range(spec.k + 1):
        u = mags[i]
        integrand = u ** q * vol_smooth
        val = (area * g.quad_power(integrand, (tau + i) * q - 1.0)) ** (1.0 / q)
        terms.append(float(val))
        if np.max(np.abs(u[win])) > 1e-25:
            fit = decay_fit(g.r[win], u[win])
            if fit.exponent <= tau + i + 1e-6:
                divergent = True
    return NormResult(value=float(sum(terms)), terms=tuple(terms),
                      divergent=divergent)


def mtau_norm(metric: WarpedMetric, spec: WeightedNormSpec) -> NormResult:
    """Metric-space norm: weighted Sobolev norm of g - delta plus the
    (truncated) L1 norm of the scalar curvature."""
    w = weighted_sobolev_norm(metric, spec)
    l1 = l1_scalar(metric)
    return NormResult(value=w.value + l1.value, terms=w.terms + (l1.value,),
                      divergent=w.divergent or l1.tail_divergent)


def mtau_distance(metric: WarpedMetric, other: WarpedMetric,
                  spec: WeightedNormSpec) -> float:
    """Distance in the metric-space norm: Sobolev norm of the component
    difference plus L1 (volume of `other`) of the R difference."""
    if metric.grid is not other.grid and not np.array_equal(metric.grid.r, other.grid.r):
        raise MismatchedGrids("metrics live on different grids")
    w = weighted_sobolev_norm(metric, spec, relative_to=other)
    n = metric.n
    dR = np.abs(curvature_of(metric).R - curvature_of(other).R)
    smooth = dR * other.a * other.beta ** (n - 1)
    l1 = sphere_area(n) / metric.gamma_order * metric.grid.quad_power(smooth, n - 1)
    return w.value + l1


# -- divergence identity -----------------------------------------------------

def mass_density_residual(metric: WarpedMetric, r) -> float | np.ndarray:
    """Pointwise defect of R = div(mass density vector): the scalar
    curvature minus the flat divergence of (d_i g_ij - d_j g_ii), both in
    Cartesian components at radius r.  Decays like r^-(2 tau + 2)."""
    r = np.asarray(r, dtype=float)
    if np.min(r) < 0.002 * metric.grid.r_max:
        raise OutsideAsymptoticRegime(
            f"r = {np.min(r):g} below 0.002 r_max")
    n = metric.n
    a, beta, a_r, beta_r, a_rr, beta_rr = metric.profiles_at(r)
    A = a ** 2 - 1.0
    B = beta ** 2 - 1.0
    Ap = 2.0 * a * a_r
    Bp = 2.0 * beta * beta_r
    Bpp = 2.0 * (beta_r ** 2 + beta * beta_rr)
    D = (n - 1) * ((A - B) / r - Bp)
    Dp = (n - 1) * ((Ap - Bp) / r - (A - B) / r ** 2 - Bpp)
    div = Dp + (n - 1) * D / r

    b = beta * r
    b_r = beta + r * beta_r
    b_rr = 2.0 * beta_r + r * beta_rr
    b_s = b_r / a
    b_ss = (b_rr * a - b_r * a_r) / a ** 3
    K_rad = -b_ss / b
    K_sph = (1.0 - b_s ** 2) / b ** 2
    R = 2.0 * (n - 1) * K_rad + (n - 1) * (n - 2) * K_sph
    out = R - div
    return out if out.ndim else float(out)


# -- record / series ---------------------------------------------------------

CSV_COLUMNS = ("t", "mass", "mass_unc", "mass_rate", "mu", "riem_exp",
               "scalar_exp", "l1R", "wkq", "mtau", "res_scee", "res_vol",
               "res_totR", "res_domd")


@dataclass
class DiagnosticsRecord:
    t: float
    mass: float
    mass_unc: float
    mass_rate: float
    mu: float
    riem_exp: float
    scalar_exp: float
    l1R: float
    wkq: float
    mtau: float
    res_scee: float
    res_vol: float
    res_totR: float
    res_domd: float
    extras: dict = field(default_factory=dict)

    def row(self):
        return tuple(getattr(self, c) for c in CSV_COLUMNS)


@dataclass
class DiagnosticsSeries:
    records: list = field(default_factory=list)

    def append(self, rec: DiagnosticsRecord):
        if self.records and rec.t < self.records[-1].t:
            raise ValueError("time must be non-decreasing across the series")
        self.records.append(rec)

    def column(self, name) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])

    def extras_column(self, name) -> np.ndarray:
        return np.array([r.extras.get(name, math.nan) for r in self.records])

    def finalize_total_rate(self):
        """Fill res_totR by centered differences of the tabulated truncated
        integrals (nearest interior value at the endpoints)."""
        m = len(self.records)
        if m < 3:
            for r in self.records:
                r.res_totR = 0.0
            return
        t = self.column("t")
        iR = self.extras_column("int_R")
        iRc2 = self.extras_column("int_Rc2")
        iR2 = self.extras_column("int_R2")
        for i in range(1, m - 1):
            self.records[i].res_totR = total_scalar_rate_residual(t, iR, iRc2, iR2, i)
        self.records[0].res_totR = self.records[1].res_totR
        self.records[-1].res_totR = self.records[-2].res_totR

    def to_csv(self, path):
        with open(Path(path), "w") as f:
            f.write(",".join(CSV_COLUMNS) + "\n")
            for rec in self.records:
                f.write(",".join("%.17g" % v for v in rec.row()) + "\n")

    @staticmethod
    def from_csv(path) -> "DiagnosticsSeries":
        series = DiagnosticsSeries()
        with open(Path(path)) as f:
            header = f.readline().strip().split(",")
            if tuple(header) != CSV_COLUMNS:
                raise ValueError(f"unexpected columns {header}")
            for line in f:
                vals = [float(tok) for tok in line.strip().split(",")]
                series.append(DiagnosticsRecord(*vals))
        return series


def compute_record(state: FlowState, heat: HeatField | None = None,
                   norm_spec: WeightedNormSpec | None = None,
                   probe: bool = True) -> DiagnosticsRecord:
    """One full diagnostics snapshot of a flow state.

    With probe=True a single extra RK4 step is taken (and discarded) to
    evaluate the one-step evolution residuals at this instant.
    """
    m = state.metric
    n = m.n
    g = m.grid
    curv = state.curv
    if norm_spec is None:
        norm_spec = WeightedNormSpec()

    mass = adm_mass(m)
    top_R = mass.flux_at_radius[-1][0]
    rate = float(mass_rate_flux(state, top_R))
    mu, mu_unc = asymptotic_volume_ratio(m)
    riem = fit_field_decay(m, curv.riem_norm)
    scal = fit_field_decay(m, curv.R)
    l1 = l1_scalar(m, curv)
    wkq = weighted_sobolev_norm(m, norm_spec)
    mtau = wkq.value + l1.value
    domd = abs(float(mass_density_residual(m, top_R)))

    if probe:
        dt = cfl_dt(state, 0.2)
        nxt = step(state, dt)
        scee = scalar_evolution_residual(state, nxt, dt)
        res_scee = float(np.max(np.abs(scee[8:-8])))
        res_vol = volume_rate_residual(state, nxt, dt, 0.005 * g.r_max)
    else:
        res_scee = 0.0
        res_vol = 0.0

    vol_smooth = m.a * m.beta ** (n - 1)
    area = sphere_area(n) / m.gamma_order
    extras = {
        "int_R": area * g.quad_power(curv.R * vol_smooth, n - 1),
        "int_Rc2": area * g.quad_power(curv.ricci_norm_sq(n) * vol_smooth, n - 1),
        "int_R2": area * g.quad_power(curv.R ** 2 * vol_smooth, n - 1),
        "sup_rm": float(np.max(curv.riem_norm)),
        "min_R": float(np.min(curv.R)),
        "mu_unc": mu_unc,
        "l1_tail_exp": l1.tail_exponent,
        "l1_divergent": float(l1.tail_divergent),
        "mass_exponent": mass.extrapolation_exponent,
    }
    if heat is not None:
        u_s = g.d_dr(heat.u) / m.a
        extras["sup_u"] = float(np.max(heat.u))
        extras["sup_du2"] = float(np.max(u_s ** 2))
        extras["heat_exp"] = fit_field_decay(m, heat.u).exponent

    return DiagnosticsRecord(
        t=state.time, mass=mass.extrapolated, mass_unc=mass.uncertainty,
        mass_rate=rate, mu=mu, riem_exp=riem.exponent, scalar_exp=scal.exponent,
        l1R=l1.value, wkq=wkq.value, mtau=mtau, res_scee=res_scee,
        res_vol=res_vol, res_totR=0.0, res_domd=domd, extras=extras)
