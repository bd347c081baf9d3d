"""Euclidean-coordinate view of a warped metric, and the brute-force
finite-difference curvature oracle built on top of it.

In Cartesian coordinates x with r = |x| and unit radial vector e = x/r,

    g_ij = delta_ij + A(r) e_i e_j + B(r) (delta_ij - e_i e_j),

with A = a^2 - 1 and B = (b/r)^2 - 1.  The flux integrand of the ADM mass
needs g_ij and its first derivatives; the oracle additionally builds
Christoffel symbols and the full Riemann tensor by nested central
differences of g_ij, entirely independent of the warped-product curvature
formulas it validates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundaryTooClose
from .metric import WarpedMetric


def metric_components(metric: WarpedMetric, x: np.ndarray) -> np.ndarray:
    """g_ij at the Cartesian point x (no derivatives)."""
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    a, beta, *_ = metric.profiles_at(r)
    e = x / r
    A = a * a - 1.0
    B = beta * beta - 1.0
    eye = np.eye(metric.n)
    ee = np.outer(e, e)
    return eye + A * ee + B * (eye - ee)


def to_cartesian_components(metric: WarpedMetric, direction: np.ndarray, r: float):
    """g_ij and d_k g_ij at x = r * direction, from the radial profiles.

    The derivative is analytic in the angular factors; only the radial
    profiles A, B and their first derivatives come from interpolation.
    """
    e = np.asarray(direction, dtype=float)
    e = e / np.linalg.norm(e)
    a, beta, a_r, beta_r, _, _ = metric.profiles_at(r)
    A = a * a - 1.0
    B = beta * beta - 1.0
    Ap = 2.0 * a * a_r
    Bp = 2.0 * beta * beta_r

    n = metric.n
    eye = np.eye(n)
    ee = np.outer(e, e)
    g = eye + A * ee + B * (eye - ee)

    # d_k (e_i e_j) = (delta_ki e_j + delta_kj e_i - 2 e_k e_i e_j) / r
    dee = (eye[:, :, None] * e[None, None, :]
           + np.transpose(eye[:, :, None] * e[None, None, :], (0, 2, 1))
           - 2.0 * e[:, None, None] * ee[None, :, :]) / r
    dg = ((Ap - Bp) * e[:, None, None] * ee[None, :, :]
          + Bp * e[:, None, None] * eye[None, :, :]
          + (A - B) * dee)
    return g, dg


@dataclass(frozen=True)
class PointCurvature:
    K_rad: float
    K_sph: float
    Rc_rad: float
    Rc_sph: float
    R: float
    riem_norm: float


def brute_force_curvature(metric: WarpedMetric, r: float,
                          h: float | None = None) -> PointCurvature:
    """Curvature at radius r via FD Christoffels and the full Riemann tensor.

    Two step sizes and one Richardson pass bring the truncation error to
    O(h^4); agreement with curvature_of is <1e-6 relative on smooth metrics.
    """
    if h is None:
        h = 0.01 * r
    halo = 5.0 * h
    if r - halo <= metric.grid.r_min or r + halo >= metric.grid.r_max:
        raise BoundaryTooClose(f"halo of {r} +/- {halo} exits the grid")
    coarse = _point_curvature_fd(metric, r, h)
    fine = _point_curvature_fd(metric, r, 0.5 * h)
    vals = [(4.0 * f - c) / 3.0 for c, f in zip(coarse, fine)]
    return PointCurvature(*vals)


def _christoffel_fd(metric: WarpedMetric, x: np.ndarray, h: float) -> np.ndarray:
    n = metric.n
    g = metric_components(metric, x)
    ginv = np.linalg.inv(g)
    dg = np.empty((n, n, n))
    for k in range(n):
        xp = x.copy(); xp[k] += h
        xm = x.copy(); xm[k] -= h
        dg[k] = (metric_components(metric, xp) - metric_components(metric, xm)) / (2.0 * h)
    # Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
    # dg[k, i, j] = d_k g_ij, so braces[i, j, l] below is the parenthesis
    braces = dg + dg.transpose(1, 0, 2) - dg.transpose(1, 2, 0)
    return 0.5 * np.einsum("kl,ijl->kij", ginv, braces)


def _point_curvature_fd(metric: WarpedMetric, r: float, h: float):
    n = metric.n
    x0 = np.zeros(n)
    x0[0] = r  # rotational symmetry: any direction will do

    g0 = metric_components(metric, x0)
    gam0 = _christoffel_fd(metric, x0, h)
    dgam = np.empty((n, n, n, n))
    for m in range(n):
        xp = x0.copy(); xp[m] += h
        xm = x0.copy(); xm[m] -= h
        dgam[m] = (_christoffel_fd(metric, xp, h) - _christoffel_fd(metric, xm, h)) / (2.0 * h)

    # R^l_{k mu nu} = d_mu Gamma^l_{nu k} - d_nu Gamma^l_{mu k}
    #               + Gamma^l_{mu p} Gamma^p_{nu k} - Gamma^l_{nu p} Gamma^p_{mu k}
    riem_up = (np.einsum("mlvk->lkmv", dgam) - np.einsum("vlmk->lkmv", dgam)
               + np.einsum("lmp,pvk->lkmv", gam0, gam0)
               - np.einsum("lvp,pmk->lkmv", gam0, gam0))

    riem = np.einsum("al,lkmv->akmv", g0, riem_up)
    ginv0 = np.linalg.inv(g0)
    ricci = np.einsum("lklv->kv", riem_up)
    scalar = float(np.einsum("kv,kv->", ginv0, ricci))
    riem_sq = float(np.einsum("abcd,ae,bf,cg,dh,efgh->",
                              riem, ginv0, ginv0, ginv0, ginv0, riem))

    # orthonormal radial / tangential frame at x0 = r e1
    def unit(i):
        v = np.zeros(n)
        v[i] = 1.0
        return v / np.sqrt(v @ g0 @ v)

    e_rad, e_t1, e_t2 = unit(0), unit(1), unit(2 % n)

    def sectional(u, v):
        # K = <R(u,v)v, u> with riem[a, k, mu, nu] = g_{al} R^l_{k mu nu}
        return float(np.einsum("akmv,a,k,m,v->", riem, u, v, u, v))

    K_rad = sectional(e_rad, e_t1)
    K_sph = sectional(e_t1, e_t2)
    Rc_rad = float(e_rad @ ricci @ e_rad)
    Rc_sph = float(e_t1 @ ricci @ e_t1)
    return (K_rad, K_sph, Rc_rad, Rc_sph, scalar, np.sqrt(max(riem_sq, 0.0)))
