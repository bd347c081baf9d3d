"""Independent oracles used by the tests.

The flux-mass oracle integrates the ADM surface integrand over the full
2-sphere with no symmetry shortcut: metric components are sampled
pointwise, derivatives come from central finite differences of the
components themselves, and the angular integral is a tensor-product
Gauss-Legendre x trapezoid rule.  Nothing here shares code with the
closed-form flux in the package.
"""

import numpy as np

from aleflow.cartesian import metric_components
from aleflow.metric import sphere_area


def fd_metric_gradient(metric, x, h):
    """d_k g_ij at the Cartesian point x by central differences."""
    n = metric.n
    dg = np.empty((n, n, n))
    for k in range(n):
        xp = x.copy(); xp[k] += h
        xm = x.copy(); xm[k] -= h
        dg[k] = (metric_components(metric, xp) - metric_components(metric, xm)) / (2.0 * h)
    return dg


def sphere_quadrature_mass(metric, R, n_theta=48, n_phi=96, h=None):
    """Brute-force ADM flux integral over the coordinate sphere (n = 3).

    m_R = (1/4 omega_n) * sum over quadrature points of
          (d_i g_ij - d_j g_ii) n_j dS, outward normal, dS = R^2 sin(theta).
    """
    assert metric.n == 3, "oracle implemented for n = 3"
    if h is None:
        h = 1e-3 * R
    nodes, weights = np.polynomial.legendre.leggauss(n_theta)  # cos(theta)
    phis = 2.0 * np.pi * np.arange(n_phi) / n_phi
    total = 0.0
    for ct, wt in zip(nodes, weights):
        st = np.sqrt(1.0 - ct * ct)
        for phi in phis:
            e = np.array([st * np.cos(phi), st * np.sin(phi), ct])
            dg = fd_metric_gradient(metric, R * e, h)
            flux = np.einsum("iij->j", dg) - np.einsum("jii->j", dg)
            total += wt * (2.0 * np.pi / n_phi) * float(np.dot(flux, e)) * R ** 2
    return total / (4.0 * sphere_area(3)) / metric.gamma_order
