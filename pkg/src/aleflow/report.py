"""Figure rendering for run outputs.

Renders a small set of matplotlib figures next to the delimited series
output: mass history, volume ratio, decay exponents, residual magnitudes,
final radial profiles, and (when a heat field was co-evolved) the heat
diagnostics.  Everything is headless (Agg) and file-based.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .curvature import curvature_of
from .diagnostics import DiagnosticsSeries
from .metric import WarpedMetric


def _save(fig, outdir: Path, name: str, written: list):
    path = outdir / name
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    written.append(path)


def render_report(series: DiagnosticsSeries, metric: WarpedMetric,
                  outdir, heat_present: bool = False) -> list:
    """Write all figures for a finished (or partial) run; returns paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    if not series.records:
        return written
    t = series.column("t")

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    mass = series.column("mass")
    unc = series.column("mass_unc")
    ax1.errorbar(t, mass, yerr=3 * unc, fmt=".-", lw=1, capsize=2)
    ax1.axhline(mass[0], color="gray", lw=0.6, ls="--")
    ax1.set_ylabel("mass")
    ax2.plot(t, series.column("mass_rate"), ".-", lw=1)
    ax2.axhline(0.0, color="gray", lw=0.6)
    ax2.set_ylabel("flux dm/dt")
    ax2.set_xlabel("t")
    fig.suptitle("mass under the flow")
    _save(fig, outdir, "mass.png", written)

    fig, ax = plt.subplots(figsize=(6, 3.5))
    mu = series.column("mu")
    ax.plot(t, mu, ".-", lw=1)
    ax.axhline(mu[0], color="gray", lw=0.6, ls="--")
    ax.set_xlabel("t")
    ax.set_ylabel("asymptotic volume ratio")
    _save(fig, outdir, "volume_ratio.png", written)

    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(t, series.column("riem_exp"), ".-", lw=1, label="|Rm| exponent")
    ax.plot(t, series.column("scalar_exp"), ".-", lw=1, label="R exponent")
    ax.set_xlabel("t")
    ax.set_ylabel("fitted decay exponent")
    ax.legend()
    _save(fig, outdir, "decay_exponents.png", written)

    fig, ax = plt.subplots(figsize=(6, 3.5))
    for col in ("res_scee", "res_vol", "res_totR", "res_domd"):
        vals = np.abs(series.column(col))
        ax.semilogy(t, np.maximum(vals, 1e-300), ".-", lw=1, label=col)
    ax.set_xlabel("t")
    ax.set_ylabel("|residual|")
    ax.legend(fontsize=8)
    _save(fig, outdir, "residuals.png", written)

    r = metric.grid.r
    curv = curvature_of(metric)
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    ax1.loglog(r, np.maximum(np.abs(metric.a - 1.0), 1e-300), lw=1, label="|a-1|")
    ax1.loglog(r, np.maximum(np.abs(metric.beta - 1.0), 1e-300), lw=1, label="|b/r-1|")
    ax1.set_ylabel("metric deviation")
    ax1.legend()
    ax2.loglog(r, np.maximum(curv.riem_norm, 1e-300), lw=1, label="|Rm|")
    ax2.loglog(r, np.maximum(np.abs(curv.R), 1e-300), lw=1, label="|R|")
    ax2.set_xlabel("r")
    ax2.set_ylabel("curvature")
    ax2.legend()
    fig.suptitle("final profiles")
    _save(fig, outdir, "profiles.png", written)

    if heat_present:
        fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
        ax1.plot(t, series.extras_column("heat_exp"), ".-", lw=1)
        ax1.set_ylabel("heat decay exponent")
        ax2.plot(t, series.extras_column("sup_du2"), ".-", lw=1)
        ax2.set_ylabel("sup |Du|^2")
        ax2.set_xlabel("t")
        fig.suptitle("heat field on the evolving background")
        _save(fig, outdir, "heat.png", written)

    return written
