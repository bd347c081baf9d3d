"""Run orchestration: build initial data from a config, evolve, record the
diagnostics series, and emit the file outputs (series CSV, summary JSON,
final snapshot + checkpoint, figures).  Also the refinement-study driver."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import config as cfgmod
from .diagnostics import (DiagnosticsSeries, WeightedNormSpec, adm_mass,
                          asymptotic_volume_ratio, compute_record, hawking_mass)
from .errors import AleflowError, AsymptoticsViolated, CurvatureBlowUp
from .flow import FlowControls, FlowState, HeatField, evolve, initial_state
from .grid import make_grid
from .initialdata import build, smoothstep
from .metric import read_snapshot, write_snapshot

STATUS_CODES = {"completed": 0, "blow-up": 2, "asymptotics-violated": 3}


@dataclass
class RunResult:
    status: str
    exit_code: int
    series: DiagnosticsSeries
    summary: dict
    final_state: FlowState | None
    outdir: Path | None


def setup(config: cfgmod.ExperimentConfig):
    """Grid, initial flow state, optional heat field, controls, norm spec."""
    config.validate()
    grid = make_grid(config.grid.N, config.grid.r_min, config.grid.r_max,
                     config.grid.L)
    metric = build(config.initial, grid)
    state = initial_state(metric)
    controls = FlowControls(safety=config.flow.cfl_safety,
                            blow_up_factor=config.flow.blowup_factor,
                            asym_factor=config.flow.asym_factor)
    heat = None
    if config.heat.enabled:
        # r^-sigma envelope, smoothly capped to a constant inside 4 r_min
        r = grid.r
        r0 = 4.0 * grid.r_min
        chi = smoothstep(r, 2.0 * grid.r_min, r0)
        u = (1.0 - chi) * r0 ** -config.heat.sigma + chi * r ** -config.heat.sigma
        heat = HeatField(u=u, sigma=config.heat.sigma)
    tau_w = config.diagnostics.norm_tau
    if tau_w is None:
        tau_w = metric.profile.tau - 0.25
    norm_spec = WeightedNormSpec(k=config.diagnostics.norm_k,
                                 q_exp=config.diagnostics.norm_q, tau=tau_w)
    return grid, state, heat, controls, norm_spec


def run(config: cfgmod.ExperimentConfig, outdir=None,
        write_outputs: bool = True) -> RunResult:
    """Execute one experiment; deterministic for identical configs.

    On blow-up or asymptotics loss the partial series and a failure record
    are still written, and the status / exit code reflect the cause.
    """
    _, state, heat, controls, norm_spec = setup(config)
    if outdir is None:
        outdir = Path(config.output.directory)
    else:
        outdir = Path(outdir)
    series = DiagnosticsSeries()

    def observer(st, hf):
        series.append(compute_record(st, heat=hf, norm_spec=norm_spec))

    status = "completed"
    failure = None
    t0 = time.time()
    final = state
    try:
        final, heat = evolve(state, config.flow.T_final, controls=controls,
                             observer=observer, heat=heat,
                             record_every=config.flow.record_every)
    except CurvatureBlowUp as exc:
        status, failure = "blow-up", exc
    except AsymptoticsViolated as exc:
        status, failure = "asymptotics-violated", exc
    wall = time.time() - t0
    series.finalize_total_rate()

    summary = _summarize(config, series, final, status, failure, wall)
    result = RunResult(status=status, exit_code=STATUS_CODES[status],
                       series=series, summary=summary, final_state=final,
                       outdir=outdir if write_outputs else None)
    if write_outputs:
        _write_outputs(result, config, heat)
    return result


def _summarize(config, series, final, status, failure, wall) -> dict:
    summary = {
        "status": status,
        "wall_seconds": wall,
        "config": cfgmod.emit(config),
        "records": len(series.records),
    }
    if failure is not None:
        summary["failure"] = {
            "error": type(failure).__name__,
            "message": str(failure),
            "time": getattr(failure, "time", None),
        }
    if series.records:
        mass = series.column("mass")
        summary["mass_initial"] = mass[0]
        summary["mass_drift_max"] = float(np.max(np.abs(mass - mass[0])))
        mu = series.column("mu")
        summary["mu_initial"] = mu[0]
        summary["mu_drift_max"] = float(np.max(np.abs(mu - mu[0])))
        summary["time_final"] = series.records[-1].t
        summary["max_curv"] = final.max_curv
        est = adm_mass(final.metric)
        summary["final_mass"] = {
            "flux_at_radius": [list(p) for p in est.flux_at_radius],
            "extrapolated": est.extrapolated,
            "exponent": est.extrapolation_exponent,
            "uncertainty": est.uncertainty,
        }
        # time integral of the truncated |Rc|^2 volume integral (finite-domain
        # proxy for the finiteness hypothesis on int_0^T int |Rc|^2)
        t = series.column("t")
        irc2 = series.extras_column("int_Rc2")
        summary["int_t_int_Rc2_truncated"] = float(np.trapezoid(irc2, t))
    return summary


def _write_outputs(result: RunResult, config, heat) -> None:
    outdir = result.outdir
    outdir.mkdir(parents=True, exist_ok=True)
    result.series.to_csv(outdir / "series.csv")
    (outdir / "summary.json").write_text(json.dumps(result.summary, indent=1))
    if result.final_state is not None:
        write_checkpoint(result.final_state, outdir / "final_snapshot.csv",
                         step_count=len(result.series.records))
    if config.output.figures and result.final_state is not None:
        from .report import render_report
        render_report(result.series, result.final_state.metric, outdir,
                      heat_present=heat is not None)


# -- checkpointing -----------------------------------------------------------

def write_checkpoint(state: FlowState, csv_path, step_count: int = 0) -> None:
    """Snapshot plus the scalars needed to resume bit-identically."""
    csv_path = Path(csv_path)
    write_snapshot(state.metric, csv_path, time=state.time)
    meta = {
        "t": state.time,
        "step_count": step_count,
        "K": state.max_curv,
        "sup_rm_init": state.sup_rm_init,
        "decay_weight_init": state.decay_weight_init,
    }
    csv_path.with_name(csv_path.stem + ".checkpoint.json").write_text(
        json.dumps(meta, indent=1))


def read_checkpoint(csv_path) -> FlowState:
    csv_path = Path(csv_path)
    metric, t = read_snapshot(csv_path)
    meta = json.loads(
        csv_path.with_name(csv_path.stem + ".checkpoint.json").read_text())
    fresh = initial_state(metric)
    return replace(fresh, time=meta["t"], max_curv=meta["K"],
                   sup_rm_init=meta["sup_rm_init"],
                   decay_weight_init=meta["decay_weight_init"])


# -- static diagnostics of a stored snapshot --------------------------------

def snapshot_report(csv_path) -> dict:
    """The `mass` CLI path: static diagnostics of a stored metric."""
    metric, t = read_snapshot(csv_path)
    est = adm_mass(metric)
    mu, mu_unc = asymptotic_volume_ratio(metric)
    out = {
        "time": t,
        "n": metric.n,
        "gamma_order": metric.gamma_order,
        "tau": metric.profile.tau,
        "mass": est.extrapolated,
        "mass_uncertainty": est.uncertainty,
        "flux_at_radius": [list(p) for p in est.flux_at_radius],
        "mu": mu,
        "mu_uncertainty": mu_unc,
    }
    if metric.n == 3:
        out["hawking_mass_outer"] = hawking_mass(metric, 0.5 * metric.grid.r_max)
    return out


# -- refinement studies ------------------------------------------------------

@dataclass
class RefinementStudy:
    base: cfgmod.ExperimentConfig
    levels: list          # (N, label) per level, strictly refining
    observables: tuple


def make_study(config: cfgmod.ExperimentConfig) -> RefinementStudy:
    levels = [(config.grid.N * 2 ** j, f"h/{2 ** j}")
              for j in range(config.study.refinements)]
    return RefinementStudy(base=config, levels=levels,
                           observables=tuple(config.study.observables))


_OBSERVABLES = {
    "mass_drift": lambda s: float(np.max(np.abs(s.column("mass") - s.column("mass")[0]))),
    "res_scee": lambda s: float(np.max(np.abs(s.column("res_scee")))),
    "res_vol": lambda s: float(np.max(np.abs(s.column("res_vol")))),
    "res_totR": lambda s: float(np.max(np.abs(s.column("res_totR")))),
    "res_domd": lambda s: float(np.max(np.abs(s.column("res_domd")))),
}


def refine(study: RefinementStudy, outdir=None) -> dict:
    """Run every level (N doubling per level; dt follows the parabolic limit,
    so it quarters) and report observed convergence orders via successive
    ratios.  Partial tables are returned if a level fails."""
    values = {name: [] for name in study.observables}
    statuses = []
    for N, _label in study.levels:
        cfg = replace(study.base, grid=replace(study.base.grid, N=N))
        res = run(cfg, write_outputs=False)
        statuses.append(res.status)
        for name in study.observables:
            if res.status != "completed":
                values[name].append(float("nan"))
            else:
                values[name].append(_OBSERVABLES[name](res.series))
    table = {"levels": [lbl for _, lbl in study.levels], "statuses": statuses,
             "observables": {}}
    for name, vals in values.items():
        orders = []
        for c, f in zip(vals[:-1], vals[1:]):
            if abs(c) < 1e-14 and abs(f) < 1e-14:
                orders.append("exact")
            elif f == 0.0 or not np.isfinite(c) or not np.isfinite(f):
                orders.append(float("nan"))
            else:
                orders.append(float(np.log2(abs(c) / abs(f))))
        table["observables"][name] = {"values": vals, "orders": orders}
    if outdir is not None:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "refine.json").write_text(json.dumps(table, indent=1))
        with open(outdir / "refine.csv", "w") as f:
            f.write("observable,level,value,order\n")
            for name, data in table["observables"].items():
                for i, v in enumerate(data["values"]):
                    o = data["orders"][i - 1] if i > 0 else ""
                    f.write(f"{name},{table['levels'][i]},{v!r},{o}\n")
    return table
