"""Shared fixtures.

The expensive flow runs (the tau=1, q=5 bump evolved to T=0.5 on the
default grid, its one-level refinement, and the |Gamma|=2 quotient run) are
session-scoped and reused across the acceptance tests.
"""

import numpy as np
import pytest

from aleflow import diagnostics as dg
from aleflow import flow
from aleflow.grid import make_grid
from aleflow.initialdata import InitialDataSpec, build

BUMP_SPEC = InitialDataSpec(kind="conformal_bump", amplitude=0.1, tau=1.0, q=5.0)


@pytest.fixture(scope="session")
def small_grid():
    return make_grid(512, 1.0, 1.0e4)


@pytest.fixture(scope="session")
def default_grid():
    return make_grid(2048, 1.0, 2.0e4)


@pytest.fixture(scope="session")
def schwarzschild(default_grid):
    return build(InitialDataSpec(kind="schwarzschild_slice", mass_parameter=1.0),
                 default_grid)


@pytest.fixture(scope="session")
def bump(default_grid):
    return build(BUMP_SPEC, default_grid)


class RunCapture:
    """Everything the acceptance criteria need from one evolved run."""

    def __init__(self):
        self.series = dg.DiagnosticsSeries()
        self.times = []
        self.metrics = []
        self.heat_fields = []

    def observer(self, state, heat):
        self.series.append(dg.compute_record(state, heat=heat))
        self.times.append(state.time)
        self.metrics.append(state.metric)
        self.heat_fields.append(heat)


@pytest.fixture(scope="session")
def bump_run(bump):
    """The headline run: bump evolved to T=0.5 on the default grid with a
    sigma=2 heat field co-evolved; full diagnostics at ~35 sample times."""
    state = flow.initial_state(bump)
    r = bump.grid.r
    r0 = 4.0 * bump.grid.r_min
    from aleflow.initialdata import smoothstep
    chi = smoothstep(r, 2.0 * bump.grid.r_min, r0)
    u = (1.0 - chi) * r0 ** -2.0 + chi * r ** -2.0
    heat = flow.HeatField(u=u, sigma=2.0)
    cap = RunCapture()
    final, heat = flow.evolve(state, 0.5, observer=cap.observer,
                              record_every=2000, heat=heat)
    cap.series.finalize_total_rate()
    cap.final = final
    return cap


@pytest.fixture(scope="session")
def bump_run_refined():
    """One grid/time refinement level of the headline run (mass history
    only -- full diagnostics would dominate the runtime for no extra
    information)."""
    grid = make_grid(4096, 1.0, 2.0e4)
    metric = build(BUMP_SPEC, grid)
    state = flow.initial_state(metric)
    masses = []
    times = []

    def observer(st, _heat):
        masses.append(dg.adm_mass(st.metric).extrapolated)
        times.append(st.time)

    flow.evolve(state, 0.5, observer=observer, record_every=8000)
    return np.array(times), np.array(masses)


@pytest.fixture(scope="session")
def quotient_run():
    """|Gamma| = 2 flat quotient evolved to T = 1; mu history."""
    grid = make_grid(1024, 1.0, 2.0e4)
    metric = build(InitialDataSpec(kind="flat", gamma_order=2), grid)
    state = flow.initial_state(metric)
    mus = []

    def observer(st, _heat):
        mus.append(dg.asymptotic_volume_ratio(st.metric)[0])

    flow.evolve(state, 1.0, observer=observer, record_every=2000)
    return np.array(mus)
