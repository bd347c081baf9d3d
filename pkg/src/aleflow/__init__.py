"""Numerical laboratory for Ricci flow of rotationally symmetric
asymptotically (locally) Euclidean metrics, with flux-mass and asymptotic
diagnostics."""

__version__ = "0.1.0"

from .curvature import CurvatureFields, curvature_of, laplacian
from .diagnostics import (DecayFit, DiagnosticsRecord, DiagnosticsSeries,
                          MassEstimate, WeightedNormSpec, adm_mass,
                          adm_mass_flux, asymptotic_volume_ratio, decay_fit,
                          hawking_mass, l1_scalar, mass_density_residual,
                          mass_rate_flux, mtau_distance, mtau_norm,
                          volume_ball, volume_rate_residual,
                          weighted_sobolev_norm)
from .errors import AleflowError
from .flow import (FlowControls, FlowState, HeatField, cfl_dt, evolve,
                   heat_step, initial_state, ricci_flow_rhs,
                   scalar_evolution_residual, step)
from .grid import RadialGrid, make_grid
from .initialdata import InitialDataSpec, build, convergent_family
from .metric import (AsymptoticProfile, QuotientStructure, WarpedMetric,
                     read_snapshot, write_snapshot)

__all__ = [name for name in dir() if not name.startswith("_")]
