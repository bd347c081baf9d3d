"""Experiment configuration: a small TOML schema with full round-trip.

A config file has five tables -- [initial], [grid], [flow], [diagnostics],
[output] -- plus an optional [heat] table and, for refinement studies, an
optional [study] table.  Every field has a default; `defaults()` documents
them all and the emitter writes files that parse back to equal configs.
"""

from __future__ import annotations

import sys
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .errors import ConfigError
from .initialdata import InitialDataSpec

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class GridParams:
    N: int = 2048
    r_min: float = 1.0
    r_max: float = 2.0e4
    L: float | None = None


@dataclass(frozen=True)
class FlowParams:
    T_final: float = 0.5
    cfl_safety: float = 0.2
    record_every: int = 2000
    blowup_factor: float = 1.0e3
    asym_factor: float = 10.0


@dataclass(frozen=True)
class DiagParams:
    norm_k: int = 1
    norm_q: float = 2.0
    norm_tau: float | None = None   # None: weight = profile tau - 0.25
    fit_lo_frac: float = 0.004
    fit_hi_frac: float = 0.063


@dataclass(frozen=True)
class OutputParams:
    directory: str = "out"
    figures: bool = True


@dataclass(frozen=True)
class HeatParams:
    enabled: bool = False
    sigma: float = 2.0


@dataclass(frozen=True)
class StudyParams:
    refinements: int = 3
    observables: tuple = ("mass_drift", "res_scee", "res_vol", "res_totR")


@dataclass(frozen=True)
class ExperimentConfig:
    initial: InitialDataSpec = field(default_factory=lambda: InitialDataSpec(kind="flat"))
    grid: GridParams = GridParams()
    flow: FlowParams = FlowParams()
    diagnostics: DiagParams = DiagParams()
    output: OutputParams = OutputParams()
    heat: HeatParams = HeatParams()
    study: StudyParams = StudyParams()

    def validate(self) -> None:
        if self.flow.record_every < 1:
            raise ConfigError("flow.record_every must be >= 1")
        if self.flow.T_final <= 0.0:
            raise ConfigError("flow.T_final must be positive")
        if self.grid.N < 64:
            raise ConfigError("grid.N must be >= 64")
        if self.study.refinements < 3:
            raise ConfigError("study.refinements must be >= 3")


def defaults() -> ExperimentConfig:
    return ExperimentConfig()


_SECTIONS = ("initial", "grid", "flow", "diagnostics", "output", "heat", "study")
_TYPES = {"initial": InitialDataSpec, "grid": GridParams, "flow": FlowParams,
          "diagnostics": DiagParams, "output": OutputParams, "heat": HeatParams,
          "study": StudyParams}


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, str):
        return '"%s"' % v
    if isinstance(v, float):
        return repr(v)   # shortest exact representation
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def emit(config: ExperimentConfig) -> str:
    """Serialize to TOML text; None-valued fields are omitted (defaults)."""
    lines = []
    for sec in _SECTIONS:
        lines.append(f"[{sec}]")
        for key, val in asdict(getattr(config, sec)).items():
            if val is None:
                continue
            lines.append(f"{key} = {_fmt(val)}")
        lines.append("")
    return "\n".join(lines)


def parse(text: str) -> ExperimentConfig:
    """Parse TOML text into a config; unknown sections or keys are errors."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML parse failure: {exc}") from exc
    unknown = set(raw) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    kwargs = {}
    for sec, data in raw.items():
        cls = _TYPES[sec]
        fields = cls.__dataclass_fields__
        bad = set(data) - set(fields)
        if bad:
            raise ConfigError(f"unknown keys in [{sec}]: {sorted(bad)}")
        if "observables" in data:
            data = dict(data, observables=tuple(data["observables"]))
        try:
            kwargs[sec] = cls(**data)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad [{sec}] table: {exc}") from exc
    cfg = ExperimentConfig(**kwargs)
    cfg.validate()
    return cfg


def load(path) -> ExperimentConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    return parse(path.read_text())


# -- presets -----------------------------------------------------------------

def presets() -> dict:
    """Named configurations matching the acceptance scenarios."""
    bump = InitialDataSpec(kind="conformal_bump", amplitude=0.1, tau=1.0, q=5.0)
    return {
        "flat": ExperimentConfig(
            initial=InitialDataSpec(kind="flat"),
            flow=FlowParams(T_final=1.0, record_every=5000)),
        "schwarzschild": ExperimentConfig(
            initial=InitialDataSpec(kind="schwarzschild_slice", mass_parameter=1.0)),
        "ale-quotient": ExperimentConfig(
            initial=InitialDataSpec(kind="flat", gamma_order=2),
            flow=FlowParams(T_final=1.0, record_every=5000)),
        "bump-tau1-q5": ExperimentConfig(
            initial=bump,
            heat=HeatParams(enabled=True, sigma=2.0)),
        "convergence-family": ExperimentConfig(
            initial=replace(bump, kind="convergent_family_member", family_index=0)),
    }
