"""Run configuration: TOML schema, defaults, validation, Setup construction.

The config file is a single TOML document.  Every key is optional; defaults
reproduce the standard pulse-pumped configuration (1 mm crystal, 1 ps pump,
degenerate 1.55 eV grids, the three-level absorber at 3.1 eV).  Unknown keys
are rejected by name so typos cannot silently fall back to defaults.
"""
from __future__ import annotations

from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

import numpy as np

from .errors import ConfigurationError
from .grids import degenerate_grid_pair
from .medium import Level, MediumLevels, random_medium
from .pipeline import Setup
from .spdc import CrystalParams, PumpParams

ALIGNMENT_TOL_EV = 1e-9


def _default_sweep() -> list[float]:
    return [float(10.0**e) for e in np.arange(-2.0, 6.5, 0.5)]


@dataclass(frozen=True)
class LevelConfig:
    energy_ev: float
    dipole: float = 1.0


@dataclass(frozen=True)
class PumpConfig:
    center_energy_ev: float = 3.1
    duration_fs: float = 1000.0


@dataclass(frozen=True)
class CrystalConfig:
    length_m: float = 1e-3
    gs_ps_per_m: float = 5.2
    gi_ps_per_m: float = 5.6
    phase_reference: str = "exit"


@dataclass(frozen=True)
class GridConfig:
    center_ev: float = 1.55
    half_width_ev: float = 0.12
    points: int = 1024


@dataclass(frozen=True)
class MediumConfig:
    final_energy_ev: float = 3.1
    linewidth_ev: float = 0.0
    levels: tuple[LevelConfig, ...] = (
        LevelConfig(1.575),
        LevelConfig(1.5875),
        LevelConfig(1.5945),
    )


@dataclass(frozen=True)
class BeamConfig:
    target_photon_number: float = 1.0


@dataclass(frozen=True)
class ScanConfig:
    delay_max_fs: float = 8000.0
    delay_points: int = 1024


@dataclass(frozen=True)
class EnsembleConfig:
    length_min_m: float = 0.020
    length_max_m: float = 0.022
    count: int = 100


@dataclass(frozen=True)
class AnalysisConfig:
    window: str = "hann"
    dc_removal: bool = True
    peak_min_energy_ev: float = 0.01
    peak_rel_threshold: float = 0.2


@dataclass(frozen=True)
class SweepConfig:
    photon_numbers: tuple[float, ...] = field(
        default_factory=lambda: tuple(_default_sweep())
    )


@dataclass(frozen=True)
class RunConfig:
    pump: PumpConfig = PumpConfig()
    crystal: CrystalConfig = CrystalConfig()
    grid: GridConfig = GridConfig()
    medium: MediumConfig = MediumConfig()
    beam: BeamConfig = BeamConfig()
    scan: ScanConfig = ScanConfig()
    ensemble: EnsembleConfig = EnsembleConfig()
    analysis: AnalysisConfig = AnalysisConfig()
    sweep: SweepConfig = SweepConfig()

    def to_mapping(self) -> dict:
        """Plain nested dict echo of every resolved value (manifest payload)."""
        return {
            "pump": {
                "center_energy_ev": self.pump.center_energy_ev,
                "duration_fs": self.pump.duration_fs,
            },
            "crystal": {
                "length_m": self.crystal.length_m,
                "gs_ps_per_m": self.crystal.gs_ps_per_m,
                "gi_ps_per_m": self.crystal.gi_ps_per_m,
                "phase_reference": self.crystal.phase_reference,
            },
            "grid": {
                "center_ev": self.grid.center_ev,
                "half_width_ev": self.grid.half_width_ev,
                "points": self.grid.points,
            },
            "medium": {
                "final_energy_ev": self.medium.final_energy_ev,
                "linewidth_ev": self.medium.linewidth_ev,
                "levels": [
                    {"energy_ev": lv.energy_ev, "dipole": lv.dipole}
                    for lv in self.medium.levels
                ],
            },
            "beam": {"target_photon_number": self.beam.target_photon_number},
            "scan": {
                "delay_max_fs": self.scan.delay_max_fs,
                "delay_points": self.scan.delay_points,
            },
            "ensemble": {
                "length_min_m": self.ensemble.length_min_m,
                "length_max_m": self.ensemble.length_max_m,
                "count": self.ensemble.count,
            },
            "analysis": {
                "window": self.analysis.window,
                "dc_removal": self.analysis.dc_removal,
                "peak_min_energy_ev": self.analysis.peak_min_energy_ev,
                "peak_rel_threshold": self.analysis.peak_rel_threshold,
            },
            "sweep": {"photon_numbers": list(self.sweep.photon_numbers)},
        }


_SECTION_FIELDS = {
    "pump": PumpConfig,
    "crystal": CrystalConfig,
    "grid": GridConfig,
    "medium": MediumConfig,
    "beam": BeamConfig,
    "scan": ScanConfig,
    "ensemble": EnsembleConfig,
    "analysis": AnalysisConfig,
    "sweep": SweepConfig,
}


def _build_section(name: str, cls, data: dict):
    allowed = set(cls.__dataclass_fields__)
    unknown = set(data) - allowed
    if unknown:
        raise ConfigurationError(
            f"unknown key '{name}.{sorted(unknown)[0]}' in config"
        )
    kwargs = dict(data)
    if name == "medium" and "levels" in kwargs:
        levels = []
        for idx, raw in enumerate(kwargs["levels"]):
            if not isinstance(raw, dict):
                raise ConfigurationError("medium.levels entries must be tables")
            extra = set(raw) - {"energy_ev", "dipole"}
            if extra:
                raise ConfigurationError(
                    f"unknown key 'medium.levels[{idx}].{sorted(extra)[0]}' in config"
                )
            levels.append(LevelConfig(**raw))
        kwargs["levels"] = tuple(levels)
    if name == "sweep" and "photon_numbers" in kwargs:
        kwargs["photon_numbers"] = tuple(float(x) for x in kwargs["photon_numbers"])
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ConfigurationError(f"bad value in [{name}]: {exc}") from exc


def _validate(config: RunConfig) -> RunConfig:
    positive = [
        ("pump.center_energy_ev", config.pump.center_energy_ev),
        ("pump.duration_fs", config.pump.duration_fs),
        ("crystal.length_m", config.crystal.length_m),
        ("grid.center_ev", config.grid.center_ev),
        ("grid.half_width_ev", config.grid.half_width_ev),
        ("medium.final_energy_ev", config.medium.final_energy_ev),
        ("scan.delay_max_fs", config.scan.delay_max_fs),
        ("ensemble.length_min_m", config.ensemble.length_min_m),
        ("ensemble.length_max_m", config.ensemble.length_max_m),
    ]
    for label, value in positive:
        if value <= 0:
            raise ConfigurationError(f"{label} must be positive, got {value}")
    if config.beam.target_photon_number < 0:
        raise ConfigurationError("beam.target_photon_number must be >= 0")
    if config.medium.linewidth_ev < 0:
        raise ConfigurationError("medium.linewidth_ev must be >= 0")
    if config.grid.points < 8 or config.grid.points % 2:
        raise ConfigurationError("grid.points must be even and >= 8")
    if config.scan.delay_points < 16:
        raise ConfigurationError("scan.delay_points must be >= 16")
    if config.ensemble.count < 1:
        raise ConfigurationError("ensemble.count must be >= 1")
    if config.ensemble.count > 1 and not (
        config.ensemble.length_max_m > config.ensemble.length_min_m
    ):
        raise ConfigurationError("ensemble.length_max_m must exceed length_min_m")
    if config.analysis.window not in ("rectangular", "hann"):
        raise ConfigurationError(
            f"analysis.window must be 'rectangular' or 'hann', "
            f"got {config.analysis.window!r}"
        )
    if not 0.0 < config.analysis.peak_rel_threshold < 1.0:
        raise ConfigurationError("analysis.peak_rel_threshold must be in (0, 1)")
    if config.analysis.peak_min_energy_ev <= 0:
        raise ConfigurationError("analysis.peak_min_energy_ev must be positive")
    if config.crystal.phase_reference not in ("exit", "centered"):
        raise ConfigurationError(
            "crystal.phase_reference must be 'exit' or 'centered'"
        )
    if not config.medium.levels:
        raise ConfigurationError("medium.levels must contain at least one level")
    numbers = config.sweep.photon_numbers
    if not numbers or any(x <= 0 for x in numbers) or any(
        b <= a for a, b in zip(numbers, numbers[1:])
    ):
        raise ConfigurationError(
            "sweep.photon_numbers must be positive and strictly ascending"
        )
    # the grid pair must point at the medium's two-photon transition
    if (
        abs(2.0 * config.grid.center_ev - config.medium.final_energy_ev)
        > ALIGNMENT_TOL_EV
    ):
        raise ConfigurationError(
            f"grid alignment violated: 2 x grid.center_ev = "
            f"{2.0 * config.grid.center_ev} eV must equal "
            f"medium.final_energy_ev = {config.medium.final_energy_ev} eV"
        )
    if abs(config.pump.center_energy_ev - config.medium.final_energy_ev) > ALIGNMENT_TOL_EV:
        raise ConfigurationError(
            "pump.center_energy_ev must equal medium.final_energy_ev "
            "(degenerate two-photon resonance)"
        )
    return config


def load_config(path) -> RunConfig:
    """Parse and validate a TOML config file; an empty file yields defaults."""
    with open(path, "rb") as handle:
        try:
            raw = tomllib.load(handle)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigurationError(f"config parse error in {path}: {exc}") from exc
    return config_from_mapping(raw)


def config_from_mapping(raw: dict) -> RunConfig:
    """Build and validate a RunConfig from a nested mapping."""
    unknown = set(raw) - set(_SECTION_FIELDS)
    if unknown:
        raise ConfigurationError(f"unknown section '{sorted(unknown)[0]}' in config")
    sections = {}
    for name, cls in _SECTION_FIELDS.items():
        data = raw.get(name, {})
        if not isinstance(data, dict):
            raise ConfigurationError(f"config section [{name}] must be a table")
        sections[name] = _build_section(name, cls, data)
    return _validate(RunConfig(**sections))


def default_config() -> RunConfig:
    return _validate(RunConfig())


def to_setup(config: RunConfig, seed: int | None = None) -> Setup:
    """Materialize domain objects from a validated config.

    A seed replaces the configured intermediate levels with a seeded random
    set (robustness studies); the level count is kept.
    """
    if seed is None:
        medium = MediumLevels(
            final_energy=config.medium.final_energy_ev,
            levels=tuple(
                Level(lv.energy_ev, lv.dipole) for lv in config.medium.levels
            ),
            linewidth=config.medium.linewidth_ev,
        )
    else:
        medium = random_medium(
            seed,
            count=len(config.medium.levels),
            final_energy=config.medium.final_energy_ev,
        )
    grid_s, grid_i = degenerate_grid_pair(
        medium.two_photon_energy,
        config.grid.half_width_ev,
        config.grid.points,
        pole_energies=tuple(lv.energy for lv in medium.levels),
    )
    return Setup(
        pump=PumpParams(config.pump.center_energy_ev, config.pump.duration_fs),
        crystal=CrystalParams(
            config.crystal.length_m,
            config.crystal.gs_ps_per_m,
            config.crystal.gi_ps_per_m,
        ),
        grid_s=grid_s,
        grid_i=grid_i,
        medium=medium,
        target_photons=config.beam.target_photon_number,
        delay_points=config.scan.delay_points,
        delay_max_fs=config.scan.delay_max_fs,
        phase_reference=config.crystal.phase_reference,
    )


def ensemble_lengths(config: RunConfig) -> np.ndarray:
    """Uniform, endpoint-inclusive crystal lengths for the ensemble."""
    if config.ensemble.count == 1:
        return np.array([config.ensemble.length_min_m])
    return np.linspace(
        config.ensemble.length_min_m,
        config.ensemble.length_max_m,
        config.ensemble.count,
    )
