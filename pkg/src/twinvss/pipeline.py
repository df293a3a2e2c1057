"""End-to-end runs: amplitude, Schmidt modes, gain solve, spectral functions.

A Setup bundles everything one run needs.  All stages are pure, so a built
TwinBeamState can be shared read-only across threads; ensemble and sweep
layers rebuild only what changes (crystal length or gain).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .grids import FrequencyGrid
from .medium import MediumLevels
from .schmidt import (
    SchmidtDecomposition,
    SpectralFunctions,
    TwinBeamGain,
    decompose,
    gain_for_photon_number,
    mode_gains,
    photon_number,
    schmidt_number_uv,
    spectral_functions,
)
from .spdc import (
    CrystalParams,
    JointAmplitude,
    PumpParams,
    build_joint_amplitude,
    correlation_coefficient,
    normalize,
)
from .tpa import DelayTrace, delay_scan


@dataclass(frozen=True)
class Setup:
    """Everything needed for one end-to-end run."""

    pump: PumpParams
    crystal: CrystalParams
    grid_s: FrequencyGrid
    grid_i: FrequencyGrid
    medium: MediumLevels
    target_photons: float
    delay_points: int = 1024
    delay_max_fs: float = 8000.0
    phase_reference: str = "exit"


@dataclass(frozen=True)
class TwinBeamState:
    """Built state of one run, up to the field correlation matrices."""

    amplitude: JointAmplitude
    decomposition: SchmidtDecomposition
    gains: TwinBeamGain
    functions: SpectralFunctions

    @property
    def photon_number(self) -> float:
        return photon_number(self.gains)

    @property
    def schmidt_number(self) -> float:
        return schmidt_number_uv(self.gains)

    @property
    def correlation(self) -> float:
        return correlation_coefficient(self.amplitude)


def build_state(setup: Setup) -> TwinBeamState:
    """Run the chain amplitude -> normalize -> Schmidt -> gain -> F matrices."""
    amp = normalize(
        build_joint_amplitude(
            setup.pump,
            setup.crystal,
            setup.grid_s,
            setup.grid_i,
            phase_reference=setup.phase_reference,
        )
    )
    decomp = decompose(amp)
    gain = gain_for_photon_number(decomp, setup.target_photons)
    gains = mode_gains(decomp, gain)
    return TwinBeamState(amp, decomp, gains, spectral_functions(decomp, gains))


def total_trace(setup: Setup) -> DelayTrace:
    """Grouped delay trace of a fresh end-to-end run."""
    state = build_state(setup)
    return delay_scan(
        state.functions, setup.medium, setup.delay_points, setup.delay_max_fs
    )


def with_crystal_length(setup: Setup, length: float) -> Setup:
    """Copy of the setup with a different crystal length."""
    return replace(setup, crystal=replace(setup.crystal, length=length))
