"""Virtual-state spectroscopy with intense twin beams.

Simulation chain: pulse-pumped parametric down-conversion builds a joint
spectral amplitude; its Schmidt decomposition and per-mode Bogoliubov gains
describe bright twin beams at any photon number; frequency-domain quadratures
give the two-photon-absorption signal of a delayed beam pair interacting with
a ladder-type absorber; delay scans, Fourier spectrograms, crystal-length
ensembles, and photon-number sweeps recover the absorber's intermediate
levels and the quantum-to-classical scaling transition.
"""

__version__ = "0.1.0"

from .constants import HBAR_EV_FS
from .errors import ConfigurationError, NumericalError
from .grids import FrequencyGrid, degenerate_grid_pair, require_aligned
from .medium import Level, MediumLevels, paper_default_medium, random_medium, response
from .pipeline import Setup, TwinBeamState, build_state, total_trace, with_crystal_length
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
    phase_mismatch,
    pump_envelope,
    sinc,
)
from .spectro import (
    EnsembleResult,
    Peak,
    Spectrogram,
    detect_peaks,
    ensemble_average,
    signal_to_background,
    spectrogram,
)
from .tpa import (
    DelayTrace,
    FluxTable,
    GroupedSignal,
    TpaTerms,
    delay_integrated,
    delay_scan,
    flux_sweep,
    grouped_signal,
    term_iiii,
    term_isis,
    term_issi,
    term_siis,
    term_sisi,
    term_ssss,
    tpa_terms,
)

__all__ = [
    "HBAR_EV_FS",
    "ConfigurationError",
    "NumericalError",
    "FrequencyGrid",
    "degenerate_grid_pair",
    "require_aligned",
    "Level",
    "MediumLevels",
    "paper_default_medium",
    "random_medium",
    "response",
    "Setup",
    "TwinBeamState",
    "build_state",
    "total_trace",
    "with_crystal_length",
    "SchmidtDecomposition",
    "SpectralFunctions",
    "TwinBeamGain",
    "decompose",
    "gain_for_photon_number",
    "mode_gains",
    "photon_number",
    "schmidt_number_uv",
    "spectral_functions",
    "CrystalParams",
    "JointAmplitude",
    "PumpParams",
    "build_joint_amplitude",
    "correlation_coefficient",
    "normalize",
    "phase_mismatch",
    "pump_envelope",
    "sinc",
    "EnsembleResult",
    "Peak",
    "Spectrogram",
    "detect_peaks",
    "ensemble_average",
    "signal_to_background",
    "spectrogram",
    "DelayTrace",
    "FluxTable",
    "GroupedSignal",
    "TpaTerms",
    "delay_integrated",
    "delay_scan",
    "flux_sweep",
    "grouped_signal",
    "term_iiii",
    "term_isis",
    "term_issi",
    "term_siis",
    "term_sisi",
    "term_ssss",
    "tpa_terms",
]
