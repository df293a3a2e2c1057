"""Two-photon spectral amplitude of a pulse-pumped parametric down-converter.

The pump is a transform-limited Gaussian pulse and the crystal dispersion is
linearized around the central frequencies with exact central phase matching,
so the phase mismatch reduces to a group-velocity walk-off term.  Absolute
field prefactors (susceptibility, pump amplitude, refractive indices, beam
area) are set to one: every quantity downstream is reported in arbitrary
units and all published observables are relative.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR_EV_FS
from .errors import ConfigurationError
from .grids import FrequencyGrid, require_aligned

NORM_TOL = 1e-10
SINC_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class PumpParams:
    """Gaussian pump pulse: central photon energy (eV) and duration (fs)."""

    center_energy: float
    duration: float

    def __post_init__(self) -> None:
        if self.center_energy <= 0:
            raise ConfigurationError("pump center_energy must be positive")
        if self.duration <= 0:
            raise ConfigurationError("pump duration must be positive")


@dataclass(frozen=True)
class CrystalParams:
    """Nonlinear crystal: length (m) and inverse group velocities (ps/m).

    The pump inverse group velocity is always the group-velocity-matched
    average (inv_gv_signal + inv_gv_idler)/2 and is not stored.
    """

    length: float
    inv_gv_signal: float
    inv_gv_idler: float

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise ConfigurationError("crystal length must be positive")


@dataclass(frozen=True)
class JointAmplitude:
    """Discretized two-photon spectral amplitude on an aligned grid pair.

    values[j, k] is the amplitude for a signal photon at grid_s node j and an
    idler photon at grid_i node k.  norm_factor holds the L2 norm removed by
    normalize(); it is 0 for a freshly built, not-yet-normalized amplitude.
    """

    grid_s: FrequencyGrid
    grid_i: FrequencyGrid
    values: np.ndarray
    norm_factor: float = 0.0
    normalized: bool = False

    def __post_init__(self) -> None:
        n = self.grid_s.points
        if self.values.shape != (n, self.grid_i.points):
            raise ConfigurationError(
                f"amplitude shape {self.values.shape} does not match grids"
            )
        self.values.setflags(write=False)


def pump_envelope(sum_detuning, pump: PumpParams):
    """Spectral envelope of the Gaussian pump at a given sum detuning.

    sum_detuning is omega_s + omega_i minus the pump central energy, in eV.
    Returns sqrt(tau_p/sqrt(2 pi)) * exp(-(tau_p/hbar)^2 * nu^2 / 4) with the
    constant pump amplitude folded into the global arbitrary-units scale.
    """
    tau = pump.duration
    nu = np.asarray(sum_detuning, dtype=float)
    peak = np.sqrt(tau / np.sqrt(2.0 * np.pi))
    out = peak * np.exp(-((tau / HBAR_EV_FS) ** 2) * nu**2 / 4.0)
    return out if out.ndim else float(out)


def phase_mismatch(detuning_s, detuning_i, crystal: CrystalParams):
    """Collinear phase mismatch of the linearized, centrally matched crystal.

    With group-velocity matching G_p = (G_s + G_i)/2, the first-order expansion
    leaves Delta k = (G_i - G_s)/2 * (nu_s - nu_i)/hbar.  Detunings in eV,
    result in rad/m.
    """
    nu_s = np.asarray(detuning_s, dtype=float)
    nu_i = np.asarray(detuning_i, dtype=float)
    # (ps/m -> s/m) * (eV -> rad/s) collapses to a factor 1e3 / (hbar in eV fs)
    coeff = 0.5 * (crystal.inv_gv_idler - crystal.inv_gv_signal) * 1e3 / HBAR_EV_FS
    out = coeff * (nu_s - nu_i)
    return out if out.ndim else float(out)


def sinc(x):
    """sin(x)/x with a series fallback below |x| = 1e-4 (sinc(0) = 1)."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    out = np.where(small, 1.0 - x**2 / 6.0, np.sin(safe) / safe)
    return out if out.ndim else float(out)


def build_joint_amplitude(
    pump: PumpParams,
    crystal: CrystalParams,
    grid_s: FrequencyGrid,
    grid_i: FrequencyGrid,
    phase_reference: str = "exit",
) -> JointAmplitude:
    """Evaluate the (unnormalized) two-photon amplitude on the grid pair.

    values[j, k] = sinc(dk L/2) * exp(-(tau_p/hbar)^2 (nu_s+nu_i)^2/4 - i dk L/2)
    with all constant prefactors set to one.

    phase_reference selects the longitudinal phase convention:

    * ``"exit"`` keeps the exp(-i dk L/2) factor (pair referenced to the
      crystal exit face); this is the default.
    * ``"centered"`` drops it, which corresponds to compensating the mean
      signal-idler walk-off (e.g. with a compensation crystal) so that traces
      from crystals of different lengths share a common delay origin.

    Raises ConfigurationError if the grids are not mutually aligned to the
    pump central energy.
    """
    if phase_reference not in ("exit", "centered"):
        raise ConfigurationError(
            f"unknown phase_reference {phase_reference!r}; use 'exit' or 'centered'"
        )
    require_aligned(grid_s, grid_i, pump.center_energy)
    nu_s = grid_s.detunings()[:, None]
    nu_i = grid_i.detunings()[None, :]
    half_phase = phase_mismatch(nu_s, nu_i, crystal) * crystal.length / 2.0
    gauss = np.exp(-((pump.duration / HBAR_EV_FS) ** 2) * (nu_s + nu_i) ** 2 / 4.0)
    values = sinc(half_phase) * gauss
    if phase_reference == "exit":
        values = values * np.exp(-1j * half_phase)
    else:
        values = values.astype(complex)
    return JointAmplitude(grid_s, grid_i, values)


def normalize(amp: JointAmplitude) -> JointAmplitude:
    """Rescale so that quadrature-weighted sum of |values|^2 equals one.

    The removed L2 norm, sqrt(dw_s dw_i sum |values|^2), is stored in
    norm_factor.  Raises ValueError for an identically zero amplitude.
    """
    weight = amp.grid_s.step * amp.grid_i.step
    norm = float(np.sqrt(weight * np.sum(np.abs(amp.values) ** 2)))
    if norm == 0.0:
        raise ValueError("cannot normalize an identically zero amplitude")
    return JointAmplitude(
        amp.grid_s, amp.grid_i, amp.values / norm, norm_factor=norm, normalized=True
    )


def correlation_coefficient(amp: JointAmplitude) -> float:
    """Pearson correlation of (nu_s, nu_i) under the weight |values|^2 dw dw.

    Negative for frequency anti-correlated pairs, near zero for separable
    ones, positive for correlated ones.  Requires a normalized amplitude;
    raises ValueError if either marginal has zero variance.
    """
    if not amp.normalized:
        raise ValueError("correlation_coefficient requires a normalized amplitude")
    p = np.abs(amp.values) ** 2 * (amp.grid_s.step * amp.grid_i.step)
    nu_s = amp.grid_s.detunings()
    nu_i = amp.grid_i.detunings()
    ps = p.sum(axis=1)
    pi = p.sum(axis=0)
    mean_s = float(ps @ nu_s)
    mean_i = float(pi @ nu_i)
    var_s = float(ps @ (nu_s - mean_s) ** 2)
    var_i = float(pi @ (nu_i - mean_i) ** 2)
    if var_s <= 0.0 or var_i <= 0.0:
        raise ValueError("correlation undefined: zero variance along a grid axis")
    cov = float((nu_s - mean_s) @ p @ (nu_i - mean_i))
    return float(cov / np.sqrt(var_s * var_i))
