"""Schmidt decomposition of the joint amplitude and twin-beam mode gains.

The decomposition is an SVD of the quadrature-weighted amplitude, so that the
mode functions are orthonormal under the same uniform-grid quadrature used
everywhere else.  Each Schmidt pair evolves independently under the parametric
interaction; its annihilation operator picks up cosh/sinh Bogoliubov
coefficients set by the product of the overall gain and the mode weight.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, NumericalError
from .grids import FrequencyGrid

GAIN_SOLVE_REL_TOL = 1e-10
DEFAULT_MODE_CUTOFF = 1e-8


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt weights and sampled mode functions of a joint amplitude.

    modes_s[:, g] and modes_i[:, g] sample the g-th signal/idler mode on the
    stored grids; columns are orthonormal under the step-weighted dot product.
    lambdas is descending and satisfies sum(lambdas**2) == 1 for a normalized
    input.
    """

    lambdas: np.ndarray
    modes_s: np.ndarray
    modes_i: np.ndarray
    grid_s: FrequencyGrid
    grid_i: FrequencyGrid

    @property
    def step_s(self) -> float:
        return self.grid_s.step

    @property
    def step_i(self) -> float:
        return self.grid_i.step

    @property
    def rank(self) -> int:
        return len(self.lambdas)

    def reconstruct(self) -> np.ndarray:
        """Sum of lambda_g * conj(f_s,g) outer conj(f_i,g) over retained modes."""
        return (self.modes_s.conj() * self.lambdas) @ self.modes_i.conj().T


@dataclass(frozen=True)
class TwinBeamGain:
    """Per-mode Bogoliubov coefficients u = cosh(gain*lambda), v = sinh(...)."""

    gain: float
    u: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class SpectralFunctions:
    """Field correlation matrices on the grid pair.

    f1s and f1i hold the single-beam (classical) correlations and are
    Hermitian; f2 holds the cross-beam (quantum) correlations with rows
    indexed by signal frequency and columns by idler frequency.  All three
    vanish at zero gain.
    """

    f1s: np.ndarray
    f1i: np.ndarray
    f2: np.ndarray
    grid_s: FrequencyGrid
    grid_i: FrequencyGrid


def decompose(
    amp, rel_threshold: float = DEFAULT_MODE_CUTOFF
) -> SchmidtDecomposition:
    """Schmidt-decompose a normalized joint amplitude.

    The SVD acts on sqrt(dw_s) * values * sqrt(dw_i); singular values become
    the Schmidt weights and the singular vectors, rescaled by 1/sqrt(dw), the
    mode samples.  Modes with lambda below rel_threshold times the leading
    weight are dropped; downstream sums run over retained modes only.
    """
    if not amp.normalized:
        raise ValueError("decompose requires a normalized amplitude")
    dw_s, dw_i = amp.grid_s.step, amp.grid_i.step
    try:
        u, s, vh = np.linalg.svd(np.sqrt(dw_s * dw_i) * amp.values)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"SVD failed on a {amp.values.shape} amplitude "
            f"(grid_s center {amp.grid_s.center}, half_width "
            f"{amp.grid_s.half_width}, points {amp.grid_s.points}): {exc}"
        ) from exc
    keep = s >= rel_threshold * s[0]
    # amplitude = sum_g s_g U[:,g] Vh[g,:] and the Schmidt form uses the
    # conjugated mode products, so f_s = conj(U)/sqrt(dw_s), f_i = conj(Vh^T)/sqrt(dw_i)
    modes_s = u[:, keep].conj() / np.sqrt(dw_s)
    modes_i = vh[keep, :].conj().T / np.sqrt(dw_i)
    return SchmidtDecomposition(s[keep], modes_s, modes_i, amp.grid_s, amp.grid_i)


def mode_gains(decomp: SchmidtDecomposition, gain: float) -> TwinBeamGain:
    """Bogoliubov coefficients at a given overall parametric gain (>= 0)."""
    if gain < 0:
        raise ValueError("gain must be non-negative")
    arg = gain * decomp.lambdas
    return TwinBeamGain(gain, np.cosh(arg), np.sinh(arg))


def photon_number(gains: TwinBeamGain) -> float:
    """Mean photon number per beam, sum of v_g^2 (equal for signal and idler)."""
    return float(np.sum(gains.v**2))


def gain_for_photon_number(decomp: SchmidtDecomposition, target: float) -> float:
    """Invert the photon-number curve: find gain with sum sinh^2 = target.

    N(gain) is strictly increasing, so a bracketed bisection converges to the
    requested 1e-10 relative tolerance on the photon number.
    """
    if target < 0:
        raise ValueError("target photon number must be non-negative")
    if target == 0:
        return 0.0
    lam = decomp.lambdas

    def n_of(g: float) -> float:
        return float(np.sum(np.sinh(g * lam) ** 2))

    hi = 1.0
    while n_of(hi) < target:
        hi *= 2.0
        if hi > 1e6:
            raise NumericalError("gain bracket expansion failed")
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if n_of(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(hi, 1.0):
            break
    gain = 0.5 * (lo + hi)
    if abs(n_of(gain) - target) > GAIN_SOLVE_REL_TOL * target:
        raise NumericalError(
            f"gain solve did not reach relative tolerance for target {target}"
        )
    return gain


def schmidt_number_uv(gains: TwinBeamGain) -> float:
    """Effective number of populated mode pairs, (sum u v)^2 / sum u^2 v^2."""
    uv = gains.u * gains.v
    denom = float(np.sum(uv**2))
    if denom == 0.0:
        raise ValueError("Schmidt number undefined for the vacuum (all v = 0)")
    return float(np.sum(uv)) ** 2 / denom


def spectral_functions(
    decomp: SchmidtDecomposition, gains: TwinBeamGain
) -> SpectralFunctions:
    """Assemble the classical (f1s, f1i) and quantum (f2) correlation matrices.

    f1j(w, w') = sum_g sqrt(w w') conj(f_j,g(w)) f_j,g(w') v_g^2
    f2(w, w')  = sum_g sqrt(w w') f_s,g(w) f_i,g(w') v_g u_g

    with w the absolute energies of the grids, which must be strictly
    positive.  Summation order over modes is fixed (ascending g) so results
    do not depend on worker count.
    """
    w_s = decomp.grid_s.energies()
    w_i = decomp.grid_i.energies()
    if w_s.min() <= 0 or w_i.min() <= 0:
        raise ConfigurationError(
            "spectral functions need strictly positive absolute energies"
        )
    root_s = np.sqrt(w_s)
    root_i = np.sqrt(w_i)
    v2 = gains.v**2
    uv = gains.u * gains.v
    f1s = (root_s[:, None] * root_s[None, :]) * (
        (decomp.modes_s.conj() * v2) @ decomp.modes_s.T
    )
    f1i = (root_i[:, None] * root_i[None, :]) * (
        (decomp.modes_i.conj() * v2) @ decomp.modes_i.T
    )
    f2 = (root_s[:, None] * root_i[None, :]) * (
        (decomp.modes_s * uv) @ decomp.modes_i.T
    )
    return SpectralFunctions(f1s, f1i, f2, decomp.grid_s, decomp.grid_i)
