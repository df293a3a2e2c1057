"""Two-photon-absorption signal of delayed twin beams, in the frequency domain.

Six two-photon pathways contribute.  Two involve one beam only and carry no
delay dependence (the noise group).  The four cross-beam pathways split into
products of single-beam correlations (the classical group) and products of
cross-beam correlations (the quantum group, which carries the spectroscopic
information).  Every term is a double frequency quadrature of the medium
response against the field correlation matrices; the reflection
e_f - omega is realized by exact index reversal on the aligned grids.

Two evaluation routes exist.  The term_* functions evaluate each double sum
directly at a single delay (O(n^2) per call) and serve as the reference path
for oracle tests.  delay_scan factorizes the delay dependence: the quantum
brackets are rank-1 in the frequency pair, and the classical brackets depend
on the node indices only through j - k or j + k, so after an O(n^2)
precomputation every delay costs O(n).  Both routes share the same grids,
kernel samples, and summation conventions, and agree to near machine
precision.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR_EV_FS
from .errors import NumericalError
from .grids import require_aligned
from .medium import MediumLevels, response
from .schmidt import SpectralFunctions

REALNESS_REL_TOL = 1e-9
MIN_DELAY_POINTS = 16


@dataclass(frozen=True)
class TpaTerms:
    """The six pathway contributions at one delay (arbitrary units)."""

    ssss: complex
    iiii: complex
    sisi: complex
    isis: complex
    siis: complex
    issi: complex

    @property
    def total(self) -> complex:
        return self.ssss + self.iiii + self.sisi + self.isis + self.siis + self.issi


@dataclass(frozen=True)
class GroupedSignal:
    """Noise / classical / quantum split of the TPA signal at one delay."""

    noise: float
    classical: float
    quantum: float

    @property
    def total(self) -> float:
        return self.noise + self.classical + self.quantum


@dataclass(frozen=True)
class DelayTrace:
    """Grouped signal sampled on a uniform delay axis (fs)."""

    delays: np.ndarray
    noise: np.ndarray
    classical: np.ndarray
    quantum: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.noise + self.classical + self.quantum

    def grouped(self, index: int) -> GroupedSignal:
        return GroupedSignal(
            float(self.noise[index]),
            float(self.classical[index]),
            float(self.quantum[index]),
        )


@dataclass(frozen=True)
class FluxTable:
    """Delay-integrated groups versus photon number, with fitted slopes.

    slope_quantum and slope_noise_classical are log-log slopes fitted over
    the rows inside fit_range; crossover is the photon number where the
    quantum group equals noise + classical, interpolated in log-log between
    bracketing rows, or None when no crossing occurs in range.
    """

    photon_numbers: np.ndarray
    gains: np.ndarray
    noise: np.ndarray
    classical: np.ndarray
    quantum: np.ndarray
    slope_quantum: float
    slope_noise_classical: float
    crossover: float | None


def _check_alignment(functions: SpectralFunctions, medium: MediumLevels) -> None:
    require_aligned(
        functions.grid_s, functions.grid_i, medium.two_photon_energy
    )


def _kernels(
    functions: SpectralFunctions, medium: MediumLevels
) -> tuple[np.ndarray, np.ndarray]:
    return (
        np.asarray(response(functions.grid_s.energies(), medium)),
        np.asarray(response(functions.grid_i.energies(), medium)),
    )


def term_ssss(functions: SpectralFunctions, medium: MediumLevels) -> float:
    """Signal-beam-only pathway; real, non-negative, and delay independent."""
    _check_alignment(functions, medium)
    ks, _ = _kernels(functions, medium)
    f1s = functions.f1s
    bracket = f1s[::-1, :] * f1s[:, ::-1] + f1s[::-1, ::-1] * f1s
    dw = functions.grid_s.step
    return float(np.real(dw * dw * (ks.conj() @ bracket @ ks)))


def term_iiii(functions: SpectralFunctions, medium: MediumLevels) -> float:
    """Idler-beam-only pathway, the s <-> i mirror of term_ssss."""
    _check_alignment(functions, medium)
    _, ki = _kernels(functions, medium)
    f1i = functions.f1i
    bracket = f1i[::-1, :] * f1i[:, ::-1] + f1i[::-1, ::-1] * f1i
    dw = functions.grid_i.step
    return float(np.real(dw * dw * (ki.conj() @ bracket @ ki)))


def _cross_amplitudes(
    functions: SpectralFunctions, ks: np.ndarray, ki: np.ndarray, tau: float
) -> tuple[complex, complex]:
    """The two rank-1 amplitudes behind every quantum bracket, at one delay.

    amp_a sums the idler-grid anti-diagonal of f2 against the kernel with
    phase exp(+i nu tau/hbar); amp_b is its signal-grid partner with the
    conjugate phase.  Detuning (carrier-reduced) phases keep the oscillatory
    sums well conditioned; the dropped carriers cancel exactly inside every
    modulus and against e_f in the time-ordered cross terms.
    """
    f2 = functions.f2
    dw_i = functions.grid_i.step
    dw_s = functions.grid_s.step
    nu_i = functions.grid_i.detunings()
    nu_s = functions.grid_s.detunings()
    amp_a = dw_i * np.sum(
        ki * np.diag(f2[::-1, :]) * np.exp(1j * nu_i * tau / HBAR_EV_FS)
    )
    amp_b = dw_s * np.sum(
        ks * np.diag(f2[:, ::-1]) * np.exp(-1j * nu_s * tau / HBAR_EV_FS)
    )
    return complex(amp_a), complex(amp_b)


def _carrier_residual(functions: SpectralFunctions, medium: MediumLevels) -> float:
    return medium.two_photon_energy - (
        functions.grid_s.center + functions.grid_i.center
    )


def _sisi_parts(
    functions: SpectralFunctions, medium: MediumLevels, tau: float
) -> tuple[complex, complex]:
    """(quantum, classical) brackets of the signal-idler-signal-idler pathway."""
    _check_alignment(functions, medium)
    ks, ki = _kernels(functions, medium)
    f1s, f1i = functions.f1s, functions.f1i
    w_i = functions.grid_i.energies()
    dw = functions.grid_i.step
    amp_a, _ = _cross_amplitudes(functions, ks, ki, tau)
    quantum = amp_a * np.conj(amp_a)
    # literal delay phase exp(-i (w_j - w_k) tau / hbar), argument assembled
    # before exponentiating so roundoff matches the written formula
    phase = np.exp(-1j * (w_i[:, None] - w_i[None, :]) * tau / HBAR_EV_FS)
    classical = dw * dw * (ki.conj() @ (phase * (f1i * f1s[::-1, ::-1])) @ ki)
    return complex(quantum), complex(classical)


def _isis_parts(
    functions: SpectralFunctions, medium: MediumLevels, tau: float
) -> tuple[complex, complex]:
    """s <-> i mirror of _sisi_parts; runs on the signal grid."""
    _check_alignment(functions, medium)
    ks, ki = _kernels(functions, medium)
    f1s, f1i = functions.f1s, functions.f1i
    w_s = functions.grid_s.energies()
    dw = functions.grid_s.step
    _, amp_b = _cross_amplitudes(functions, ks, ki, tau)
    quantum = amp_b * np.conj(amp_b)
    phase = np.exp(1j * (w_s[:, None] - w_s[None, :]) * tau / HBAR_EV_FS)
    classical = dw * dw * (ks.conj() @ (phase * (f1s * f1i[::-1, ::-1])) @ ks)
    return complex(quantum), complex(classical)


def _siis_parts(
    functions: SpectralFunctions, medium: MediumLevels, tau: float
) -> tuple[complex, complex]:
    """(quantum, classical) brackets of the time-ordered cross pathway.

    Rows run over the idler grid, columns over the signal grid, with phase
    exp(i [(e_f - e_g) - (w_i + w_s)] tau / hbar).
    """
    _check_alignment(functions, medium)
    ks, ki = _kernels(functions, medium)
    f1s, f1i = functions.f1s, functions.f1i
    w_s = functions.grid_s.energies()
    w_i = functions.grid_i.energies()
    dw = functions.grid_i.step
    ef = medium.two_photon_energy
    amp_a, amp_b = _cross_amplitudes(functions, ks, ki, tau)
    resid = _carrier_residual(functions, medium)
    quantum = np.exp(1j * resid * tau / HBAR_EV_FS) * np.conj(amp_a) * amp_b
    phase = np.exp(
        1j * (ef - (w_i[:, None] + w_s[None, :])) * tau / HBAR_EV_FS
    )
    classical = dw * dw * (
        ki.conj() @ (phase * (f1s[::-1, :] * f1i[:, ::-1])) @ ks
    )
    return complex(quantum), complex(classical)


def _issi_parts(
    functions: SpectralFunctions, medium: MediumLevels, tau: float
) -> tuple[complex, complex]:
    """s <-> i mirror of _siis_parts; rows signal, columns idler."""
    _check_alignment(functions, medium)
    ks, ki = _kernels(functions, medium)
    f1s, f1i = functions.f1s, functions.f1i
    w_s = functions.grid_s.energies()
    w_i = functions.grid_i.energies()
    dw = functions.grid_s.step
    ef = medium.two_photon_energy
    amp_a, amp_b = _cross_amplitudes(functions, ks, ki, tau)
    resid = _carrier_residual(functions, medium)
    quantum = np.exp(-1j * resid * tau / HBAR_EV_FS) * amp_a * np.conj(amp_b)
    phase = np.exp(
        -1j * (ef - (w_s[:, None] + w_i[None, :])) * tau / HBAR_EV_FS
    )
    classical = dw * dw * (
        ks.conj() @ (phase * (f1i[::-1, :] * f1s[:, ::-1])) @ ki
    )
    return complex(quantum), complex(classical)


def term_sisi(functions: SpectralFunctions, medium: MediumLevels, tau: float) -> complex:
    q, c = _sisi_parts(functions, medium, tau)
    return q + c


def term_isis(functions: SpectralFunctions, medium: MediumLevels, tau: float) -> complex:
    q, c = _isis_parts(functions, medium, tau)
    return q + c


def term_siis(functions: SpectralFunctions, medium: MediumLevels, tau: float) -> complex:
    q, c = _siis_parts(functions, medium, tau)
    return q + c


def term_issi(functions: SpectralFunctions, medium: MediumLevels, tau: float) -> complex:
    q, c = _issi_parts(functions, medium, tau)
    return q + c


def tpa_terms(functions: SpectralFunctions, medium: MediumLevels, tau: float) -> TpaTerms:
    """All six pathway contributions at one delay via the reference route."""
    return TpaTerms(
        ssss=complex(term_ssss(functions, medium)),
        iiii=complex(term_iiii(functions, medium)),
        sisi=term_sisi(functions, medium, tau),
        isis=term_isis(functions, medium, tau),
        siis=term_siis(functions, medium, tau),
        issi=term_issi(functions, medium, tau),
    )


def _take_real(value: complex, scale: float, label: str) -> float:
    if abs(value.imag) > REALNESS_REL_TOL * scale:
        raise NumericalError(
            f"{label} group has imaginary residue {value.imag:.3e} "
            f"beyond {REALNESS_REL_TOL} of scale {scale:.3e}"
        )
    return value.real


def grouped_signal(
    functions: SpectralFunctions, medium: MediumLevels, tau: float
) -> GroupedSignal:
    """Noise / classical / quantum groups at one delay (reference route).

    Each group is checked to be real to within 1e-9 relative before its
    imaginary residue is discarded.
    """
    noise = complex(term_ssss(functions, medium) + term_iiii(functions, medium))
    q1, c1 = _sisi_parts(functions, medium, tau)
    q2, c2 = _isis_parts(functions, medium, tau)
    q3, c3 = _siis_parts(functions, medium, tau)
    q4, c4 = _issi_parts(functions, medium, tau)
    quantum = q1 + q2 + q3 + q4
    classical = c1 + c2 + c3 + c4
    scale = max(abs(noise), abs(classical), abs(quantum), 1e-300)
    return GroupedSignal(
        noise=_take_real(noise, scale, "noise"),
        classical=_take_real(classical, scale, "classical"),
        quantum=_take_real(quantum, scale, "quantum"),
    )


def _offset_sums(matrix: np.ndarray, antidiagonal: bool) -> np.ndarray:
    """Sum a square matrix over constant j - k (or j + k) index offsets."""
    n = matrix.shape[0]
    j = np.arange(n)
    idx = (j[:, None] + j[None, :]) if antidiagonal else (j[:, None] - j[None, :] + n - 1)
    flat = idx.ravel()
    return np.bincount(flat, matrix.real.ravel(), 2 * n - 1) + 1j * np.bincount(
        flat, matrix.imag.ravel(), 2 * n - 1
    )


def delay_scan(
    functions: SpectralFunctions,
    medium: MediumLevels,
    n_delays: int = 1024,
    t_max: float = 8000.0,
) -> DelayTrace:
    """Grouped signal on a uniform delay axis [0, t_max] via the fast route.

    Quantum brackets: the two separable amplitudes A(tau) and B(tau) cost
    O(n) per delay each, and for aligned grids the time-ordered cross term
    reduces the group to |A + B|^2 in carrier-free (detuning) variables.
    Classical brackets: the delay phase depends on the node pair only through
    j - k (same-grid pathways) or j + k (cross pathway), so the n^2 bracket
    matrices collapse to offset sums evaluated against an O(n) phase row per
    delay.  Results match grouped_signal to the realness tolerance.
    """
    if n_delays < MIN_DELAY_POINTS:
        raise ValueError(f"need at least {MIN_DELAY_POINTS} delay points")
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    _check_alignment(functions, medium)
    ks, ki = _kernels(functions, medium)
    f2, f1s, f1i = functions.f2, functions.f1s, functions.f1i
    nu_s = functions.grid_s.detunings()
    nu_i = functions.grid_i.detunings()
    dw = functions.grid_s.step
    n = functions.grid_s.points
    delays = np.linspace(0.0, t_max, n_delays)

    noise = term_ssss(functions, medium) + term_iiii(functions, medium)

    # rank-1 quantum amplitudes in carrier-free (detuning) variables; the sum
    # carrier cancels against e_f up to the grid-alignment residual
    a_vec = dw * ki * np.diag(f2[::-1, :])
    b_vec = dw * ks * np.diag(f2[:, ::-1])
    phase_i = np.exp(1j * np.outer(nu_i, delays) / HBAR_EV_FS)
    phase_s = np.exp(-1j * np.outer(nu_s, delays) / HBAR_EV_FS)
    amp_a = a_vec @ phase_i
    amp_b = b_vec @ phase_s
    carrier_resid = medium.two_photon_energy - (
        functions.grid_s.center + functions.grid_i.center
    )
    if carrier_resid == 0.0:
        quantum = np.abs(amp_a + amp_b) ** 2
    else:
        cross = np.exp(1j * carrier_resid * delays / HBAR_EV_FS)
        quantum = (
            np.abs(amp_a) ** 2
            + np.abs(amp_b) ** 2
            + 2.0 * np.real(cross * amp_a.conj() * amp_b)
        )

    # classical brackets, collapsed over index offsets
    kk_i = np.outer(ki.conj(), ki)
    kk_s = np.outer(ks.conj(), ks)
    kk_x = np.outer(ki.conj(), ks)
    h_sisi = _offset_sums(dw * dw * kk_i * (f1i * f1s[::-1, ::-1]), False)
    h_isis = _offset_sums(dw * dw * kk_s * (f1s * f1i[::-1, ::-1]), False)
    h_siis = _offset_sums(dw * dw * kk_x * (f1s[::-1, :] * f1i[:, ::-1]), True)
    offsets = np.arange(-(n - 1), n) * dw
    phase_minus = np.exp(-1j * np.outer(offsets, delays) / HBAR_EV_FS)
    cl_sisi = h_sisi @ phase_minus
    cl_isis = h_isis @ phase_minus.conj()
    # siis phase exp(i ((n-1) - (j+k)) dw tau / hbar): reindex the
    # antidiagonal sums by (n-1) - (j+k) and reuse the conjugate phase table
    cl_siis = h_siis[::-1] @ phase_minus.conj()
    classical = cl_sisi + cl_isis + 2.0 * cl_siis.real

    scale = max(abs(noise), float(np.abs(classical).max()), float(quantum.max()), 1e-300)
    resid = float(np.abs(classical.imag).max())
    if resid > REALNESS_REL_TOL * scale:
        raise NumericalError(
            f"classical group imaginary residue {resid:.3e} exceeds "
            f"{REALNESS_REL_TOL} of scale {scale:.3e}"
        )
    return DelayTrace(
        delays=delays,
        noise=np.full(n_delays, noise),
        classical=classical.real,
        quantum=quantum,
    )


def delay_integrated(trace: DelayTrace) -> GroupedSignal:
    """Trapezoidal integral of each group over the trace's delay range."""
    return GroupedSignal(
        noise=float(np.trapezoid(trace.noise, trace.delays)),
        classical=float(np.trapezoid(trace.classical, trace.delays)),
        quantum=float(np.trapezoid(trace.quantum, trace.delays)),
    )


def flux_sweep(
    decomp,
    medium: MediumLevels,
    photon_numbers,
    n_delays: int = 1024,
    t_max: float = 8000.0,
    fit_range: tuple[float, float] = (1e-2, 1.0),
    threads: int = 0,
) -> FluxTable:
    """Delay-integrated groups versus photon number on a fixed decomposition.

    For each target photon number the gain is solved, the correlation
    matrices rebuilt, and the delay scan integrated.  Sweep points are
    independent and may run on a thread pool; the output ordering follows the
    input so results are identical for any thread count.
    """
    from concurrent.futures import ThreadPoolExecutor

    from .schmidt import gain_for_photon_number, mode_gains, spectral_functions

    targets = np.asarray(photon_numbers, dtype=float)
    if targets.size == 0:
        raise ValueError("photon_numbers must be non-empty")
    if np.any(targets <= 0):
        raise ValueError("photon numbers must be positive")
    if np.any(np.diff(targets) <= 0):
        raise ValueError("photon numbers must be strictly ascending")

    def one(target: float) -> tuple[float, GroupedSignal]:
        gain = gain_for_photon_number(decomp, target)
        functions = spectral_functions(decomp, mode_gains(decomp, gain))
        integ = delay_integrated(delay_scan(functions, medium, n_delays, t_max))
        return gain, integ

    if threads == 1:
        rows = [one(t) for t in targets]
    else:
        workers = threads if threads > 0 else min(32, _cpu_count())
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, targets))

    gains = np.array([g for g, _ in rows])
    noise = np.array([r.noise for _, r in rows])
    classical = np.array([r.classical for _, r in rows])
    quantum = np.array([r.quantum for _, r in rows])

    in_fit = (targets >= fit_range[0]) & (targets <= fit_range[1])
    if np.count_nonzero(in_fit) >= 2:
        logn = np.log(targets[in_fit])
        slope_q = float(np.polyfit(logn, np.log(quantum[in_fit]), 1)[0])
        slope_nc = float(
            np.polyfit(logn, np.log(noise[in_fit] + classical[in_fit]), 1)[0]
        )
    else:
        slope_q = slope_nc = float("nan")

    crossover = _crossover(targets, quantum, noise + classical)
    return FluxTable(
        photon_numbers=targets,
        gains=gains,
        noise=noise,
        classical=classical,
        quantum=quantum,
        slope_quantum=slope_q,
        slope_noise_classical=slope_nc,
        crossover=crossover,
    )


def _crossover(
    targets: np.ndarray, quantum: np.ndarray, background: np.ndarray
) -> float | None:
    """Photon number where quantum = background, by log-log interpolation."""
    diff = np.log(quantum) - np.log(background)
    for i in range(len(diff) - 1):
        if diff[i] > 0.0 >= diff[i + 1]:
            t = diff[i] / (diff[i] - diff[i + 1])
            logn = np.log(targets[i]) + t * (np.log(targets[i + 1]) - np.log(targets[i]))
            return float(np.exp(logn))
    return None


def _cpu_count() -> int:
    import os

    return os.cpu_count() or 1
