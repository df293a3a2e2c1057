"""Delay-domain traces to energy-domain spectrograms, ensembles, and peaks.

The spectrogram is a one-sided discrete Fourier transform of the total TPA
signal versus delay.  By default the delay-independent pedestal is removed
and a Hann window applied before the transform; a raw (rectangular, pedestal
kept) variant is produced alongside, since the two emphasize complementary
things: peak positions are much cleaner after pedestal removal, while the
peak-to-background contrast and its degradation with photon number live in
the raw transform.

Crystal-length ensembles normalize each member's trace by its own delay
maximum, average pointwise in the delay domain, and transform once at the
end.  Members are independent end-to-end runs; the averaging order is fixed,
so results do not depend on how many workers computed them.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .constants import HBAR_EV_FS
from .errors import NumericalError
from .tpa import MIN_DELAY_POINTS

WINDOWS = ("rectangular", "hann")
DEFAULT_PEAK_MIN_ENERGY_EV = 0.01
DEFAULT_PEAK_REL_THRESHOLD = 0.2
RATIO_CAP = 1e12


@dataclass(frozen=True)
class Spectrogram:
    """One-sided magnitude spectrum of a delay trace.

    bin_energies[k] = 2*pi*hbar*k / (M * dtau) in eV for k = 0..M/2.
    """

    bin_energies: np.ndarray
    magnitude: np.ndarray
    window: str
    dc_removed: bool

    @property
    def bin_spacing(self) -> float:
        return float(self.bin_energies[1] - self.bin_energies[0])


@dataclass(frozen=True)
class Peak:
    """Detected spectral peak, parabolically refined."""

    energy: float
    magnitude: float


@dataclass(frozen=True)
class EnsembleResult:
    """Crystal-length ensemble average and its spectrograms.

    averaged_trace is the pointwise mean of per-member max-normalized total
    traces, so its values lie in [0, 1].  spectrogram uses the requested
    analysis settings; raw_spectrogram is always the plain rectangular
    transform with the pedestal kept.
    """

    lengths: np.ndarray
    delays: np.ndarray
    averaged_trace: np.ndarray
    spectrogram: Spectrogram
    raw_spectrogram: Spectrogram


def spectrogram(
    values, delays, window: str = "hann", remove_dc: bool = True
) -> Spectrogram:
    """One-sided magnitude spectrum of a uniformly sampled delay trace."""
    values = np.asarray(values, dtype=float)
    delays = np.asarray(delays, dtype=float)
    if len(values) != len(delays) or len(values) < MIN_DELAY_POINTS:
        raise ValueError(f"need at least {MIN_DELAY_POINTS} matching samples")
    steps = np.diff(delays)
    dtau = steps[0]
    if dtau <= 0 or np.any(np.abs(steps - dtau) > 1e-9 * dtau):
        raise ValueError("delays must be uniform and increasing")
    if window not in WINDOWS:
        raise ValueError(f"window must be one of {WINDOWS}, got {window!r}")
    x = values - values.mean() if remove_dc else values
    if window == "hann":
        x = x * np.hanning(len(x))
    mags = np.abs(np.fft.rfft(x))
    energies = 2.0 * np.pi * HBAR_EV_FS * np.fft.rfftfreq(len(x), dtau)
    return Spectrogram(energies, mags, window, remove_dc)


def detect_peaks(
    spec: Spectrogram,
    min_energy: float = DEFAULT_PEAK_MIN_ENERGY_EV,
    rel_threshold: float = DEFAULT_PEAK_REL_THRESHOLD,
) -> list[Peak]:
    """Local maxima above rel_threshold of the band maximum, refined and sorted.

    The admissible band starts at min_energy (excluding the pedestal bins).
    A peak is a bin strictly greater than both neighbors; its position is
    refined by a three-point parabolic fit.  Peaks come back sorted by
    descending magnitude.
    """
    if not 0.0 < rel_threshold < 1.0:
        raise ValueError("rel_threshold must lie strictly between 0 and 1")
    energies, mags = spec.bin_energies, spec.magnitude
    band = energies >= min_energy
    if not np.any(band):
        raise ValueError(f"no bins at or above min_energy = {min_energy} eV")
    cutoff = rel_threshold * mags[band].max()
    spacing = spec.bin_spacing
    peaks = []
    for k in range(1, len(mags) - 1):
        if not band[k] or mags[k] < cutoff:
            continue
        if mags[k] > mags[k - 1] and mags[k] > mags[k + 1]:
            a, b, c = mags[k - 1], mags[k], mags[k + 1]
            shift = 0.5 * (a - c) / (a - 2.0 * b + c)
            peaks.append(Peak(energies[k] + shift * spacing, float(b)))
    return sorted(peaks, key=lambda p: -p.magnitude)


def signal_to_background(
    spec: Spectrogram,
    peak_energies,
    min_energy: float = DEFAULT_PEAK_MIN_ENERGY_EV,
) -> float:
    """Mean peak magnitude over the median magnitude of non-peak band bins.

    Dimensionless and invariant under global scaling of the trace.  A zero
    or vanishing background reports the cap 1e12.
    """
    energies, mags = spec.bin_energies, spec.magnitude
    spacing = spec.bin_spacing
    peak_bins = {int(round((e - energies[0]) / spacing)) for e in peak_energies}
    band = energies >= min_energy
    background = [
        m for k, m in enumerate(mags) if band[k] and k not in peak_bins
    ]
    peak_mags = [mags[k] for k in sorted(peak_bins) if 0 <= k < len(mags)]
    if not peak_mags:
        raise ValueError("no peaks given")
    med = float(np.median(background)) if background else 0.0
    mean_peak = float(np.mean(peak_mags))
    if med <= 0.0 or mean_peak / med > RATIO_CAP:
        return RATIO_CAP
    return mean_peak / med


def ensemble_average(
    setup,
    lengths,
    threads: int = 0,
    window: str = "hann",
    remove_dc: bool = True,
    normalization: str = "delay",
) -> EnsembleResult:
    """Average max-normalized total traces over an ensemble of crystal lengths.

    Each length runs the full chain (amplitude, Schmidt modes, gain solve at
    the setup's target photon number, delay scan).  normalization="delay"
    normalizes each member trace by its maximum over delay before pointwise
    averaging; "fourier" instead max-normalizes and averages the member
    spectrogram magnitudes (comparison mode), while the averaged trace is
    still reported in the delay domain.

    Raises NumericalError naming the offending length if any member fails.
    """
    from .pipeline import total_trace, with_crystal_length

    if normalization not in ("delay", "fourier"):
        raise ValueError("normalization must be 'delay' or 'fourier'")
    lengths = np.asarray(lengths, dtype=float)
    if lengths.size == 0:
        raise ValueError("ensemble needs at least one length")
    if np.any(np.diff(lengths) <= 0) and lengths.size > 1:
        raise ValueError("ensemble lengths must be strictly increasing")

    def member(length: float) -> tuple[np.ndarray, np.ndarray]:
        try:
            trace = total_trace(with_crystal_length(setup, length))
        except Exception as exc:
            raise NumericalError(
                f"ensemble member at crystal length {length} m failed: {exc}"
            ) from exc
        total = trace.total
        peak = total.max()
        if peak <= 0.0:
            raise NumericalError(
                f"ensemble member at crystal length {length} m has no signal"
            )
        return trace.delays, total / peak

    if threads == 1 or lengths.size == 1:
        results = [member(length) for length in lengths]
    else:
        workers = threads if threads > 0 else min(32, _cpu_count())
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(member, lengths))

    delays = results[0][0]
    traces = np.stack([t for _, t in results])
    averaged = traces.mean(axis=0)
    raw = spectrogram(averaged, delays, window="rectangular", remove_dc=False)
    if normalization == "delay":
        spec = spectrogram(averaged, delays, window=window, remove_dc=remove_dc)
    else:
        member_specs = [
            spectrogram(t, delays, window=window, remove_dc=remove_dc)
            for t in traces
        ]
        mags = np.stack([s.magnitude / s.magnitude.max() for s in member_specs])
        spec = Spectrogram(
            member_specs[0].bin_energies, mags.mean(axis=0), window, remove_dc
        )
    return EnsembleResult(lengths, delays, averaged, spec, raw)


def _cpu_count() -> int:
    import os

    return os.cpu_count() or 1
