"""Spectrogram transform, peak detection, and ensemble averaging."""
import numpy as np
import pytest

from twinvss import (
    HBAR_EV_FS,
    NumericalError,
    Spectrogram,
    detect_peaks,
    ensemble_average,
    signal_to_background,
    spectrogram,
)
from conftest import make_setup


def tone_trace(energies_amplitudes, n=1024, period=8000.0):
    """Synthetic delay trace: sum of cosines sampled on an exact DFT period."""
    delays = np.arange(n) * (period / n)
    values = np.zeros(n)
    for energy, amplitude in energies_amplitudes:
        values += amplitude * np.cos(energy * delays / HBAR_EV_FS)
    return values, delays


class TestSpectrogram:
    def test_constant_trace_is_dc_only(self):
        delays = np.linspace(0.0, 8000.0, 256)
        spec = spectrogram(np.full(256, 42.0), delays)
        assert np.all(spec.magnitude[1:] <= 1e-12 * 42.0 * 256)

    def test_single_tone_lands_on_its_bin(self):
        values, delays = tone_trace([(0.05, 1.0)])
        spec = spectrogram(values, delays)
        # exact-period sampling: spacing is 2 pi hbar / 8000 fs
        assert spec.bin_spacing == pytest.approx(
            2.0 * np.pi * HBAR_EV_FS / 8000.0, rel=1e-12
        )
        assert spec.bin_spacing == pytest.approx(5.1695e-4, abs=1e-7)
        top = spec.bin_energies[np.argmax(spec.magnitude)]
        assert abs(top - 0.05) <= spec.bin_spacing

    def test_parseval(self):
        rng = np.random.default_rng(11)
        values = rng.standard_normal(512)
        delays = np.arange(512) * 10.0
        spec = spectrogram(values, delays, window="hann", remove_dc=False)
        windowed = values * np.hanning(512)
        spectrum_energy = (
            spec.magnitude[0] ** 2
            + spec.magnitude[-1] ** 2
            + 2.0 * np.sum(spec.magnitude[1:-1] ** 2)
        ) / 512.0
        assert spectrum_energy == pytest.approx(
            float(np.sum(windowed**2)), rel=1e-9
        )

    def test_rejects_nonuniform_delays(self):
        delays = np.linspace(0.0, 100.0, 64)
        delays[10] += 1.0
        with pytest.raises(ValueError):
            spectrogram(np.zeros(64), delays)

    def test_rejects_unknown_window(self):
        delays = np.linspace(0.0, 100.0, 64)
        with pytest.raises(ValueError):
            spectrogram(np.zeros(64), delays, window="hamming")


class TestDetectPeaks:
    def test_two_tone_recovery_within_half_bin(self):
        values, delays = tone_trace([(0.05, 1.0), (0.089, 0.7)])
        spec = spectrogram(values, delays)
        peaks = detect_peaks(spec)
        assert len(peaks) == 2
        found = sorted(p.energy for p in peaks)
        assert abs(found[0] - 0.05) < 0.5 * spec.bin_spacing
        assert abs(found[1] - 0.089) < 0.5 * spec.bin_spacing

    def test_flat_spectrum_has_no_peaks(self):
        energies = np.linspace(0.0, 0.25, 512)
        spec = Spectrogram(energies, np.ones(512), "hann", True)
        assert detect_peaks(spec) == []

    def test_sorted_by_magnitude(self):
        values, delays = tone_trace([(0.05, 0.6), (0.1, 1.0)])
        peaks = detect_peaks(spectrogram(values, delays))
        assert peaks[0].magnitude >= peaks[1].magnitude
        assert abs(peaks[0].energy - 0.1) < 1e-3

    def test_threshold_validation(self):
        values, delays = tone_trace([(0.05, 1.0)])
        spec = spectrogram(values, delays)
        with pytest.raises(ValueError):
            detect_peaks(spec, rel_threshold=0.0)
        with pytest.raises(ValueError):
            detect_peaks(spec, min_energy=1.0)


class TestSignalToBackground:
    def test_pure_tone_hits_cap(self):
        # tone placed exactly on DFT bin 97 so every other bin is roundoff
        energy = 97 * 2.0 * np.pi * HBAR_EV_FS / 8000.0
        values, delays = tone_trace([(energy, 1.0)], n=256, period=8000.0)
        spec = spectrogram(values, delays, window="rectangular", remove_dc=True)
        ratio = signal_to_background(spec, [energy])
        assert ratio == 1e12

    def test_invariant_under_scaling(self):
        values, delays = tone_trace([(0.05, 1.0), (0.089, 0.4)])
        rng = np.random.default_rng(5)
        values = values + 0.01 * rng.standard_normal(len(values))
        spec_a = spectrogram(values, delays)
        spec_b = spectrogram(3.7 * values, delays)
        peaks = [p.energy for p in detect_peaks(spec_a)]
        assert signal_to_background(spec_a, peaks) == pytest.approx(
            signal_to_background(spec_b, peaks), rel=1e-12
        )

    def test_requires_peaks(self):
        values, delays = tone_trace([(0.05, 1.0)])
        spec = spectrogram(values, delays)
        with pytest.raises(ValueError):
            signal_to_background(spec, [])


class TestEnsembleAverage:
    def test_single_member_is_its_normalized_trace(self):
        from twinvss import total_trace

        setup = make_setup(n=64, tau_p=50.0, delay_points=64)
        result = ensemble_average(setup, [1e-3])
        trace = total_trace(setup)
        expected = trace.total / trace.total.max()
        assert np.allclose(result.averaged_trace, expected, rtol=1e-14)
        assert result.averaged_trace.max() == pytest.approx(1.0, rel=1e-12)

    def test_averaged_trace_within_unit_interval(self):
        setup = make_setup(n=64, tau_p=50.0, delay_points=64)
        result = ensemble_average(setup, np.linspace(1e-3, 1.2e-3, 4))
        assert result.averaged_trace.min() >= 0.0
        assert result.averaged_trace.max() <= 1.0 + 1e-12

    def test_member_failure_names_length(self):
        setup = make_setup(n=64, tau_p=50.0, delay_points=64)
        with pytest.raises(NumericalError, match="-0.001"):
            ensemble_average(setup, [-0.001])

    def test_raw_spectrogram_always_attached(self):
        setup = make_setup(n=64, tau_p=50.0, delay_points=64)
        result = ensemble_average(setup, [1e-3, 1.1e-3])
        assert result.raw_spectrogram.window == "rectangular"
        assert not result.raw_spectrogram.dc_removed
        assert result.spectrogram.window == "hann"

    def test_fourier_normalization_mode(self):
        setup = make_setup(n=64, tau_p=50.0, delay_points=64)
        result = ensemble_average(
            setup, [1e-3, 1.1e-3], normalization="fourier"
        )
        assert result.spectrogram.magnitude.max() <= 1.0 + 1e-12

    def test_transform_of_average_is_average_of_transforms(self):
        # DFT linearity: averaging normalized traces then transforming equals
        # averaging the members' complex transforms
        setup = make_setup(n=64, tau_p=50.0, delay_points=64)
        from twinvss import total_trace, with_crystal_length

        lengths = np.linspace(1e-3, 1.3e-3, 4)
        traces = []
        for length in lengths:
            t = total_trace(with_crystal_length(setup, length))
            traces.append(t.total / t.total.max())
        mean_then_fft = np.fft.rfft(np.mean(traces, axis=0))
        fft_then_mean = np.mean([np.fft.rfft(t) for t in traces], axis=0)
        assert np.allclose(mean_then_fft, fft_then_mean, rtol=1e-10, atol=1e-12)


@pytest.fixture(scope="module")
def smoke_setup():
    return make_setup(n=256, tau_p=1000.0, photons=1.0, delay_points=1024)


@pytest.fixture(scope="module")
def lengths():
    return np.linspace(0.020, 0.022, 8)


class TestPaperEnsembleStability:
    """Window choice and delay-sampling refinement must not move the peaks."""

    def _top_peaks(self, spec, count=3):
        return sorted(p.energy for p in detect_peaks(spec)[:count])

    def test_window_independence_of_peak_positions(self, smoke_setup, lengths):
        hann = ensemble_average(smoke_setup, lengths, window="hann")
        rect = ensemble_average(smoke_setup, lengths, window="rectangular")
        spacing = hann.spectrogram.bin_spacing
        for e_h, e_r in zip(
            self._top_peaks(hann.spectrogram), self._top_peaks(rect.spectrogram)
        ):
            assert abs(e_h - e_r) < spacing

    def test_peak_stability_under_delay_refinement(self, smoke_setup, lengths):
        import dataclasses

        coarse = ensemble_average(smoke_setup, lengths)
        fine_setup = dataclasses.replace(smoke_setup, delay_points=2048)
        fine = ensemble_average(fine_setup, lengths)
        spacing = coarse.spectrogram.bin_spacing
        for e_c, e_f in zip(
            self._top_peaks(coarse.spectrogram), self._top_peaks(fine.spectrogram)
        ):
            assert abs(e_c - e_f) < spacing
