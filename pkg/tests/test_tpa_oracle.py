"""Literal double-sum oracles for every TPA term.

Each oracle below is a direct loop transcription of the frequency-domain
pathway integrals, with the reflected argument e_f - e_g - omega resolved by
an explicit nearest-node search (asserted exact), an explicit conjugation on
every starred factor, and the delay phases written with absolute frequencies.
The production term_* functions must agree to 1e-12 relative on 8-point
grids; the factorized delay-scan path must agree with the production terms to
1e-10 relative on 64-point grids.
"""
import numpy as np
import pytest

from twinvss import (
    FrequencyGrid,
    Level,
    MediumLevels,
    SpectralFunctions,
    delay_scan,
    grouped_signal,
    response,
    term_iiii,
    term_isis,
    term_issi,
    term_siis,
    term_sisi,
    term_ssss,
)
from twinvss.constants import HBAR_EV_FS
from conftest import make_functions

TAUS = [0.0, 13.7, 911.3, 8000.0]

DAMPED_MEDIUM = MediumLevels(
    final_energy=3.1,
    levels=(Level(1.575, 1.0), Level(1.5875, 0.8), Level(1.5945, 1.3)),
    linewidth=0.015,
)


def reflect_index(energies, target):
    idx = int(np.argmin(np.abs(energies - target)))
    assert abs(energies[idx] - target) < 1e-9, "reflection misses the grid"
    return idx


def oracle_terms(functions, medium, tau):
    """All six pathway contributions, as literal nested sums."""
    ws = functions.grid_s.energies()
    wi = functions.grid_i.energies()
    dws = functions.grid_s.step
    dwi = functions.grid_i.step
    ks = np.asarray(response(ws, medium), dtype=complex)
    ki = np.asarray(response(wi, medium), dtype=complex)
    ef = medium.two_photon_energy
    f1s, f1i, f2 = functions.f1s, functions.f1i, functions.f2
    n = len(ws)

    rs = [reflect_index(ws, ef - wi[j]) for j in range(n)]  # idler -> signal grid
    ri = [reflect_index(wi, ef - ws[j]) for j in range(n)]  # signal -> idler grid
    rss = [reflect_index(ws, ef - ws[j]) for j in range(n)]  # within signal grid
    rii = [reflect_index(wi, ef - wi[j]) for j in range(n)]  # within idler grid

    ssss = 0.0j
    iiii = 0.0j
    sisi = 0.0j
    isis = 0.0j
    siis = 0.0j
    issi = 0.0j
    for j in range(n):
        for k in range(n):
            ssss += (
                np.conj(ks[j])
                * ks[k]
                * (
                    f1s[rss[j], k] * f1s[j, rss[k]]
                    + f1s[rss[j], rss[k]] * f1s[j, k]
                )
            )
            iiii += (
                np.conj(ki[j])
                * ki[k]
                * (
                    f1i[rii[j], k] * f1i[j, rii[k]]
                    + f1i[rii[j], rii[k]] * f1i[j, k]
                )
            )
            sisi += (
                np.conj(ki[j])
                * ki[k]
                * np.exp(-1j * (wi[j] - wi[k]) * tau / HBAR_EV_FS)
                * (
                    np.conj(f2[rs[j], j]) * f2[rs[k], k]
                    + f1i[j, k] * f1s[rs[j], rs[k]]
                )
            )
            isis += (
                np.conj(ks[j])
                * ks[k]
                * np.exp(1j * (ws[j] - ws[k]) * tau / HBAR_EV_FS)
                * (
                    np.conj(f2[j, ri[j]]) * f2[k, ri[k]]
                    + f1s[j, k] * f1i[ri[j], ri[k]]
                )
            )
            siis += (
                np.conj(ki[j])
                * ks[k]
                * np.exp(1j * (ef - (wi[j] + ws[k])) * tau / HBAR_EV_FS)
                * (
                    np.conj(f2[rs[j], j]) * f2[k, ri[k]]
                    + f1s[rs[j], k] * f1i[j, ri[k]]
                )
            )
            issi += (
                np.conj(ks[j])
                * ki[k]
                * np.exp(-1j * (ef - (ws[j] + wi[k])) * tau / HBAR_EV_FS)
                * (
                    np.conj(f2[j, ri[j]]) * f2[rs[k], k]
                    + f1i[ri[j], k] * f1s[j, rs[k]]
                )
            )
    return {
        "ssss": dws * dws * ssss,
        "iiii": dwi * dwi * iiii,
        "sisi": dwi * dwi * sisi,
        "isis": dws * dws * isis,
        "siis": dwi * dwi * siis,
        "issi": dws * dws * issi,
    }


def relative(a, b):
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def physical_functions_8():
    return make_functions(n=8, tau_p=30.0, photons=2.5)


def synthetic_functions_8():
    """Random Hermitian single-beam and random cross matrices on 8-point grids."""
    rng = np.random.default_rng(421)
    grid = FrequencyGrid(1.55, 0.12, 8)

    def hermitian():
        a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        return 0.5 * (a + a.conj().T)

    f2 = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    return SpectralFunctions(hermitian(), hermitian(), f2, grid, grid)


@pytest.mark.parametrize("tau", TAUS)
@pytest.mark.parametrize(
    "functions_builder", [physical_functions_8, synthetic_functions_8]
)
def test_terms_match_literal_oracle(functions_builder, tau):
    functions = functions_builder()
    for medium in (DAMPED_MEDIUM,):
        expected = oracle_terms(functions, medium, tau)
        assert relative(term_ssss(functions, medium), expected["ssss"]) < 1e-12
        assert relative(term_iiii(functions, medium), expected["iiii"]) < 1e-12
        assert relative(term_sisi(functions, medium, tau), expected["sisi"]) < 1e-12
        assert relative(term_isis(functions, medium, tau), expected["isis"]) < 1e-12
        assert relative(term_siis(functions, medium, tau), expected["siis"]) < 1e-12
        assert relative(term_issi(functions, medium, tau), expected["issi"]) < 1e-12


def test_terms_match_oracle_with_undamped_medium():
    functions = physical_functions_8()
    from twinvss import paper_default_medium

    medium = paper_default_medium()
    for tau in (0.0, 500.0):
        expected = oracle_terms(functions, medium, tau)
        assert relative(term_sisi(functions, medium, tau), expected["sisi"]) < 1e-12
        assert relative(term_siis(functions, medium, tau), expected["siis"]) < 1e-12
        assert relative(term_ssss(functions, medium), expected["ssss"]) < 1e-12


def test_fast_path_matches_naive_on_64_grid():
    from twinvss import paper_default_medium

    functions = make_functions(n=64, tau_p=50.0, photons=1.0)
    medium = paper_default_medium()
    trace = delay_scan(functions, medium, n_delays=64, t_max=8000.0)
    for idx in range(0, 64, 7):
        reference = grouped_signal(functions, medium, float(trace.delays[idx]))
        assert relative(trace.noise[idx], reference.noise) < 1e-10
        assert relative(trace.classical[idx], reference.classical) < 1e-10
        assert relative(trace.quantum[idx], reference.quantum) < 1e-10
