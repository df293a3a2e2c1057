"""Shared builders for the test suite.

Small grids keep the unit tests fast; the acceptance module owns the
full-scale configurations.
"""
from __future__ import annotations

import pytest

from twinvss import (
    CrystalParams,
    FrequencyGrid,
    PumpParams,
    build_joint_amplitude,
    build_state,
    decompose,
    gain_for_photon_number,
    mode_gains,
    normalize,
    paper_default_medium,
    spectral_functions,
)
from twinvss.pipeline import Setup


def make_amplitude(
    n=64,
    tau_p=50.0,
    length=1e-3,
    gs=5.2,
    gi=5.6,
    half_width=0.12,
    center_total=3.1,
    phase_reference="exit",
):
    pump = PumpParams(center_total, tau_p)
    crystal = CrystalParams(length, gs, gi)
    grid = FrequencyGrid(center_total / 2.0, half_width, n)
    return normalize(
        build_joint_amplitude(pump, crystal, grid, grid, phase_reference)
    )


def make_functions(n=64, tau_p=50.0, photons=1.0, **kwargs):
    amp = make_amplitude(n=n, tau_p=tau_p, **kwargs)
    decomp = decompose(amp)
    gains = mode_gains(decomp, gain_for_photon_number(decomp, photons))
    return spectral_functions(decomp, gains)


def make_setup(n=64, tau_p=50.0, photons=1.0, delay_points=64, **kwargs):
    pump = PumpParams(3.1, tau_p)
    crystal = CrystalParams(
        kwargs.get("length", 1e-3), kwargs.get("gs", 5.2), kwargs.get("gi", 5.6)
    )
    grid = FrequencyGrid(1.55, kwargs.get("half_width", 0.12), n)
    return Setup(
        pump=pump,
        crystal=crystal,
        grid_s=grid,
        grid_i=grid,
        medium=paper_default_medium(),
        target_photons=photons,
        delay_points=delay_points,
        delay_max_fs=kwargs.get("delay_max_fs", 8000.0),
        phase_reference=kwargs.get("phase_reference", "exit"),
    )


@pytest.fixture(scope="session")
def paper_medium():
    return paper_default_medium()


@pytest.fixture(scope="session")
def small_functions():
    """Spectral functions of a resolved small state (n=64, 50 fs pump)."""
    return make_functions()


@pytest.fixture(scope="session")
def small_state():
    return build_state(make_setup())
