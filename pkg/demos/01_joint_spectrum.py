#!/usr/bin/env python3
"""Joint spectral amplitude and frequency-correlation classes.

Builds the two-photon amplitude of a 1 mm crystal for three pump durations
and reports the measured frequency correlation of each.  With a long pump
the energy-conservation ridge pins the photons to anti-correlated
frequencies; shortening the pump relaxes the sum-frequency constraint and
the correlation coefficient rises toward zero.
"""
import pathlib

import numpy as np

from twinvss import (
    CrystalParams,
    FrequencyGrid,
    PumpParams,
    build_joint_amplitude,
    correlation_coefficient,
    normalize,
)
from twinvss.svgplot import heatmap

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

crystal = CrystalParams(length=1e-3, inv_gv_signal=5.2, inv_gv_idler=5.6)
grid = FrequencyGrid(center=1.55, half_width=0.12, points=512)

print("pump duration | correlation coefficient")
print("--------------+------------------------")
for tau_p in (20.0, 110.0, 1000.0):
    pump = PumpParams(center_energy=3.1, duration=tau_p)
    amp = normalize(build_joint_amplitude(pump, crystal, grid, grid))
    corr = correlation_coefficient(amp)
    print(f"{tau_p:10.0f} fs | {corr:+.4f}")

    mags = np.abs(amp.values)
    stride = max(1, grid.points // 128)
    heatmap(
        OUT / f"joint_spectrum_{int(tau_p)}fs.svg",
        mags[::stride, ::stride].T,
        (-grid.half_width, grid.half_width),
        (-grid.half_width, grid.half_width),
        title=f"|joint amplitude|, {tau_p:.0f} fs pump",
        xlabel="signal detuning (eV)",
        ylabel="idler detuning (eV)",
    )

print(f"\nheatmaps written to {OUT}/joint_spectrum_*.svg")
print("note: with a 0.4 ps/m group-velocity difference at 1 mm the")
print("phase-matching sinc is orders of magnitude wider than the grid, so")
print("every pump duration here stays on the anti-correlated side.")
