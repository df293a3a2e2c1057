#!/usr/bin/env python3
"""Intermediate-level recovery by crystal-length ensemble averaging.

Averaging max-normalized absorption traces over crystals of different
lengths washes out interference features whose phases depend on the
signal-idler walk-off time, leaving the level peaks at 2*eps_k - eps_f.

Two ingredients are required for the wash to act, and this demo makes both
explicit because the nominal configuration (5.2 / 5.6 ps/m at 20-26 mm)
provides neither:

* the group-velocity difference times the length spread must move the
  relevant interference phases by well over 2*pi.  5.2 / 5.6 ps/m means
  superluminal group velocities (group index ~ 0.0016); reading the same
  digits as ps/mm gives a group index of ~1.56, a realistic crystal, and a
  walk-off spread of hundreds of fs.  This demo uses 5200 / 5600 ps/m.
* member traces must share a delay origin, i.e. the mean walk-off must be
  compensated per crystal (the 'centered' phase reference); otherwise the
  averaging itself is blurred by the length-dependent trace shift.
"""
import pathlib

import numpy as np

from twinvss import (
    CrystalParams,
    FrequencyGrid,
    PumpParams,
    Setup,
    detect_peaks,
    ensemble_average,
    paper_default_medium,
    signal_to_background,
)
from twinvss.svgplot import line_chart

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

medium = paper_default_medium()
# 250 grid points keeps each kernel resonance at least a third of a grid
# step away from the nearest node, so the three peaks keep balanced weights
setup = Setup(
    pump=PumpParams(center_energy=3.1, duration=1000.0),
    crystal=CrystalParams(length=21e-3, inv_gv_signal=5200.0, inv_gv_idler=5600.0),
    grid_s=FrequencyGrid(1.55, 0.12, 250),
    grid_i=FrequencyGrid(1.55, 0.12, 250),
    medium=medium,
    target_photons=1.0,
    delay_points=1024,
    delay_max_fs=8000.0,
    phase_reference="centered",
)
lengths = np.linspace(0.020, 0.026, 60)
print(f"averaging {len(lengths)} crystals, L in [20, 26] mm ...")
result = ensemble_average(setup, lengths)

spec = result.spectrogram
peaks = detect_peaks(spec, min_energy=0.03, rel_threshold=0.2)
print("\ndominant peaks of the averaged spectrogram (band >= 0.03 eV):")
for peak in sorted(peaks, key=lambda p: p.energy):
    print(f"  {peak.energy:.4f} eV  magnitude {peak.magnitude:.3e}")

print(f"\ntrue level mismatches: {np.round(medium.mismatch_energies(), 4)}")
tolerance = 2.0 * spec.bin_spacing
for target in medium.mismatch_energies():
    nearest = min(peaks, key=lambda p: abs(p.energy - target))
    status = "recovered" if abs(nearest.energy - target) <= tolerance else "MISSED"
    print(
        f"  {target:.3f} eV -> nearest peak {nearest.energy:.4f} eV "
        f"({status}, |offset| = {abs(nearest.energy - target):.2e} eV)"
    )

ratio = signal_to_background(spec, [p.energy for p in peaks], min_energy=0.03)
print(f"\npeak-to-background ratio: {ratio:.1f}")

line_chart(
    OUT / "ensemble_spectrogram.svg",
    spec.bin_energies,
    [("averaged", spec.magnitude)],
    title="ensemble-averaged TPA spectrogram (walk-off compensated)",
    xlabel="energy (eV)",
    ylabel="magnitude (arb. units)",
)
print(f"chart written to {OUT}/ensemble_spectrogram.svg")
