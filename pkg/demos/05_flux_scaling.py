#!/usr/bin/env python3
"""Linear-versus-quadratic flux scaling of the absorption groups.

Sweeps the twin-beam photon number across eight decades at a fixed mode
decomposition.  The quantum group (cross-beam correlations) grows linearly
at low flux while noise and classical groups grow quadratically, so the
spectroscopically useful part dominates only below a crossover photon
number; above it the background takes over.
"""
import pathlib

import numpy as np

from twinvss import decompose, flux_sweep, normalize, build_joint_amplitude
from twinvss import CrystalParams, FrequencyGrid, PumpParams, paper_default_medium
from twinvss.svgplot import line_chart

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

pump = PumpParams(center_energy=3.1, duration=1000.0)
crystal = CrystalParams(length=1e-3, inv_gv_signal=5.2, inv_gv_idler=5.6)
grid = FrequencyGrid(1.55, 0.12, 256)
amp = normalize(build_joint_amplitude(pump, crystal, grid, grid))
decomp = decompose(amp)
medium = paper_default_medium()

targets = [float(10.0**e) for e in np.arange(-2.0, 6.5, 0.5)]
table = flux_sweep(decomp, medium, targets, n_delays=1024, t_max=8000.0)

print("     N_s        quantum     noise+classical")
print("------------+-------------+----------------")
for i, n_s in enumerate(table.photon_numbers):
    print(
        f"{n_s:11.3g} | {table.quantum[i]:.4e} | "
        f"{table.noise[i] + table.classical[i]:.4e}"
    )

print(f"\nfitted low-flux slopes: quantum {table.slope_quantum:.3f} (linear),")
print(f"noise+classical {table.slope_noise_classical:.3f} (quadratic)")
if table.crossover is not None:
    print(f"groups cross at N_s ~ {table.crossover:.3g}")
    print("(the crossover scales with the number of populated Schmidt modes")
    print(" and, with undamped level resonances on the grid, with how finely")
    print(" the kernel poles are sampled - treat it as configuration-specific)")
else:
    print("no crossover inside the swept range")

line_chart(
    OUT / "flux_scaling.svg",
    table.photon_numbers,
    [("quantum", table.quantum), ("noise+classical", table.noise + table.classical)],
    title="delay-integrated TPA groups vs photon number",
    xlabel="photon number",
    ylabel="integrated signal (arb. units)",
    logx=True,
    logy=True,
)
print(f"\nchart written to {OUT}/flux_scaling.svg")
