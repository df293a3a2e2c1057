"""Unit conventions shared across the package.

Energies and angular frequencies are carried as hbar*omega in eV, times in fs,
lengths in m, inverse group velocities in ps/m.  Conversions happen once at the
point of use, never inside stored data.
"""

HBAR_EV_FS = 0.6582119569
"""Reduced Planck constant in eV*fs."""

HBAR_EV_S = HBAR_EV_FS * 1e-15
"""Reduced Planck constant in eV*s."""
