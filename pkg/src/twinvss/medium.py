"""Level structure of the two-photon absorber and its spectral response.

The absorber is a three-level-ladder-type system: ground state, a doubly
excited final state, and a set of non-resonant intermediate levels that carry
the product of the two transition dipole moments.  Intermediate-state
dissipation is neglected by default (zero linewidth); a positive linewidth is
available as an optional regularization.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

POLE_GUARD_EV = 1e-12

PAPER_FINAL_ENERGY_EV = 3.1
PAPER_MISMATCHES_EV = (0.05, 0.075, 0.089)


@dataclass(frozen=True)
class Level:
    """One intermediate level: energy (eV) and dipole product (arb. units)."""

    energy: float
    dipole_product: float = 1.0


@dataclass(frozen=True)
class MediumLevels:
    """Absorber energies: ground, final, intermediate levels, linewidth (eV)."""

    final_energy: float
    levels: tuple[Level, ...]
    ground_energy: float = 0.0
    linewidth: float = 0.0

    def __post_init__(self) -> None:
        if self.final_energy <= self.ground_energy:
            raise ValueError("final_energy must exceed ground_energy")
        if not self.levels:
            raise ValueError("at least one intermediate level is required")
        if self.linewidth < 0:
            raise ValueError("linewidth must be non-negative")
        for lv in self.levels:
            if not self.ground_energy < lv.energy < self.final_energy:
                warnings.warn(
                    f"intermediate level at {lv.energy} eV lies outside the "
                    f"({self.ground_energy}, {self.final_energy}) eV window",
                    stacklevel=2,
                )

    @property
    def two_photon_energy(self) -> float:
        """Transition energy final - ground in eV."""
        return self.final_energy - self.ground_energy

    def mismatch_energies(self) -> tuple[float, ...]:
        """Energy mismatches 2*eps_k - (final - ground), one per level."""
        ef = self.two_photon_energy
        return tuple(2.0 * (lv.energy - self.ground_energy) - ef for lv in self.levels)


def response(omega, medium: MediumLevels):
    """Two-photon spectral response sum_k mu_fk mu_kg / (eps_k - eps_g - omega - i gamma).

    Purely real (and returned as a float array) when the linewidth is zero.
    With zero linewidth an evaluation within 1e-12 eV of a pole raises
    NumericalError; grids built through the package avoid poles by
    construction.
    """
    w = np.asarray(omega, dtype=float)
    gamma = medium.linewidth
    out = np.zeros(w.shape, dtype=float if gamma == 0.0 else complex)
    for lv in medium.levels:
        det = lv.energy - medium.ground_energy - w
        if gamma == 0.0:
            if np.any(np.abs(det) < POLE_GUARD_EV):
                raise NumericalError(
                    f"response evaluated within {POLE_GUARD_EV} eV of the pole "
                    f"at {lv.energy} eV with zero linewidth"
                )
            out = out + lv.dipole_product / det
        else:
            out = out + lv.dipole_product / (det - 1j * gamma)
    return out if out.ndim else complex(out) if gamma else float(out)


def paper_default_medium() -> MediumLevels:
    """Three-level absorber used throughout: eps_f = 3.1 eV, mismatches
    {0.05, 0.075, 0.089} eV, unit dipole products, zero linewidth."""
    ef = PAPER_FINAL_ENERGY_EV
    levels = tuple(Level((ef + m) / 2.0) for m in PAPER_MISMATCHES_EV)
    return MediumLevels(final_energy=ef, levels=levels)


def random_medium(
    seed: int,
    count: int = 3,
    final_energy: float = PAPER_FINAL_ENERGY_EV,
    mismatch_range: tuple[float, float] = (0.03, 0.1),
) -> MediumLevels:
    """Seeded random level set for robustness studies.

    Draws `count` energy mismatches uniformly from mismatch_range and places
    the levels at (final + mismatch)/2, mirroring the default construction.
    """
    rng = np.random.default_rng(seed)
    mismatches = np.sort(rng.uniform(*mismatch_range, size=count))
    levels = tuple(Level((final_energy + m) / 2.0) for m in mismatches)
    return MediumLevels(final_energy=final_energy, levels=levels)
