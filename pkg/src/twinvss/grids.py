"""Uniform frequency grids for the signal and idler fields.

The two grids used in one run must have centers summing to the two-photon
transition energy and share half-width and point count.  That alignment makes
the reflection e_total - omega land exactly on grid nodes (index reversal), so
no interpolation is needed anywhere downstream.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

ALIGNMENT_TOL_EV = 1e-9


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform, endpoint-inclusive energy grid.

    Parameters
    ----------
    center : float
        Central energy in eV.
    half_width : float
        Half span in eV; nodes cover [center - half_width, center + half_width].
    points : int
        Node count, even and at least 8.
    """

    center: float
    half_width: float
    points: int

    def __post_init__(self) -> None:
        if self.half_width <= 0:
            raise ConfigurationError("grid half_width must be positive")
        if self.points < 8 or self.points % 2 != 0:
            raise ConfigurationError(
                f"grid points must be even and >= 8, got {self.points}"
            )

    @property
    def step(self) -> float:
        """Node spacing 2W/(n-1) in eV."""
        return 2.0 * self.half_width / (self.points - 1)

    def detunings(self) -> np.ndarray:
        """Detunings from the grid center, nu[j] = -W + j*step."""
        return np.linspace(-self.half_width, self.half_width, self.points)

    def energies(self) -> np.ndarray:
        """Absolute energies center + nu in eV."""
        return self.center + self.detunings()


def require_aligned(
    grid_s: FrequencyGrid, grid_i: FrequencyGrid, total_energy: float
) -> None:
    """Check the pair-alignment invariant against a two-photon energy.

    Raises ConfigurationError unless center_s + center_i equals total_energy
    within 1e-9 eV and the grids share half_width and point count.  Under
    these conditions total_energy - omega_i[k] == omega_s[n-1-k] exactly.
    """
    if abs(grid_s.center + grid_i.center - total_energy) > ALIGNMENT_TOL_EV:
        raise ConfigurationError(
            f"grid centers {grid_s.center} + {grid_i.center} do not sum to the "
            f"two-photon energy {total_energy} within {ALIGNMENT_TOL_EV} eV"
        )
    if grid_s.half_width != grid_i.half_width or grid_s.points != grid_i.points:
        raise ConfigurationError(
            "signal and idler grids must share half_width and point count"
        )


def degenerate_grid_pair(
    total_energy: float,
    half_width: float,
    points: int,
    pole_energies: tuple[float, ...] = (),
) -> tuple[FrequencyGrid, FrequencyGrid]:
    """Build the degenerate signal/idler grid pair centered at total_energy/2.

    When pole_energies is given (medium resonances), the half width is widened
    by one part in 1e6, repeatedly if necessary, until no node coincides with
    a pole to within 1e-12 eV.
    """
    w = half_width
    for _ in range(64):
        grid = FrequencyGrid(total_energy / 2.0, w, points)
        nodes = grid.energies()
        if all(np.abs(nodes - pole).min() > 1e-12 for pole in pole_energies):
            break
        w *= 1.0 + 1e-6
    else:
        raise ConfigurationError("could not shift grid nodes off medium poles")
    grid = FrequencyGrid(total_energy / 2.0, w, points)
    return grid, grid
