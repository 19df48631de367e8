"""Standing-wave mode statistics for a relativistic particle in a box:
mode counting, the single-mode partition function, Planck's spectral energy
density and the non-thermal mode density behind the virtual-pair picture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .constants import CODATA


class ModeCountOverflowError(RuntimeError):
    """Brute-force mode count would exceed the configured maximum."""


@dataclass(frozen=True)
class ThermalState:
    """Equilibrium temperature with its inverse energy beta = 1/(kT).

    The chemical potential is fixed to zero throughout: photon number is not
    conserved, so the grand-canonical and canonical descriptions coincide.
    """

    temperature_k: float
    beta_per_j: float = 0.0

    def __post_init__(self) -> None:
        if not self.temperature_k > 0:
            raise ValueError("temperature_k must be > 0")
        kt = CODATA.k_boltzmann_j_per_k * self.temperature_k
        if self.beta_per_j == 0.0:
            object.__setattr__(self, "beta_per_j", 1.0 / kt)
        elif abs(self.beta_per_j * kt - 1.0) > 1e-12:
            raise ValueError("beta_per_j inconsistent with temperature_k")

    def hw_over_kt(self, omega_rad_per_s: float) -> float:
        """Dimensionless mode energy hbar*omega/(kT)."""
        return CODATA.hbar_j_s * omega_rad_per_s * self.beta_per_j


@dataclass(frozen=True)
class ModeDensityPoint:
    """(momentum, modes per unit momentum per unit volume) sample."""

    momentum_kg_m_s: float
    density: float

    def __post_init__(self) -> None:
        if self.density < 0 or (self.density == 0) != (self.momentum_kg_m_s == 0):
            raise ValueError("density must be positive except exactly at p=0")


@dataclass(frozen=True)
class SpectralSample:
    """(abscissa, spectral energy density) sample of a Planck-type curve."""

    abscissa: float
    value: float
    includes_zero_point: bool

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("spectral density must be >= 0")


def dispersion_energy(mass_energy_mev: float, pc_mev: float) -> float:
    """Relativistic energy sqrt((mc^2)^2 + (pc)^2) in MeV."""
    if mass_energy_mev < 0 or pc_mev < 0:
        raise ValueError("mass_energy_mev and pc_mev must be >= 0")
    return math.hypot(mass_energy_mev, pc_mev)


def mode_density(p_kg_m_s: float) -> float:
    """Mode density 4*pi*p^2/h^3 per unit momentum per unit volume."""
    if p_kg_m_s < 0:
        raise ValueError("momentum must be >= 0")
    return 4.0 * math.pi * p_kg_m_s**2 / CODATA.h_j_s**3


def vacuum_density(p_kg_m_s: float) -> float:
    """Density of virtual fluctuations per unit momentum per unit volume.

    Numerically identical to ``mode_density``: the 1/2 zero-point factor is
    compensated by the g=2 degeneracy.  Kept as a separate named operation
    for semantic clarity.
    """
    return mode_density(p_kg_m_s)


def _lattice_radii(
    box_lengths_m: tuple[float, float, float],
    energy_max_mev: float,
    mass_energy_mev: float,
    spacing_factor: float,
) -> tuple[float, float, float]:
    if any(length <= 0 for length in box_lengths_m):
        raise ValueError("box lengths must be > 0")
    if energy_max_mev < mass_energy_mev:
        raise ValueError("energy_max_mev must be >= mass_energy_mev")
    pc_max = math.sqrt(energy_max_mev**2 - mass_energy_mev**2)
    # Momentum per lattice step along axis i: h*c/(spacing_factor*L_i) in MeV.
    return tuple(
        pc_max * (spacing_factor * length) / CODATA.h_c_mev_m
        for length in box_lengths_m
    )


def _count_octant(radii: tuple[float, float, float]) -> int:
    rx, ry, rz = radii
    count = 0
    for lx in range(int(rx) + 1):
        rem = 1.0 - (lx / rx) ** 2
        if rem < 0:
            break
        ly = np.arange(0, int(ry * math.sqrt(rem)) + 1)
        rem2 = rem - (ly / ry) ** 2
        rem2[rem2 < 0] = 0.0
        count += int(np.sum(np.floor(rz * np.sqrt(rem2))) + ly.size)
    return count


def count_box_modes(
    box_lengths_m: tuple[float, float, float],
    energy_max_mev: float,
    mass_energy_mev: float = 0.0,
    *,
    max_count: int = 50_000_000,
) -> int:
    """Exact count of box modes with energy at most ``energy_max_mev``.

    Modes are non-negative integer triples (l_x, l_y, l_z) under the
    half-wavelength standing-wave condition p_i = h*l_i/(2*L_i); the all-zero
    triple is excluded.  Triples with some zero components are counted: they
    are the (1,0,0)-type lowest modes, and the continuum comparison absorbs
    the resulting O(1/R) boundary layer.

    Raises ``ModeCountOverflowError`` when the continuum estimate exceeds
    ``max_count``.
    """
    radii = _lattice_radii(box_lengths_m, energy_max_mev, mass_energy_mev, 2.0)
    estimate = math.pi / 6.0 * radii[0] * radii[1] * radii[2]
    if estimate > max_count:
        raise ModeCountOverflowError(
            f"estimated {estimate:.3g} modes exceeds max_count={max_count}"
        )
    return _count_octant(radii) - 1  # drop the origin


def count_box_modes_periodic(
    box_lengths_m: tuple[float, float, float],
    energy_max_mev: float,
    mass_energy_mev: float = 0.0,
    *,
    max_count: int = 50_000_000,
) -> int:
    """Mode count under periodic boundaries psi(0)=psi(L).

    Signed integer triples with full-wavelength multiples, p_i = h*l_i/L_i;
    the (2)^3 denser momentum lattice over the full sphere is numerically
    equal to the octant count above.  Cross-check variant.
    """
    radii = _lattice_radii(box_lengths_m, energy_max_mev, mass_energy_mev, 1.0)
    rx, ry, rz = radii
    estimate = 4.0 * math.pi / 3.0 * rx * ry * rz
    if estimate > max_count:
        raise ModeCountOverflowError(
            f"estimated {estimate:.3g} modes exceeds max_count={max_count}"
        )
    count = 0
    for lx in range(-int(rx), int(rx) + 1):
        rem = 1.0 - (lx / rx) ** 2
        if rem < 0:
            continue
        ly = np.arange(-int(ry * math.sqrt(rem)), int(ry * math.sqrt(rem)) + 1)
        rem2 = rem - (ly / ry) ** 2
        rem2[rem2 < 0] = 0.0
        count += int(np.sum(2.0 * np.floor(rz * np.sqrt(rem2))) + ly.size)
    return count - 1


def mode_energy(omega_rad_per_s: float, n: int) -> float:
    """Oscillator level energy hbar*omega*(n + 1/2) in joules."""
    if omega_rad_per_s <= 0:
        raise ValueError("omega must be > 0")
    if n < 0:
        raise ValueError("n must be >= 0")
    return CODATA.hbar_j_s * omega_rad_per_s * (n + 0.5)


def partition_function(omega_rad_per_s: float, state: ThermalState) -> float:
    """Single-mode partition function e^(-x/2)/(1 - e^(-x)), x = hw/kT."""
    x = state.hw_over_kt(omega_rad_per_s)
    return math.exp(-0.5 * x) / -math.expm1(-x)


def state_probability(omega_rad_per_s: float, n: int, state: ThermalState) -> float:
    """Occupation probability p(n) = e^(-n x) * (1 - e^(-x)).

    The zero-point offset cancels between numerator and partition function,
    so the probability does not contain it.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    x = state.hw_over_kt(omega_rad_per_s)
    return math.exp(-n * x) * -math.expm1(-x)


def _occupation_from_x(x: float) -> float:
    if x <= 0:
        raise ValueError("hbar*omega/(kT) must be > 0")
    if x > 700.0:  # expm1 overflows past ~709; Wien tail is exact e^-x there
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def mean_occupation(omega_rad_per_s: float, state: ThermalState) -> float:
    """Bose-Einstein mean quantum number 1/(e^(hw/kT) - 1) at mu = 0."""
    return _occupation_from_x(state.hw_over_kt(omega_rad_per_s))


def mean_energy(omega_rad_per_s: float, state: ThermalState) -> float:
    """Mean mode energy hbar*omega*(1/2 + <n>) in joules.

    Equals -d(log Z)/d(beta), which the tests verify by finite differences.
    """
    x = state.hw_over_kt(omega_rad_per_s)
    return CODATA.hbar_j_s * omega_rad_per_s * (0.5 + _occupation_from_x(x))


def planck_energy_density(
    p_kg_m_s: float,
    state: ThermalState,
    include_zero_point: bool = True,
) -> float:
    """Planck's law w(p) = 2 * (4 pi p^2/h^3) * pc * (1/2 + <n>).

    Photon dispersion epsilon = p*c and polarisation degeneracy g = 2.
    With ``include_zero_point`` false only the thermal part remains.
    """
    if p_kg_m_s < 0:
        raise ValueError("momentum must be >= 0")
    if p_kg_m_s == 0:
        return 0.0
    epsilon_j = p_kg_m_s * CODATA.c_m_per_s
    occupancy = _occupation_from_x(epsilon_j * state.beta_per_j)
    if include_zero_point:
        occupancy += 0.5
    return 2.0 * mode_density(p_kg_m_s) * epsilon_j * occupancy


def stefan_boltzmann_density(state: ThermalState) -> float:
    """Closed-form thermal energy density (pi^2/15) (kT)^4 / (hbar c)^3."""
    kt = CODATA.k_boltzmann_j_per_k * state.temperature_k
    return math.pi**2 / 15.0 * kt**4 / (CODATA.hbar_j_s * CODATA.c_m_per_s) ** 3


def integrate_thermal_density(
    state: ThermalState,
    spec: numerics.QuadratureSpec | None = None,
) -> float:
    """Quadrature of the thermal Planck curve over all momenta (J/m^3).

    Integrated in the dimensionless variable x = pc/(kT) so the integrand
    peaks at order unity; the improper upper limit is handled by the
    half-line map in ``numerics``.
    """
    spec = spec or numerics.QuadratureSpec(rel_tol=1e-9)
    kt = CODATA.k_boltzmann_j_per_k * state.temperature_k
    p_scale = kt / CODATA.c_m_per_s

    def integrand(x: float) -> float:
        return planck_energy_density(x * p_scale, state, include_zero_point=False)

    return p_scale * numerics.integrate_half_line(integrand, 0.0, spec)


def wien_peak_x(spec: numerics.RootSpec | None = None) -> float:
    """Location x* = hbar*omega/kT of the thermal spectral peak.

    Stationarity of x^3/(e^x - 1) gives 3*(1 - e^-x) = x, solved by
    bracketed root finding.
    """
    spec = spec or numerics.RootSpec(bracket_lo=2.0, bracket_hi=4.0, x_tol=1e-12)
    return numerics.find_root(lambda x: 3.0 * -math.expm1(-x) - x, spec)


def planck_curve(
    state: ThermalState,
    *,
    x_max: float = 15.0,
    n_points: int = 200,
    include_zero_point: bool = True,
) -> list[SpectralSample]:
    """Sampled Planck curve on an even grid of x = pc/(kT) in [0, x_max]."""
    if x_max <= 0 or n_points < 2:
        raise ValueError("x_max must be > 0 and n_points >= 2")
    kt = CODATA.k_boltzmann_j_per_k * state.temperature_k
    p_scale = kt / CODATA.c_m_per_s
    samples = []
    for x in np.linspace(0.0, x_max, n_points):
        p = float(x) * p_scale
        samples.append(
            SpectralSample(
                abscissa=p,
                value=planck_energy_density(p, state, include_zero_point),
                includes_zero_point=include_zero_point,
            )
        )
    return samples


def mode_density_curve(momenta_kg_m_s: list[float]) -> list[ModeDensityPoint]:
    """Mode-density samples for a list of momenta."""
    return [ModeDensityPoint(p, mode_density(p)) for p in momenta_kg_m_s]
