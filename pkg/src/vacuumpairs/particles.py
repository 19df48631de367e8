"""Charged elementary-particle table: species records, registry loading and
the charge-weighted degeneracy sum entering every vacuum-polarisation sum.

The default table ships the three charged leptons, the six quarks and the W.
Light-quark masses follow the convention of the analysis being reproduced
(current-quark range floors, m_u = 1.5 MeV, m_d = 3.0 MeV); heavier entries
use PDG central values.  Any table can be swapped in via ``load_registry``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator


class RegistryParseError(ValueError):
    """Species file could not be parsed into records."""


class RegistryValidationError(ValueError):
    """A species record violates a registry invariant."""


class EmptyRegistryError(ValueError):
    """The operation requires at least one species."""


#: Charge fractions (units of q_e) occurring in the elementary-particle table.
ALLOWED_CHARGES = (
    Fraction(1),
    Fraction(-1),
    Fraction(2, 3),
    Fraction(-2, 3),
    Fraction(1, 3),
    Fraction(-1, 3),
)

# Decimal charges in species files are snapped to the exact rational.
_CHARGE_SNAP_TOL = 1e-6


def _as_charge_fraction(value: float | int | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        candidate = value
        if candidate in ALLOWED_CHARGES:
            return candidate
        raise RegistryValidationError(f"charge_q {value} not in {{+-1, +-2/3, +-1/3}}")
    for allowed in ALLOWED_CHARGES:
        if abs(float(value) - float(allowed)) <= _CHARGE_SNAP_TOL:
            return allowed
    raise RegistryValidationError(f"charge_q {value} not in {{+-1, +-2/3, +-1/3}}")


@dataclass(frozen=True)
class ParticleSpecies:
    """One charged elementary particle type.

    ``mass_mev`` is the rest-mass energy m*c^2, ``charge_q`` the charge in
    units of q_e, ``color_factor`` the colour degeneracy (3 for quarks) and
    ``spin_degeneracy`` 2 for fermions or 3 for the spin-1 W pair.
    """

    name: str
    mass_mev: float
    charge_q: Fraction
    color_factor: int
    spin_degeneracy: int

    def __post_init__(self) -> None:
        if not self.name:
            raise RegistryValidationError("species name must be non-empty")
        if not self.mass_mev > 0:
            raise RegistryValidationError(f"{self.name}: mass_mev must be > 0")
        object.__setattr__(self, "charge_q", _as_charge_fraction(self.charge_q))
        if self.color_factor not in (1, 3):
            raise RegistryValidationError(f"{self.name}: color_factor must be 1 or 3")
        if self.spin_degeneracy not in (2, 3):
            raise RegistryValidationError(
                f"{self.name}: spin_degeneracy must be 2 or 3"
            )

    @property
    def charge_weight(self) -> Fraction:
        """Q^2 * c * g/2, the exact species weight in polarisation sums."""
        return (
            self.charge_q**2
            * self.color_factor
            * Fraction(self.spin_degeneracy, 2)
        )


@dataclass(frozen=True)
class SpeciesRegistry:
    """Ordered, immutable collection of uniquely named species."""

    species: tuple[ParticleSpecies, ...]

    def __post_init__(self) -> None:
        names = [s.name for s in self.species]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise RegistryValidationError(f"duplicate species names: {dupes}")

    def __iter__(self) -> Iterator[ParticleSpecies]:
        return iter(self.species)

    def __len__(self) -> int:
        return len(self.species)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.species)

    def get(self, name: str) -> ParticleSpecies:
        for s in self.species:
            if s.name == name:
                return s
        raise KeyError(name)

    def subset(self, names: Iterable[str]) -> "SpeciesRegistry":
        wanted = tuple(names)
        return SpeciesRegistry(tuple(self.get(n) for n in wanted))


_REQUIRED_FIELDS = ("name", "mass_mev", "charge_q", "color_factor", "spin_degeneracy")


def _records_to_registry(records: object, origin: str) -> SpeciesRegistry:
    if not isinstance(records, list):
        raise RegistryParseError(f"{origin}: expected a JSON array of records")
    species = []
    for i, rec in enumerate(records):
        if not isinstance(rec, dict):
            raise RegistryParseError(f"{origin}: record {i} is not an object")
        missing = [k for k in _REQUIRED_FIELDS if k not in rec]
        if missing:
            raise RegistryParseError(f"{origin}: record {i} missing fields {missing}")
        name = rec["name"]
        if not isinstance(name, str):
            raise RegistryParseError(f"{origin}: record {i} name must be a string")
        try:
            mass = float(rec["mass_mev"])
            charge = float(rec["charge_q"])
            color = int(rec["color_factor"])
            spin = int(rec["spin_degeneracy"])
        except (TypeError, ValueError) as exc:
            raise RegistryParseError(f"{origin}: record {i} has a non-numeric field") from exc
        species.append(
            ParticleSpecies(
                name=name,
                mass_mev=mass,
                charge_q=charge,  # snapped to an exact Fraction in __post_init__
                color_factor=color,
                spin_degeneracy=spin,
            )
        )
    return SpeciesRegistry(tuple(species))


def load_registry(path: str | Path) -> SpeciesRegistry:
    """Load a species registry from a JSON file.

    The file is a JSON array of records with fields ``name``, ``mass_mev``,
    ``charge_q`` (rational charge written as a decimal), ``color_factor``
    and ``spin_degeneracy``.  Malformed files raise ``RegistryParseError``;
    records violating the invariants raise ``RegistryValidationError``.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise RegistryParseError(f"{path}: {exc}") from exc
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RegistryParseError(f"{path}: invalid JSON ({exc})") from exc
    return _records_to_registry(records, str(path))


@lru_cache(maxsize=1)
def default_registry() -> SpeciesRegistry:
    """The built-in 10-species table (e, mu, tau, u, d, s, c, b, t, W)."""
    data = resources.files(__package__).joinpath("data/species.json").read_text("utf-8")
    return _records_to_registry(json.loads(data), "builtin species table")


def weighted_degeneracy_sum(registry: SpeciesRegistry) -> float:
    """Sum of Q_i^2 * c_i * g_i/2 over the registry (9.5 for the default).

    Computed in exact rational arithmetic before the final float conversion,
    so dyadic results such as 9.5 are exact.
    """
    if len(registry) == 0:
        raise EmptyRegistryError("registry has no species")
    return float(sum((s.charge_weight for s in registry), start=Fraction(0)))
