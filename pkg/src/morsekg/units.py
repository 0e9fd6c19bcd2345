"""Physical constants, spectroscopic unit conversions and the molecule registry.

Energies handed to the rest of the package are in MeV; this module is the
only place where cm^-1, eV, amu and Angstrom appear.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import DomainError, UnknownMoleculeError

REGISTRY_ENV = "MORSEKG_REGISTRY"


@dataclass(frozen=True)
class PhysicalConstants:
    # CODATA 2018
    hbar_c: float = 1973.269804  # eV * Angstrom
    amu_energy: float = 931.49410242  # MeV per amu
    wavenumber_energy: float = 1.239841984e-4  # eV per cm^-1


CODATA = PhysicalConstants()
EV_PER_MEV = 1.0e6


def wavenumber_to_energy(w: float, constants: PhysicalConstants = CODATA) -> float:
    """Convert a wavenumber in cm^-1 to an energy in eV."""
    if w < 0:
        raise DomainError(f"wavenumber must be non-negative, got {w}")
    return w * constants.wavenumber_energy


def energy_to_wavenumber(e: float, constants: PhysicalConstants = CODATA) -> float:
    if e < 0:
        raise DomainError(f"energy must be non-negative, got {e}")
    return e / constants.wavenumber_energy


def amu_to_rest_energy(m: float, constants: PhysicalConstants = CODATA) -> float:
    """Rest energy m c^2 in MeV of a mass given in atomic mass units."""
    if m < 0:
        raise DomainError(f"mass must be non-negative, got {m}")
    return m * constants.amu_energy


@dataclass(frozen=True)
class MoleculeParams:
    name: str
    dissociation_energy: float  # cm^-1
    width: float  # 1/Angstrom
    equilibrium_distance: float  # Angstrom
    rest_mass: float  # amu

    def __post_init__(self):
        for field in ("dissociation_energy", "width", "equilibrium_distance", "rest_mass"):
            value = getattr(self, field)
            if not value > 0:
                raise DomainError(f"{self.name}: {field} must be positive, got {value}")

    @property
    def beta(self) -> float:
        """Dimensionless exponent scale a * r0."""
        return self.width * self.equilibrium_distance

    @property
    def depth_mev(self) -> float:
        return wavenumber_to_energy(self.dissociation_energy) / EV_PER_MEV

    @property
    def rest_energy_mev(self) -> float:
        return amu_to_rest_energy(self.rest_mass)


def inverse_q(mol: MoleculeParams, constants: PhysicalConstants = CODATA) -> float:
    """1/Q in eV, i.e. hbar*c * a * r0 with hbar*c in eV*Angstrom.

    The Angstrom left over from a * r0 being read as a length is dropped; this
    is the convention that reproduces the published H2/LiH/HCl level spacings.
    """
    return constants.hbar_c * mol.width * mol.equilibrium_distance


def inverse_q_mev(mol: MoleculeParams, constants: PhysicalConstants = CODATA) -> float:
    return inverse_q(mol, constants) / EV_PER_MEV


def parse_registry(text: str) -> dict[str, MoleculeParams]:
    """Parse registry text (``name,D,a,r0,m0`` per line, ``#`` comments)."""
    registry: dict[str, MoleculeParams] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 5:
            raise DomainError(f"registry line {lineno}: expected 5 fields, got {len(parts)}")
        name = parts[0]
        try:
            values = [float(p) for p in parts[1:]]
        except ValueError as exc:
            raise DomainError(f"registry line {lineno}: {exc}") from None
        key = name.lower()
        if key in registry:
            raise DomainError(f"registry line {lineno}: duplicate molecule {name!r}")
        registry[key] = MoleculeParams(name, *values)
    return registry


def registry_path() -> Path | None:
    override = os.environ.get(REGISTRY_ENV)
    return Path(override) if override else None


def load_registry(path: str | os.PathLike | None = None) -> dict[str, MoleculeParams]:
    """Load the molecule registry; ``MORSEKG_REGISTRY`` overrides the bundled file."""
    if path is None:
        path = registry_path()
    if path is None:
        text = resources.files("morsekg").joinpath("data/molecules.csv").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return parse_registry(text)


def lookup_molecule(name: str, registry: dict[str, MoleculeParams] | None = None) -> MoleculeParams:
    if registry is None:
        registry = load_registry()
    try:
        return registry[name.lower()]
    except KeyError:
        available = ", ".join(m.name for m in registry.values())
        raise UnknownMoleculeError(f"unknown molecule {name!r}; available: {available}") from None
