"""Generalized Morse potential, exponential mass profile and the reduced equation.

All energies are in MeV and all masses are carried as rest energies m c^2.
``q_inv`` is 1/Q in MeV.  The scalar potential is

    V_s(x) = V1 exp(-2 beta x) - V2 exp(-beta x),   m(x) = m0 + m1 exp(-beta x),

and with z = exp(-beta x), psi = phi / sqrt(z) the radial problem turns into

    phi'' + (-A3 + A1/z^2 + A2/z - A4 z - A5 z^2) phi = 0.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import DomainError, UnsupportedCaseError
from .units import MoleculeParams, inverse_q_mev

SignMode = Literal["consistent", "printed"]


@dataclass(frozen=True)
class PotentialSpec:
    v1: complex
    v2: complex
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "v1", complex(self.v1))
        object.__setattr__(self, "v2", complex(self.v2))
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.v1 == 0:
            raise DomainError("V1 = 0 degenerates the quartic term; rejected")

    @property
    def is_real(self) -> bool:
        return self.v1.imag == 0 and self.v2.imag == 0

    def __call__(self, x):
        """V_s(x)."""
        return self.v1 * np.exp(-2 * self.beta * x) - self.v2 * np.exp(-self.beta * x)


@dataclass(frozen=True)
class MassModel:
    m0_energy: float
    m1_energy: float = 0.0

    def __post_init__(self):
        if not self.m0_energy > 0:
            raise DomainError(f"m0 c^2 must be positive, got {self.m0_energy}")
        if self.m0_energy + min(0.0, self.m1_energy) <= 0:
            raise DomainError("m0 + m1 exp(-beta x) must stay positive on x >= 0")

    def __call__(self, x, beta: float):
        return self.m0_energy + self.m1_energy * np.exp(-beta * x)


@dataclass(frozen=True)
class ReducedParams:
    """Coefficients of the z-space equation at a fixed energy.

    ``a1`` depends on E through a1 = Q^2 (E^2 - m0^2) + 1/4 = L^2 + 1/4; the
    other coefficients do not.
    """

    q_inv: float
    a1: complex
    a2: complex
    a3: complex
    a4: complex
    a5: complex
    p: complex
    q: complex
    energy_dependent: bool = True

    @property
    def Q(self) -> float:
        return 1.0 / self.q_inv


def morse_from_dissociation(depth: float, beta: float = 1.0) -> PotentialSpec:
    """Standard Morse well of depth D: V1 = D, V2 = 2D, minimum -D at x = 0."""
    if not depth > 0:
        raise DomainError(f"dissociation energy must be positive, got {depth}")
    return PotentialSpec(depth, 2.0 * depth, beta)


def complex_potential_params(u1: float, u2: float, u3: float) -> PotentialSpec:
    """Non-PT-symmetric parameterization with w = u1 + i u2 and beta = 1.

    V1 = w^2, V2 = w (1 + 2 u3).
    """
    if u1 == 0 and u2 == 0:
        raise DomainError("u1 = u2 = 0 gives V1 = 0")
    w = complex(u1, u2)
    return PotentialSpec(w * w, w * (1 + 2 * u3), 1.0)


def molecular_system(mol: MoleculeParams, m1_energy: float = 0.0) -> tuple[PotentialSpec, MassModel, float]:
    """(potential, mass model, 1/Q in MeV) for a registry molecule."""
    pot = morse_from_dissociation(mol.depth_mev, mol.beta)
    mass = MassModel(mol.rest_energy_mev, m1_energy)
    return pot, mass, inverse_q_mev(mol)


def exponent_params(pot: PotentialSpec, mass: MassModel, q_inv: float,
                    signs: SignMode = "consistent") -> tuple[complex, complex]:
    """(p, q) of the exp(p z + q z^2 / 2) prefactor.

    q = -Q V1 in both modes.  The consistent mode takes p = -Q (V2 - m1 c^2) so
    that q^2 = A5 and 2 p q = A4 hold together; ``"printed"`` flips the sign of p.
    """
    Q = 1.0 / q_inv
    q = -Q * pot.v1
    p = -Q * (pot.v2 - mass.m1_energy)
    if signs == "printed":
        p = -p
    elif signs != "consistent":
        raise DomainError(f"unknown sign mode {signs!r}")
    return p, q


def reduce(pot: PotentialSpec, mass: MassModel, q_inv: float, E: complex,
           signs: SignMode = "consistent") -> ReducedParams:
    if not q_inv > 0:
        raise DomainError(f"1/Q must be positive, got {q_inv}")
    E = complex(E)
    if not np.isfinite(E):
        raise DomainError("energy must be finite")
    Q2 = 1.0 / (q_inv * q_inv)
    v1, v2 = pot.v1, pot.v2
    m0, m1 = mass.m0_energy, mass.m1_energy
    a1 = Q2 * (E * E - m0 * m0) + 0.25
    a2 = 2 * Q2 * (v2 * m0 - m0 * m1)
    a3 = Q2 * (v2 * v2 + 2 * v1 * m0 - 2 * v2 * m1 + m1 * m1)
    a4 = 2 * Q2 * (v1 * v2 - v1 * m1)
    a5 = Q2 * v1 * v1
    p, q = exponent_params(pot, mass, q_inv, signs)
    return ReducedParams(q_inv, a1, a2, a3, a4, a5, p, q)


def line_coefficients(pot: PotentialSpec, mass: MassModel) -> tuple[float, float, float, float]:
    """Bracket coefficients (c1, c2, c3, c4) of exp(-k beta x), k = 1..4, in

    E^2 - (m c^2 + V_s)^2 = E^2 - m0^2 + c1 e^{-bx} - c2 e^{-2bx} + c3 e^{-3bx} - c4 e^{-4bx}.
    """
    v1, v2 = pot.v1.real, pot.v2.real
    m0, m1 = mass.m0_energy, mass.m1_energy
    c1 = 2 * (v2 * m0 - m0 * m1)
    c2 = v2 * v2 + 2 * v1 * m0 - 2 * v2 * m1 + m1 * m1
    c3 = 2 * (v1 * v2 - v1 * m1)
    c4 = v1 * v1
    return c1, c2, c3, c4


def effective_line_potential(pot: PotentialSpec, mass: MassModel, q_inv: float) -> Callable:
    """U(x) such that the x-space problem reads -psi'' - U(x) psi = lambda psi.

    lambda = Q^2 beta^2 (E^2 - m0^2 c^4), and U collects the four exponential
    terms with the same Q^2 beta^2 scale.
    """
    if not pot.is_real:
        raise UnsupportedCaseError("the x-space equation is only self-adjoint for real potentials")
    scale = (pot.beta / q_inv) ** 2
    c1, c2, c3, c4 = line_coefficients(pot, mass)
    beta = pot.beta

    def U(x):
        z = np.exp(-beta * np.asarray(x, dtype=float))
        return scale * z * (c1 + z * (-c2 + z * (c3 - z * c4)))

    return U


def spectral_scale(pot: PotentialSpec, q_inv: float) -> float:
    """Q^2 beta^2, the factor relating lambda to E^2 - m0^2 c^4."""
    return (pot.beta / q_inv) ** 2


def fingerprint(pot: PotentialSpec, mass: MassModel, q_inv: float, *extra) -> str:
    """Stable digest of the physical inputs, used to pair results for comparison."""
    key = (pot.v1, pot.v2, pot.beta, mass.m0_energy, mass.m1_energy, q_inv) + tuple(extra)
    return hashlib.sha1(repr(key).encode()).hexdigest()[:16]
