"""Closed-form bound-state energies.

Every function returns a :class:`QuantizedLevel`.  Square roots are taken on
the principal branch and the particle/antiparticle sign is applied afterwards,
so ``branch=-1`` is always the exact negation of ``branch=+1``.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass

from .errors import DegeneratePotentialError, DomainError, RadicandWarning, SpecialCaseNotApplicable
from .potential import (
    MassModel,
    PotentialSpec,
    ReducedParams,
    complex_potential_params,
    fingerprint,
)

SOURCES = ("pdm-real", "const-mass-real", "pdm-complex", "const-mass-complex", "special-case")

# The special-case formula carries a leading minus for the upper sign of its ∓.
SPECIAL_CASE_SIGN_NOTE = "branch +1 maps to the leading minus of the special-case formula"


@dataclass(frozen=True)
class QuantizedLevel:
    n: int
    branch: int
    energy: complex
    L: complex
    source: str
    fingerprint: str = ""
    radicand: complex = 0j

    @property
    def is_real(self) -> bool:
        return self.energy.imag == 0


@dataclass(frozen=True)
class TildeParams:
    v1_tilde: complex
    v2_tilde: complex


def _check_n(n: int) -> None:
    if int(n) != n or n < 0:
        raise DomainError(f"quantum number must be a non-negative integer, got {n}")


def _check_branch(branch: int) -> int:
    if branch not in (1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch}")
    return branch


def tilde_params(pot: PotentialSpec, mass: MassModel) -> TildeParams:
    v1, v2 = pot.v1, pot.v2
    m0, m1 = mass.m0_energy, mass.m1_energy
    return TildeParams(v2 * v2 / (2 * v1) + m0, -v2 / v1 + m1 / (2 * v1))


def complex_tilde_params(u1: float, u2: float, u3: float, mass: MassModel) -> TildeParams:
    """Primed tilde parameters of the complex case, taken as printed.

    The first one is printed as 2 (u3 + 1)^2 / 2 + m0 c^2 and is evaluated as
    (u3 + 1)^2 + m0 c^2.  Note that neither expression equals the unprimed
    tilde parameters evaluated at the complex V1, V2.
    """
    if u1 == 0 and u2 == 0:
        raise DomainError("u1 = u2 = 0 gives V1 = 0")
    w = complex(u1, u2)
    m0, m1 = mass.m0_energy, mass.m1_energy
    return TildeParams((u3 + 1) ** 2 + m0, (2 * u3 + 1) / w + m1 / (2 * w * w))


def quantization_L(n: int, rp: ReducedParams) -> complex:
    """Solve 2 q (2n + L + 1) = A3 for L."""
    _check_n(n)
    if rp.q == 0:
        raise DegeneratePotentialError("q = 0: truncation condition has no solution")
    return rp.a3 / (2 * rp.q) - (2 * n + 1)


def energy_from_L(L: complex, m0c2: float, q_inv: float, branch: int = 1) -> complex:
    """E = +-sqrt(m0^2 c^4 + L^2 / Q^2)."""
    _check_branch(branch)
    root = cmath.sqrt(m0c2 * m0c2 + (L * q_inv) ** 2)
    return root if branch == 1 else -root


def L_from_energy(E: complex, m0c2: float, q_inv: float, like: complex | None = None) -> complex:
    """Root of L^2 = Q^2 (E^2 - m0^2 c^4); picks the sign closest to ``like``."""
    L = cmath.sqrt(E * E - m0c2 * m0c2) / q_inv
    if like is not None and abs(-L - like) < abs(L - like):
        L = -L
    return L


def _signed(root: complex, branch: int) -> complex:
    return root if branch == 1 else -root


def pdm_energy(n: int, pot: PotentialSpec, mass: MassModel, q_inv: float,
               branch: int = 1) -> QuantizedLevel:
    """Position-dependent-mass energy, evaluated term by term."""
    _check_n(n)
    _check_branch(branch)
    Q = 1.0 / q_inv
    t = tilde_params(pot, mass)
    m0, m1 = mass.m0_energy, mass.m1_energy
    k = 2 * n + 1
    radicand = (m0 * m0
                + q_inv * q_inv * (k + Q * t.v1_tilde) ** 2
                + m1 * t.v2_tilde * q_inv * (2 * k + 2 * Q * t.v1_tilde + Q * m1 * t.v2_tilde))
    real_mode = pot.is_real
    if real_mode and radicand.real < 0:
        warnings.warn(f"n={n}: negative radicand {radicand.real:.6g}; energy is complex",
                      RadicandWarning, stacklevel=2)
    L = -(k + Q * t.v1_tilde + Q * m1 * t.v2_tilde)
    return QuantizedLevel(
        n, branch, _signed(cmath.sqrt(radicand), branch), complex(L),
        "pdm-real" if real_mode else "pdm-complex",
        fingerprint(pot, mass, q_inv), complex(radicand),
    )


def constant_mass_energy(n: int, pot: PotentialSpec, m0c2: float, q_inv: float,
                         branch: int = 1) -> QuantizedLevel:
    """E = +-sqrt(((2n+1)/Q + V1~)^2 + m0^2 c^4) with V1~ = V2^2 / (2 V1) + m0 c^2."""
    _check_n(n)
    _check_branch(branch)
    if not pot.is_real:
        raise DomainError("complex potential: use complex_constant_mass_energy")
    mass = MassModel(m0c2, 0.0)
    v1t = pot.v2.real ** 2 / (2 * pot.v1.real) + m0c2
    shifted = (2 * n + 1) * q_inv + v1t
    radicand = shifted * shifted + m0c2 * m0c2
    E = cmath.sqrt(radicand)
    return QuantizedLevel(
        n, branch, _signed(E, branch), complex(-shifted / q_inv), "const-mass-real",
        fingerprint(pot, mass, q_inv), complex(radicand),
    )


def complex_energy(n: int, u1: float, u2: float, u3: float, mass: MassModel,
                   branch: int = 1, q_prime: float = 1.0) -> QuantizedLevel:
    """Energy of the non-PT-symmetric potential with position-dependent mass.

    ``q_prime`` plays the role of Q (an inverse energy); it defaults to 1 in
    natural units because no numeric convention is fixed for this case.
    """
    _check_n(n)
    _check_branch(branch)
    t = complex_tilde_params(u1, u2, u3, mass)
    m0, m1 = mass.m0_energy, mass.m1_energy
    Qp = q_prime
    k = 2 * n + 1
    radicand = (m0 * m0
                + (k + Qp * t.v1_tilde) ** 2 / (Qp * Qp)
                + m1 * t.v2_tilde / Qp * (2 * k + 2 * Qp * t.v1_tilde + Qp * m1 * t.v2_tilde))
    L = -(k + Qp * t.v1_tilde + Qp * m1 * t.v2_tilde)
    pot = complex_potential_params(u1, u2, u3)
    return QuantizedLevel(
        n, branch, _signed(cmath.sqrt(radicand), branch), complex(L), "pdm-complex",
        fingerprint(pot, mass, 1.0 / Qp), complex(radicand),
    )


def complex_constant_mass_energy(n: int, u1: float, u2: float, u3: float, m0c2: float,
                                 branch: int = 1, q_prime: float = 1.0,
                                 strict_literal: bool = False) -> QuantizedLevel:
    """Constant-mass limit of :func:`complex_energy`, in product form

        E = +-(2n + 1 + Q' V1~') sqrt(1/Q'^2 + (m0 c^2 / (2n + 1 + Q' V1~'))^2).

    With ``strict_literal`` the inner denominator uses the unprimed V1~ built
    from the complex V1, V2, reproducing the mixed expression as printed.
    """
    _check_n(n)
    _check_branch(branch)
    mass = MassModel(m0c2, 0.0)
    Qp = q_prime
    t = complex_tilde_params(u1, u2, u3, mass)
    k = 2 * n + 1 + Qp * t.v1_tilde.real
    pot = complex_potential_params(u1, u2, u3)
    if strict_literal:
        k_inner = 2 * n + 1 + Qp * tilde_params(pot, mass).v1_tilde
    else:
        k_inner = k
    root = cmath.sqrt(1.0 / (Qp * Qp) + (m0c2 / k_inner) ** 2)
    E = k * root
    L = -k
    return QuantizedLevel(
        n, branch, _signed(complex(E), branch), complex(L), "const-mass-complex",
        fingerprint(pot, mass, 1.0 / Qp), complex(E * E),
    )


def special_case_applies(pot: PotentialSpec, mass: MassModel, rtol: float = 1e-9) -> bool:
    """True when V2 = m1 c^2, which removes the 1/z and z terms."""
    scale = max(abs(pot.v2), abs(mass.m1_energy))
    return abs(pot.v2 - mass.m1_energy) <= rtol * scale


def special_case_energy(n: int, pot: PotentialSpec, mass: MassModel, q_inv: float,
                        branch: int = 1) -> QuantizedLevel:
    """Harmonic-oscillator-type levels for V2 = m1 c^2, as printed:

        eps = -+{m0^2 + 4 Q^2 (m1 + m0)^2 [2n + 1 + sqrt(1/4 - V1^2 Q^2)]^-2 - 1/(4 Q^2)}^(1/2)

    with energies in MeV and c = 1 (masses as rest energies), so the prefactor
    4 c^2 / (beta^2 hbar^2) reads 4 Q^2.
    """
    _check_n(n)
    _check_branch(branch)
    if not special_case_applies(pot, mass):
        raise SpecialCaseNotApplicable(
            f"special case needs V2 = m1 c^2 (got V2={pot.v2}, m1 c^2={mass.m1_energy})")
    Q = 1.0 / q_inv
    m0, m1 = mass.m0_energy, mass.m1_energy
    bracket = 2 * n + 1 + cmath.sqrt(0.25 - pot.v1 * pot.v1 * Q * Q)
    radicand = m0 * m0 + 4 * Q * Q * (m1 + m0) ** 2 / (bracket * bracket) - q_inv * q_inv / 4
    root = cmath.sqrt(radicand)
    E = -root if branch == 1 else root
    L = cmath.sqrt(E * E - m0 * m0) * Q
    return QuantizedLevel(n, branch, E, L, "special-case", fingerprint(pot, mass, q_inv),
                          complex(radicand))
