import numpy as np
import pytest

from morsekg.potential import MassModel, PotentialSpec, molecular_system
from morsekg.units import lookup_molecule

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(params=["H2", "LiH", "HCl"])
def molecule(request):
    return lookup_molecule(request.param)


@pytest.fixture
def h2_system():
    return molecular_system(lookup_molecule("H2"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_real_system(rng) -> tuple[PotentialSpec, MassModel, float]:
    """Desk-scale real parameters with V1 of either sign and |m1| < m0."""
    m0 = rng.uniform(0.5, 2.0)
    v1 = rng.uniform(0.1, 2.0) * rng.choice([-1.0, 1.0])
    v2 = rng.uniform(-2.0, 2.0)
    m1 = rng.uniform(-0.4, 1.0) * m0
    beta = rng.uniform(0.3, 2.0)
    q_inv = rng.uniform(0.5, 2.0)
    return PotentialSpec(v1, v2, beta), MassModel(m0, m1), q_inv
