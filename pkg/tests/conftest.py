import pytest

from photonsub import IPSParams, conditional_state
from photonsub.oracle import ips_conditional_density

# Parameters of the reference Wigner surface: r = 0.5, tau = 0.90, eta = 0.80.
REF = IPSParams(0.5, 0.9, 0.8)

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def ref_params():
    return REF


@pytest.fixture(scope="session")
def ref_state():
    return conditional_state(REF)


@pytest.fixture(scope="session")
def ref_oracle():
    """(p_on, FockDensity) from the truncated-Fock oracle at the reference point."""
    return ips_conditional_density(REF)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}: {detail}")
