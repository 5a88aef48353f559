import os

import pytest
from hypothesis import HealthCheck, settings

from betabranch import special
from betabranch.constants import lookup
from betabranch.expansions import Base
from betabranch.parsing import parse_polynomial

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Quadratic bases strictly between the golden ratio and q_aleph0.
QUADRATIC_SAMPLES = ("3x^2=8", "4x^2-x-9", "7x^2-6x-9")

# Pisot bases x^(n+2) = x^(n+1) + x^n + 1 accumulate at the golden ratio from
# above; n = 7..11 all lie below q_aleph0 and their orbit graphs close.
PISOT_SAMPLES = tuple(f"x^{n + 2}=x^{n + 1}+x^{n}+1" for n in (7, 8, 9, 10, 11))


def base_from_relation(rel: str) -> Base:
    return Base(special.root_in_unit_gap(parse_polynomial(rel)), rel)


@pytest.fixture(scope="session")
def golden():
    return lookup("golden").base()


@pytest.fixture(scope="session")
def q_aleph0():
    return lookup("q_aleph0").base()


@pytest.fixture(scope="session")
def q_f():
    return lookup("q_f").base()


@pytest.fixture(scope="session")
def quadratic_samples():
    return [base_from_relation(r) for r in QUADRATIC_SAMPLES]


@pytest.fixture(scope="session")
def pisot_samples():
    return [base_from_relation(r) for r in PISOT_SAMPLES]


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
