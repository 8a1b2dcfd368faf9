import os

import pytest
from hypothesis import HealthCheck, settings

from incidence_lab import PointSet
from incidence_lab.generators import GeneratorSpec, generate

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def random_config(n, dim, seed, *flags):
    spec = GeneratorSpec("random_constrained", n=n, dim=dim, seed=seed, flags=frozenset(flags))
    return generate(spec).points


@pytest.fixture
def grid3():
    return PointSet([(x, y) for x in range(3) for y in range(3)])


@pytest.fixture
def cube():
    return generate("cube").points


@pytest.fixture
def tetra():
    return PointSet([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture
def square():
    return PointSet([(0, 0), (1, 0), (1, 1), (0, 1)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    from incidence_lab import IDENTITY_CHECKS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
    total = sum(IDENTITY_CHECKS.values())
    terminalreporter.write_line(f"counting identities verified on {total} enumerations: {dict(sorted(IDENTITY_CHECKS.items()))}")
