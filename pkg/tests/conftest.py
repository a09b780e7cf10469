import sys

import pytest

from fingeo.geometry import GeomConfig
from fingeo.gf import field_create, prime_power
from fingeo.ksets import build_kset


def geometry(q: int, n: int) -> GeomConfig:
    p, e = prime_power(q)
    return GeomConfig(field_create(p, e), n)


def kset(q: int, n: int, spec: str):
    cfg = geometry(q, n)
    return cfg, build_kset(cfg, spec)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture
def geom():
    return geometry
