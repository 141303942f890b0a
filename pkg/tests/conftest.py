from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from finawfs.instances import mod as md
from finawfs.instances import mset as ms
from finawfs.universe import Universe

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

# criterion number -> (passed, summary); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture(scope="session")
def zmod6():
    return md.mod_category(6)


@pytest.fixture(scope="session")
def P6():
    return md.free_comonad(6)


@pytest.fixture(scope="session")
def mcat():
    return ms.mset_category()


@pytest.fixture(scope="session")
def PM():
    return ms.free_comonad()


@pytest.fixture(scope="session")
def mset_u2(mcat):
    return Universe.full(mcat.objects_up_to(2))


@pytest.fixture(scope="session")
def mset_u3(mcat):
    return Universe.full(mcat.objects_up_to(3))


@pytest.fixture(scope="session")
def mod_u6(zmod6):
    return Universe.full(zmod6.objects_up_to(6))


@pytest.fixture(scope="session")
def mod_u3(zmod6):
    return Universe.full(zmod6.objects_up_to(3))
