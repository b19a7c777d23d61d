import pytest

from ihfan.fan.polytope import normal_fan
from ihfan.io import fixture, read_fan, read_polytope


def load_fan(name):
    return read_fan(fixture(name))


def load_polytope(name):
    return read_polytope(fixture(name))


@pytest.fixture(scope="session")
def fans():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_fan(name)
        return cache[name]
    return get


@pytest.fixture(scope="session")
def polytopes():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_polytope(name)
        return cache[name]
    return get


@pytest.fixture(scope="session")
def normal():
    def get(name):
        return normal_fan(load_polytope(name))
    return get


ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record the verdict line of one acceptance criterion."""
    def record(number, ok, detail):
        ACCEPTANCE[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
