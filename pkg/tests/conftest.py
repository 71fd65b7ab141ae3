from __future__ import annotations

import sys

import pytest

from bralg import load_fixture


def _algebra(name):
    return load_fixture(name).build()


@pytest.fixture(scope="session")
def cyc():
    return _algebra("cyclotomic_breaks")


@pytest.fixture(scope="session")
def gwa_shift():
    return _algebra("gwa_shift")


@pytest.fixture(scope="session")
def nongwa():
    return _algebra("nongwa_shift")


@pytest.fixture(scope="session")
def weyl():
    return _algebra("weyl_1var")


@pytest.fixture(scope="session")
def sign_flip():
    return _algebra("sign_flip")


@pytest.fixture(scope="session")
def trivial():
    return _algebra("trivial")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    report = getattr(mod, "REPORT", None)
    if report:
        terminalreporter.section("acceptance criteria")
        for line in report:
            terminalreporter.write_line(line)
