from __future__ import annotations

import os
import random

import pytest

DATA = os.path.join(os.path.dirname(__file__), "data")


def pytest_addoption(parser):
    parser.addoption("--rng-seed", type=int, default=20240611, help="seed for randomized tests")


@pytest.fixture
def rng(request) -> random.Random:
    return random.Random(request.config.getoption("--rng-seed"))


@pytest.fixture(scope="session")
def data_dir() -> str:
    return DATA


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
