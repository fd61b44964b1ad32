from pathlib import Path

import pytest

from mpgta.ptga import load_ptga

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


@pytest.fixture
def bias():
    return load_ptga(FIXTURES / "bias.json")


@pytest.fixture
def nonbinary():
    return load_ptga(FIXTURES / "nonbinary.json")


@pytest.fixture
def selfloop():
    return load_ptga(FIXTURES / "selfloop.json")
