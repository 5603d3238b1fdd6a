import pytest

from heckecells.canonical import kl_table
from heckecells.coxeter import preset_system

SYSTEM_NAMES = ("A1", "A2", "A3", "B2", "C3", "G2")


@pytest.fixture(scope="session")
def systems():
    return {name: preset_system(name) for name in SYSTEM_NAMES}


@pytest.fixture(scope="session")
def tables(systems):
    return {name: kl_table(system) for name, system in systems.items()}
