"""Shared fixtures; the expensive pipeline artifacts are session-scoped."""

import pytest

from salemforge.coxeter import en_from_formula, salem_factor
from salemforge.mcmullen import mcmullen_data
from salemforge.mau import mau_build, mau_seed


@pytest.fixture(scope="session")
def phi14():
    return salem_factor(en_from_formula(19), 19).salem_candidate


@pytest.fixture(scope="session")
def data19():
    return mcmullen_data(19, precision_bits=256)


@pytest.fixture(scope="session")
def seq4():
    """The length-4 certified sequence at 512 bits (the build pipeline run)."""
    return mau_build(4, precision_bits=512)


@pytest.fixture(scope="session")
def seq19_739():
    """Seeded sequence coupling the n=19 pair with the n=739 pair."""
    return mau_seed([19, 739], precision_bits=512)
