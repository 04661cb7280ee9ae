from __future__ import annotations

import pytest

from tangles.n1 import solve_A
from tangles.nm2 import find_singularities, gamma_table, solve_renorm_nm2
from tangles.planar import PlanarModel, free_energy_series
from tangles.renorm import bare_correlators, solve_fixed_point


@pytest.fixture(scope="session")
def quintic32():
    return solve_A(32)


@pytest.fixture(scope="session")
def nm2_solution():
    return solve_renorm_nm2(12)


@pytest.fixture(scope="session")
def gamma32():
    return gamma_table(32)


@pytest.fixture(scope="session")
def planar_model():
    return PlanarModel()


@pytest.fixture(scope="session")
def bare4(planar_model):
    return bare_correlators(4, model=planar_model)


@pytest.fixture(scope="session")
def renorm4(bare4):
    return solve_fixed_point(bare4)


@pytest.fixture(scope="session")
def singularities(nm2_solution):
    return find_singularities(sol=nm2_solution)


@pytest.fixture(scope="session")
def free_energy4():
    return free_energy_series(4)
