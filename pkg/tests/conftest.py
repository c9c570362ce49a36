import numpy as np
import pytest

from starkbloch.core import BandDispersion, PhysicalParams, make_grid
from starkbloch.eigen import airy_coefficients
from starkbloch.initial_states import InitialStateSpec, build_initial

EPS, F, D, KAPPA = 0.5, 0.2, 4.0, 1.0
TB = 2 * np.pi / (F * D)


@pytest.fixture(scope="session")
def params():
    return PhysicalParams(epsilon=EPS, force=F, lattice_period=D)


@pytest.fixture(scope="session")
def params_eps0():
    return PhysicalParams(epsilon=0.0, force=F, lattice_period=D)


@pytest.fixture(scope="session")
def band():
    return BandDispersion.sinusoidal(KAPPA, D)


@pytest.fixture(scope="session")
def flat_band():
    return BandDispersion.flat(D)


@pytest.fixture(scope="session")
def table(params, band):
    return airy_coefficients(params, band)


@pytest.fixture(scope="session")
def grid():
    # box sized so the mid-cycle lattice replicas never reach the right edge
    return make_grid(-96.0, 160.0, 8192)


@pytest.fixture(scope="session")
def gauss_psi0(grid, params):
    return build_initial(InitialStateSpec("gaussian", width=5.0), grid, params)


def l2_distance(a, b):
    return float(np.sqrt(np.sum(np.abs(a.values - b.values) ** 2) * a.grid.dx))
