import numpy as np
import pytest

from starkbloch.core import make_grid, norm
from starkbloch.evolve import EvolutionSpec, evolve_characteristics, \
    evolve_stark_exact
from starkbloch.initial_states import InitialStateSpec, build_initial
from starkbloch.observables import width
from starkbloch.specfun import airy_ai

from conftest import EPS, F, TB


def test_gaussian_width(grid, params):
    psi = build_initial(InitialStateSpec("gaussian", width=5.0), grid, params)
    assert norm(psi) == pytest.approx(1.0, abs=1e-12)
    assert width(psi) == pytest.approx(2.5, abs=1e-6)


def test_gaussian_offset(grid, params):
    psi = build_initial(InitialStateSpec("gaussian", width=5.0, offset=4.0),
                        grid, params)
    from starkbloch.observables import centroid
    assert centroid(psi) == pytest.approx(4.0, abs=1e-8)


def test_gaussian_coverage_guard(params):
    g = make_grid(-8.0, 8.0, 64)
    with pytest.raises(ValueError, match="cover"):
        build_initial(InitialStateSpec("gaussian", width=5.0), g, params)


def test_ideal_airy_profile(params):
    g = make_grid(-768.0, 256.0, 32768)
    psi = build_initial(InitialStateSpec("airy_ideal"), g, params)
    assert not psi.normalizable
    assert np.max(np.abs(psi.values)) == pytest.approx(1.0, abs=1e-14)
    alpha = params.airy_scale
    peak = np.max(np.abs(airy_ai(alpha * g.x)))
    k = np.argmin(np.abs(g.x - 1.0))
    assert psi.values[k].real == pytest.approx(airy_ai(alpha * 1.0) / peak, abs=1e-9)


def test_apodized_approaches_ideal(params):
    # on a fixed window the envelope e^{x/a} deviates from 1 by ~ |x|/a,
    # so the normalized shapes converge at that rate as a grows
    g = make_grid(-14336.0, 2048.0, 262144)
    ideal = build_initial(InitialStateSpec("airy_ideal"), g, params)
    window = np.abs(g.x) < 20
    k0 = np.argmax(np.abs(ideal.values) * window)
    devs = {}
    for a in (300.0, 600.0):
        apod = build_initial(InitialStateSpec("airy_apodized", apodization=a),
                             g, params)
        va = apod.values / apod.values[k0]
        vi = ideal.values / ideal.values[k0]
        devs[a] = np.max(np.abs(va - vi)[window])
    assert devs[600.0] < devs[300.0]
    assert devs[600.0] < 1.5 * (40.0 / 600.0)


def test_apodized_is_normalized(params):
    g = make_grid(-1792.0, 256.0, 65536)
    psi = build_initial(InitialStateSpec("airy_apodized", apodization=50.0),
                        g, params)
    assert norm(psi) == pytest.approx(1.0, abs=1e-12)
    assert psi.normalizable


def test_apodized_coverage_guard(params):
    g = make_grid(-96.0, 32.0, 4096)
    with pytest.raises(ValueError, match="x_min"):
        build_initial(InitialStateSpec("airy_apodized", apodization=300.0), g, params)


def test_airy_requires_dispersion(params_eps0):
    g = make_grid(-768.0, 256.0, 32768)
    with pytest.raises(ValueError, match="epsilon"):
        build_initial(InitialStateSpec("airy_ideal"), g, params_eps0)


def test_spec_validation():
    with pytest.raises(ValueError):
        InitialStateSpec("plane_wave")
    with pytest.raises(ValueError):
        InitialStateSpec("gaussian", width=-1.0)
    with pytest.raises(ValueError):
        InitialStateSpec("airy_apodized")


def test_ideal_airy_is_stationary_under_flat_band(params):
    # the profile is the zero-energy eigenfunction of the flat-band Hamiltonian
    g = make_grid(-6144.0, 2048.0, 262144)
    psi0 = build_initial(InitialStateSpec("airy_ideal"), g, params)
    out = evolve_stark_exact(params, psi0, 1.0)
    lo, hi = g.x_min + 0.2 * (g.x_max - g.x_min), g.x_max - 0.2 * (g.x_max - g.x_min)
    win = (g.x >= lo) & (g.x <= hi)
    assert np.max(np.abs(np.abs(out.values[win]) - np.abs(psi0.values[win]))) < 1e-5


def test_airy_bloch_revival_after_one_period(params, band):
    g = make_grid(-6144.0, 2048.0, 262144)
    psi0 = build_initial(InitialStateSpec("airy_ideal"), g, params)
    spec = EvolutionSpec(params, band, "characteristics", (TB,), leak_check=False)
    out = evolve_characteristics(spec, psi0)[0]
    lo, hi = g.x_min + 0.2 * (g.x_max - g.x_min), g.x_max - 0.2 * (g.x_max - g.x_min)
    win = (g.x >= lo) & (g.x <= hi)
    dev = np.max(np.abs(out.values[win] - psi0.values[win]))
    assert dev / np.max(np.abs(psi0.values[win])) < 1e-4
