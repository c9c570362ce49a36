import numpy as np
import pytest

from starkbloch.core import BandDispersion, WaveFunction, make_grid, norm, normalize
from starkbloch.eigen import airy_coefficients, comb_coefficients
from starkbloch.propagator import (airy_pair_integral, kernel_matrix_on_grid,
                                   kernel_weights, propagator_kernel,
                                   replica_weights, shift_map, stark_kernel)
from starkbloch.specfun import bessel_j

from conftest import D, EPS, F, KAPPA, TB

S0SQ = EPS ** (-2 / 3) * F ** (-1 / 3)


def bessel_series_g(l, t, n_window=30):
    """Direct truncated Bessel series for G_l(t) on the sinusoidal band."""
    y = KAPPA / (F * D)
    tot = 0j
    for n in range(-n_window, n_window + 1):
        if abs(n - l) <= n_window:
            tot += bessel_j(n, -y) * bessel_j(n - l, -y) * np.exp(1j * F * t * D * n)
    return S0SQ * tot


def test_kernel_weights_at_zero_are_the_autocorrelation(table):
    g = kernel_weights(table, 0.0)
    assert g.value(0) == pytest.approx(S0SQ, abs=1e-12)
    assert max(abs(g.value(l)) for l in range(1, 10)) < 1e-12


def test_kernel_weights_at_bloch_period(table):
    g = kernel_weights(table, TB)
    assert g.value(0) == pytest.approx(S0SQ, abs=1e-10)
    assert max(abs(g.value(l)) for l in range(1, 10)) < 1e-10


def test_kernel_weights_against_bessel_series(table):
    for t in (0.31 * TB, TB / 2, 1.7 * TB):
        for l in range(-8, 9):
            for method in ("series", "closed_form"):
                got = kernel_weights(table, t, method).value(l)
                assert abs(got - bessel_series_g(l, t)) < 1e-10


def test_kernel_weights_half_period_argument(table):
    # at t = TB/2 the closed-form Bessel argument is 2 kappa/(F d) = 2.5
    g = kernel_weights(table, TB / 2, "closed_form")
    assert abs(abs(g.value(0)) - S0SQ * abs(bessel_j(0, 2.5))) < 1e-10


def test_series_closed_agreement_random_times(table):
    rng = np.random.default_rng(8)
    for t in rng.uniform(1e-6, 2 * TB, 50):
        s = kernel_weights(table, float(t), "series")
        c = kernel_weights(table, float(t), "closed_form")
        assert max(abs(s.value(l) - c.value(l)) for l in range(-20, 21)) < 1e-10


def test_closed_form_needs_sinusoidal_band(params):
    two_harmonics = BandDispersion({1: 0.5, 2: 0.1}, D)
    t = airy_coefficients(params, two_harmonics)
    with pytest.raises(ValueError):
        kernel_weights(t, 1.0, "closed_form")
    with pytest.raises(ValueError):
        kernel_weights(t, 1.0, "fancy")


def test_replica_weights_delta_at_zero_and_bloch_times(table):
    for t in (0.0, TB, 2 * TB, 3 * TB):
        lam = replica_weights(table, t)
        assert abs(lam.value(0) - 1.0) < 1e-10
        assert max(abs(lam.value(l)) for l in range(1, 12)) < 1e-10


def test_replica_weights_magnitudes_at_half_period(table):
    lam = replica_weights(table, TB / 2)
    for l in range(-6, 7):
        assert abs(abs(lam.value(l)) - abs(bessel_j(-l, 2.5))) < 1e-10


def test_replica_weights_unitarity(table):
    rng = np.random.default_rng(9)
    for t in rng.uniform(0, 3 * TB, 20):
        lam = replica_weights(table, float(t)).values
        assert abs(np.vdot(lam, lam) - 1.0) < 1e-8
        for m in (1, 2, 5):
            assert abs(np.sum(lam[m:] * np.conj(lam[:-m]))) < 1e-8


def test_g_magnitude_periodic_in_time(table):
    rng = np.random.default_rng(10)
    for t in rng.uniform(0, 2 * TB, 20):
        a = kernel_weights(table, float(t)).values
        b = kernel_weights(table, float(t) + TB).values
        assert np.max(np.abs(np.abs(a) - np.abs(b))) < 1e-10


def test_stark_kernel_modulus(params):
    x = np.linspace(-3, 3, 11)
    for t in (0.5, 1.0, 2.7):
        u = stark_kernel(params, x, x[::-1] + 0.3, t)
        assert np.max(np.abs(np.abs(u) - 1 / np.sqrt(4 * np.pi * EPS * t))) < 1e-14


def test_stark_kernel_stationary_argument(params):
    # the Gaussian-factor argument vanishes on the classical drift line
    # y - x = eps F t^2, leaving only the analytic prefactor
    for (x, t) in ((0.0, 1.0), (2.0, 1.7)):
        y = x + EPS * F * t ** 2
        u = stark_kernel(params, x, y, t)
        pref = np.sqrt(1 / (4j * np.pi * EPS * t)) * np.exp(
            -1j * F * x * t - 1j * EPS * F ** 2 * t ** 3 / 3)
        assert abs(u - pref) < 1e-14


def test_kernel_flat_band_reduces_to_stark(params, flat_band):
    t = airy_coefficients(params, flat_band)
    x = np.linspace(-4, 4, 17)[:, None]
    y = np.linspace(-6, 6, 19)[None, :]
    for tt in (0.5, 1.3):
        assert np.max(np.abs(propagator_kernel(t, x, y, tt)
                             - stark_kernel(params, x, y, tt))) < 1e-12


def test_kernel_bloch_time_coincidence(params, table):
    x = np.linspace(-4, 4, 15)[:, None]
    y = np.linspace(-10, 4, 17)[None, :]
    assert np.max(np.abs(propagator_kernel(table, x, y, TB)
                         - stark_kernel(params, x, y, TB))) < 1e-10


def test_kernel_rejects_t_zero(params, table):
    with pytest.raises(ValueError):
        propagator_kernel(table, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        stark_kernel(params, 0.0, 0.0, 0.0)


def test_kernel_matrix_matches_pointwise(table):
    g = make_grid(-16.0, 16.0, 64)
    u1 = propagator_kernel(table, g.x[:, None], g.x[None, :], TB / 3)
    u2 = kernel_matrix_on_grid(table, g, TB / 3)
    assert np.max(np.abs(u1 - u2)) == 0.0


def test_kernel_application_preserves_norm(params, table):
    g = make_grid(-64.0, 64.0, 2048)
    psi = normalize(WaveFunction(g, np.exp(-g.x ** 2 / 25.0).astype(complex)))
    u = kernel_matrix_on_grid(table, g, TB / 2)
    out = WaveFunction(g, (u @ psi.values) * g.dx)
    assert abs(norm(out) - 1.0) < 1e-6


def test_shift_map_bloch_times(params_eps0, band):
    comb = comb_coefficients(params_eps0, band)
    g = make_grid(-64.0, 64.0, 2048)
    psi = normalize(WaveFunction(g, np.exp(-g.x ** 2 / 25.0).astype(complex)))
    for m in (1, 2):
        out = shift_map(comb, m * TB).apply(psi)
        # density untouched, phase e^{-2 pi i m x / d}
        assert np.max(np.abs(np.abs(out.values) - np.abs(psi.values))) < 1e-10
        expect = psi.values * np.exp(-2j * np.pi * m * g.x / D)
        assert np.max(np.abs(out.values - expect)) < 1e-10


def test_shift_map_identity_at_zero(params_eps0, band):
    comb = comb_coefficients(params_eps0, band)
    g = make_grid(-64.0, 64.0, 2048)
    psi = normalize(WaveFunction(g, np.exp(-g.x ** 2 / 25.0).astype(complex)))
    out = shift_map(comb, 0.0).apply(psi)
    assert np.max(np.abs(out.values - psi.values)) < 1e-12


def test_shift_map_unitary_weights(params_eps0, band):
    comb = comb_coefficients(params_eps0, band)
    rng = np.random.default_rng(11)
    for t in rng.uniform(0, 3 * TB, 20):
        w = shift_map(comb, float(t)).weights
        assert abs(np.sum(np.abs(w) ** 2) - 1.0) < 1e-10


def test_shift_map_requires_commensurate_grid(params_eps0, band):
    comb = comb_coefficients(params_eps0, band)
    g = make_grid(-50.0, 50.0, 1024)  # d/dx = 40.96
    psi = normalize(WaveFunction(g, np.exp(-g.x ** 2 / 25.0).astype(complex)))
    with pytest.raises(ValueError, match="commensurate"):
        shift_map(comb, 1.0).apply(psi)


def test_pair_integral_modulus_and_phase(params):
    alpha = params.airy_scale
    for (x, t) in ((0.3, 1.0), (-1.0, 2.0)):
        val = airy_pair_integral(params, x, t, "closed")
        assert abs(abs(val) - 1 / np.sqrt(4 * np.pi * EPS * t * alpha ** 2)) < 1e-14
    # on the drift line the Gaussian exponent vanishes exactly
    t = 1.4
    val = airy_pair_integral(params, EPS * F * t ** 2, t, "closed")
    pref = np.sqrt(1 / (4j * np.pi * EPS * t * alpha ** 2))
    assert abs(val - pref * np.exp(-1j * EPS * F ** 2 * t ** 3 / 3)) < 1e-14


def test_pair_integral_quadrature_matches_closed(params):
    for (x, t) in ((1.0, 1.5), (0.0, 2.0)):
        closed = airy_pair_integral(params, x, t, "closed")
        quad = airy_pair_integral(params, x, t, "quadrature")
        assert abs(closed - quad) < 1e-6


def test_pair_integral_error_paths(params, params_eps0):
    with pytest.raises(ValueError):
        airy_pair_integral(params, 0.0, 0.0, "closed")
    with pytest.raises(ValueError):
        airy_pair_integral(params_eps0, 0.0, 1.0, "closed")
    with pytest.raises(ValueError):
        airy_pair_integral(params, 0.0, 1.0, "newton")
    with pytest.raises(RuntimeError, match="extrapolation"):
        airy_pair_integral(params, 1.0, 1.5, "quadrature", resid_tol=1e-18)


def test_weight_sequence_out_of_range(table):
    g = kernel_weights(table, 0.7)
    assert g.value(10 ** 5) == 0j
