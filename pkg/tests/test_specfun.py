import math

import numpy as np
import pytest
from scipy import special as sp

from starkbloch.specfun import airy_ai, bessel_j, bessel_j_sequence


# --- independent oracles -----------------------------------------------------

def maclaurin_ai(x, terms=60):
    """Reference Maclaurin evaluation, written independently of the library."""
    c1 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    c2 = 3.0 ** (-1.0 / 3.0) / math.gamma(1.0 / 3.0)
    f = tf = 1.0
    g = tg = x
    for k in range(terms):
        tf *= x ** 3 / ((3 * k + 2) * (3 * k + 3))
        tg *= x ** 3 / ((3 * k + 3) * (3 * k + 4))
        f += tf
        g += tg
    return c1 * f - c2 * g


def bessel_quadrature(n, y, nodes=2048):
    """Trapezoid of the 2pi-periodic integral representation of J_n."""
    x = -np.pi + 2 * np.pi * np.arange(nodes) / nodes
    return float(np.mean(np.exp(1j * (n * x - y * np.sin(x)))).real)


# --- Airy --------------------------------------------------------------------

def test_airy_at_zero():
    assert airy_ai(0.0) == pytest.approx(3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0),
                                         abs=1e-15)


def test_airy_matches_maclaurin_oracle():
    for x in np.linspace(-4.0, 4.0, 81):
        assert abs(airy_ai(float(x)) - maclaurin_ai(float(x))) < 1e-12


def test_airy_first_zero():
    # locate the first zero by bisection on the oracle, then evaluate there
    lo, hi = -2.4, -2.3
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if maclaurin_ai(lo) * maclaurin_ai(mid) <= 0:
            hi = mid
        else:
            lo = mid
    root = 0.5 * (lo + hi)
    assert root == pytest.approx(-2.338107410459767, abs=1e-12)
    assert abs(airy_ai(-2.338107410459767)) < 1e-10


def test_airy_decaying_tail():
    v = airy_ai(10.0)
    assert 0 < v < 1e-9
    # leading asymptotic amplitude as an order-of-magnitude oracle
    zeta = 2.0 / 3.0 * 10.0 ** 1.5
    lead = math.exp(-zeta) / (2 * math.sqrt(math.pi) * 10.0 ** 0.25)
    assert v == pytest.approx(lead, rel=5e-3)


def test_airy_ode_residual():
    x = np.linspace(-8.0, 8.0, 161)
    h = 1e-4
    second = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / h ** 2
    assert np.max(np.abs(second - x * airy_ai(x))) < 1e-5


def test_airy_branch_overlap_agreement():
    from starkbloch.specfun import _airy_decay, _airy_oscillatory, _airy_series
    wneg = np.linspace(-7.5, -7.0, 101)
    assert np.max(np.abs(_airy_series(wneg) - _airy_oscillatory(wneg))) < 1e-10
    wpos = np.linspace(6.0, 6.5, 101)
    assert np.max(np.abs(_airy_series(wpos) - _airy_decay(wpos))) < 1e-10


def test_airy_against_scipy():
    x = np.linspace(-40.0, 10.0, 4001)
    assert np.max(np.abs(airy_ai(x) - sp.airy(x)[0])) < 1e-12
    tail = np.linspace(10.0, 80.0, 701)
    assert np.max(np.abs(airy_ai(tail) / sp.airy(tail)[0] - 1.0)) < 1e-10
    deep = np.linspace(-2000.0, -40.0, 4001)
    assert np.max(np.abs(airy_ai(deep) - sp.airy(deep)[0])) < 1e-10


def test_airy_rejects_non_finite():
    with pytest.raises(ValueError):
        airy_ai(np.inf)


# --- Bessel ------------------------------------------------------------------

def test_bessel_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    for n in (1, 2, 7):
        assert bessel_j(n, 0.0) == 0.0


def test_bessel_against_quadrature_oracle():
    assert abs(bessel_j(0, 1.25) - bessel_quadrature(0, 1.25)) < 1e-12
    for n in range(-20, 21):
        for y in (-10.0, -2.5, 0.8, 5.0, 10.0):
            assert abs(bessel_j(n, y) - bessel_quadrature(n, y)) < 1e-10


def test_bessel_negative_order_symmetry():
    for n in (1, 2, 5, 8):
        for x in (0.7, 2.5, 17.3):
            assert bessel_j(-n, x) == (-1) ** n * bessel_j(n, x)  # exact by construction


def test_bessel_sum_rule():
    for x in (0.5, 1.25, 2.5, 10.0):
        seq = bessel_j_sequence(80, x)
        assert abs(seq[0] ** 2 + 2 * np.sum(seq[1:] ** 2) - 1.0) < 1e-10


def test_bessel_recurrence():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(1, 40))
        x = float(rng.uniform(0.3, 45.0))
        res = bessel_j(n - 1, x) + bessel_j(n + 1, x) - (2 * n / x) * bessel_j(n, x)
        assert abs(res) < 1e-9


def test_bessel_against_scipy():
    rng = np.random.default_rng(6)
    for _ in range(200):
        n = int(rng.integers(0, 80))
        x = float(rng.uniform(-50.0, 50.0))
        ref = sp.jv(n, x)
        got = bessel_j(n, x)
        assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref)) + 1e-280


def test_bessel_large_order_and_caps():
    assert bessel_j(1000, 50.0) == pytest.approx(sp.jv(1000, 50.0), abs=1e-300)
    with pytest.raises(ValueError):
        bessel_j(10_001, 1.0)
    with pytest.raises(ValueError):
        bessel_j(2, math.inf)


def test_bessel_tiny_argument_series():
    assert bessel_j(5, 1e-8) == pytest.approx(sp.jv(5, 1e-8), rel=1e-10)
    assert bessel_j(1, 1e-9) == pytest.approx(5e-10, rel=1e-6)
