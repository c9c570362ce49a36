"""Acceptance suite: the twelve quantitative exit criteria of the library.

Each test evaluates one criterion at its pinned tolerance, enforces the
runtime budget, and prints a single PASS line (run pytest with -s to see
them).  The same computations back the ``starkbloch validate`` subcommand.
"""

import time

import numpy as np
import pytest

from starkbloch.core import make_grid, norm, normalize, WaveFunction
from starkbloch.evolve import (EvolutionSpec, evolve_characteristics,
                               evolve_replica, evolve_splitstep,
                               evolve_stark_exact)
from starkbloch.observables import centroid, revival_probability, width
from starkbloch.specfun import bessel_j_sequence
from starkbloch import validation as val

from conftest import D, EPS, F, KAPPA, TB, l2_distance

S0 = EPS ** (-1 / 3) * F ** (-1 / 6)


def _report(num, name, residual, tol, elapsed, budget):
    line = (f"PASS criterion {num:2d} ({name}): residual {residual:.3e} "
            f"<= tol {tol:.0e}, {elapsed:.1f}s <= {budget:.0f}s")
    print(line)


def test_criterion_01_bessel_closed_form_for_coefficients(table):
    t0 = time.perf_counter()
    seq = bessel_j_sequence(40, -KAPPA / (F * D))
    worst = 0.0
    for n in range(-40, 41):
        closed = S0 * seq[abs(n)] * (1.0 if n >= 0 or n % 2 == 0 else -1.0)
        worst = max(worst, abs(table.coeff(n) - closed))
    elapsed = time.perf_counter() - t0
    assert worst < 1e-8
    assert elapsed < 1.0
    _report(1, "coefficient Bessel closed form", worst, 1e-8, elapsed, 1)


def test_criterion_02_orthonormality_identity(table):
    t0 = time.perf_counter()
    from starkbloch.eigen import coeff_autocorrelation
    worst = 0.0
    for l in range(-40, 41):
        target = S0 ** 2 if l == 0 else 0.0
        worst = max(worst, abs(coeff_autocorrelation(table, l) - target))
    elapsed = time.perf_counter() - t0
    assert worst < 1e-8
    assert elapsed < 1.0
    _report(2, "orthonormality identity", worst, 1e-8, elapsed, 1)


def test_criterion_03_graf_closed_form(table):
    t0 = time.perf_counter()
    residual, tol, _ = val.check_series_closed_agreement(n_times=50, l_window=20)
    elapsed = time.perf_counter() - t0
    assert residual < 1e-10
    assert elapsed < 5.0
    _report(3, "kernel-weight closed form", residual, 1e-10, elapsed, 5)


def test_criterion_04_airy_pair_integral():
    t0 = time.perf_counter()
    residual, tol, _ = val.check_pair_integral()
    elapsed = time.perf_counter() - t0
    assert residual < 1e-6
    assert elapsed < 30.0
    _report(4, "damped quadrature vs closed pair integral", residual, 1e-6,
            elapsed, 30)


def test_criterion_05_bloch_time_coincidence(params, band, gauss_psi0):
    t0 = time.perf_counter()
    times = tuple(m * TB for m in (1, 2, 3))
    stark = [evolve_stark_exact(params, gauss_psi0, t) for t in times]
    worst = 0.0
    for engine, dt in (("replica", None), ("characteristics", None),
                       ("splitstep", TB / 4000)):
        spec = EvolutionSpec(params, band, engine, times, dt=dt)
        for ref, psi2 in zip(stark, {
                "replica": evolve_replica,
                "characteristics": evolve_characteristics,
                "splitstep": evolve_splitstep}[engine](spec, gauss_psi0)):
            worst = max(worst, l2_distance(psi2, ref))
    elapsed = time.perf_counter() - t0
    assert worst < 1e-6
    assert elapsed < 30.0
    _report(5, "Bloch-time coincidence with Stark evolution", worst, 1e-6,
            elapsed, 30)


def test_criterion_06_three_engine_agreement():
    t0 = time.perf_counter()
    residual, tol, _ = val.check_three_way_agreement()
    elapsed = time.perf_counter() - t0
    assert residual < 1e-6
    assert elapsed < 60.0
    _report(6, "three-engine pairwise agreement", residual, 1e-6, elapsed, 60)


def test_criterion_07_parabolic_trajectory(params, gauss_psi0):
    t0 = time.perf_counter()
    out = evolve_stark_exact(params, gauss_psi0, TB)
    residual = abs(centroid(out) - (-EPS * F * TB ** 2))
    width_residual = abs(width(gauss_psi0) - 2.5)
    elapsed = time.perf_counter() - t0
    assert residual < 1e-3
    assert width_residual < 1e-6
    assert elapsed < 20.0
    _report(7, "parabolic trajectory and initial width",
            max(residual, width_residual), 1e-3, elapsed, 20)


def test_criterion_08_pseudo_periodicity_and_period():
    t0 = time.perf_counter()
    residual, tol, _ = val.check_pseudo_periodicity()
    period_res, period_tol, detail = val.check_autocorrelation_period()
    elapsed = time.perf_counter() - t0
    assert residual < 1e-6
    assert period_res < 0.01
    assert elapsed < 30.0
    _report(8, f"pseudo-periodic density ({detail})",
            max(residual, period_res), 1e-6, elapsed, 30)


def test_criterion_09_airy_bloch_revival():
    t0 = time.perf_counter()
    residual, tol, _ = val.check_airy_bloch_revival()
    elapsed = time.perf_counter() - t0
    assert residual < 1e-4
    assert elapsed < 30.0
    _report(9, "ideal-Airy revival after one period", residual, 1e-4,
            elapsed, 30)


def test_criterion_10_apodization_ordering():
    t0 = time.perf_counter()
    rev = val.apodized_revivals()
    elapsed = time.perf_counter() - t0
    assert rev[300.0][0] > rev[100.0][0] > rev[50.0][0]
    assert rev[300.0][0] > 0.9
    seq = rev[50.0]
    assert all(seq[i] > seq[i + 1] for i in range(len(seq) - 1))
    assert elapsed < 60.0
    _report(10, f"apodization ordering (P_rev(TB) = {rev[300.0][0]:.3f} > "
            f"{rev[100.0][0]:.3f} > {rev[50.0][0]:.3f})", 0.0, 1.0, elapsed, 60)


def test_criterion_11_replica_unitarity():
    t0 = time.perf_counter()
    residual, tol, _ = val.check_replica_unitarity(n_times=20)
    elapsed = time.perf_counter() - t0
    assert residual < 1e-8
    assert elapsed < 5.0
    _report(11, "replica-weight unitarity", residual, 1e-8, elapsed, 5)


def test_criterion_12_special_function_floor():
    t0 = time.perf_counter()
    checks = [val.check_bessel_sum_rule, val.check_bessel_recurrence,
              val.check_airy_ode, val.check_bessel_quadrature]
    worst_margin = 0.0
    for fn in checks:
        residual, tol, _ = fn()
        assert residual < tol, fn.__name__
        worst_margin = max(worst_margin, residual / tol)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _report(12, "special-function oracle floor", worst_margin, 1.0, elapsed, 10)
