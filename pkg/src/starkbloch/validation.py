"""Named validation checks: every library invariant as a (residual, tolerance) pair.

Each check function returns (residual, default_tolerance, detail).  The
registry drives both the ``validate`` CLI subcommand and the acceptance
test suite, so the two surfaces can never drift apart.  Heavy reference
runs (the figure scenarios, coefficient tables) are cached per process.
"""

from __future__ import annotations

import time as _time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (BandDispersion, PhysicalParams, WaveFunction, dft,
                   inner_product, make_grid, norm, normalize)
from .eigen import (EigenState, airy_coefficients, coeff_autocorrelation,
                    comb_coefficients, eigenfunction_eval, spectrum_function)
from .evolve import (EvolutionSpec, evolve_characteristics,
                     evolve_kernel_quadrature, evolve_replica,
                     evolve_shift_map, evolve_splitstep, evolve_stark_exact)
from .initial_states import InitialStateSpec, build_initial
from .observables import centroid, momentum_centroid, parabolic_reference, \
    revival_probability, width
from .propagator import (airy_pair_integral, kernel_weights, propagator_kernel,
                         replica_weights, shift_map, stark_kernel)
from .specfun import airy_ai, bessel_j, bessel_j_sequence

__all__ = ["CheckResult", "CHECKS", "run_checks", "format_report"]


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    seconds: float
    detail: str = ""


# ---------------------------------------------------------------------------
# shared reference setup (Fig. 1-4 parameter set)

EPS, F, D, KAPPA = 0.5, 0.2, 4.0, 1.0
TB = 2 * np.pi / (F * D)


@lru_cache(maxsize=None)
def _params(eps: float = EPS) -> PhysicalParams:
    return PhysicalParams(epsilon=eps, force=F, lattice_period=D)


@lru_cache(maxsize=None)
def _band() -> BandDispersion:
    return BandDispersion.sinusoidal(KAPPA, D)


@lru_cache(maxsize=None)
def _table():
    return airy_coefficients(_params(), _band())


@lru_cache(maxsize=None)
def _grid():
    return make_grid(-96.0, 160.0, 8192)


@lru_cache(maxsize=None)
def _gauss_psi0() -> WaveFunction:
    return build_initial(InitialStateSpec("gaussian", width=5.0), _grid(), _params())


@lru_cache(maxsize=None)
def _fig3_times() -> tuple[float, ...]:
    return (TB / 4, TB / 2, TB, 2 * TB)


@lru_cache(maxsize=None)
def _fig3_runs():
    """The three independent engines on the accelerated-oscillation scenario."""
    psi0 = _gauss_psi0()
    times = _fig3_times()
    spec_c = EvolutionSpec(_params(), _band(), "characteristics", times)
    spec_r = EvolutionSpec(_params(), _band(), "replica", times)
    spec_s = EvolutionSpec(_params(), _band(), "splitstep", times, dt=TB / 4000)
    return {
        "characteristics": evolve_characteristics(spec_c, psi0),
        "replica": evolve_replica(spec_r, psi0),
        "splitstep": evolve_splitstep(spec_s, psi0),
    }


def _l2(a: WaveFunction, b: WaveFunction) -> float:
    return float(np.sqrt(np.sum(np.abs(a.values - b.values) ** 2) * a.grid.dx))


# ---------------------------------------------------------------------------
# core

def check_dft_unitarity():
    g = make_grid(-64.0, 64.0, 1024)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        psi = WaveFunction(g, rng.normal(size=g.n_points)
                           + 1j * rng.normal(size=g.n_points))
        worst = max(worst, abs(norm(dft(psi, "forward")) - norm(psi)) / norm(psi))
    return worst, 1e-12, "100 random vectors"


def check_band_periodicity():
    band = _band()
    rng = np.random.default_rng(8)
    q = rng.uniform(-30, 30, 200)
    worst = float(np.max(np.abs(band.evaluate(q + 2 * np.pi / D) - band.evaluate(q))))
    return worst, 1e-12, "200 random q"


def check_band_antiderivative():
    band = _band()
    rng = np.random.default_rng(9)
    q = rng.uniform(-10, 10, 200)
    h = 1e-5
    deriv = (np.asarray(band.antiderivative(q + h))
             - np.asarray(band.antiderivative(q - h))) / (2 * h)
    worst = float(np.max(np.abs(deriv - band.evaluate(q))))
    return worst, 1e-6, "central differences, h=1e-5"


# ---------------------------------------------------------------------------
# specfun

def check_bessel_sum_rule():
    worst = 0.0
    for x in (0.5, 1.25, 2.5, 10.0):
        seq = bessel_j_sequence(80, x)
        worst = max(worst, abs(seq[0] ** 2 + 2 * np.sum(seq[1:] ** 2) - 1.0))
    return worst, 1e-10, "x in {0.5, 1.25, 2.5, 10}"


def check_bessel_recurrence():
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 40))
        x = float(rng.uniform(0.3, 40.0))
        res = bessel_j(n - 1, x) + bessel_j(n + 1, x) - (2 * n / x) * bessel_j(n, x)
        worst = max(worst, abs(res))
    return worst, 1e-9, "100 random (n, x)"


def check_airy_ode():
    x = np.linspace(-8.0, 8.0, 321)
    h = 1e-4
    second = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / h ** 2
    worst = float(np.max(np.abs(second - x * airy_ai(x))))
    return worst, 1e-5, "central stencil h=1e-4 on [-8, 8]"


def _bessel_quadrature_oracle(n: int, y: float, nodes: int = 1024) -> float:
    x = -np.pi + 2 * np.pi * np.arange(nodes) / nodes
    return float(np.mean(np.exp(1j * (n * x - y * np.sin(x)))).real)


def check_bessel_quadrature():
    worst = 0.0
    for n in range(-20, 21):
        for y in (-10.0, -1.25, 0.5, 3.7, 10.0):
            worst = max(worst, abs(bessel_j(n, y) - _bessel_quadrature_oracle(n, y)))
    return worst, 1e-10, "integral representation, |n|<=20"


def check_airy_branch_overlap():
    from .specfun import _airy_decay, _airy_oscillatory, _airy_series
    wneg = np.linspace(-7.5, -7.0, 201)
    wpos = np.linspace(6.0, 6.5, 201)
    worst = max(float(np.max(np.abs(_airy_series(wneg) - _airy_oscillatory(wneg)))),
                float(np.max(np.abs(_airy_series(wpos) - _airy_decay(wpos)))))
    return worst, 1e-10, "series vs asymptotics in both overlap windows"


# ---------------------------------------------------------------------------
# eigen

def check_orthonormality(l_range: int | None = None):
    t = _table()
    lmax = 2 * t.n_max if l_range is None else l_range
    s0sq = t.norm_amplitude ** 2
    worst = 0.0
    for l in range(-lmax, lmax + 1):
        target = s0sq if l == 0 else 0.0
        worst = max(worst, abs(coeff_autocorrelation(t, l) - target))
    return worst, 1e-8, f"|l| <= {lmax}"


def check_quadrature_convergence():
    from .eigen import _phase_fourier_coefficients
    p, band = _params(), _band()
    n1, c1 = _phase_fourier_coefficients(p, band, 2048)
    n2, c2 = _phase_fourier_coefficients(p, band, 4096)
    sel1 = np.abs(n1) <= 512
    sel2 = np.abs(n2) <= 512
    s0 = p.epsilon ** (-1 / 3) * p.force ** (-1 / 6)
    worst = float(np.max(np.abs(c1[sel1] - c2[sel2]))) * s0
    return worst, 1e-11, "node doubling 2048 -> 4096"


def check_bessel_equivalence(n_window: int = 40):
    t = _table()
    y = KAPPA / (F * D)
    seq = bessel_j_sequence(n_window, -y)
    worst = 0.0
    for n in range(-n_window, n_window + 1):
        closed = t.norm_amplitude * seq[abs(n)] * (1.0 if n >= 0 or n % 2 == 0 else -1.0)
        worst = max(worst, abs(t.coeff(n) - closed))
    return worst, 1e-8, f"|n| <= {n_window}, quadrature vs Bessel closed form"


def check_sigma_rho_proportionality():
    p, band = _params(), _band()
    airy = airy_coefficients(p, band)
    comb = comb_coefficients(p, band)
    ratio = p.epsilon ** (1 / 3) * p.force ** (-1 / 3)
    m = min(airy.n_max, comb.n_max)
    a = airy.coeffs[airy.n_max - m: airy.n_max + m + 1]
    b = comb.coeffs[comb.n_max - m: comb.n_max + m + 1]
    worst = float(np.max(np.abs(ratio * a - b)))
    return worst, 1e-10, "comb table vs scaled airy table"


def check_eigenfunction_shift_covariance():
    t = _table()
    x = np.linspace(-30.0, 10.0, 401)
    e = 0.37
    a = eigenfunction_eval(EigenState(e, t), x)
    b = eigenfunction_eval(EigenState(e + F * D, t), x + D)
    worst = float(np.max(np.abs(a - b)))
    return worst, 1e-10, "phi(E + F d, x + d) = phi(E, x)"


def check_eigenfunction_residual():
    """(H - E) phi_E = 0 on a smoothly windowed sample, spectral H."""
    t = _table()
    p, band = _params(), _band()
    g = make_grid(-48.0, 16.0, 2048)
    e = 0.0
    phi = np.asarray(eigenfunction_eval(EigenState(e, t), g.x), dtype=complex)
    ramp = 10.0
    wleft = 0.5 * (1 - np.cos(np.pi * np.clip((g.x - g.x_min) / ramp, 0, 1)))
    wright = 0.5 * (1 - np.cos(np.pi * np.clip((g.x_max - g.dx - g.x) / ramp, 0, 1)))
    win = wleft * wright
    f = phi * win
    kinetic = p.epsilon * g.q ** 2 + np.asarray(band.evaluate(g.q))
    hf = np.fft.ifft(kinetic * np.fft.fft(f)) + p.force * g.x * f
    inner = (g.x > g.x_min + ramp + D) & (g.x < g.x_max - ramp - D)
    worst = float(np.max(np.abs(hf - e * f)[inner]))
    return worst, 1e-4, "spectral (H - E) on windowed phi_E, interior points"


# ---------------------------------------------------------------------------
# propagator

def check_replica_unitarity(n_times: int = 20):
    t = _table()
    rng = np.random.default_rng(11)
    worst = 0.0
    for tt in rng.uniform(0.0, 3 * TB, n_times):
        lam = replica_weights(t, float(tt)).values
        for m in range(0, 8):
            ac = np.vdot(lam, lam) if m == 0 else np.sum(lam[m:] * np.conj(lam[:-m]))
            target = 1.0 if m == 0 else 0.0
            worst = max(worst, abs(ac - target))
    return worst, 1e-8, f"{n_times} random t, offsets m <= 7"


def check_bloch_time_collapse():
    t = _table()
    worst = 0.0
    for m in range(1, 6):
        lam = replica_weights(t, m * TB)
        delta = np.zeros(len(lam.values))
        delta[lam.l_max] = 1.0
        worst = max(worst, float(np.max(np.abs(lam.values - delta))))
    return worst, 1e-10, "m = 1..5"


def check_series_closed_agreement(n_times: int = 50, l_window: int = 20):
    t = _table()
    rng = np.random.default_rng(12)
    worst = 0.0
    for tt in rng.uniform(1e-6, 2 * TB, n_times):
        for maker in (kernel_weights, replica_weights):
            s = maker(t, float(tt), "series")
            c = maker(t, float(tt), "closed_form")
            for l in range(-l_window, l_window + 1):
                worst = max(worst, abs(s.value(l) - c.value(l)))
    return worst, 1e-10, f"{n_times} random t in (0, 2TB), |l| <= {l_window}"


def check_g_magnitude_periodicity():
    t = _table()
    rng = np.random.default_rng(13)
    worst = 0.0
    for tt in rng.uniform(0.0, 2 * TB, 25):
        a = kernel_weights(t, float(tt)).values
        b = kernel_weights(t, float(tt) + TB).values
        worst = max(worst, float(np.max(np.abs(np.abs(a) - np.abs(b)))))
    return worst, 1e-10, "|G_l(t + TB)| = |G_l(t)|, 25 random t"


def check_kernel_stark_limit():
    p = _params()
    flat_table = airy_coefficients(p, BandDispersion.flat(D))
    x = np.linspace(-5.0, 5.0, 41)[:, None]
    y = np.linspace(-6.0, 6.0, 43)[None, :]
    worst = 0.0
    for tt in (0.5, 1.0, 2.0):
        u1 = propagator_kernel(flat_table, x, y, tt)
        u2 = stark_kernel(p, x, y, tt)
        worst = max(worst, float(np.max(np.abs(u1 - u2))))
    return worst, 1e-12, "flat band kernel vs Stark kernel"


def check_kernel_bloch_coincidence():
    t = _table()
    p = _params()
    x = np.linspace(-4.0, 4.0, 33)[:, None]
    y = np.linspace(-12.0, 4.0, 37)[None, :]
    u1 = propagator_kernel(t, x, y, TB)
    u2 = stark_kernel(p, x, y, TB)
    worst = float(np.max(np.abs(u1 - u2)))
    return worst, 1e-10, "full kernel at t = TB vs Stark kernel"


def check_kernel_unitarity():
    g = make_grid(-64.0, 64.0, 2048)
    psi0 = build_initial(InitialStateSpec("gaussian", width=5.0), g, _params())
    spec = EvolutionSpec(_params(), _band(), "kernel_quadrature", (TB / 2,))
    out = evolve_kernel_quadrature(spec, psi0, TB / 2)
    return abs(norm(out) - 1.0), 1e-6, "kernel applied to a Gaussian"


def check_shift_map_unitarity():
    comb = comb_coefficients(_params(0.0), _band())
    rng = np.random.default_rng(14)
    worst = 0.0
    for tt in rng.uniform(0.0, 3 * TB, 20):
        w = shift_map(comb, float(tt)).weights
        worst = max(worst, abs(float(np.sum(np.abs(w) ** 2)) - 1.0))
    return worst, 1e-10, "sum_l |w_l|^2 = 1, 20 random t"


_PAIR_INTEGRAL_POINTS = ((0.0, 1.5), (1.0, 1.5), (-2.0, 1.5), (2.0, 1.8),
                         (-1.0, 2.0), (0.5, 2.2), (3.0, 2.0), (-3.0, 2.5),
                         (1.5, 2.5), (0.62, 2.9))


def check_pair_integral(points=_PAIR_INTEGRAL_POINTS):
    p = _params()
    worst = 0.0
    for (x, t) in points:
        closed = airy_pair_integral(p, x, t, "closed")
        quad = airy_pair_integral(p, x, t, "quadrature")
        worst = max(worst, abs(closed - quad))
    return worst, 1e-6, f"{len(points)} (x, t) points, damped quadrature vs closed form"


# ---------------------------------------------------------------------------
# evolve

def check_norm_conservation():
    runs = _fig3_runs()
    worst = 0.0
    for series in runs.values():
        for psi in series:
            worst = max(worst, abs(norm(psi) - 1.0))
    p0 = _params(0.0)
    psi0 = _gauss_psi0()
    spec0 = EvolutionSpec(p0, _band(), "shift_map", (TB / 3, 2.7 * TB))
    for t in spec0.record_times:
        worst = max(worst, abs(norm(evolve_shift_map(spec0, psi0, t)) - 1.0))
    return worst, 1e-8, "all engines over the reference scenarios"


def check_three_way_agreement():
    runs = _fig3_runs()
    names = list(runs)
    worst = 0.0
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            for a, b in zip(runs[names[i]], runs[names[j]]):
                worst = max(worst, _l2(a, b))
    return worst, 1e-6, "splitstep / characteristics / replica, 4 record times"


def check_bloch_time_coincidence():
    psi0 = _gauss_psi0()
    p = _params()
    times = tuple(m * TB for m in (1, 2, 3))
    spec_r = EvolutionSpec(p, _band(), "replica", times)
    spec_c = EvolutionSpec(p, _band(), "characteristics", times)
    worst = 0.0
    for engine_out in (evolve_replica(spec_r, psi0),
                       evolve_characteristics(spec_c, psi0)):
        for t, psi2 in zip(times, engine_out):
            psi1 = evolve_stark_exact(p, psi0, t)
            worst = max(worst, _l2(psi2, psi1))
    return worst, 1e-6, "psi_full(m TB) vs psi_stark(m TB), m = 1..3, two engines"


def check_pseudo_periodicity():
    p0 = _params(0.0)
    psi0 = _gauss_psi0()
    spec = EvolutionSpec(p0, _band(), "shift_map", tuple(m * TB for m in range(1, 6)))
    dens0 = np.abs(psi0.values) ** 2
    worst = 0.0
    for t in spec.record_times:
        psi = evolve_shift_map(spec, psi0, t)
        worst = max(worst, float(np.sum(np.abs(np.abs(psi.values) ** 2 - dens0))
                                 * psi.grid.dx))
    return worst, 1e-6, "L1 density distance at m TB, m = 1..5"


def check_time_reversal():
    psi0 = _gauss_psi0()
    spec_fwd = EvolutionSpec(_params(), _band(), "characteristics", (1.3 * TB,))
    mid = evolve_characteristics(spec_fwd, psi0)[0]
    from .evolve import _characteristics_single
    back = _characteristics_single(_params(), _band(), mid, -1.3 * TB)
    return _l2(back, psi0), 1e-9, "characteristics forward then backward"


def check_splitstep_order():
    psi0 = _gauss_psi0()
    p = _params()
    ref = evolve_characteristics(
        EvolutionSpec(p, _band(), "characteristics", (TB,)), psi0)[0]
    errs = []
    for dt in (TB / 2000, TB / 4000):
        out = evolve_splitstep(
            EvolutionSpec(p, _band(), "splitstep", (TB,), dt=dt), psi0)[0]
        errs.append(_l2(out, ref))
    ratio = errs[0] / errs[1]
    return abs(ratio - 4.0), 0.8, f"error ratio {ratio:.3f} for dt halving (target 4)"


# ---------------------------------------------------------------------------
# observables

def check_strobe_parabola():
    psi0 = _gauss_psi0()
    p = _params()
    x0 = centroid(psi0)
    p0 = momentum_centroid(psi0)
    times = tuple(m * TB for m in (1, 2, 3))
    spec = EvolutionSpec(p, _band(), "replica", times)
    worst = 0.0
    for t, psi in zip(times, evolve_replica(spec, psi0)):
        worst = max(worst, abs(centroid(psi) - parabolic_reference(p, x0, p0, t)))
    return worst, 1e-3, "accelerated-oscillation centroid at m TB vs parabola"


def check_strobe_width():
    psi0 = _gauss_psi0()
    p = _params()
    times = tuple(m * TB for m in (1, 2, 3))
    spec = EvolutionSpec(p, _band(), "replica", times)
    worst = 0.0
    for t, psi in zip(times, evolve_replica(spec, psi0)):
        flat = evolve_stark_exact(p, psi0, t)
        worst = max(worst, abs(width(psi) - width(flat)))
    return worst, 1e-4, "width at m TB vs flat-band width"


def check_revival_bounded():
    runs = _fig3_runs()
    psi0 = _gauss_psi0()
    lo, hi = np.inf, -np.inf
    for series in runs.values():
        for psi in series:
            pr = revival_probability(psi0, psi)
            lo, hi = min(lo, pr), max(hi, pr)
    worst = max(hi - 1.0, -lo, 0.0)
    return worst, 1e-9, f"P_rev range [{lo:.3e}, {hi:.6f}]"


# ---------------------------------------------------------------------------
# initial states

def check_airy_stationary():
    p = _params()
    g = make_grid(-6144.0, 2048.0, 262144)
    psi0 = build_initial(InitialStateSpec("airy_ideal"), g, p)
    out = evolve_stark_exact(p, psi0, 1.0)
    lo = g.x_min + 0.2 * (g.x_max - g.x_min)
    hi = g.x_max - 0.2 * (g.x_max - g.x_min)
    win = (g.x >= lo) & (g.x <= hi)
    dev = np.abs(np.abs(out.values[win]) - np.abs(psi0.values[win]))
    return float(np.max(dev)), 1e-5, "flat-band evolution leaves |psi| fixed (t=1)"


def check_airy_bloch_revival():
    p = _params()
    g = make_grid(-6144.0, 2048.0, 262144)
    psi0 = build_initial(InitialStateSpec("airy_ideal"), g, p)
    spec = EvolutionSpec(p, _band(), "characteristics", (TB,), leak_check=False)
    out = evolve_characteristics(spec, psi0)[0]
    lo = g.x_min + 0.2 * (g.x_max - g.x_min)
    hi = g.x_max - 0.2 * (g.x_max - g.x_min)
    win = (g.x >= lo) & (g.x <= hi)
    dev = np.max(np.abs(out.values[win] - psi0.values[win]))
    return float(dev / np.max(np.abs(psi0.values[win]))), 1e-4, \
        "ideal Airy profile after one Bloch period, interior window"


def apodized_revivals() -> dict[float, list[float]]:
    """P_rev(m TB), m = 1..4, for the three apodization lengths."""
    p = _params()
    grids = {300.0: make_grid(-7168.0, 1024.0, 262144),
             100.0: make_grid(-3584.0, 512.0, 131072),
             50.0: make_grid(-1792.0, 256.0, 65536)}
    out: dict[float, list[float]] = {}
    for a, g in grids.items():
        psi0 = build_initial(InitialStateSpec("airy_apodized", apodization=a), g, p)
        spec = EvolutionSpec(p, _band(), "characteristics",
                             tuple(m * TB for m in range(1, 5)))
        series = evolve_characteristics(spec, psi0)
        out[a] = [revival_probability(psi0, psi) for psi in series]
    return out


def check_apodization_ordering():
    rev = apodized_revivals()
    ok_order = rev[300.0][0] > rev[100.0][0] > rev[50.0][0]
    ok_level = rev[300.0][0] > 0.9
    seq = rev[50.0]
    ok_monotone = all(seq[i] > seq[i + 1] for i in range(len(seq) - 1))
    passed = ok_order and ok_level and ok_monotone
    detail = (f"P_rev(TB): a300={rev[300.0][0]:.4f} a100={rev[100.0][0]:.4f} "
              f"a50={rev[50.0][0]:.4f}; a50 sequence {['%.3f' % v for v in seq]}")
    return (0.0 if passed else 1.0), 0.5, detail


# ---------------------------------------------------------------------------
# cli / export

def check_density_roundtrip():
    import tempfile
    from pathlib import Path
    from .export import load_density, write_density
    rng = np.random.default_rng(15)
    dens = rng.random((7, 33))
    x = np.linspace(-2, 2, 33)
    times = np.linspace(0, 1, 7)
    with tempfile.TemporaryDirectory() as tmp:
        base = Path(tmp) / "dens"
        write_density(base, dens, x, times, {"epsilon": 0.5})
        back, meta = load_density(base)
    exact = np.array_equal(back, dens)
    return (0.0 if exact else 1.0), 0.0, "written bytes parse back bit-exactly"


def check_autocorrelation_period():
    """Density autocorrelation of the epsilon = 0 run peaks at TB within 1%."""
    p0 = _params(0.0)
    psi0 = _gauss_psi0()
    comb = comb_coefficients(p0, _band())
    dens0 = np.abs(psi0.values) ** 2
    taus = np.linspace(0.5 * TB, 1.5 * TB, 201)
    overlaps = []
    for t in taus:
        psi = shift_map(comb, float(t)).apply(psi0)
        overlaps.append(float(np.sum(np.abs(psi.values) ** 2 * dens0)))
    overlaps = np.array(overlaps)
    k = int(np.argmax(overlaps))
    if 0 < k < len(taus) - 1:  # parabolic refinement
        y0, y1, y2 = overlaps[k - 1: k + 2]
        k_frac = 0.5 * (y0 - y2) / (y0 - 2 * y1 + y2)
        peak = taus[k] + k_frac * (taus[1] - taus[0])
    else:
        peak = taus[k]
    return abs(peak - TB) / TB, 0.01, f"peak at {peak:.4f} vs TB = {TB:.4f}"


# ---------------------------------------------------------------------------

CHECKS: dict[str, callable] = {
    "core.dft_unitarity": check_dft_unitarity,
    "core.band_periodicity": check_band_periodicity,
    "core.band_antiderivative": check_band_antiderivative,
    "specfun.bessel_sum_rule": check_bessel_sum_rule,
    "specfun.bessel_recurrence": check_bessel_recurrence,
    "specfun.airy_ode": check_airy_ode,
    "specfun.bessel_quadrature": check_bessel_quadrature,
    "specfun.airy_branch_overlap": check_airy_branch_overlap,
    "eigen.orthonormality": check_orthonormality,
    "eigen.quadrature_convergence": check_quadrature_convergence,
    "eigen.bessel_equivalence": check_bessel_equivalence,
    "eigen.sigma_rho_proportionality": check_sigma_rho_proportionality,
    "eigen.shift_covariance": check_eigenfunction_shift_covariance,
    "eigen.eigenfunction_residual": check_eigenfunction_residual,
    "propagator.replica_unitarity": check_replica_unitarity,
    "propagator.bloch_time_collapse": check_bloch_time_collapse,
    "propagator.series_closed_agreement": check_series_closed_agreement,
    "propagator.magnitude_periodicity": check_g_magnitude_periodicity,
    "propagator.stark_limit": check_kernel_stark_limit,
    "propagator.bloch_kernel_coincidence": check_kernel_bloch_coincidence,
    "propagator.kernel_unitarity": check_kernel_unitarity,
    "propagator.shift_map_unitarity": check_shift_map_unitarity,
    "propagator.pair_integral": check_pair_integral,
    "evolve.norm_conservation": check_norm_conservation,
    "evolve.three_way_agreement": check_three_way_agreement,
    "evolve.bloch_time_coincidence": check_bloch_time_coincidence,
    "evolve.pseudo_periodicity": check_pseudo_periodicity,
    "evolve.time_reversal": check_time_reversal,
    "evolve.splitstep_order": check_splitstep_order,
    "observables.strobe_parabola": check_strobe_parabola,
    "observables.strobe_width": check_strobe_width,
    "observables.revival_bounded": check_revival_bounded,
    "initial_states.airy_stationary": check_airy_stationary,
    "initial_states.airy_bloch_revival": check_airy_bloch_revival,
    "initial_states.apodization_ordering": check_apodization_ordering,
    "cli.density_roundtrip": check_density_roundtrip,
    "cli.autocorrelation_period": check_autocorrelation_period,
}


def run_checks(names: list[str] | None = None,
               tol_overrides: dict[str, float] | None = None) -> list[CheckResult]:
    tol_overrides = tol_overrides or {}
    unknown = set(tol_overrides) - set(CHECKS)
    if unknown:
        raise KeyError(f"tolerance overrides for unknown checks: {sorted(unknown)}")
    selected = list(CHECKS) if names is None else names
    results = []
    for name in selected:
        if name not in CHECKS:
            raise KeyError(f"unknown check {name!r}")
        t0 = _time.perf_counter()
        residual, tol, detail = CHECKS[name]()
        tol = tol_overrides.get(name, tol)
        results.append(CheckResult(name=name, residual=float(residual),
                                   tolerance=float(tol),
                                   passed=bool(residual <= tol),
                                   seconds=_time.perf_counter() - t0,
                                   detail=detail))
    return results


def format_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        verdict = "PASS" if r.passed else "FAIL"
        lines.append(f"{verdict} {r.name} residual={r.residual:.3e} "
                     f"tol={r.tolerance:.1e} time={r.seconds:.2f}s  [{r.detail}]")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines)
