"""Analytic propagation machinery: kernel weights, replica weights, kernels.

The time-evolution kernel for epsilon > 0 is a weighted sum of shifted
Fresnel (complex-Gaussian) factors,

    U(x,y,t) = F^{1/3} eps^{2/3} sqrt(1/(4 pi i eps t))
               * exp(-i F x t - i eps F^2 t^3 / 3)
               * sum_l  G_l(t) exp[-(y - x + d l - eps F t^2)^2 / (4 i eps t)],

with G_l(t) = sum_n c_n conj(c_{n-l}) e^{i F t d n} built from the
eigenfunction coefficient table.  The replica weights

    L_l(t) = F^{1/3} eps^{2/3} G_l(t) e^{-i F d l t}

relate the full solution to the pure-Stark solution by a lattice-shift
superposition; they collapse to a Kronecker delta at every multiple of the
Bloch period.  For a sinusoidal band both sequences have closed forms in
Bessel functions; the closed form is evaluated on a branch chosen smooth in
t, and its agreement with the coefficient series is a standing test.

In the epsilon = 0 limit the kernel degenerates to a pure lattice-shift map
with unimodular total weight; it is represented as weights, never as
sampled delta functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import PhysicalParams, WaveFunction, dft
from .eigen import AiryCoeffTable, CombCoeffTable
from .specfun import airy_ai, bessel_j_sequence

__all__ = [
    "WeightSequence",
    "kernel_weights",
    "replica_weights",
    "propagator_kernel",
    "stark_kernel",
    "ShiftMap",
    "shift_map",
    "airy_pair_integral",
]

_TRUNC = 1e-14


@dataclass(frozen=True)
class WeightSequence:
    """Weights over lattice shifts l in [-l_max, l_max] at a fixed time."""

    time: float
    kind: str                 # "kernel" (G) or "replica" (L)
    method: str               # "series" or "closed_form"
    values: np.ndarray = field(repr=False)

    @property
    def l_max(self) -> int:
        return (len(self.values) - 1) // 2

    @property
    def shifts(self) -> np.ndarray:
        return np.arange(-self.l_max, self.l_max + 1)

    def value(self, l: int) -> complex:
        if abs(l) > self.l_max:
            return 0j
        return complex(self.values[l + self.l_max])


def _series_g(table: AiryCoeffTable, t: float) -> np.ndarray:
    """G_l for all l in [-2 n_max, 2 n_max] from the coefficient table."""
    c = table.coeffs
    p = table.params
    phased = c * np.exp(1j * p.force * t * p.lattice_period * table.orders)
    # G_l = sum_n phased_n conj(c_{n-l}) = cross-correlation of phased with c
    full = np.correlate(phased, c, mode="full")  # index k <-> l = k - 2 n_max
    return full


def _require_sinusoidal(table) -> float:
    kappa = table.band.sinusoidal_amplitude()
    if kappa is None:
        raise ValueError("closed_form weights require a sinusoidal band")
    return kappa


def _closed_g(table: AiryCoeffTable, t: float, l_max: int) -> np.ndarray:
    """Graf-formula closed form, branch kept smooth in t.

    With theta = F d t and a signed Bessel argument z = 2 (kappa/(F d)) sin(theta/2):
        G_l(t) = S(0)^2 J_{-l}(z) exp(i l (pi + theta) / 2).
    The phase factor is evaluated literally (no reduction), which tracks the
    series branch continuously from t = 0 through every Bloch period.
    """
    kappa = _require_sinusoidal(table)
    p = table.params
    theta = p.force * p.lattice_period * t
    z = 2.0 * kappa / (p.force * p.lattice_period) * np.sin(theta / 2.0)
    ls = np.arange(-l_max, l_max + 1)
    js = bessel_j_sequence(l_max, z)
    sign = np.where((ls > 0) & (ls % 2 != 0), -1.0, 1.0)  # J_{-l}(z) = (-1)^l J_l(z)
    j_at_minus_l = sign * js[np.abs(ls)]
    s0sq = table.norm_amplitude ** 2
    return s0sq * j_at_minus_l * np.exp(1j * ls * (np.pi + theta) / 2.0)


def kernel_weights(table: AiryCoeffTable, t: float,
                   method: str = "series") -> WeightSequence:
    """G_l(t), the Fresnel-factor weights of the propagator kernel."""
    if method == "series":
        vals = _series_g(table, t)
    elif method == "closed_form":
        vals = _closed_g(table, t, 2 * table.n_max)
    else:
        raise ValueError(f"unknown method {method!r}")
    return WeightSequence(time=float(t), kind="kernel", method=method, values=vals)


def replica_weights(table: AiryCoeffTable, t: float,
                    method: str = "series") -> WeightSequence:
    """L_l(t): weights of the lattice-shift decomposition onto the Stark solution.

    Two algebraically equivalent series expressions exist (a phase times the
    kernel weights, and a direct re-indexed sum); both are evaluated and
    required to agree, which pins the index conventions.
    """
    p = table.params
    pref = p.force ** (1.0 / 3.0) * p.epsilon ** (2.0 / 3.0)
    ls = np.arange(-2 * table.n_max, 2 * table.n_max + 1)
    phase = np.exp(-1j * p.force * p.lattice_period * ls * t)
    if method == "series":
        via_g = pref * _series_g(table, t) * phase
        c = table.coeffs
        phased = np.conj(c) * np.exp(1j * p.force * p.lattice_period * t * table.orders)
        direct = pref * np.correlate(c, np.conj(phased), mode="full")
        if np.max(np.abs(via_g - direct)) > 1e-10 * max(1.0, np.max(np.abs(direct))):
            raise AssertionError("the two replica-weight expressions disagree")
        vals = direct
    elif method == "closed_form":
        vals = pref * _closed_g(table, t, 2 * table.n_max) * phase
    else:
        raise ValueError(f"unknown method {method!r}")
    return WeightSequence(time=float(t), kind="replica", method=method, values=vals)


def _fresnel_prefactor(epsilon: float, t: float) -> complex:
    return complex(np.sqrt(1.0 / (4j * np.pi * epsilon * t)))


def stark_kernel(params: PhysicalParams, x, y, t: float):
    """Exact kernel of H = eps p^2 + F x (no band), t != 0."""
    if t == 0:
        raise ValueError("the kernel is distributional at t = 0")
    if params.epsilon <= 0:
        raise ValueError("stark_kernel requires epsilon > 0")
    eps, f = params.epsilon, params.force
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    pref = _fresnel_prefactor(eps, t) * np.exp(-1j * f * x * t - 1j * eps * f ** 2 * t ** 3 / 3)
    gauss = np.exp(-((y - x - eps * f * t ** 2) ** 2) / (4j * eps * t))
    return pref * gauss


def propagator_kernel(table: AiryCoeffTable, x, y, t: float,
                      method: str = "series"):
    """Full kernel U(x,y,t) as the weighted Fresnel sum; validation-scale only."""
    if t == 0:
        raise ValueError("the kernel is distributional at t = 0")
    p = table.params
    eps, f, d = p.epsilon, p.force, p.lattice_period
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    g = kernel_weights(table, t, method)
    pref = f ** (1.0 / 3.0) * eps ** (2.0 / 3.0) * _fresnel_prefactor(eps, t) \
        * np.exp(-1j * f * x * t - 1j * eps * f ** 2 * t ** 3 / 3)
    u = np.asarray(y - x - eps * f * t ** 2, dtype=float)
    return pref * _fresnel_sum(g, u, eps, d, t)


def _fresnel_sum(g: WeightSequence, u: np.ndarray, eps: float, d: float,
                 t: float) -> np.ndarray:
    """sum_l G_l exp(-(u + d l)^2 / (4 i eps t)) over the kept weights.

    (u + d l)^2 splits into a shared Fresnel base times powers of a
    unimodular factor w(u), so the sum needs only two large exponentials.
    """
    cap = _TRUNC * np.max(np.abs(g.values))
    kept = [l for l in range(-g.l_max, g.l_max + 1) if abs(g.value(l)) > cap]
    l_hi = max(abs(l) for l in kept) if kept else 0
    base = np.exp(-(u * u) / (4j * eps * t))
    w = np.exp(-(2.0 * u * d) / (4j * eps * t))
    acc = np.zeros(u.shape, dtype=complex)
    for direction in (1, -1):
        step = w if direction == 1 else np.conj(w)
        p = np.ones(u.shape, dtype=complex) if direction == 1 else step.copy()
        for l in range(0 if direction == 1 else 1, l_hi + 1):
            gl = g.value(direction * l)
            if abs(gl) > cap:
                acc += (gl * np.exp(-(d * l) ** 2 / (4j * eps * t))) * p
            if l < l_hi:
                p *= step
    return base * acc


def kernel_matrix_on_grid(table: AiryCoeffTable, grid, t: float,
                          method: str = "series") -> np.ndarray:
    """Dense U(x_i, x_j, t) on a uniform grid, via its Toeplitz structure.

    The Fresnel sum depends on x_j - x_i only, so it is evaluated once on the
    2N-1 distinct offsets and fanned out by indexing.
    """
    if t == 0:
        raise ValueError("the kernel is distributional at t = 0")
    p = table.params
    eps, f, d = p.epsilon, p.force, p.lattice_period
    n = grid.n_points
    offsets = np.arange(-(n - 1), n) * grid.dx - eps * f * t ** 2
    kv = _fresnel_sum(kernel_weights(table, t, method), offsets, eps, d, t)
    idx = (n - 1) + (np.arange(n)[None, :] - np.arange(n)[:, None])
    pref = f ** (1.0 / 3.0) * eps ** (2.0 / 3.0) * _fresnel_prefactor(eps, t) \
        * np.exp(-1j * f * grid.x * t - 1j * eps * f ** 2 * t ** 3 / 3)
    return pref[:, None] * kv[idx]


@dataclass(frozen=True)
class ShiftMap:
    """epsilon = 0 evolution: psi(x,t) = e^{-iFxt} sum_l w_l(t) psi(x - l d, 0)."""

    time: float
    force: float
    lattice_period: float
    weights: np.ndarray = field(repr=False)  # index l in [-l_max, l_max]

    @property
    def l_max(self) -> int:
        return (len(self.weights) - 1) // 2

    @property
    def shifts(self) -> np.ndarray:
        return np.arange(-self.l_max, self.l_max + 1)

    def apply(self, psi: WaveFunction) -> WaveFunction:
        if psi.representation != "position":
            raise ValueError("the shift map acts in position representation")
        cells = psi.grid.commensurate_shift(self.lattice_period)
        out = np.zeros_like(psi.values)
        cap = _TRUNC * np.max(np.abs(self.weights))
        for l, w in zip(self.shifts, self.weights):
            if abs(w) > cap:
                out += w * np.roll(psi.values, l * cells)
        out *= np.exp(-1j * self.force * self.time * psi.grid.x)
        return WaveFunction(psi.grid, out, "position", psi.normalizable)


def shift_map(table: CombCoeffTable, t: float) -> ShiftMap:
    """Weights w_l(t) = F sum_n s_n conj(s_{n-l}) e^{i F t d n} of the shift map."""
    p = table.params
    c = table.coeffs
    phased = c * np.exp(1j * p.force * t * p.lattice_period * table.orders)
    w = p.force * np.correlate(phased, c, mode="full")
    return ShiftMap(time=float(t), force=p.force,
                    lattice_period=p.lattice_period, weights=w)


def _neville_to_zero(etas: np.ndarray, vals: np.ndarray) -> tuple[complex, float]:
    """Polynomial extrapolation of vals(eta) to eta = 0; returns (limit, residual)."""
    T = [list(vals)]
    m = len(etas)
    for k in range(1, m):
        row = []
        for i in range(m - k):
            r = etas[i] / etas[i + k]
            row.append((r * T[k - 1][i + 1] - T[k - 1][i]) / (r - 1.0))
        T.append(row)
    return T[-1][0], abs(T[-1][0] - T[-2][0])


_ETA_LADDER = tuple(1e-2 * 0.5 ** k for k in range(8))

# the xi grid and Ai(xi) are identical across calls with the same quadrature
# settings; cache the single most recent one (~25 MB)
_AIRY_GRID_CACHE: dict = {}


def _xi_grid_and_ai(eta_min: float, dxi: float, xi_hi: float):
    key = (round(eta_min, 12), round(dxi, 12), round(xi_hi, 6))
    if _AIRY_GRID_CACHE.get("key") != key:
        xi_lo = -np.sqrt(30.0 / eta_min)
        n = int(round((xi_hi - xi_lo) / dxi))
        if n % 2:
            n += 1
        xi = np.linspace(xi_lo, xi_hi, n + 1)
        _AIRY_GRID_CACHE.clear()
        _AIRY_GRID_CACHE.update(key=key, xi=xi, ai=airy_ai(xi))
    return _AIRY_GRID_CACHE["xi"], _AIRY_GRID_CACHE["ai"]


def airy_pair_integral(params: PhysicalParams, x: float, t: float,
                       method: str = "closed",
                       etas: tuple[float, ...] = _ETA_LADDER,
                       dxi: float = 4e-4,
                       resid_tol: float = 1e-4):
    """The Airy-pair overlap integral behind the kernel derivation.

        Phi(x,t) = integral Ai(xi) Ai(xi + alpha x) e^{i F t xi / alpha} dxi
                 = sqrt(1/(4 pi i eps t alpha^2))
                   * exp[-(x - eps F t^2)^2/(4 i eps t) - i eps F^2 t^3 / 3]

    method="quadrature" evaluates the integral with Gaussian damping
    e^{-eta xi^2} on a ladder of eta values and extrapolates eta -> 0
    (Neville); the conditional convergence of the undamped integral makes
    the plain three-eta ladder far too coarse, so the ladder extends to
    eta ~ 1e-4.  Returns the extrapolated value; raises if the extrapolation
    residual exceeds resid_tol.
    """
    eps, f = params.epsilon, params.force
    if eps <= 0:
        raise ValueError("airy_pair_integral requires epsilon > 0")
    alpha = params.airy_scale
    if method == "closed":
        if t == 0:
            raise ValueError("closed form is distributional at t = 0")
        pref = np.sqrt(1.0 / (4j * np.pi * eps * t * alpha ** 2))
        return complex(pref * np.exp(-((x - eps * f * t ** 2) ** 2) / (4j * eps * t)
                                     - 1j * eps * f ** 2 * t ** 3 / 3))
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")

    xi, ai = _xi_grid_and_ai(min(etas), dxi, xi_hi=10.0)
    n = len(xi) - 1
    core = ai * airy_ai(xi + alpha * x) * np.exp(1j * f * t * xi / alpha)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= (xi[-1] - xi[0]) / n / 3.0
    core_w = core * w
    vals = np.array([np.sum(core_w * np.exp(-eta * xi ** 2)) for eta in etas])
    limit, resid = _neville_to_zero(np.asarray(etas), vals)
    if resid > resid_tol:
        raise RuntimeError(
            f"damped-quadrature extrapolation did not converge "
            f"(residual {resid:.2e} > {resid_tol:.0e}) at x={x}, t={t}")
    return limit
