"""Spectral structure of the Hamiltonian on its absolutely continuous spectrum.

For epsilon > 0 the generalized eigenfunction at energy E is a ladder of
shifted Airy functions,

    phi_E(x) = sum_n c_n Ai(alpha (x - n d - E/F)),   alpha = (F/epsilon)^(1/3),

whose coefficients c_n are Fourier coefficients of the unimodular phase
exp(i A(q)/F) built from the band antiderivative A.  In the epsilon = 0
limit the Airy ladder degenerates to a delta comb with coefficients that
differ only by a prefactor; both tables are computed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BandDispersion, PhysicalParams
from .specfun import airy_ai

__all__ = [
    "AiryCoeffTable",
    "CombCoeffTable",
    "EigenState",
    "airy_coefficients",
    "comb_coefficients",
    "spectrum_function",
    "eigenfunction_eval",
    "coeff_autocorrelation",
    "ConvergenceError",
]

_NODE_START = 1024
_NODE_CAP = 1 << 16
_N_CAP = 4096
_AIRY_ARG_CUTOFF = 15.0  # Ai(15) ~ 1e-27, far below every tolerance used here


class ConvergenceError(RuntimeError):
    pass


def _phase_fourier_coefficients(params: PhysicalParams, band: BandDispersion,
                                nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """All Fourier coefficients of exp(i A(q)/F) over one Brillouin zone.

    Uniform trapezoid on the periodic integrand is spectrally accurate and
    one inverse FFT yields every order at once:
    (d/2pi) * integral_{-pi/d}^{pi/d} e^{i q d n} e^{i A(q)/F} dq
        = (-1)^n * ifft(e^{i A/F})[n].
    """
    d = params.lattice_period
    q = -np.pi / d + np.arange(nodes) * (2 * np.pi / (d * nodes))
    f = np.exp(1j * np.asarray(band.antiderivative(q)) / params.force)
    c = np.fft.ifft(f)
    n = np.fft.fftfreq(nodes, 1.0 / nodes).astype(int)
    coeffs = np.where(n % 2 == 0, c, -c)
    order = np.argsort(n)
    return n[order], coeffs[order]


def _converged_coefficients(params, band, tol):
    nodes = _NODE_START
    ns, coeffs = _phase_fourier_coefficients(params, band, nodes)
    while nodes < _NODE_CAP:
        ns2, coeffs2 = _phase_fourier_coefficients(params, band, 2 * nodes)
        common = nodes // 2
        a = coeffs[(ns >= -common) & (ns < common)]
        b = coeffs2[(ns2 >= -common) & (ns2 < common)]
        if np.max(np.abs(a - b)) < 1e-13:
            break
        nodes *= 2
        ns, coeffs = ns2, coeffs2
    else:
        raise ConvergenceError("quadrature did not converge at the node cap")

    # adaptive symmetric truncation with a superexponential-tail confirmation
    mags = np.abs(coeffs)
    peak = mags.max()
    half = len(ns) // 2
    n_max = None
    for n in range(2, min(half - 1, _N_CAP)):
        window = [mags[half + s] + mags[half - s] for s in (n - 2, n - 1, n)]
        if window[2] < tol * peak and window[2] <= window[1] <= window[0] \
                and window[0] < tol * peak:
            n_max = n
            break
    if n_max is None:
        raise ConvergenceError(
            f"coefficient tail did not fall below tol={tol} within order {_N_CAP}")
    sel = (ns >= -n_max) & (ns <= n_max)
    tail = float(np.sum(mags[~sel] ** 2))
    return ns[sel], coeffs[sel], tail


@dataclass(frozen=True)
class AiryCoeffTable:
    """Airy-ladder coefficients of the eigenfunctions (epsilon > 0)."""

    params: PhysicalParams
    band: BandDispersion
    n_max: int
    coeffs: np.ndarray = field(repr=False)   # index n in [-n_max, n_max]
    tail_bound: float = 0.0

    @property
    def orders(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)

    @property
    def airy_scale(self) -> float:
        return self.params.airy_scale

    @property
    def norm_amplitude(self) -> float:
        """S(0) = 1/(epsilon^{1/3} F^{1/6}); also sqrt(sum |c_n|^2)."""
        p = self.params
        return p.epsilon ** (-1.0 / 3.0) * p.force ** (-1.0 / 6.0)

    def coeff(self, n: int) -> complex:
        if abs(n) > self.n_max:
            return 0.0
        return complex(self.coeffs[n + self.n_max])


@dataclass(frozen=True)
class CombCoeffTable:
    """Delta-comb coefficients of the epsilon = 0 eigenfunctions."""

    params: PhysicalParams
    band: BandDispersion
    n_max: int
    coeffs: np.ndarray = field(repr=False)
    tail_bound: float = 0.0

    @property
    def orders(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)


def airy_coefficients(params: PhysicalParams, band: BandDispersion,
                      tol: float = 1e-10) -> AiryCoeffTable:
    """Coefficient table c_n = S(0) * (phase Fourier coefficient)_n."""
    if params.epsilon <= 0:
        raise ValueError("airy_coefficients requires epsilon > 0")
    if not (0 < tol <= 1e-4):
        raise ValueError(f"tol must lie in (0, 1e-4], got {tol}")
    ns, raw, tail = _converged_coefficients(params, band, tol)
    s0 = params.epsilon ** (-1.0 / 3.0) * params.force ** (-1.0 / 6.0)
    return AiryCoeffTable(params=params, band=band, n_max=int(ns[-1]),
                          coeffs=s0 * raw, tail_bound=s0 ** 2 * tail)


def comb_coefficients(params: PhysicalParams, band: BandDispersion,
                      tol: float = 1e-10) -> CombCoeffTable:
    """Coefficient table for the epsilon = 0 limit (prefactor F^{-1/2}).

    When epsilon > 0 the proportional route via the Airy table is computed
    as well and required to agree to 1e-10; the two derivations share the
    quadrature, so this cross-check guards the prefactor algebra only.
    """
    if not (0 < tol <= 1e-4):
        raise ValueError(f"tol must lie in (0, 1e-4], got {tol}")
    ns, raw, tail = _converged_coefficients(params, band, tol)
    pref = params.force ** (-0.5)
    coeffs = pref * raw
    if params.epsilon > 0:
        airy = airy_coefficients(params, band, tol)
        ratio = params.epsilon ** (1.0 / 3.0) * params.force ** (-1.0 / 3.0)
        m = min(airy.n_max, int(ns[-1]))
        a = airy.coeffs[airy.n_max - m: airy.n_max + m + 1] * ratio
        b = coeffs[int(ns[-1]) - m: int(ns[-1]) + m + 1]
        if np.max(np.abs(a - b)) > 1e-10 * np.max(np.abs(b)):
            raise AssertionError("comb/airy coefficient proportionality violated")
    return CombCoeffTable(params=params, band=band, n_max=int(ns[-1]),
                          coeffs=coeffs, tail_bound=pref ** 2 * tail)


def spectrum_function(table: AiryCoeffTable, q) -> complex | np.ndarray:
    """S(q) = S(0) exp(i A(q)/F), the unimodular momentum symbol of the table."""
    a = np.asarray(table.band.antiderivative(q))
    val = table.norm_amplitude * np.exp(1j * a / table.params.force)
    return complex(val) if val.ndim == 0 else val


@dataclass(frozen=True)
class EigenState:
    """A point E of the continuous spectrum together with its coefficient table.

    center = E/F is the spatial offset of the Airy ladder.
    """

    energy: float
    table: AiryCoeffTable

    @property
    def center(self) -> float:
        return self.energy / self.table.params.force


def eigenfunction_eval(state: EigenState, x) -> float | np.ndarray:
    """phi_E(x) = sum_n c_n Ai(alpha (x - n d - E/F)), truncated at the table."""
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    t = state.table
    alpha = t.airy_scale
    d = t.params.lattice_period
    out = np.zeros(xa.shape, dtype=complex)
    for n, c in zip(t.orders, t.coeffs):
        arg = alpha * (xa - n * d - state.center)
        keep = arg <= _AIRY_ARG_CUTOFF
        if keep.any():
            out[keep] += c * airy_ai(arg[keep])
    if np.max(np.abs(out.imag), initial=0.0) < 1e-10 * (1 + np.max(np.abs(out.real), initial=0.0)):
        out = out.real.copy()
    if scalar:
        return complex(out[0]) if np.iscomplexobj(out) else float(out[0])
    return out


def coeff_autocorrelation(table: AiryCoeffTable, l: int) -> complex:
    """sum_n conj(c_n) c_{n+l}; equals S(0)^2 * delta_{l,0} for a converged table."""
    c = table.coeffs
    l = int(l)
    if l == 0:
        return complex(np.vdot(c, c))
    if abs(l) >= len(c):
        return 0j
    if l > 0:
        return complex(np.vdot(c[:-l], c[l:]))
    return complex(np.vdot(c[-l:], c[:l]))
