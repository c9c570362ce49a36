"""Shared building blocks: physical parameters, band dispersion, grids, wave functions.

Units: hbar = 1, everything dimensionless.  The model Hamiltonian is

    H = epsilon * p^2 + T(p) + F * x

with T a periodic function of momentum (period 2*pi/d, zero mean) given by
its Fourier coefficients.  A constant force F > 0 drives the dynamics;
epsilon >= 0 controls the free-particle part of the kinetic energy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PhysicalParams",
    "BandDispersion",
    "SpatialGrid",
    "WaveFunction",
    "make_grid",
    "band_eval",
    "band_antiderivative",
    "dft",
    "inner_product",
    "norm",
    "normalize",
    "boundary_leak",
    "BoundaryLeakWarning",
]


class BoundaryLeakWarning(UserWarning):
    """Probability mass is reaching the edges of the periodic box."""


@dataclass(frozen=True)
class PhysicalParams:
    """Force F, lattice period d and kinetic coefficient epsilon.

    bloch_frequency = F*d and bloch_period = 2*pi/(F*d) are derived.
    epsilon = 0 is legal and selects the dispersion-free code paths.
    """

    epsilon: float
    force: float
    lattice_period: float

    def __post_init__(self):
        if not (self.force > 0):
            raise ValueError(f"force must be > 0, got {self.force}")
        if not (self.lattice_period > 0):
            raise ValueError(f"lattice_period must be > 0, got {self.lattice_period}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")

    @property
    def bloch_frequency(self) -> float:
        return self.force * self.lattice_period

    @property
    def bloch_period(self) -> float:
        return 2 * np.pi / (self.force * self.lattice_period)

    @property
    def airy_scale(self) -> float:
        """Cube root of F/epsilon; sets the argument scale of the Airy eigenfunctions."""
        if self.epsilon == 0:
            raise ZeroDivisionError("airy_scale undefined for epsilon = 0")
        return (self.force / self.epsilon) ** (1.0 / 3.0)


class BandDispersion:
    """Periodic kinetic term T(q) = sum_n T_n exp(i n d q), with T_0 = 0.

    Coefficients are stored for nonzero n only; reality of T is enforced by
    requiring T_{-n} = conj(T_n) whenever both are given, and by mirroring
    when only one of the pair is supplied.
    """

    def __init__(self, coefficients: dict[int, complex], lattice_period: float):
        if lattice_period <= 0:
            raise ValueError("lattice_period must be > 0")
        self.lattice_period = float(lattice_period)
        coeffs: dict[int, complex] = {}
        for n, c in coefficients.items():
            n = int(n)
            if n == 0:
                if abs(c) > 0:
                    raise ValueError("T_0 must be zero (zero-mean band)")
                continue
            coeffs[n] = complex(c)
        for n in list(coeffs):
            if -n in coeffs:
                if abs(coeffs[-n] - np.conj(coeffs[n])) > 1e-12 * (1 + abs(coeffs[n])):
                    raise ValueError(f"reality violated: T_{-n} != conj(T_{n})")
            else:
                coeffs[-n] = np.conj(coeffs[n])
        self._ns = np.array(sorted(coeffs), dtype=int)
        self._cs = np.array([coeffs[n] for n in self._ns], dtype=complex)

    @classmethod
    def sinusoidal(cls, kappa: float, lattice_period: float) -> "BandDispersion":
        """T(q) = kappa * cos(q d), the nearest-neighbor tight-binding band."""
        return cls({1: kappa / 2, -1: kappa / 2}, lattice_period)

    @classmethod
    def flat(cls, lattice_period: float) -> "BandDispersion":
        """T = 0 (pure Stark limit)."""
        return cls({}, lattice_period)

    @property
    def coefficients(self) -> dict[int, complex]:
        return {int(n): c for n, c in zip(self._ns, self._cs)}

    @property
    def is_flat(self) -> bool:
        return self._ns.size == 0

    def sinusoidal_amplitude(self) -> float | None:
        """kappa if the band is kappa*cos(q d); None otherwise."""
        if self._ns.size != 2 or set(self._ns) != {-1, 1}:
            return None
        c = self._cs[self._ns == 1][0]
        if abs(c.imag) > 1e-14 * (1 + abs(c)):
            return None
        return 2 * c.real

    def evaluate(self, q) -> np.ndarray | float:
        """T(q); raises if the stored coefficients produce a non-real value."""
        q = np.asarray(q, dtype=float)
        if self._ns.size == 0:
            out = np.zeros(q.shape)
            return out if out.ndim else float(out)
        phases = np.exp(1j * np.multiply.outer(q * self.lattice_period, self._ns))
        val = phases @ self._cs
        bad = np.abs(val.imag) > 1e-12 * (1 + np.abs(val.real))
        if np.any(bad):
            raise ArithmeticError("band evaluation produced a non-real value; "
                                  "coefficient table is corrupted")
        return val.real if val.ndim else float(val.real)

    def antiderivative(self, q) -> np.ndarray | float:
        """Exact integral of T from 0 to q: sum_n T_n (e^{i n d q} - 1)/(i n d)."""
        q = np.asarray(q, dtype=float)
        if self._ns.size == 0:
            out = np.zeros(q.shape)
            return out if out.ndim else float(out)
        d = self.lattice_period
        phases = np.exp(1j * np.multiply.outer(q * d, self._ns)) - 1.0
        val = phases @ (self._cs / (1j * self._ns * d))
        return val.real if val.ndim else float(val.real)


def band_eval(band: BandDispersion, q) :
    return band.evaluate(q)


def band_antiderivative(band: BandDispersion, q):
    return band.antiderivative(q)


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform periodic grid of a power-of-two number of points.

    The dual momentum grid uses the standard FFT wrap-around ordering with
    spacing 2*pi/(n_points*dx).
    """

    x_min: float
    dx: float
    n_points: int
    x: np.ndarray = field(repr=False, compare=False)
    q: np.ndarray = field(repr=False, compare=False)

    @property
    def x_max(self) -> float:
        return self.x_min + self.n_points * self.dx

    @property
    def dq(self) -> float:
        return 2 * np.pi / (self.n_points * self.dx)

    def commensurate_shift(self, distance: float) -> int:
        """Number of grid cells in `distance`; raises if not an integer multiple of dx."""
        k = distance / self.dx
        ki = int(round(k))
        if abs(k - ki) > 1e-9 * max(1.0, abs(k)):
            raise ValueError(
                f"shift {distance} is not commensurate with the grid "
                f"(distance/dx = {k:.6f}; choose dx so that distance/dx is an integer)")
        return ki


def make_grid(x_min: float, x_max: float, n_points: int) -> SpatialGrid:
    if x_max <= x_min:
        raise ValueError(f"need x_max > x_min, got [{x_min}, {x_max})")
    if n_points < 16 or (n_points & (n_points - 1)) != 0:
        raise ValueError(f"n_points must be a power of two >= 16, got {n_points}")
    dx = (x_max - x_min) / n_points
    x = x_min + dx * np.arange(n_points)
    q = 2 * np.pi * np.fft.fftfreq(n_points, dx)
    return SpatialGrid(x_min=float(x_min), dx=dx, n_points=int(n_points), x=x, q=q)


@dataclass
class WaveFunction:
    """Complex amplitudes on a grid, in either position or momentum representation.

    The transform convention is psi~(q) = (2*pi)^{-1/2} * integral psi(x) e^{-iqx} dx,
    discretized so a plane wave e^{i q0 x} peaks at the bin nearest q0.
    """

    grid: SpatialGrid
    values: np.ndarray
    representation: str = "position"
    normalizable: bool = True

    def __post_init__(self):
        if self.representation not in ("position", "momentum"):
            raise ValueError(f"bad representation tag {self.representation!r}")
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n_points,):
            raise ValueError("amplitude vector does not match the grid")

    def copy(self) -> "WaveFunction":
        return WaveFunction(self.grid, self.values.copy(), self.representation,
                            self.normalizable)


def dft(psi: WaveFunction, direction: str) -> WaveFunction:
    """Unitary transform between position and momentum representations."""
    g = psi.grid
    if direction == "forward":
        if psi.representation != "position":
            raise ValueError("forward transform requires position representation")
        vals = (g.dx / np.sqrt(2 * np.pi)) * np.exp(-1j * g.q * g.x_min) \
            * np.fft.fft(psi.values)
        return WaveFunction(g, vals, "momentum", psi.normalizable)
    if direction == "inverse":
        if psi.representation != "momentum":
            raise ValueError("inverse transform requires momentum representation")
        vals = (g.dq * g.n_points / np.sqrt(2 * np.pi)) \
            * np.fft.ifft(psi.values * np.exp(1j * g.q * g.x_min))
        return WaveFunction(g, vals, "position", psi.normalizable)
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def _step(psi: WaveFunction) -> float:
    return psi.grid.dx if psi.representation == "position" else psi.grid.dq


def inner_product(a: WaveFunction, b: WaveFunction) -> complex:
    """<a|b> by the periodic trapezoid rule (sum times grid step)."""
    if a.grid != b.grid:
        raise ValueError("wave functions live on different grids")
    if a.representation != b.representation:
        raise ValueError("wave functions are in different representations")
    return complex(np.vdot(a.values, b.values) * _step(a))


def norm(psi: WaveFunction) -> float:
    return float(np.sqrt(np.sum(np.abs(psi.values) ** 2) * _step(psi)))


def normalize(psi: WaveFunction) -> WaveFunction:
    n = norm(psi)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return WaveFunction(psi.grid, psi.values / n, psi.representation, psi.normalizable)


def boundary_leak(psi: WaveFunction, fraction: float = 0.05) -> float:
    """Probability fraction in the outer `fraction` of the box (both ends combined)."""
    if psi.representation != "position":
        raise ValueError("boundary_leak expects position representation")
    n_edge = max(1, int(round(psi.grid.n_points * fraction / 2)))
    dens = np.abs(psi.values) ** 2
    total = np.sum(dens)
    if total == 0:
        return 0.0
    edge = np.sum(dens[:n_edge]) + np.sum(dens[-n_edge:])
    return float(edge / total)


def check_boundary_leak(psi: WaveFunction, warn_above: float = 1e-8) -> float:
    leak = boundary_leak(psi)
    if leak > warn_above:
        warnings.warn(
            f"boundary leak {leak:.2e} exceeds {warn_above:.0e}; "
            "enlarge the box or shorten the run", BoundaryLeakWarning, stacklevel=2)
    return leak
