"""Time-evolution engines.

Three independent routes propagate the same Schrodinger equation and their
mutual agreement is the core correctness argument of the library:

* splitstep       -- Strang splitting between the position-space force phase
                     and the momentum-space kinetic phase; O(dt^2).
* characteristics -- exact one-shot momentum-space solution.  With
                     E(q) = eps q^2 + T(q), the momentum representation obeys
                     a first-order transport equation whose solution is
                     psi~(q,t) = psi~(q + F t, 0) exp(-i Theta(q,t)),
                     Theta(q,t) = integral_0^t E(q + F tau) dtau,
                     implemented with band-limited interpolation for the
                     momentum shift (a position-space phase), hence exact on
                     the grid.
* replica         -- the lattice-shift decomposition onto the exact Stark
                     solution with replica weights L_l(t).

Additional single-time engines: exact Stark evolution, direct kernel
quadrature (validation only, small grids), and the epsilon = 0 shift map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (BandDispersion, PhysicalParams, WaveFunction, dft,
                   check_boundary_leak, boundary_leak, norm)
from .eigen import airy_coefficients, comb_coefficients
from .propagator import kernel_matrix_on_grid, replica_weights, shift_map

__all__ = [
    "EvolutionSpec",
    "evolve",
    "evolve_splitstep",
    "evolve_characteristics",
    "evolve_replica",
    "evolve_stark_exact",
    "evolve_kernel_quadrature",
    "evolve_shift_map",
]

ENGINES = ("splitstep", "characteristics", "replica", "kernel_quadrature",
           "shift_map")

_TRUNC = 1e-14
_KERNEL_GRID_CAP = 2048
_KERNEL_T_MIN = 0.1


@dataclass(frozen=True)
class EvolutionSpec:
    """A run: physics, engine choice, output times, and splitstep step size."""

    params: PhysicalParams
    band: BandDispersion
    engine: str
    record_times: tuple[float, ...]
    dt: float | None = None
    leak_check: bool = True
    leak_abort: float = 1e-6

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}; choose from {ENGINES}")
        times = tuple(float(t) for t in self.record_times)
        if list(times) != sorted(times):
            raise ValueError("record_times must be sorted")
        object.__setattr__(self, "record_times", times)
        eps = self.params.epsilon
        if self.engine in ("replica", "kernel_quadrature") and eps == 0:
            raise ValueError(f"engine {self.engine!r} requires epsilon > 0")
        if self.engine == "shift_map" and eps != 0:
            raise ValueError("engine 'shift_map' requires epsilon = 0")
        if self.engine == "splitstep":
            dt = self.dt
            if dt is not None:
                if dt <= 0:
                    raise ValueError("dt must be > 0")
                for t in times:
                    steps = t / dt
                    if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
                        raise ValueError(
                            f"dt={dt} does not divide record time {t}")


def _characteristics_single(params: PhysicalParams, band: BandDispersion | None,
                            psi0: WaveFunction, t: float) -> WaveFunction:
    g = psi0.grid
    f, eps = params.force, params.epsilon
    shifted = WaveFunction(g, psi0.values * np.exp(-1j * f * t * g.x),
                           "position", psi0.normalizable)
    mom = dft(shifted, "forward")
    q = g.q
    theta = (eps / (3.0 * f)) * ((q + f * t) ** 3 - q ** 3)
    if band is not None and not band.is_flat:
        theta = theta + (np.asarray(band.antiderivative(q + f * t))
                         - np.asarray(band.antiderivative(q))) / f
    mom = WaveFunction(g, mom.values * np.exp(-1j * theta), "momentum",
                       psi0.normalizable)
    return dft(mom, "inverse")


def _momentum_headroom(psi0: WaveFunction, params: PhysicalParams,
                       t_max: float, amp_tol: float = 1e-9) -> None:
    """The drifted momentum support must stay inside the momentum box.

    The momentum content shifts downward by F*t during the run; the initial
    support (bins above amp_tol of the peak) plus that drift must not cross
    the wrap-around edge of the momentum grid.
    """
    g = psi0.grid
    mom = np.abs(dft(psi0, "forward").values)
    live = g.q[mom > amp_tol * mom.max()]
    drift = params.force * t_max  # support slides to [min - drift, max - drift]
    q_edge = float(np.max(np.abs(g.q)))
    lo = float(np.min(live)) - max(drift, 0.0)
    hi = float(np.max(live)) - min(drift, 0.0)
    if lo <= -q_edge or hi >= q_edge:
        raise ValueError(
            f"drifted momentum support exits the momentum box "
            f"(support [{np.min(live):.2f}, {np.max(live):.2f}] with drift "
            f"{drift:.2f} vs half-width {q_edge:.2f}); use a finer grid or a "
            f"shorter run")


def evolve_characteristics(spec: EvolutionSpec, psi0: WaveFunction) -> list[WaveFunction]:
    """Exact evolution, one momentum-space pass per record time."""
    if psi0.representation != "position":
        raise ValueError("psi0 must be in position representation")
    if spec.record_times and psi0.normalizable:
        _momentum_headroom(psi0, spec.params, max(abs(t) for t in spec.record_times))
    return [_characteristics_single(spec.params, spec.band, psi0, t)
            for t in spec.record_times]


def evolve_stark_exact(params: PhysicalParams, psi0: WaveFunction,
                       t: float) -> WaveFunction:
    """Exact evolution under the flat-band (pure Stark) Hamiltonian."""
    return _characteristics_single(params, None, psi0, t)


def evolve_splitstep(spec: EvolutionSpec, psi0: WaveFunction) -> list[WaveFunction]:
    """Strang splitting; aborts if probability reaches the box edges."""
    if psi0.representation != "position":
        raise ValueError("psi0 must be in position representation")
    g = psi0.grid
    p = spec.params
    dt = spec.dt if spec.dt is not None else p.bloch_period / 2000.0
    kinetic = p.epsilon * g.q ** 2 + np.asarray(spec.band.evaluate(g.q))
    kin_phase = np.exp(-1j * kinetic * dt)
    half_phase = np.exp(-1j * p.force * g.x * dt / 2.0)
    full_phase = half_phase * half_phase

    out: list[WaveFunction] = []
    vals = psi0.values.copy()
    t_now = 0.0
    for t_rec in spec.record_times:
        n_steps = int(round((t_rec - t_now) / dt))
        if abs(t_rec - t_now - n_steps * dt) > 1e-9 * max(1.0, abs(t_rec)):
            raise ValueError(f"dt={dt} does not divide the interval ending at {t_rec}")
        if n_steps > 0:
            # merge adjacent half steps: V/2 (K V)^{n-1} K V/2
            vals = half_phase * vals
            for k in range(n_steps):
                vals = np.fft.ifft(kin_phase * np.fft.fft(vals))
                vals = full_phase * vals if k < n_steps - 1 else half_phase * vals
            t_now = t_rec
        snap = WaveFunction(g, vals.copy(), "position", psi0.normalizable)
        if spec.leak_check and psi0.normalizable:
            leak = check_boundary_leak(snap)
            if leak > spec.leak_abort:
                raise RuntimeError(
                    f"boundary leak {leak:.2e} exceeded {spec.leak_abort:.0e} "
                    f"at t={t_rec:.4f} (norm {norm(snap):.6f}); aborting")
        out.append(snap)
    return out


def splitstep_converged(spec: EvolutionSpec, psi0: WaveFunction,
                        ratio_band: tuple[float, float] = (3.2, 4.8),
                        max_halvings: int = 6) -> tuple[list[WaveFunction], float]:
    """Halve dt until successive runs shrink by the O(dt^2) factor of ~4.

    Returns the finest run and its certified L2 error estimate at the final
    record time.
    """
    p = spec.params
    dt = spec.dt if spec.dt is not None else p.bloch_period / 2000.0
    runs = {}
    prev_gap = None
    for _ in range(max_halvings):
        for step in (dt, dt / 2):
            if step not in runs:
                s = EvolutionSpec(spec.params, spec.band, "splitstep",
                                  spec.record_times, dt=step,
                                  leak_check=spec.leak_check,
                                  leak_abort=spec.leak_abort)
                runs[step] = evolve_splitstep(s, psi0)
        a, b = runs[dt][-1], runs[dt / 2][-1]
        gap = float(np.sqrt(np.sum(np.abs(a.values - b.values) ** 2) * a.grid.dx))
        if prev_gap is not None and gap > 0:
            r = prev_gap / gap
            if ratio_band[0] <= r <= ratio_band[1] or gap < 1e-14:
                return runs[dt / 2], gap / 3.0  # Richardson remainder of an O(dt^2) pair
        prev_gap = gap
        dt /= 2
    return runs[dt], (prev_gap or 0.0) / 3.0


def evolve_replica(spec: EvolutionSpec, psi0: WaveFunction) -> list[WaveFunction]:
    """psi(.,t) = sum_l L_l(t) psi_stark(. - l d, t) with exact index shifts."""
    if psi0.representation != "position":
        raise ValueError("psi0 must be in position representation")
    g = psi0.grid
    p = spec.params
    cells = g.commensurate_shift(p.lattice_period)
    table = airy_coefficients(p, spec.band)
    method = "closed_form" if spec.band.sinusoidal_amplitude() is not None else "series"
    if spec.record_times and psi0.normalizable:
        _momentum_headroom(psi0, p, max(abs(t) for t in spec.record_times))
    out = []
    for t in spec.record_times:
        base = evolve_stark_exact(p, psi0, t)
        lam = replica_weights(table, t, method)
        cap = _TRUNC * np.max(np.abs(lam.values))
        acc = np.zeros_like(base.values)
        for l, w in zip(lam.shifts, lam.values):
            if abs(w) > cap:
                acc += w * np.roll(base.values, l * cells)
        out.append(WaveFunction(g, acc, "position", psi0.normalizable))
    return out


def evolve_kernel_quadrature(spec: EvolutionSpec, psi0: WaveFunction,
                             t: float) -> WaveFunction:
    """Direct trapezoidal application of the analytic kernel (validation path)."""
    g = psi0.grid
    if g.n_points > _KERNEL_GRID_CAP:
        raise ValueError(
            f"kernel quadrature is restricted to grids of <= {_KERNEL_GRID_CAP} points")
    if abs(t) < _KERNEL_T_MIN:
        raise ValueError(f"kernel quadrature needs |t| >= {_KERNEL_T_MIN}")
    eps = spec.params.epsilon
    if g.dx ** 2 > 0.4 * eps * abs(t):
        raise ValueError("oscillatory kernel under-resolved: need dx^2 << 4 eps t")
    # an undersampled Fresnel chirp aliases into ghost images displaced by
    # 4 pi eps t / dx; the first ghost must fall outside the box entirely
    extent = g.n_points * g.dx
    if 4 * np.pi * eps * abs(t) / g.dx < extent:
        raise ValueError(
            f"Fresnel aliasing: ghost displacement {4 * np.pi * eps * abs(t) / g.dx:.1f} "
            f"is inside the box extent {extent:.1f}; decrease dx or increase t")
    table = airy_coefficients(spec.params, spec.band)
    u = kernel_matrix_on_grid(table, g, t)
    return WaveFunction(g, (u @ psi0.values) * g.dx, "position", psi0.normalizable)


def evolve_shift_map(spec: EvolutionSpec, psi0: WaveFunction,
                     t: float) -> WaveFunction:
    """epsilon = 0 evolution by the lattice-shift map."""
    table = comb_coefficients(spec.params, spec.band)
    return shift_map(table, t).apply(psi0)


def evolve(spec: EvolutionSpec, psi0: WaveFunction) -> list[WaveFunction]:
    """Run the engine named in the spec over its record times."""
    if spec.engine == "splitstep":
        return evolve_splitstep(spec, psi0)
    if spec.engine == "characteristics":
        return evolve_characteristics(spec, psi0)
    if spec.engine == "replica":
        return evolve_replica(spec, psi0)
    if spec.engine == "kernel_quadrature":
        return [evolve_kernel_quadrature(spec, psi0, t) for t in spec.record_times]
    if spec.engine == "shift_map":
        return [evolve_shift_map(spec, psi0, t) for t in spec.record_times]
    raise AssertionError(spec.engine)
