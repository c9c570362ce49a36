"""Scalar diagnostics of wave-function snapshots.

All quadrature is the periodic trapezoid rule (sum times grid step), which
is spectrally accurate for smooth, decayed integrands.  Moments of
non-normalizable states are undefined; such states are flagged on the
WaveFunction and rejected here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import PhysicalParams, WaveFunction, dft, inner_product, norm

__all__ = [
    "centroid",
    "width",
    "momentum_centroid",
    "revival_probability",
    "parabolic_reference",
    "TrajectoryRecord",
    "trajectory_from_series",
]


def _check_moment_input(psi: WaveFunction) -> None:
    if psi.representation != "position":
        raise ValueError("moments are defined on the position representation")
    if not psi.normalizable:
        raise ValueError("moments of a non-normalizable state are undefined")


def centroid(psi: WaveFunction) -> float:
    """<x> = integral x |psi|^2 dx (expects a normalized state)."""
    _check_moment_input(psi)
    dens = np.abs(psi.values) ** 2
    return float(np.sum(psi.grid.x * dens) * psi.grid.dx)


def width(psi: WaveFunction) -> float:
    """sqrt(<x^2> - <x>^2)."""
    _check_moment_input(psi)
    dens = np.abs(psi.values) ** 2 * psi.grid.dx
    m1 = float(np.sum(psi.grid.x * dens))
    m2 = float(np.sum(psi.grid.x ** 2 * dens))
    return float(np.sqrt(max(m2 - m1 ** 2, 0.0)))


def momentum_centroid(psi: WaveFunction) -> float:
    """<p>, computed in the momentum representation."""
    if psi.representation == "position":
        _check_moment_input(psi)
        psi = dft(psi, "forward")
    dens = np.abs(psi.values) ** 2
    return float(np.sum(psi.grid.q * dens) * psi.grid.dq)


def revival_probability(psi0: WaveFunction, psi_t: WaveFunction) -> float:
    """|<psi0|psi_t>|^2; psi0 must be normalized."""
    if psi0.grid != psi_t.grid:
        raise ValueError("states live on different grids")
    if not psi0.normalizable:
        raise ValueError("revival probability needs a normalizable reference state")
    if abs(norm(psi0) - 1.0) > 1e-6:
        raise ValueError("psi0 must be normalized")
    p = abs(inner_product(psi0, psi_t)) ** 2
    if p > 1.0 + 1e-9:
        raise AssertionError(f"revival probability {p} exceeds 1 beyond tolerance")
    return float(p)


def parabolic_reference(params: PhysicalParams, x0: float, p0: float,
                        t) -> float | np.ndarray:
    """Ballistic centroid x0 + 2 eps p0 t - eps F t^2 of the flat-band dynamics."""
    t = np.asarray(t, dtype=float)
    out = x0 + 2 * params.epsilon * p0 * t - params.epsilon * params.force * t ** 2
    return float(out) if out.ndim == 0 else out


@dataclass
class TrajectoryRecord:
    """Time series of the standard diagnostics plus run metadata."""

    times: np.ndarray
    centroid: np.ndarray
    width: np.ndarray
    revival: np.ndarray
    norm: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.times)
        for name in ("centroid", "width", "revival", "norm"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} length does not match times")

    def to_rows(self):
        return zip(self.times, self.centroid, self.width, self.revival, self.norm)


def trajectory_from_series(times, series: list[WaveFunction],
                           psi0: WaveFunction | None = None,
                           metadata: dict | None = None) -> TrajectoryRecord:
    """Assemble a TrajectoryRecord; moment columns are NaN for flagged states."""
    times = np.asarray(list(times), dtype=float)
    if psi0 is None:
        psi0 = series[0]
    cen, wid, rev, nor = [], [], [], []
    moments_ok = psi0.normalizable
    for psi in series:
        nor.append(norm(psi))
        if moments_ok:
            cen.append(centroid(psi))
            wid.append(width(psi))
            rev.append(revival_probability(psi0, psi))
        else:
            cen.append(np.nan)
            wid.append(np.nan)
            rev.append(np.nan)
    return TrajectoryRecord(times=times, centroid=np.array(cen),
                            width=np.array(wid), revival=np.array(rev),
                            norm=np.array(nor), metadata=dict(metadata or {}))
