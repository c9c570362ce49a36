"""Initial wave packets: Gaussian, ideal Airy, and exponentially apodized Airy.

The ideal Airy profile Ai(alpha x) is the zero-energy eigenfunction of the
flat-band Hamiltonian.  It is not square integrable; its grid representation
is scaled to unit peak amplitude and flagged non-normalizable so that
moment-type observables reject it.  Multiplying by e^{x/a} (a > 0) restores
normalizability while approaching the ideal profile pointwise as a grows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PhysicalParams, SpatialGrid, WaveFunction, normalize
from .specfun import airy_ai

__all__ = ["InitialStateSpec", "build_initial"]

_COVERAGE_TOL = 1e-10


@dataclass(frozen=True)
class InitialStateSpec:
    kind: str                      # "gaussian" | "airy_ideal" | "airy_apodized"
    width: float = 5.0             # gaussian: psi ~ exp(-x^2 / width^2)
    apodization: float | None = None   # airy_apodized: envelope e^{x/a}
    offset: float = 0.0

    def __post_init__(self):
        if self.kind not in ("gaussian", "airy_ideal", "airy_apodized"):
            raise ValueError(f"unknown initial state kind {self.kind!r}")
        if self.kind == "gaussian" and not (self.width > 0):
            raise ValueError("gaussian width must be > 0")
        if self.kind == "airy_apodized":
            if self.apodization is None or not (self.apodization > 0):
                raise ValueError("airy_apodized needs an apodization length a > 0")


def build_initial(spec: InitialStateSpec, grid: SpatialGrid,
                  params: PhysicalParams) -> WaveFunction:
    x = grid.x - spec.offset
    if spec.kind == "gaussian":
        edge = max(abs(grid.x_min - spec.offset), abs(grid.x_max - spec.offset))
        if np.exp(-(edge / spec.width) ** 2) > _COVERAGE_TOL:
            raise ValueError(
                f"grid does not cover the gaussian support: envelope at the "
                f"far edge is {np.exp(-(edge / spec.width) ** 2):.2e} > {_COVERAGE_TOL:.0e}")
        return normalize(WaveFunction(grid, np.exp(-x ** 2 / spec.width ** 2)
                                      .astype(complex)))

    if params.epsilon == 0:
        raise ValueError("Airy initial states need epsilon > 0 "
                         "(the Airy argument scale is (F/epsilon)^(1/3))")
    alpha = params.airy_scale

    if spec.kind == "airy_ideal":
        vals = airy_ai(alpha * x).astype(complex)
        peak = np.max(np.abs(vals))
        return WaveFunction(grid, vals / peak, "position", normalizable=False)

    a = spec.apodization
    left = np.exp((grid.x_min - spec.offset) / a)
    if left > _COVERAGE_TOL:
        raise ValueError(
            f"grid does not cover the apodized tail: e^(x_min/a) = {left:.2e} "
            f"> {_COVERAGE_TOL:.0e}; extend x_min below {spec.offset + a * np.log(_COVERAGE_TOL):.0f}")
    vals = np.exp(x / a) * airy_ai(alpha * x)
    return normalize(WaveFunction(grid, vals.astype(complex)))
