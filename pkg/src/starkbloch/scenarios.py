"""Scenario configuration, built-in figure presets, and the scenario runner.

A scenario is described by a plain JSON object with the keys shown in
DEFAULTS below.  The four built-in presets reproduce the library's
reference dynamics:

  1. parabolic     flat band, Gaussian packet: uniform acceleration + spreading
  2. pseudo_bloch  epsilon = 0, sinusoidal band: strictly periodic density
  3. accelerated   epsilon > 0, sinusoidal band: oscillation on the parabola
  4. airy_bloch    ideal and apodized Airy packets: breathing quantum carpets
                   (four sub-runs: ideal, a = 300, 100, 50)
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import BandDispersion, PhysicalParams, SpatialGrid, make_grid
from .evolve import ENGINES, EvolutionSpec, evolve
from .initial_states import InitialStateSpec, build_initial
from .observables import TrajectoryRecord, trajectory_from_series
from . import export as export_mod

__all__ = ["ScenarioConfig", "run_scenario", "preset_config", "preset_names",
           "FIGURE_PRESETS"]


@dataclass
class ScenarioConfig:
    epsilon: float
    force: float
    d: float
    band: dict
    grid: dict
    time: dict
    initial: dict
    output: dict = field(default_factory=dict)
    name: str = "scenario"

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioConfig":
        required = ("epsilon", "force", "d", "band", "grid", "time", "initial")
        missing = [k for k in required if k not in raw]
        if missing:
            raise ValueError(f"config is missing keys: {', '.join(missing)}")
        cfg = cls(epsilon=float(raw["epsilon"]), force=float(raw["force"]),
                  d=float(raw["d"]), band=dict(raw["band"]), grid=dict(raw["grid"]),
                  time=dict(raw["time"]), initial=dict(raw["initial"]),
                  output=dict(raw.get("output", {})), name=raw.get("name", "scenario"))
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, path: str | Path) -> "ScenarioConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    # -- assembly helpers -------------------------------------------------
    def physical_params(self) -> PhysicalParams:
        return PhysicalParams(epsilon=self.epsilon, force=self.force,
                              lattice_period=self.d)

    def band_dispersion(self) -> BandDispersion:
        if "kappa" in self.band:
            return BandDispersion.sinusoidal(float(self.band["kappa"]), self.d)
        if "coefficients" in self.band:
            coeffs = {int(n): complex(re, im)
                      for n, re, im in self.band["coefficients"]}
            return BandDispersion(coeffs, self.d)
        raise ValueError("band must specify either 'kappa' or 'coefficients'")

    def spatial_grid(self) -> SpatialGrid:
        g = self.grid
        return make_grid(float(g["x_min"]), float(g["x_max"]), int(g["n_points"]))

    def initial_spec(self) -> InitialStateSpec:
        i = self.initial
        return InitialStateSpec(kind=i["kind"], width=float(i.get("w", 5.0)),
                                apodization=(float(i["a"]) if "a" in i else None),
                                offset=float(i.get("offset", 0.0)))

    def record_times(self) -> np.ndarray:
        t = self.time
        return np.linspace(0.0, float(t["t_max"]), int(t["n_records"]))

    def evolution_spec(self) -> EvolutionSpec:
        t = self.time
        dt = t.get("dt")
        leak_check = self.initial.get("kind") != "airy_ideal"
        return EvolutionSpec(params=self.physical_params(),
                             band=self.band_dispersion(),
                             engine=t["engine"],
                             record_times=tuple(self.record_times()),
                             dt=(float(dt) if dt is not None else None),
                             leak_check=leak_check)

    def validate(self) -> None:
        for key, val in (("force", self.force), ("d", self.d)):
            if not np.isfinite(val) or val <= 0:
                raise ValueError(f"{key} must be finite and > 0, got {val}")
        if not np.isfinite(self.epsilon) or self.epsilon < 0:
            raise ValueError(f"epsilon must be finite and >= 0, got {self.epsilon}")
        engine = self.time.get("engine")
        if engine not in ENGINES:
            raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
        if self.epsilon == 0 and engine not in ("characteristics", "splitstep",
                                                "shift_map"):
            raise ValueError(
                f"epsilon = 0 runs must use characteristics, splitstep or "
                f"shift_map, not {engine!r}")
        if engine in ("replica", "shift_map"):
            dx = (float(self.grid["x_max"]) - float(self.grid["x_min"])) \
                / int(self.grid["n_points"])
            cells = self.d / dx
            if abs(cells - round(cells)) > 1e-9 * max(1.0, cells):
                raise ValueError(
                    f"engine {engine!r} needs the lattice period to be an exact "
                    f"number of grid cells, but d/dx = {cells:.6f}; adjust the "
                    f"grid so d/dx is an integer (e.g. keep dx a power of two "
                    f"fraction of d)")
        if not (float(self.time.get("t_max", 0)) >= 0):
            raise ValueError("t_max must be >= 0")
        if int(self.time.get("n_records", 0)) < 1:
            raise ValueError("n_records must be >= 1")


def run_scenario(config: ScenarioConfig, out_dir: str | Path | None = None):
    """Evolve the scenario, derive diagnostics, and export requested files.

    Returns (record, density, view_x, paths): the TrajectoryRecord, the
    density matrix restricted to the output view window, the view grid, and
    the list of written files (empty when no output directory is set).
    """
    params = config.physical_params()
    band = config.band_dispersion()
    grid = config.spatial_grid()
    psi0 = build_initial(config.initial_spec(), grid, params)
    spec = config.evolution_spec()
    series = evolve(spec, psi0)
    times = config.record_times()
    record = trajectory_from_series(times, series, psi0, metadata={
        "scenario": config.name, "engine": spec.engine,
        "epsilon": params.epsilon, "force": params.force, "d": params.lattice_period,
    })

    view = config.output.get("view")
    if view is None:
        sel = slice(None)
    else:
        lo, hi = float(view[0]), float(view[1])
        idx = np.where((grid.x >= lo) & (grid.x <= hi))[0]
        if idx.size == 0:
            raise ValueError(f"view window [{lo}, {hi}] does not intersect the grid")
        sel = slice(int(idx[0]), int(idx[-1]) + 1)
    view_x = grid.x[sel]
    density = np.stack([np.abs(psi.values[sel]) ** 2 for psi in series])

    paths: list[Path] = []
    directory = out_dir or config.output.get("directory")
    if directory is not None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        formats = config.output.get("formats", ["csv", "density", "heatmap"])
        stem = config.name
        if "csv" in formats:
            paths.append(export_mod.write_trajectory_csv(
                directory / f"{stem}_trajectory.csv", record))
        if "density" in formats:
            paths.extend(export_mod.write_density(
                directory / f"{stem}_density", density, view_x, times, {
                    "scenario": config.name, "engine": spec.engine,
                    "epsilon": params.epsilon, "force": params.force,
                    "d": params.lattice_period,
                }))
        if "heatmap" in formats:
            paths.append(export_mod.write_heatmap(
                directory / f"{stem}_heatmap.png", density,
                per_frame=config.output.get("heatmap_per_frame", True)))
    return record, density, view_x, paths


_TB = 2 * np.pi / (0.2 * 4.0)  # Bloch period of the reference parameter set

FIGURE_PRESETS: dict[str, dict] = {
    "1": {
        "name": "fig1_parabolic",
        "epsilon": 0.5, "force": 0.2, "d": 4.0,
        "band": {"coefficients": []},
        "grid": {"x_min": -96.0, "x_max": 160.0, "n_points": 8192},
        "time": {"t_max": 3 * _TB, "n_records": 241, "engine": "characteristics"},
        "initial": {"kind": "gaussian", "w": 5.0},
        "output": {"view": [-96.0, 48.0]},
    },
    "2": {
        "name": "fig2_pseudo_bloch",
        "epsilon": 0.0, "force": 0.2, "d": 4.0,
        "band": {"kappa": 1.0},
        "grid": {"x_min": -96.0, "x_max": 160.0, "n_points": 8192},
        "time": {"t_max": 5 * _TB, "n_records": 501, "engine": "shift_map"},
        "initial": {"kind": "gaussian", "w": 5.0},
        "output": {"view": [-48.0, 48.0]},
    },
    "3": {
        "name": "fig3_accelerated",
        "epsilon": 0.5, "force": 0.2, "d": 4.0,
        "band": {"kappa": 1.0},
        "grid": {"x_min": -96.0, "x_max": 160.0, "n_points": 8192},
        "time": {"t_max": 3 * _TB, "n_records": 241, "engine": "replica"},
        "initial": {"kind": "gaussian", "w": 5.0},
        "output": {"view": [-96.0, 48.0]},
    },
    "4a": {
        "name": "fig4a_airy_ideal",
        "epsilon": 0.5, "force": 0.2, "d": 4.0,
        "band": {"kappa": 1.0},
        "grid": {"x_min": -6144.0, "x_max": 2048.0, "n_points": 262144},
        "time": {"t_max": 4 * _TB, "n_records": 161, "engine": "characteristics"},
        "initial": {"kind": "airy_ideal"},
        "output": {"view": [-160.0, 48.0]},
    },
    "4b": {
        "name": "fig4b_airy_a300",
        "epsilon": 0.5, "force": 0.2, "d": 4.0,
        "band": {"kappa": 1.0},
        "grid": {"x_min": -7168.0, "x_max": 1024.0, "n_points": 262144},
        "time": {"t_max": 4 * _TB, "n_records": 161, "engine": "characteristics"},
        "initial": {"kind": "airy_apodized", "a": 300.0},
        "output": {"view": [-160.0, 48.0]},
    },
    "4c": {
        "name": "fig4c_airy_a100",
        "epsilon": 0.5, "force": 0.2, "d": 4.0,
        "band": {"kappa": 1.0},
        "grid": {"x_min": -3584.0, "x_max": 512.0, "n_points": 131072},
        "time": {"t_max": 4 * _TB, "n_records": 161, "engine": "characteristics"},
        "initial": {"kind": "airy_apodized", "a": 100.0},
        "output": {"view": [-160.0, 48.0]},
    },
    "4d": {
        "name": "fig4d_airy_a50",
        "epsilon": 0.5, "force": 0.2, "d": 4.0,
        "band": {"kappa": 1.0},
        "grid": {"x_min": -1792.0, "x_max": 256.0, "n_points": 65536},
        "time": {"t_max": 4 * _TB, "n_records": 161, "engine": "characteristics"},
        "initial": {"kind": "airy_apodized", "a": 50.0},
        "output": {"view": [-160.0, 48.0]},
    },
}


def preset_names() -> list[str]:
    return sorted(FIGURE_PRESETS)


def preset_config(key: str, overrides: dict | None = None) -> ScenarioConfig:
    """Built-in figure preset, optionally overridden key by key (deep merge)."""
    if key not in FIGURE_PRESETS:
        raise KeyError(f"unknown preset {key!r}; available: {', '.join(preset_names())}")
    raw = copy.deepcopy(FIGURE_PRESETS[key])
    for k, v in (overrides or {}).items():
        if isinstance(v, dict) and isinstance(raw.get(k), dict):
            raw[k].update(v)
        else:
            raw[k] = v
    return ScenarioConfig.from_dict(raw)
