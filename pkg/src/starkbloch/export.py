"""File exports: trajectory CSV, raw density matrices, grayscale heatmaps.

Formats are bit-exact by construction:

* trajectory CSV  -- header ``t,centroid,width,prev,norm``, one row per record
                     time, full float repr.
* density binary  -- ``<name>.f64``: row-major 64-bit little-endian floats,
                     rows = time records, columns = grid points, plus a
                     ``<name>.txt`` sidecar listing dimensions, grid and
                     parameters.
* heatmap PNG     -- 8-bit grayscale, one pixel column per grid point, one
                     row per time record; linear scaling from 0 to the
                     per-frame maximum (or the global maximum on request).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .observables import TrajectoryRecord

__all__ = ["write_trajectory_csv", "write_density", "load_density",
           "write_heatmap"]


def write_trajectory_csv(path: str | Path, record: TrajectoryRecord) -> Path:
    path = Path(path)
    lines = ["t,centroid,width,prev,norm"]
    for t, c, w, p, n in record.to_rows():
        lines.append(f"{t!r},{c!r},{w!r},{p!r},{n!r}")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_density(base: str | Path, density: np.ndarray, x: np.ndarray,
                  times: np.ndarray, params: dict) -> list[Path]:
    base = Path(base)
    density = np.ascontiguousarray(density, dtype="<f8")
    bin_path = base.with_suffix(".f64")
    bin_path.write_bytes(density.tobytes(order="C"))
    side = [
        f"rows = {density.shape[0]}",
        f"columns = {density.shape[1]}",
        "dtype = float64 little-endian row-major",
        f"x_min = {float(x[0])!r}",
        f"dx = {float(x[1] - x[0])!r}" if len(x) > 1 else "dx = 0.0",
        f"t_min = {float(times[0])!r}",
        f"t_max = {float(times[-1])!r}",
    ]
    side += [f"{k} = {float(v)!r}" if isinstance(v, (int, float, np.floating))
             else f"{k} = {v}" for k, v in params.items()]
    txt_path = base.with_suffix(".txt")
    txt_path.write_text("\n".join(side) + "\n")
    return [bin_path, txt_path]


def load_density(base: str | Path) -> tuple[np.ndarray, dict]:
    """Read back a density export; inverse of write_density (bit-exact)."""
    base = Path(base)
    meta: dict[str, str] = {}
    for line in base.with_suffix(".txt").read_text().splitlines():
        if " = " in line:
            k, v = line.split(" = ", 1)
            meta[k.strip()] = v.strip()
    rows, cols = int(meta["rows"]), int(meta["columns"])
    data = np.frombuffer(base.with_suffix(".f64").read_bytes(), dtype="<f8")
    return data.reshape(rows, cols), meta


def write_heatmap(path: str | Path, density: np.ndarray,
                  per_frame: bool = True) -> Path:
    path = Path(path)
    dens = np.asarray(density, dtype=float)
    if per_frame:
        scale = dens.max(axis=1, keepdims=True)
    else:
        scale = np.full((dens.shape[0], 1), dens.max())
    scale[scale == 0] = 1.0
    img = np.clip(np.rint(255.0 * dens / scale), 0, 255).astype(np.uint8)
    Image.fromarray(img, mode="L").save(path)
    return path
