"""Figure presets: the four standard output suites.

Each preset runs a small matrix of configurations into per-cell
directories under the output directory, then writes a figure-level
metrics CSV and a manifest covering every file.  Free parameter choices
(which charges are swept, the interference depth, grid sizes, the
measurement ring) are fixed here and echoed through each cell's manifest,
so every preset is reproducible bit for bit.

Preset design notes:

* fig3 uses the canonical deep-medium configuration (d = 100) with flat
  probes; the generated fields there carry the transferred charges and
  their rings, which is all this preset measures.
* fig4/fig5/fig6 study interference between a probe and its generated
  partner, so they lower d (8 for the crescent suites, 4 for the petal
  suite).  At d = 100 the surviving generated amplitude is ~1e-7 of the
  probe and the azimuthal modulation would sit below measurement floors.
* Angle metrics are read on a ring snapped to an exact node multiple of
  an odd grid: cardinal ring samples then land on grid nodes where
  bilinear interpolation is exact, which removes the dominant error in
  peak-angle readout.
"""
from __future__ import annotations

import math
from dataclasses import replace
from pathlib import Path

from . import analysis
from ._parallel import map_items
from .beams import LGBeamSpec
from .config import RunConfig, validate_config
from .errors import InvalidConfigError, VortexTwmError
from .medium import MediumParams
from .runner import (
    METRIC_COLUMNS,
    compute_fields,
    field_metrics,
    write_manifest,
    write_metrics_csv,
    write_products,
)

__all__ = ["reproduce_figure", "run_sweep", "DETUNING_SWEEP", "FIGURE_IDS", "SWEEP_PARAMS"]

DETUNING_SWEEP = (-9.0, -6.0, -3.0, 0.0, 3.0, 6.0, 9.0)
CHARGE_SWEEP_TRANSFER = (1, 2, 3)
CHARGE_SWEEP_PETALS = (2, 3, 4)

TRANSFER_DEPTH = 100.0
CRESCENT_DEPTH = 8.0
PETAL_DEPTH = 4.0

ANGLE_GRID_N = 257  # odd so the axes pass through grid nodes


def _pinned_radius(n: int, extent: float, charge: int = 1, waist: float = 1.0) -> float:
    """Measurement ring snapped to an integer multiple of the grid step.

    Targets the probe ring radius waist*sqrt(|charge|/2); snapping keeps
    the cardinal ring samples exactly on grid nodes (for odd n), where
    interpolation error vanishes.
    """
    step = 2.0 * extent / (n - 1)
    return step * round(waist * math.sqrt(abs(charge) / 2.0) / step)


def _weak_probe(tc: int) -> LGBeamSpec:
    return LGBeamSpec(epsilon=0.005, tc=tc)


def _transfer_config(lc: int) -> RunConfig:
    return RunConfig(
        medium=MediumParams(gamma31=1.0, gamma21=0.05, delta=0.0, d=TRANSFER_DEPTH),
        control=LGBeamSpec(epsilon=4.0, tc=lc),
        probe_p=_weak_probe(0),
        probe_s=_weak_probe(0),
        outputs=("images", "metrics"),
    )


def _interference_config(delta: float, lc: int, depth: float, outputs) -> RunConfig:
    n = ANGLE_GRID_N
    extent = 3.0
    return RunConfig(
        medium=MediumParams(gamma31=1.0, gamma21=0.05, delta=float(delta), d=depth),
        control=LGBeamSpec(epsilon=4.0, tc=lc),
        probe_p=_weak_probe(1),
        probe_s=_weak_probe(1),
        grid_n=n,
        grid_extent=extent,
        outputs=tuple(outputs),
        ring_radius=_pinned_radius(n, extent, charge=1),
    )


def _run_cells(cells, out_dir):
    """Run (label, config) cells in parallel; products land in out_dir/label."""

    def work(cell):
        label, cfg = cell
        validate_config(cfg)
        fields = compute_fields(cfg)
        write_products(cfg, out_dir / label, fields)
        return label, cfg, fields

    return map_items(work, cells)


def _try(fn):
    try:
        return fn()
    except VortexTwmError:
        return ""


def _fig3(out_dir) -> dict:
    cells = [(f"lc_{lc:g}", _transfer_config(lc)) for lc in CHARGE_SWEEP_TRANSFER]
    rows = []
    for label, cfg, fields in _run_cells(cells, out_dir):
        fp, fs = fields["omega_fp"], fields["omega_fs"]
        rows.append(
            {
                "lc": cfg.control.tc,
                "winding_fs": _try(lambda: analysis.winding_number(fs)),
                "winding_fp": _try(lambda: analysis.winding_number(fp)),
                "ring_fp": _try(lambda: analysis.ring_radius(fp)),
                "ring_fs": _try(lambda: analysis.ring_radius(fs)),
            }
        )
    write_metrics_csv(
        rows, ("lc", "winding_fs", "winding_fp", "ring_fp", "ring_fs"), out_dir / "metrics.csv"
    )
    return write_manifest(
        out_dir,
        {
            "figure": "fig3",
            "cells": [label for label, _ in cells],
            "notes": "charge transfer to the generated fields, flat probes, d = 100",
        },
    )


def _crescent_rows(results):
    rows = []
    for label, cfg, fields in results:
        rad = cfg.ring_radius
        prof_d = analysis.azimuthal_profile(fields["omega_d"], rad, cfg.profile_m)
        prof_u = analysis.azimuthal_profile(fields["omega_u"], rad, cfg.profile_m)
        rows.append(
            {
                "delta": cfg.medium.delta,
                "radius": rad,
                "petal_d": _try(lambda: analysis.petal_count(prof_d)),
                "petal_u": _try(lambda: analysis.petal_count(prof_u)),
                "peak_d": _try(lambda: analysis.peak_angle(prof_d)),
                "peak_u": _try(lambda: analysis.peak_angle(prof_u)),
                "spread_d": float(prof_d.intensities.max() - prof_d.intensities.min()),
                "spread_u": float(prof_u.intensities.max() - prof_u.intensities.min()),
            }
        )
    return rows


def _detuning_cells(outputs):
    return [
        (f"delta_{delta:g}", _interference_config(delta, 1, CRESCENT_DEPTH, outputs))
        for delta in DETUNING_SWEEP
    ]


def _fig4(out_dir) -> dict:
    cells = _detuning_cells(("images", "metrics"))
    rows = _crescent_rows(_run_cells(cells, out_dir))
    write_metrics_csv(
        rows,
        ("delta", "radius", "petal_d", "petal_u", "peak_d", "peak_u", "spread_d", "spread_u"),
        out_dir / "metrics.csv",
    )
    return write_manifest(
        out_dir,
        {
            "figure": "fig4",
            "cells": [label for label, _ in cells],
            "notes": "crescent rotation under detuning, unit charges, d = 8",
        },
    )


def _fig5(out_dir) -> dict:
    cells = _detuning_cells(("profiles", "metrics"))
    rows = _crescent_rows(_run_cells(cells, out_dir))
    write_metrics_csv(
        rows,
        ("delta", "radius", "peak_d", "peak_u", "spread_d", "spread_u"),
        out_dir / "metrics.csv",
    )
    return write_manifest(
        out_dir,
        {
            "figure": "fig5",
            "cells": [label for label, _ in cells],
            "notes": "azimuthal profiles versus detuning on a common ring, d = 8",
        },
    )


def _fig6(out_dir) -> dict:
    cells = [
        (f"lc_{lc:g}", _interference_config(0.0, lc, PETAL_DEPTH, ("images", "metrics")))
        for lc in CHARGE_SWEEP_PETALS
    ]
    rows = []
    for label, cfg, fields in _run_cells(cells, out_dir):
        rad = cfg.ring_radius
        prof_d = analysis.azimuthal_profile(fields["omega_d"], rad, cfg.profile_m)
        prof_u = analysis.azimuthal_profile(fields["omega_u"], rad, cfg.profile_m)
        rows.append(
            {
                "lc": cfg.control.tc,
                "radius": rad,
                "petal_d": _try(lambda: analysis.petal_count(prof_d)),
                "petal_u": _try(lambda: analysis.petal_count(prof_u)),
                "peak_d": _try(lambda: analysis.peak_angle(prof_d)),
                "peak_u": _try(lambda: analysis.peak_angle(prof_u)),
                "winding_fp": _try(lambda: analysis.winding_number(fields["omega_fp"])),
                "winding_fs": _try(lambda: analysis.winding_number(fields["omega_fs"])),
                "ring_fp": _try(lambda: analysis.ring_radius(fields["omega_fp"])),
                "ring_fs": _try(lambda: analysis.ring_radius(fields["omega_fs"])),
            }
        )
    write_metrics_csv(
        rows,
        (
            "lc",
            "radius",
            "petal_d",
            "petal_u",
            "peak_d",
            "peak_u",
            "winding_fp",
            "winding_fs",
            "ring_fp",
            "ring_fs",
        ),
        out_dir / "metrics.csv",
    )
    return write_manifest(
        out_dir,
        {
            "figure": "fig6",
            "cells": [label for label, _ in cells],
            "notes": "petal interference for control charges 2..4, unit probes, d = 4",
        },
    )


_FIGURES = {"fig3": _fig3, "fig4": _fig4, "fig5": _fig5, "fig6": _fig6}
FIGURE_IDS = tuple(sorted(_FIGURES))


def reproduce_figure(fig_id: str, out_dir) -> dict:
    """Run one preset into out_dir; returns the manifest payload."""
    if fig_id not in _FIGURES:
        raise InvalidConfigError(f"unknown figure id {fig_id!r}, expected one of {FIGURE_IDS}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return _FIGURES[fig_id](out_dir)


SWEEP_PARAMS = ("delta", "lc", "amp")


def _sweep_cell(cfg: RunConfig, param: str, value: float) -> RunConfig:
    if param == "delta":
        return replace(cfg, medium=replace(cfg.medium, delta=float(value)))
    if param == "lc":
        if value != int(value):
            raise InvalidConfigError(f"lc sweep values must be integers, got {value!r}")
        return replace(cfg, control=replace(cfg.control, tc=int(value)))
    return replace(cfg, control=replace(cfg.control, epsilon=float(value)))


def run_sweep(cfg: RunConfig, param: str, values, out_dir) -> dict:
    """Re-run one base config across a parameter axis.

    param selects the knob: the shared detuning (delta), the control beam
    charge (lc), or the control peak amplitude (amp).  Each value gets its
    own cell directory of products plus a row block in the sweep-level
    metrics table (one row per output field, long format).
    """
    if param not in SWEEP_PARAMS:
        raise InvalidConfigError(f"sweep param must be one of {SWEEP_PARAMS}, got {param!r}")
    values = [float(v) for v in values]
    if not values:
        raise InvalidConfigError("sweep needs at least one value")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cells = [(f"{param}_{v:g}", _sweep_cell(cfg, param, v)) for v in values]
    rows = []
    for (label, cell_cfg, fields), value in zip(_run_cells(cells, out_dir), values):
        for name in ("omega_d", "omega_u", "omega_fp", "omega_fs"):
            row = {param: value}
            row.update(field_metrics(name, fields[name], cell_cfg))
            rows.append(row)
    write_metrics_csv(rows, (param,) + METRIC_COLUMNS, out_dir / "metrics.csv")
    return write_manifest(
        out_dir,
        {"sweep": {"param": param, "values": values}, "cells": [label for label, _ in cells]},
    )
