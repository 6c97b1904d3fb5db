"""Execute one configured run and write its products plus a manifest.

A run samples the three input beams, propagates both channels, composes
the resultant output fields, and writes the requested products:

    fields    CSV dumps of the six computed fields
    images    PGM intensity and PPM phase maps of the six computed fields
    profiles  azimuthal intensity CSVs of the four observable fields
    metrics   one CSV row of observables per field

The manifest (manifest.json) echoes the exact configuration and lists
every written file with its size and SHA-256, so a run is reproducible
from its manifest alone and verifiable bit for bit.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from . import analysis
from .beams import ComplexField, make_grid, sample_lg
from .config import RunConfig, config_to_dict, validate_config
from .errors import VortexTwmError
from .propagation import output_fields
from .render import (
    ImageSpec,
    write_field_csv,
    write_intensity_pgm,
    write_phase_ppm,
    write_profile_csv,
)

__all__ = [
    "run_config",
    "compute_fields",
    "write_products",
    "field_metrics",
    "write_metrics_csv",
    "write_manifest",
    "hash_tree",
]

# the four fields whose rings carry the observables; the transmitted
# probes are dumped and imaged but yield no ring metrics by default
PROFILED = ("omega_d", "omega_u", "omega_fp", "omega_fs")
METRIC_COLUMNS = ("field", "radius", "winding", "petal_count", "peak_angle", "ring_radius")


def compute_fields(cfg: RunConfig) -> dict[str, ComplexField]:
    """Sample inputs, propagate, and return the six named output fields."""
    grid = make_grid(cfg.grid_n, cfg.grid_extent)
    control = sample_lg(cfg.control, grid)
    probe_p = sample_lg(cfg.probe_p, grid)
    probe_s = sample_lg(cfg.probe_s, grid)
    out = output_fields(cfg.medium, control, probe_p, probe_s)
    return {
        "omega_d": out.omega_d,
        "omega_u": out.omega_u,
        "omega_fp": out.omega_fp_out,
        "omega_fs": out.omega_fs_out,
        "omega_s": out.omega_s_out,
        "omega_p": out.omega_p_out,
    }


def _metric_or_blank(fn):
    try:
        return fn()
    except VortexTwmError:
        return ""


def field_metrics(name: str, field: ComplexField, cfg: RunConfig) -> dict:
    """Observable row for one field; blanks where an observable is undefined."""
    radius = cfg.ring_radius
    if radius is None:
        radius = _metric_or_blank(lambda: analysis.ring_radius(field))
    row = {"field": name, "radius": radius}
    if radius == "":
        row.update({"winding": "", "petal_count": "", "peak_angle": "", "ring_radius": ""})
        return row
    row["winding"] = _metric_or_blank(
        lambda: analysis.winding_number(field, radius, cfg.profile_m)
    )
    profile = analysis.azimuthal_profile(field, radius, cfg.profile_m)
    row["petal_count"] = _metric_or_blank(lambda: analysis.petal_count(profile))
    row["peak_angle"] = _metric_or_blank(lambda: analysis.peak_angle(profile))
    row["ring_radius"] = _metric_or_blank(lambda: analysis.ring_radius(field))
    return row


def write_metrics_csv(rows: list[dict], columns, path) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt_cell(row.get(c, "")) for c in columns))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _fmt_cell(val) -> str:
    if val == "" or val is None:
        return ""
    if isinstance(val, bool):
        return str(int(val))
    if isinstance(val, int):
        return str(val)
    if isinstance(val, float):
        return format(val, ".17g")
    return str(val)


def file_sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def hash_tree(out_dir, skip=("manifest.json",)) -> list[dict]:
    """Size and digest of every file under out_dir, sorted by relative path."""
    out_dir = Path(out_dir)
    entries = []
    for root, _dirs, names in os.walk(out_dir):
        for name in names:
            full = Path(root) / name
            rel = full.relative_to(out_dir).as_posix()
            if rel in skip:
                continue
            entries.append(
                {"path": rel, "bytes": full.stat().st_size, "sha256": file_sha256(full)}
            )
    return sorted(entries, key=lambda e: e["path"])


def write_manifest(out_dir, payload: dict) -> dict:
    """Attach the hashed file list and write manifest.json deterministically."""
    out_dir = Path(out_dir)
    payload = dict(payload)
    payload["files"] = hash_tree(out_dir)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    (out_dir / "manifest.json").write_text(text, encoding="utf-8")
    return payload


def run_config(cfg: RunConfig, out_dir) -> dict:
    """Run one configuration into out_dir; returns the manifest payload."""
    validate_config(cfg)
    return write_products(cfg, out_dir, compute_fields(cfg))


def write_products(cfg: RunConfig, out_dir, fields: dict[str, ComplexField]) -> dict:
    """Write the requested products for already-computed fields."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if "fields" in cfg.outputs:
        fdir = out_dir / "fields"
        fdir.mkdir(exist_ok=True)
        for name, fld in fields.items():
            write_field_csv(fld, fdir / f"{name}.csv")

    if "images" in cfg.outputs:
        idir = out_dir / "images"
        idir.mkdir(exist_ok=True)
        spec = ImageSpec()
        for name, fld in fields.items():
            write_intensity_pgm(fld, spec, idir / f"{name}_intensity.pgm")
            write_phase_ppm(fld, idir / f"{name}_phase.ppm")

    if "profiles" in cfg.outputs:
        pdir = out_dir / "profiles"
        pdir.mkdir(exist_ok=True)
        for name in PROFILED:
            fld = fields[name]
            radius = cfg.ring_radius
            if radius is None:
                try:
                    radius = analysis.ring_radius(fld)
                except VortexTwmError:
                    continue
            profile = analysis.azimuthal_profile(fld, radius, cfg.profile_m)
            write_profile_csv(profile, pdir / f"{name}_profile.csv")

    if "metrics" in cfg.outputs:
        rows = [field_metrics(name, fields[name], cfg) for name in PROFILED]
        write_metrics_csv(rows, METRIC_COLUMNS, out_dir / "metrics.csv")

    return write_manifest(out_dir, {"config": config_to_dict(cfg)})
