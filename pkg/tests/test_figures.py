import json
import math

import numpy as np
import pytest

from vortex_twm.config import parse_config
from vortex_twm.errors import InvalidConfigError
from vortex_twm.figures import (
    DETUNING_SWEEP,
    FIGURE_IDS,
    SWEEP_PARAMS,
    _pinned_radius,
    reproduce_figure,
    run_sweep,
)


def _base_config(**grid):
    return parse_config(
        {
            "medium": {"gamma31": 1.0, "gamma21": 0.05, "delta": 0.0, "d": 8.0},
            "control": {"epsilon": 4.0, "tc": 1},
            "probe_p": {"epsilon": 0.005, "tc": 1},
            "probe_s": {"epsilon": 0.005, "tc": 1},
            "grid": grid or {"n": 48, "extent": 3.0},
            "outputs": ["metrics"],
        }
    )


def test_figure_ids_and_rejection(tmp_path):
    assert FIGURE_IDS == ("fig3", "fig4", "fig5", "fig6")
    assert SWEEP_PARAMS == ("delta", "lc", "amp")
    with pytest.raises(InvalidConfigError, match="fig9"):
        reproduce_figure("fig9", tmp_path)


def test_pinned_radius_sits_on_grid_nodes():
    for n, extent in ((257, 3.0), (1025, 3.0), (65, 2.0)):
        step = 2.0 * extent / (n - 1)
        r = _pinned_radius(n, extent)
        assert r / step == round(r / step)  # integer number of steps
        assert abs(r - math.sqrt(0.5)) <= 0.5 * step
    assert _pinned_radius(257, 3.0, charge=4) == pytest.approx(
        math.sqrt(2.0), abs=0.5 * (6.0 / 256)
    )


def test_sweep_validation(tmp_path):
    cfg = _base_config()
    with pytest.raises(InvalidConfigError, match="sweep param"):
        run_sweep(cfg, "waist", [1.0], tmp_path / "a")
    with pytest.raises(InvalidConfigError, match="at least one value"):
        run_sweep(cfg, "delta", [], tmp_path / "b")
    with pytest.raises(InvalidConfigError, match="integers"):
        run_sweep(cfg, "lc", [1.5], tmp_path / "c")


def test_sweep_cells_revalidate(tmp_path):
    cfg = _base_config(n=32, extent=3.0)
    with pytest.raises(InvalidConfigError, match="charge 5"):
        run_sweep(cfg, "lc", [1.0, 5.0], tmp_path / "s")


def test_sweep_amp_axis(tmp_path):
    cfg = _base_config()
    out = tmp_path / "amp"
    manifest = run_sweep(cfg, "amp", [0.0, 4.0], out)
    assert manifest["sweep"] == {"param": "amp", "values": [0.0, 4.0]}
    assert manifest["cells"] == ["amp_0", "amp_4"]
    assert (out / "amp_0" / "metrics.csv").exists()
    lines = (out / "metrics.csv").read_text().splitlines()
    assert lines[0] == "amp,field,radius,winding,petal_count,peak_angle,ring_radius"
    assert len(lines) == 1 + 2 * 4  # one row per output field per value
    by_key = {}
    for line in lines[1:]:
        cells = line.split(",")
        by_key[(cells[0], cells[1])] = cells
    # zero control: nothing generated, observables blank
    assert by_key[("0", "omega_fs")][2:] == [""] * 5
    # strong control: the s-probe charge flows into the mixed fields
    assert by_key[("4", "omega_fs")][3] == "2"   # lc + lp
    assert by_key[("4", "omega_fp")][3] == "0"   # ls - lc


def test_sweep_lc_axis_changes_charge(tmp_path):
    cfg = _base_config(n=64, extent=3.0)
    out = tmp_path / "lc"
    run_sweep(cfg, "lc", [1.0, 3.0], out)
    rows = (out / "metrics.csv").read_text().splitlines()[1:]
    windings = {(r.split(",")[0], r.split(",")[1]): r.split(",")[3] for r in rows}
    assert windings[("1", "omega_fs")] == "2"
    assert windings[("3", "omega_fs")] == "4"
    assert windings[("3", "omega_fp")] == "-2"


def test_fig5_structure_and_physics(tmp_path):
    out = tmp_path / "fig5"
    manifest = reproduce_figure("fig5", out)
    assert manifest["figure"] == "fig5"
    assert manifest["cells"] == [f"delta_{d:g}" for d in DETUNING_SWEEP]
    for label in manifest["cells"]:
        assert (out / label / "profiles" / "omega_d_profile.csv").exists()
    lines = (out / "metrics.csv").read_text().splitlines()
    assert lines[0] == "delta,radius,peak_d,peak_u,spread_d,spread_u"
    table = {float(r.split(",")[0]): [float(v) for v in r.split(",")[1:]] for r in lines[1:]}
    assert sorted(table) == sorted(DETUNING_SWEEP)
    peak_d, peak_u = table[0.0][1], table[0.0][2]
    assert abs(((peak_d - peak_u) % (2.0 * np.pi)) - np.pi) < 0.01
    # detuning washes out the azimuthal modulation symmetrically
    assert table[9.0][3] < table[0.0][3]
    assert table[-9.0][3] < table[0.0][3]
    assert table[9.0][4] < table[0.0][4]
    assert table[-9.0][4] < table[0.0][4]
