import dataclasses
import json
import warnings

import numpy as np
import pytest

from vortex_twm import cli
from vortex_twm._parallel import map_items, worker_count
from vortex_twm.config import (
    RunConfig,
    WeakProbeWarning,
    config_to_dict,
    default_config,
    load_config,
    parse_config,
    validate_config,
)
from vortex_twm.errors import InvalidConfigError
from vortex_twm.runner import file_sha256, run_config
from vortex_twm.verify import SuiteResult


def _small_doc(**overrides):
    doc = {
        "medium": {"gamma31": 1.0, "gamma21": 0.05, "delta": 0.0, "d": 8.0},
        "control": {"epsilon": 4.0, "tc": 1},
        "probe_p": {"epsilon": 0.005, "tc": 0},
        "probe_s": {"epsilon": 0.005, "tc": 0},
        "grid": {"n": 32, "extent": 3.0},
        "outputs": ["metrics"],
        "analysis": {"radius": "auto", "m": 720},
    }
    doc.update(overrides)
    return doc


def _write_doc(tmp_path, doc, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def test_default_config_validates_silently():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        validate_config(default_config())


def test_validation_names_dotted_fields():
    cfg = default_config()
    with pytest.raises(InvalidConfigError, match="grid.n"):
        validate_config(dataclasses.replace(cfg, grid_n=1))
    with pytest.raises(InvalidConfigError, match="grid.n"):
        validate_config(dataclasses.replace(cfg, grid_n=256.0))
    with pytest.raises(InvalidConfigError, match="grid.extent"):
        validate_config(dataclasses.replace(cfg, grid_extent=0.0))
    with pytest.raises(InvalidConfigError, match="analysis.m"):
        validate_config(dataclasses.replace(cfg, profile_m=15))
    with pytest.raises(InvalidConfigError, match="analysis.radius"):
        validate_config(dataclasses.replace(cfg, ring_radius=7.5))
    with pytest.raises(InvalidConfigError, match="outputs"):
        validate_config(dataclasses.replace(cfg, outputs=("metrics", "pixels")))


def test_validation_resolution_scales_with_charge():
    cfg = parse_config(_small_doc())
    high = dataclasses.replace(cfg, control=dataclasses.replace(cfg.control, tc=5))
    with pytest.raises(InvalidConfigError, match="charge 5"):
        validate_config(high)  # 32 < 8 * (5 + 1)
    with pytest.raises(InvalidConfigError, match="analysis.m"):
        validate_config(dataclasses.replace(high, grid_n=64, profile_m=90))


def test_weak_probe_warning():
    cfg = default_config()
    strained = dataclasses.replace(
        cfg, probe_p=dataclasses.replace(cfg.probe_p, epsilon=0.03)
    )
    with pytest.warns(WeakProbeWarning):
        validate_config(strained)  # 0.03 > 0.5 * 0.05


def test_config_round_trip_identity():
    cfg = default_config()
    assert parse_config(config_to_dict(cfg)) == cfg
    pinned = dataclasses.replace(cfg, ring_radius=0.75, outputs=("images",), profile_m=360)
    assert parse_config(config_to_dict(pinned)) == pinned


def test_parse_config_error_paths():
    with pytest.raises(InvalidConfigError, match="medium"):
        parse_config({})
    with pytest.raises(InvalidConfigError, match="must be a JSON object"):
        parse_config([1, 2])
    with pytest.raises(InvalidConfigError, match="medium.d"):
        parse_config(_small_doc(medium={"gamma31": 1.0, "gamma21": 0.05}))
    with pytest.raises(InvalidConfigError, match="medium.gamma31"):
        parse_config(_small_doc(medium={"gamma31": "one", "gamma21": 0.05, "d": 8.0}))
    with pytest.raises(InvalidConfigError, match="medium.gamma31"):
        parse_config(_small_doc(medium={"gamma31": True, "gamma21": 0.05, "d": 8.0}))
    with pytest.raises(InvalidConfigError, match="control.tc"):
        parse_config(_small_doc(control={"epsilon": 4.0, "tc": 1.5}))
    with pytest.raises(InvalidConfigError, match="analysis.radius"):
        parse_config(_small_doc(analysis={"radius": "brightest", "m": 720}))
    with pytest.raises(InvalidConfigError, match="outputs"):
        parse_config(_small_doc(outputs="metrics"))
    with pytest.raises(InvalidConfigError, match="grid.n"):
        parse_config(_small_doc(grid={"n": 32.5, "extent": 3.0}))


def test_load_config_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InvalidConfigError, match="not valid JSON"):
        load_config(path)


def test_load_config_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_config(tmp_path / "absent.json")


def test_run_manifest_hashes_are_faithful(tmp_path):
    cfg = parse_config(_small_doc(outputs=["metrics", "profiles"]))
    out = tmp_path / "run"
    manifest = run_config(cfg, out)
    assert manifest["config"] == config_to_dict(cfg)
    listed = {e["path"]: e for e in manifest["files"]}
    assert "metrics.csv" in listed
    for rel, entry in listed.items():
        full = out / rel
        assert full.stat().st_size == entry["bytes"]
        assert file_sha256(full) == entry["sha256"]
    on_disk = json.loads((out / "manifest.json").read_text())
    assert on_disk["files"] == manifest["files"]


def test_manifest_echo_reproduces_run_bytes(tmp_path):
    cfg = parse_config(_small_doc(outputs=["metrics", "images"]))
    first = tmp_path / "first"
    run_config(cfg, first)
    echoed = json.loads((first / "manifest.json").read_text())["config"]
    second = tmp_path / "second"
    run_config(parse_config(echoed), second)
    files1 = sorted(p.relative_to(first).as_posix() for p in first.rglob("*") if p.is_file())
    files2 = sorted(p.relative_to(second).as_posix() for p in second.rglob("*") if p.is_file())
    assert files1 == files2
    for rel in files1:
        assert (first / rel).read_bytes() == (second / rel).read_bytes()


def test_worker_count_env_policy(monkeypatch):
    monkeypatch.delenv("VORTEX_TWM_THREADS", raising=False)
    assert worker_count(4) >= 1
    monkeypatch.setenv("VORTEX_TWM_THREADS", "3")
    assert worker_count(10) == 3
    assert worker_count(2) == 2
    monkeypatch.setenv("VORTEX_TWM_THREADS", "0")
    assert worker_count(8) >= 1
    monkeypatch.setenv("VORTEX_TWM_THREADS", "abc")
    with pytest.raises(InvalidConfigError):
        worker_count(4)
    monkeypatch.setenv("VORTEX_TWM_THREADS", "-2")
    with pytest.raises(InvalidConfigError):
        worker_count(4)


def test_map_items_preserves_order(monkeypatch):
    for threads in ("1", "4"):
        monkeypatch.setenv("VORTEX_TWM_THREADS", threads)
        assert map_items(lambda k: k * k, range(25)) == [k * k for k in range(25)]


def test_cli_no_subcommand_fails():
    assert cli.main([]) == 1


def test_cli_unknown_subcommand_fails(capsys):
    assert cli.main(["frobnicate"]) == 1
    assert "error:" in capsys.readouterr().err


def test_cli_fields_happy_path(tmp_path, capsys):
    path = _write_doc(tmp_path, _small_doc())
    out = tmp_path / "out"
    assert cli.main(["fields", "--config", str(path), "--out", str(out)]) == 0
    assert "wrote" in capsys.readouterr().out
    assert (out / "metrics.csv").exists()
    assert (out / "manifest.json").exists()


def test_cli_fields_missing_config(tmp_path):
    out = tmp_path / "out"
    assert cli.main(["fields", "--config", str(tmp_path / "no.json"), "--out", str(out)]) == 2


def test_cli_fields_invalid_config(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops", encoding="utf-8")
    assert cli.main(["fields", "--config", str(bad), "--out", str(tmp_path / "o")]) == 1


def test_cli_figure_unknown_id(tmp_path):
    assert cli.main(["figure", "fig9", "--out", str(tmp_path / "f")]) == 1


def test_cli_sweep_argument_errors(tmp_path):
    path = _write_doc(tmp_path, _small_doc())
    base = ["sweep", "--config", str(path), "--out", str(tmp_path / "s")]
    assert cli.main(base + ["--param", "waist", "--values", "1,2"]) == 1
    assert cli.main(base + ["--param", "delta", "--values", "a,b"]) == 1
    assert cli.main(base + ["--param", "delta", "--values", " , "]) == 1
    assert cli.main(base + ["--param", "lc", "--values", "1.5"]) == 1


def test_cli_sweep_happy_path(tmp_path):
    path = _write_doc(tmp_path, _small_doc())
    out = tmp_path / "sweep"
    rc = cli.main(["sweep", "--config", str(path), "--param", "delta",
                   "--values", "0,3", "--out", str(out)])
    assert rc == 0
    header = (out / "metrics.csv").read_text().splitlines()[0]
    assert header.startswith("delta,field")
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["sweep"]["param"] == "delta"
    assert manifest["sweep"]["values"] == [0.0, 3.0]


def test_cli_profile_happy_path(tmp_path):
    path = _write_doc(tmp_path, _small_doc())
    out = tmp_path / "prof"
    assert cli.main(["profile", "--config", str(path), "--field", "d",
                     "--out", str(out)]) == 0
    lines = (out / "profile_omega_d.csv").read_text().splitlines()
    assert lines[0] == "theta,intensity"
    assert len(lines) == 721


def test_cli_profile_argument_errors(tmp_path):
    path = _write_doc(tmp_path, _small_doc())
    out = str(tmp_path / "p")
    assert cli.main(["profile", "--config", str(path), "--field", "q", "--out", out]) == 1
    assert cli.main(["profile", "--config", str(path), "--field", "d",
                     "--radius", "wide", "--out", out]) == 1
    assert cli.main(["profile", "--config", str(path), "--field", "d",
                     "--radius", "9.0", "--out", out]) == 1


def test_cli_verify_fast_passes(capsys):
    assert cli.main(["verify", "--level", "fast"]) == 0
    out = capsys.readouterr().out
    assert "verify: PASS" in out


def test_cli_verify_unknown_level():
    assert cli.main(["verify", "--level", "exhaustive"]) == 1


def test_cli_verify_failure_exit_code(monkeypatch, capsys):
    fake = [SuiteResult(name="channel_oracle", max_error=1.0, tolerance=1e-7)]
    monkeypatch.setattr(cli, "run_verify", lambda level: fake)
    assert cli.main(["verify", "--level", "fast"]) == 3
    err = capsys.readouterr().err
    assert "channel_oracle" in err
