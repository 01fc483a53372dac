"""Smoke tests for the hyperpol Python bindings."""

import math
import os
from pathlib import Path

import pytest

import hyperpol as hp


@pytest.fixture
def config_text():
    cfg_dir = os.environ.get("HYPERPOL_CONFIG_DIR")
    if not cfg_dir:
        pytest.skip("HYPERPOL_CONFIG_DIR not set")
    return (Path(cfg_dir) / "kretschmann_r6g.json").read_text()


def test_version():
    assert hp.__version__ == "0.1.0"


def test_preset_reflectivity():
    stack = hp.presets.kretschmann_stack(0.1)
    res = hp.reflectivity(stack, 500e-9, math.radians(48.0))
    assert res.R == pytest.approx(0.06307364050153913, rel=1e-9)
    assert abs(res.r) ** 2 == pytest.approx(res.R, rel=1e-12)


def test_band_edges():
    edges = hp.find_band_edges(hp.presets.hmm_spec(), 350e-9, 650e-9, 0.5e-9)
    assert edges.lambda_enz * 1e9 == pytest.approx(414.0117, abs=0.01)
    assert edges.lambda_enp * 1e9 == pytest.approx(513.0195, abs=0.01)


def test_find_dips_arrays():
    stack = hp.presets.kretschmann_stack(0.1)
    lam = [(450.0 + 0.5 * i) / 1e9 for i in range(401)]
    R = [hp.reflectivity(stack, l, math.radians(48.0)).R for l in lam]
    report = hp.find_dips_arrays(lam, R, 0.02, 450e-9, 650e-9)
    assert report.count() == 2
    assert report.dips[0].lambda_min * 1e9 == pytest.approx(498.619, abs=0.1)
    assert report.dips[1].lambda_min * 1e9 == pytest.approx(585.747, abs=0.1)
    assert hp.splitting_energy(report) == pytest.approx(369.87, abs=0.5)


def test_coupled_eigenfrequencies():
    atom = hp.AtomModel(omega_0=3.5e15, gamma_vac=1e12)
    res = hp.SurfaceResonance(omega_c=3.5e15, kappa_c=3e12, chi=1.0)
    cm = hp.coupled_eigenfrequencies(atom, res, 5e13)
    assert cm.regime == hp.CouplingRegime.strong
    assert cm.omega_plus.real > cm.omega_minus.real
    assert cm.splitting_meV > 0.0


def test_parse_config_and_run_job(config_text, tmp_path):
    cfg = hp.parse_config(config_text)
    assert cfg.schema_version == 1
    assert hp.serialize_config(cfg) == hp.serialize_config(hp.parse_config(config_text))
    out = tmp_path / "emt_out"
    summary = hp.run_job(cfg, "emt", str(out), 1, config_text)
    assert summary["subcommand"] == "emt"
    assert summary["config_hash"].startswith("fnv1a:")
    assert (out / "emt.csv").exists()
    assert (out / "summary.json").exists()


def test_exception_mapping(config_text):
    with pytest.raises(ValueError):
        hp.parse_config("{oops")
    with pytest.raises(RuntimeError):
        hp.find_band_edges(hp.presets.hmm_spec(), 600e-9, 650e-9, 0.5e-9)
    with pytest.raises(OSError):
        hp.run_job(hp.parse_config(config_text), "emt", "/dev/null/out", 1, config_text)
