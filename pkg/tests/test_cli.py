"""CLI subcommands, output formats, and exit codes (0/1/2)."""

import json

import pytest

from plaquette.cli import main
from plaquette.sweep import preset_config_text


@pytest.fixture
def fig2_config(tmp_path):
    path = tmp_path / "fig2.json"
    path.write_text(preset_config_text("fig2.json"))
    return str(path)


@pytest.fixture
def physical_config(tmp_path):
    doc = {
        "system": {
            "unit": "kHz",
            "physical": {
                "omega_1": 100.0,
                "omega_2": 100.0,
                "delta0_1": 100.0,
                "delta0_2": 100.0,
                "g_1": 0.001,
                "g_2": 0.001,
                "J_c": 1.0,
                "J_m": 0.5,
                "kappa_e": 2.0,
                "kappa_0": 0.0,
                "gamma_e": 0.1,
                "gamma_0": 0.0,
                "eps_1": 1.0,
                "eps_2": 1.0,
                "varphi_1": 0.0,
                "varphi_2": 1.5707963267948966,
                "solve": True,
            },
        }
    }
    path = tmp_path / "physical.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_smatrix_prints_matrix(fig2_config, capsys):
    assert main(["smatrix", fig2_config, "--omega", "-10"]) == 0
    out = capsys.readouterr().out
    assert "scattering probabilities at omega" in out
    assert "from a1" in out and "to b2" in out
    assert "stable: True" in out


def test_steady_solves_physical(physical_config, capsys):
    assert main(["steady", physical_config]) == 0
    out = capsys.readouterr().out
    assert "alpha_1 =" in out and "residual =" in out


def test_steady_rejects_linearized_config(fig2_config, capsys):
    assert main(["steady", fig2_config]) == 1
    assert "error:" in capsys.readouterr().err


def test_steady_nonconvergence_is_numerical_failure(physical_config, capsys):
    assert main(["steady", physical_config, "--tol", "1e-30", "--max-iter", "1"]) == 2
    assert "numerical failure:" in capsys.readouterr().err


def test_sweep_writes_csv(fig2_config, tmp_path, capsys):
    out = tmp_path / "spectrum.csv"
    assert main(["sweep", fig2_config, "--out", str(out)]) == 0
    assert out.exists()
    assert out.read_text().splitlines()[3].startswith("axis,S11,")


def test_sweep_without_sweep_section(tmp_path, capsys):
    doc = json.loads(preset_config_text("fig2.json"))
    del doc["sweep"]
    path = tmp_path / "nosweep.json"
    path.write_text(json.dumps(doc))
    assert main(["sweep", str(path)]) == 1


def test_bad_config_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"system": {"linearized": {"kappa_e": -1}}}')
    assert main(["smatrix", str(path), "--omega", "0"]) == 1
    assert main(["smatrix", str(tmp_path / "missing.json"), "--omega", "0"]) == 1


def test_figdata_cli(tmp_path, capsys):
    assert main(["figdata", "fig2bc", "--outdir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert (tmp_path / "fig2b.csv").exists()
    assert (tmp_path / "fig2c.csv").exists()
    assert "fig2b.csv" in out


def test_verify_appendix_cli(fig2_config, capsys):
    assert main(["verify-appendix", fig2_config]) == 0
    out = capsys.readouterr().out
    assert "corrected" in out
    assert "worst element" in out
    assert "FLAG" not in out


def test_verify_appendix_as_printed(fig2_config, capsys):
    # at the preset the detunings match the mechanical frequencies, so
    # even the uncorrected transcription agrees
    assert main(["verify-appendix", fig2_config, "--as-printed"]) == 0
    out = capsys.readouterr().out
    assert "as-printed" in out
    assert "FLAG" not in out


def test_table1_cli(fig2_config, capsys):
    assert main(["table1", fig2_config]) == 0
    out = capsys.readouterr().out
    assert out.count("all inhibited: True") == 4


def test_classify_cli(fig2_config, capsys):
    assert main(["classify", fig2_config, "--omega", "-10"]) == 0
    out = capsys.readouterr().out
    assert "passed: True" in out
    assert "transmitter: port 1" in out
    assert "isolation S12/S21" in out


def test_classify_threshold_flags(fig2_config, capsys):
    assert main(["classify", fig2_config, "--omega", "-10", "--high", "0.45", "--low", "0.002"]) == 0
    out = capsys.readouterr().out
    assert "passed: False" in out
