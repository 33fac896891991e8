"""Strict config parsing: round trips, unknown keys, field validation."""

import json
import math

import pytest

from plaquette import (
    Basis,
    LinearizedSystem,
    ParseError,
    PlaquetteParams,
    SweepAxis,
    SweepSpec,
    ValidationError,
    parse_config,
)
from plaquette.sweep import preset_config_text


def _linearized_doc():
    return {
        "system": {
            "unit": "gamma",
            "linearized": {
                "Delta_1": 0.0,
                "Delta_2": 0.0,
                "omega_1": 0.0,
                "omega_2": 0.0,
                "G_1": 22.4,
                "G_2": 22.4,
                "phi_1": 0.0,
                "phi_2": 1.5707963267948966,
                "J_c": 500.0,
                "J_m": 10.0,
                "kappa_e": 1000.0,
                "kappa_0": 0.0,
                "gamma_e": 1.0,
                "gamma_0": 0.0,
            },
        }
    }


def _physical_doc():
    return {
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
                "varphi_2": 0.3,
                "solve": True,
            },
        }
    }


def test_bundled_fig2_round_trip():
    spec = parse_config(preset_config_text("fig2.json"))
    assert isinstance(spec, SweepSpec)
    assert spec.axis is SweepAxis.FREQUENCY
    assert (spec.start, spec.stop, spec.points) == (-30.0, 30.0, 401)
    assert spec.basis is Basis.BARE
    assert spec.output_path == "fig2a.csv"
    lin = spec.base
    assert isinstance(lin, LinearizedSystem)
    assert lin.J_c == 500.0 and lin.J_m == 10.0
    assert lin.kappa_e == 2 * lin.J_c and lin.kappa_0 == 0.0
    assert lin.G_1 == pytest.approx(math.sqrt(500.0), rel=1e-15)
    assert lin.flux == pytest.approx(math.pi / 2, rel=1e-15)


def test_linearized_without_sweep_returns_system():
    lin = parse_config(json.dumps(_linearized_doc()))
    assert isinstance(lin, LinearizedSystem)


def test_physical_system_parses():
    params = parse_config(json.dumps(_physical_doc()))
    assert isinstance(params, PlaquetteParams)
    assert params.unit == "kHz"


def test_negative_rate_names_field():
    doc = _linearized_doc()
    doc["system"]["linearized"]["kappa_e"] = -1
    with pytest.raises(ValidationError) as excinfo:
        parse_config(json.dumps(doc))
    assert excinfo.value.field == "kappa_e"


def test_missing_required_key_is_parse_error():
    doc = _linearized_doc()
    del doc["system"]["linearized"]["phi_2"]
    with pytest.raises(ParseError, match="phi_2"):
        parse_config(json.dumps(doc))


def test_unknown_key_is_parse_error():
    doc = _linearized_doc()
    doc["surprise"] = 1
    with pytest.raises(ParseError, match="surprise"):
        parse_config(json.dumps(doc))
    doc = _linearized_doc()
    doc["system"]["linearized"]["Delta_3"] = 1.0
    with pytest.raises(ParseError, match="Delta_3"):
        parse_config(json.dumps(doc))


def test_malformed_json_reports_position():
    with pytest.raises(ParseError, match="line"):
        parse_config("{not json")


def test_physical_requires_solve_directive():
    doc = _physical_doc()
    del doc["system"]["physical"]["solve"]
    with pytest.raises(ParseError, match="solve"):
        parse_config(json.dumps(doc))
    doc = _physical_doc()
    doc["system"]["physical"]["solve"] = False
    with pytest.raises(ValidationError):
        parse_config(json.dumps(doc))


def test_sweep_section_round_trip():
    doc = _linearized_doc()
    doc["sweep"] = {"axis": "flux", "start": 0.0, "stop": 6.283, "points": 11, "probe_omega": -10.0}
    doc["basis"] = "normal"
    doc["output"] = {"path": "out.csv"}
    spec = parse_config(json.dumps(doc))
    assert spec.axis is SweepAxis.FLUX
    assert spec.probe == -10.0
    assert spec.basis is Basis.NORMAL
    assert spec.output_path == "out.csv"


def test_sweep_validation():
    doc = _linearized_doc()
    doc["sweep"] = {"axis": "flux", "start": 0.0, "stop": 6.283, "points": 11}
    with pytest.raises(ParseError, match="probe_omega"):
        parse_config(json.dumps(doc))
    doc["sweep"] = {"axis": "frequency", "start": 0.0, "stop": 1.0, "points": 11, "probe_omega": 0.0}
    with pytest.raises(ValidationError) as excinfo:
        parse_config(json.dumps(doc))
    assert excinfo.value.field == "probe_omega"
    doc["sweep"] = {"axis": "frequency", "start": 1.0, "stop": 0.0, "points": 11}
    with pytest.raises(ValidationError):
        parse_config(json.dumps(doc))
    doc["sweep"] = {"axis": "frequency", "start": 0.0, "stop": 1.0, "points": 1}
    with pytest.raises(ValidationError):
        parse_config(json.dumps(doc))
    doc["sweep"] = {"axis": "spin", "start": 0.0, "stop": 1.0, "points": 5}
    with pytest.raises(ValidationError) as excinfo:
        parse_config(json.dumps(doc))
    assert excinfo.value.field == "axis"


def test_number_type_checks():
    doc = _linearized_doc()
    doc["system"]["linearized"]["G_1"] = "big"
    with pytest.raises(ValidationError) as excinfo:
        parse_config(json.dumps(doc))
    assert excinfo.value.field == "G_1"
    doc = _linearized_doc()
    doc["system"]["linearized"]["G_1"] = True
    with pytest.raises(ValidationError):
        parse_config(json.dumps(doc))


def test_system_needs_exactly_one_kind():
    doc = _linearized_doc()
    doc["system"]["physical"] = _physical_doc()["system"]["physical"]
    with pytest.raises(ParseError):
        parse_config(json.dumps(doc))
    with pytest.raises(ParseError):
        parse_config(json.dumps({"system": {"unit": "gamma"}}))
