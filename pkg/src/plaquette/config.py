"""Strict JSON config parsing for the CLI and sweep engine.

The config format is strict-keyed JSON: unknown keys are errors, required
keys must be present, and every rate is validated non-negative before any
object is built.  All rates are multiples of the declared ``unit`` string
(metadata only).

Schema sketch::

    {
      "system": {
        "unit": "gamma",
        "linearized": {Delta_1, Delta_2, omega_1, omega_2, G_1, G_2,
                       phi_1, phi_2, J_c, J_m, kappa_e, kappa_0,
                       gamma_e, gamma_0, [frame_ref]}
        # or
        "physical": {omega_1, omega_2, delta0_1, delta0_2, g_1, g_2,
                     J_c, J_m, kappa_e, kappa_0, gamma_e, gamma_0,
                     eps_1, eps_2, varphi_1, varphi_2, "solve": true}
      },
      "sweep":  {"axis", "start", "stop", "points", ["probe_omega"]},
      "basis":  "bare" | "normal",
      "output": {"path": "out.csv"}
    }

``sweep`` is optional; without it the parsed system object is returned
directly (for single-frequency subcommands).  ``probe_omega`` is required
for every axis except ``frequency``, where it is rejected.
"""

from __future__ import annotations

import json

from .dynamics import Basis
from .errors import InvalidParameter, ParseError, ValidationError
from .model import LinearizedSystem, PlaquetteParams
from .sweep import SweepAxis, SweepSpec

_LINEARIZED_REQUIRED = (
    "Delta_1",
    "Delta_2",
    "omega_1",
    "omega_2",
    "G_1",
    "G_2",
    "phi_1",
    "phi_2",
    "J_c",
    "J_m",
    "kappa_e",
    "kappa_0",
    "gamma_e",
    "gamma_0",
)
_LINEARIZED_RATES = ("G_1", "G_2", "J_c", "J_m", "kappa_e", "kappa_0", "gamma_e", "gamma_0")

_PHYSICAL_REQUIRED = (
    "omega_1",
    "omega_2",
    "delta0_1",
    "delta0_2",
    "g_1",
    "g_2",
    "J_c",
    "J_m",
    "kappa_e",
    "kappa_0",
    "gamma_e",
    "gamma_0",
    "eps_1",
    "eps_2",
    "varphi_1",
    "varphi_2",
)
_PHYSICAL_RATES = (
    "g_1",
    "g_2",
    "J_c",
    "J_m",
    "kappa_e",
    "kappa_0",
    "gamma_e",
    "gamma_0",
    "eps_1",
    "eps_2",
)


def _require_mapping(obj, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be a JSON object, got {type(obj).__name__}")
    return obj


def _reject_unknown(obj: dict, allowed, where: str) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ParseError(f"unknown key(s) {unknown} in {where}")


def _require_keys(obj: dict, required, where: str) -> None:
    missing = sorted(set(required) - set(obj))
    if missing:
        raise ParseError(f"missing required key(s) {missing} in {where}")


def _number(obj: dict, key: str) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(key, f"{key} must be a number, got {value!r}")
    return float(value)


def _parse_system(system: dict):
    _require_mapping(system, "'system'")
    _reject_unknown(system, {"unit", "linearized", "physical"}, "'system'")
    unit = system.get("unit", "gamma")
    if not isinstance(unit, str) or not unit:
        raise ValidationError("unit", f"unit must be a non-empty string, got {unit!r}")
    kinds = [k for k in ("linearized", "physical") if k in system]
    if len(kinds) != 1:
        raise ParseError("'system' needs exactly one of 'linearized' or 'physical'")
    kind = kinds[0]
    body = _require_mapping(system[kind], f"'system.{kind}'")
    if kind == "linearized":
        _reject_unknown(body, set(_LINEARIZED_REQUIRED) | {"frame_ref"}, "'system.linearized'")
        _require_keys(body, _LINEARIZED_REQUIRED, "'system.linearized'")
        values = {name: _number(body, name) for name in _LINEARIZED_REQUIRED}
        for name in _LINEARIZED_RATES:
            if values[name] < 0:
                raise ValidationError(name, f"{name} must be >= 0, got {values[name]!r}")
        if "frame_ref" in body:
            values["frame_ref"] = _number(body, "frame_ref")
        try:
            return LinearizedSystem(**values), unit
        except InvalidParameter as exc:
            raise ValidationError("system", str(exc)) from exc
    _reject_unknown(body, set(_PHYSICAL_REQUIRED) | {"solve"}, "'system.physical'")
    _require_keys(body, _PHYSICAL_REQUIRED + ("solve",), "'system.physical'")
    if body["solve"] is not True:
        raise ValidationError("solve", "physical systems require the directive \"solve\": true")
    values = {name: _number(body, name) for name in _PHYSICAL_REQUIRED}
    for name in _PHYSICAL_RATES:
        if values[name] < 0:
            raise ValidationError(name, f"{name} must be >= 0, got {values[name]!r}")
    try:
        return PlaquetteParams(unit=unit, **values), unit
    except InvalidParameter as exc:
        raise ValidationError("system", str(exc)) from exc


def _parse_sweep(sweep: dict, base, basis: Basis, unit: str, output_path):
    _require_mapping(sweep, "'sweep'")
    _reject_unknown(sweep, {"axis", "start", "stop", "points", "probe_omega"}, "'sweep'")
    _require_keys(sweep, ("axis", "start", "stop", "points"), "'sweep'")
    try:
        axis = SweepAxis(sweep["axis"])
    except ValueError:
        raise ValidationError(
            "axis",
            f"axis must be one of {[a.value for a in SweepAxis]}, got {sweep['axis']!r}",
        ) from None
    start = _number(sweep, "start")
    stop = _number(sweep, "stop")
    points = sweep["points"]
    if isinstance(points, bool) or not isinstance(points, int):
        raise ValidationError("points", f"points must be an integer, got {points!r}")
    if points < 2:
        raise ValidationError("points", f"points must be >= 2, got {points}")
    if not start < stop:
        raise ValidationError("start", f"start must be < stop, got {start!r} >= {stop!r}")
    probe = None
    if axis is SweepAxis.FREQUENCY:
        if "probe_omega" in sweep:
            raise ValidationError("probe_omega", "probe_omega is not allowed for the frequency axis")
    else:
        if "probe_omega" not in sweep:
            raise ParseError("missing required key(s) ['probe_omega'] in 'sweep'")
        probe = _number(sweep, "probe_omega")
    try:
        return SweepSpec(
            base=base,
            axis=axis,
            start=start,
            stop=stop,
            points=points,
            probe=probe,
            basis=basis,
            unit=unit,
            output_path=output_path,
        )
    except InvalidParameter as exc:
        raise ValidationError("sweep", str(exc)) from exc


def parse_config(text: str):
    """Parse config text into a :class:`SweepSpec` or a bare system.

    Returns a :class:`SweepSpec` when a ``sweep`` section is present,
    otherwise the parsed :class:`LinearizedSystem` or
    :class:`PlaquetteParams` for single-point subcommands.

    Raises :class:`ParseError` for malformed JSON and missing/unknown
    keys, :class:`ValidationError` (naming the offending field) for bad
    values.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _require_mapping(doc, "top level")
    _reject_unknown(doc, {"system", "sweep", "basis", "output"}, "top level")
    _require_keys(doc, ("system",), "top level")
    base, unit = _parse_system(doc["system"])

    basis = Basis.BARE
    if "basis" in doc:
        if doc["basis"] not in ("bare", "normal"):
            raise ValidationError("basis", f"basis must be 'bare' or 'normal', got {doc['basis']!r}")
        basis = Basis(doc["basis"])

    output_path = None
    if "output" in doc:
        output = _require_mapping(doc["output"], "'output'")
        _reject_unknown(output, {"path"}, "'output'")
        _require_keys(output, ("path",), "'output'")
        if not isinstance(output["path"], str) or not output["path"]:
            raise ValidationError("path", f"output path must be a non-empty string")
        output_path = output["path"]

    if "sweep" in doc:
        return _parse_sweep(doc["sweep"], base, basis, unit, output_path)
    return base
