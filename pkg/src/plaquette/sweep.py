"""Parameter sweeps with deterministic tabular output.

A sweep scans one axis (a coupling, a decay ratio, the loop flux, the
mechanical detuning, or the probe frequency itself) and records the full
4x4 scattering probability matrix at each grid point as a 16-column row.
Output is CSV with a fixed column order, scientific notation at 17
significant digits (lossless float64 round trip), and three ``#``
metadata lines (tool version, basis, spec echo); identical specs produce
byte-identical files regardless of parallelism.

Axis coupling rules (several axes move correlated parameters):

- ``coupling_g`` sets G_1 = G_2 = G.
- ``kappa_over_jc`` sweeps kappa at fixed J_c with kappa_e = kappa
  (kappa_0 = 0) and G pinned to sqrt(J_c * gamma).
- ``mech_detuning`` splits omega_1 = w_m + x/2, omega_2 = w_m - x/2
  holding the mean fixed.
- ``kappa0_ratio`` / ``gamma0_ratio`` hold the external decay fixed,
  sweep the internal one as a fraction of it, and pin G to
  sqrt(J_c * gamma_e).
- ``flux`` drives the phases to (0, x); ``frequency`` scans the probe.
"""

from __future__ import annotations

import enum
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
import warnings

import numpy as np

from . import __version__
from .dynamics import Basis, build_dynamics_matrix, stability_report, to_normal_mode
from .errors import (
    InvalidParameter,
    PlaquetteError,
    SingularMatrix,
    UnitarityWarning,
    UnstablePoint,
)
from .model import LinearizedSystem, PlaquetteParams, linearize, solve_steady_state
from .scattering import scattering_matrix

THREADS_ENV = "PLAQUETTE_THREADS"

S_COLUMNS = tuple(f"S{i}{j}" for i in range(1, 5) for j in range(1, 5))


class SweepAxis(enum.Enum):
    FLUX = "flux"
    COUPLING_G = "coupling_g"
    KAPPA_OVER_JC = "kappa_over_jc"
    MECH_DETUNING = "mech_detuning"
    KAPPA0_RATIO = "kappa0_ratio"
    GAMMA0_RATIO = "gamma0_ratio"
    FREQUENCY = "frequency"


# Axes whose grid values must stay non-negative (they scale rates).
_NONNEGATIVE_AXES = frozenset(
    {SweepAxis.COUPLING_G, SweepAxis.KAPPA_OVER_JC, SweepAxis.KAPPA0_RATIO, SweepAxis.GAMMA0_RATIO}
)


@dataclass(frozen=True)
class SweepSpec:
    """Declarative grid over one axis, plus the system it applies to."""

    base: LinearizedSystem | PlaquetteParams
    axis: SweepAxis
    start: float
    stop: float
    points: int
    probe: float | None = None
    basis: Basis = Basis.BARE
    unit: str = "gamma"
    output_path: str | None = None
    note: str | None = None

    def __post_init__(self):
        if not isinstance(self.base, (LinearizedSystem, PlaquetteParams)):
            raise InvalidParameter("base must be a LinearizedSystem or PlaquetteParams")
        if self.points < 2:
            raise InvalidParameter(f"points must be >= 2, got {self.points!r}")
        if not self.start < self.stop:
            raise InvalidParameter(f"start must be < stop, got {self.start!r} >= {self.stop!r}")
        if self.axis in _NONNEGATIVE_AXES and self.start < 0:
            raise InvalidParameter(f"axis {self.axis.value!r} requires start >= 0")
        if self.axis is SweepAxis.FREQUENCY:
            if self.probe is not None:
                raise InvalidParameter("probe is not allowed for the frequency axis")
        elif self.probe is None:
            raise InvalidParameter(f"axis {self.axis.value!r} requires a probe frequency")


@dataclass(frozen=True)
class SweepTable:
    """Columnar sweep output: axis values and P x 16 probabilities."""

    axis_values: np.ndarray
    s: np.ndarray
    meta: dict

    def __post_init__(self):
        axis_values = np.array(self.axis_values, dtype=float)
        s = np.array(self.s, dtype=float)
        if s.ndim != 2 or s.shape[1] != 16 or s.shape[0] != axis_values.shape[0]:
            raise InvalidParameter(f"table shape mismatch: {axis_values.shape} vs {s.shape}")
        if s.min() < 0.0 or s.max() > 1.0 + 1e-9:
            raise PlaquetteError(
                f"scattering probabilities outside [0, 1 + 1e-9]: "
                f"min {s.min():.3e}, max {s.max():.6f}"
            )
        axis_values.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "axis_values", axis_values)
        object.__setattr__(self, "s", s)


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParameter(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if n < 0:
        raise InvalidParameter(f"{THREADS_ENV} must be >= 0, got {n}")
    # auto: the per-point work is a 4x4 solve, far below thread overhead
    return 1 if n == 0 else n


def _resolve_base(spec: SweepSpec) -> tuple[LinearizedSystem, float]:
    """Resolve to a LinearizedSystem and the frame shift applied to it.

    Physical parameter sets are solved and linearized, then re-framed to
    the mean mechanical frequency so the numbers stay desk scale; probe
    and frequency-axis values (given in the original frame) are shifted
    by the same amount at evaluation time.  The response is invariant
    under the common shift.
    """
    if isinstance(spec.base, PlaquetteParams):
        steady = solve_steady_state(spec.base)
        lin = linearize(spec.base, steady)
        shift = lin.omega_m
        return lin.shift_frame(shift), shift
    return spec.base, 0.0


def _apply_axis(lin: LinearizedSystem, axis: SweepAxis, x: float) -> LinearizedSystem:
    if axis is SweepAxis.FLUX:
        return replace(lin, phi_1=0.0, phi_2=x)
    if axis is SweepAxis.COUPLING_G:
        return replace(lin, G_1=x, G_2=x)
    if axis is SweepAxis.KAPPA_OVER_JC:
        g = math.sqrt(lin.J_c * lin.gamma)
        return replace(lin, kappa_e=x * lin.J_c, kappa_0=0.0, G_1=g, G_2=g)
    if axis is SweepAxis.MECH_DETUNING:
        wm = lin.omega_m
        return replace(lin, omega_1=wm + x / 2.0, omega_2=wm - x / 2.0)
    if axis is SweepAxis.KAPPA0_RATIO:
        g = math.sqrt(lin.J_c * lin.gamma_e)
        return replace(lin, kappa_0=x * lin.kappa_e, G_1=g, G_2=g)
    if axis is SweepAxis.GAMMA0_RATIO:
        g = math.sqrt(lin.J_c * lin.gamma_e)
        return replace(lin, gamma_0=x * lin.gamma_e, G_1=g, G_2=g)
    if axis is SweepAxis.FREQUENCY:
        return lin
    raise InvalidParameter(f"unknown axis {axis!r}")


def _spec_echo(spec: SweepSpec, lin: LinearizedSystem, shift: float) -> dict:
    base = {
        name: getattr(lin, name)
        for name in (
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
            "frame_ref",
        )
    }
    echo = {
        "axis": spec.axis.value,
        "start": spec.start,
        "stop": spec.stop,
        "points": spec.points,
        "probe_omega": spec.probe,
        "unit": spec.unit,
        "basis": spec.basis.value,
        "base": base,
    }
    if shift:
        echo["frame_shift"] = shift
    if spec.note:
        echo["note"] = spec.note
    return echo


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Execute a sweep and return the filled table, in grid order.

    Every grid point is checked for stability before scattering; an
    unstable point aborts the whole sweep with :class:`UnstablePoint`
    (partial results are discarded).  Grid points are independent and may
    be evaluated in parallel (``PLAQUETTE_THREADS``, 0 = auto); rows are
    always assembled in grid order, so output does not depend on the
    thread count.
    """
    lin0, shift = _resolve_base(spec)
    axis_values = np.linspace(spec.start, spec.stop, spec.points)

    def evaluate(item):
        index, x = item
        lin = _apply_axis(lin0, spec.axis, x)
        d = build_dynamics_matrix(lin)
        if spec.basis is Basis.NORMAL:
            d = to_normal_mode(d)
        if not stability_report(d).stable:
            raise UnstablePoint(index)
        omega = (x - shift) if spec.axis is SweepAxis.FREQUENCY else (spec.probe - shift)
        try:
            return scattering_matrix(d, omega).s.reshape(16)
        except SingularMatrix as exc:
            raise SingularMatrix(f"{exc} (grid index {index})") from exc

    items = list(enumerate(axis_values))
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, items))
    else:
        rows = [evaluate(item) for item in items]

    meta = {
        "tool": f"plaquette {__version__}",
        "basis": spec.basis.value,
        "spec": _spec_echo(spec, lin0, shift),
        "lossless": (
            lin0.kappa_0 == 0.0
            and lin0.gamma_0 == 0.0
            and spec.axis not in (SweepAxis.KAPPA0_RATIO, SweepAxis.GAMMA0_RATIO)
        ),
    }
    return SweepTable(axis_values=axis_values, s=np.vstack(rows), meta=meta)


def _fmt(x: float) -> str:
    # 17 significant digits: lossless float64 interchange
    return f"{x:.16e}"


def write_csv(table: SweepTable, path) -> Path:
    """Write a table to CSV following the interchange contract.

    Layout: three ``#`` metadata lines (tool, basis, spec echo as
    canonical JSON), the header ``axis,S11,...,S44``, then one row per
    grid point.  For lossless systems the per-input-port column sums are
    checked against 1 and a :class:`UnitarityWarning` is emitted on
    violation (the file is still written).
    """
    path = Path(path)
    if table.meta.get("lossless"):
        sums = table.s.reshape(-1, 4, 4).sum(axis=1)
        worst = float(np.abs(sums - 1.0).max())
        if worst > 1e-9:
            warnings.warn(
                UnitarityWarning(
                    f"lossless sweep column sums deviate from 1 by up to {worst:.3e}"
                ),
                stacklevel=2,
            )
    lines = [
        f"# tool: {table.meta['tool']}",
        f"# basis: {table.meta['basis']}",
        f"# spec: {json.dumps(table.meta['spec'], sort_keys=True, separators=(',', ':'))}",
        "axis," + ",".join(S_COLUMNS),
    ]
    for x, row in zip(table.axis_values, table.s):
        lines.append(",".join([_fmt(float(x))] + [_fmt(float(v)) for v in row]))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="")
    return path


# ---------------------------------------------------------------------------
# Bundled figure-reproduction presets
# ---------------------------------------------------------------------------

FIGDATA_NAMES = (
    "fig2a",
    "fig2bc",
    "fig3a",
    "fig3b",
    "fig3c",
    "fig4a",
    "fig4b",
    "fig4c",
    "fig5ab",
)

_PRESET_FILES = {
    "fig2a": ("fig2.json",),
    "fig3a": ("fig3a.json",),
    "fig3b": ("fig3b.json",),
    "fig3c": ("fig3c.json",),
    "fig4a": ("fig4a.json",),
    "fig4b": ("fig4b.json",),
    "fig4c": ("fig4c.json",),
    "fig5ab": ("fig5a.json", "fig5b.json"),
}

# Grid ranges that are a choice rather than pinned by the operating
# point; recorded in the output header.
_PRESET_NOTES = {
    "fig3b.json": "G range [0, 3*sqrt(J_c*gamma)] chosen to bracket the S21 dip",
    "fig3c.json": "kappa/J_c range [0.2, 6] chosen to bracket the kappa = 2*J_c optimum",
}


def preset_config_text(filename: str) -> str:
    """Raw JSON text of a bundled preset config."""
    return (resources.files("plaquette.presets") / filename).read_text(encoding="utf-8")


def _single_point_table(spec: SweepSpec, omega: float) -> SweepTable:
    lin, shift = _resolve_base(spec)
    d = build_dynamics_matrix(lin)
    if spec.basis is Basis.NORMAL:
        d = to_normal_mode(d)
    result = scattering_matrix(d, omega - shift)
    echo = _spec_echo(spec, lin, shift)
    echo.update({"axis": "frequency", "start": omega, "stop": omega, "points": 1, "probe_omega": None})
    meta = {
        "tool": f"plaquette {__version__}",
        "basis": spec.basis.value,
        "spec": echo,
        "lossless": lin.kappa_0 == 0.0 and lin.gamma_0 == 0.0,
    }
    return SweepTable(axis_values=np.array([omega]), s=result.s.reshape(1, 16), meta=meta)


def figdata(name: str, outdir=".") -> list[Path]:
    """Write the CSV file(s) for one bundled figure preset.

    ``fig2bc`` emits the two single-frequency scattering matrices at the
    collective-mode resonances (one row each); every other name runs the
    bundled sweep config.  Returns the written paths in order.
    """
    from .config import parse_config  # deferred: config imports this module

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if name == "fig2bc":
        spec = parse_config(preset_config_text("fig2.json"))
        lin = spec.base
        written = []
        for tag, omega in (("fig2b", lin.omega_m - lin.J_m), ("fig2c", lin.omega_m + lin.J_m)):
            table = _single_point_table(spec, omega)
            written.append(write_csv(table, outdir / f"{tag}.csv"))
        return written
    if name not in _PRESET_FILES:
        raise InvalidParameter(f"unknown figdata name {name!r}; expected one of {FIGDATA_NAMES}")
    written = []
    for filename in _PRESET_FILES[name]:
        spec = parse_config(preset_config_text(filename))
        if filename in _PRESET_NOTES:
            spec = replace(spec, note=_PRESET_NOTES[filename])
        table = run_sweep(spec)
        stem = Path(filename).stem if name != "fig2a" else "fig2a"
        written.append(write_csv(table, outdir / f"{stem}.csv"))
    return written
