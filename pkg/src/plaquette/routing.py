"""Nonreciprocity metrics and routing classification.

A directional router built on the plaquette uses one optical port as
transmitter, the other as receiver, and the two mechanical ports as
output terminals.  Routing is established when three one-way conditions
hold simultaneously at the probe frequency:

  1. the transmitter feeds both terminals but the terminals cannot reach
     the transmitter;
  2. both terminals feed the receiver but the receiver cannot reach the
     terminals;
  3. the receiver feeds the transmitter but not the other way round.

With the loop flux at pi/2 the orientation with a1 transmitting locks in
at probe w_m - J_m and the reversed orientation at w_m + J_m; flux 3*pi/2
swaps the pairing.  The ideal operating point puts kappa = 2 J_c and
G = sqrt(J_c * gamma) with kappa >> J_m >> gamma.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from .dynamics import build_dynamics_matrix
from .errors import AmbiguousRouting, InvalidParameter, RegimeViolationWarning
from .model import TWO_PI, LinearizedSystem, linearized_direct
from .scattering import ScatteringResult, scattering_matrix

# Below this, a scattering probability is treated as fully suppressed and
# the isolation saturates at +/- infinity dB.
ISOLATION_FLOOR = 1e-300


def isolation_db(result: ScatteringResult, i: int, j: int) -> float:
    """Isolation 10*log10(S_ij / S_ji) in dB, forward pair (i, j).

    Positive means transport j -> i beats i -> j.  If the reverse
    probability underflows ``ISOLATION_FLOOR`` the isolation saturates at
    +inf (the flag for total suppression); if both directions underflow
    the result is nan.  Antisymmetric under swapping i and j, exactly.
    """
    s_fwd = result.prob(i, j)
    s_bwd = result.prob(j, i)
    if i == j:
        raise InvalidParameter("isolation needs two distinct ports")
    log_fwd = math.log10(s_fwd) if s_fwd >= ISOLATION_FLOOR else -math.inf
    log_bwd = math.log10(s_bwd) if s_bwd >= ISOLATION_FLOOR else -math.inf
    if math.isinf(log_fwd) and math.isinf(log_bwd):
        return math.nan
    return 10.0 * (log_fwd - log_bwd)


@dataclass(frozen=True)
class RoutingVerdict:
    """Outcome of the directional-routing classification.

    ``inhibited`` lists (i, j, S_ij) for the suppressed set of the chosen
    orientation.  The three ``one_way_*`` flags mirror the three routing
    aspects in the module docstring.
    """

    transmitter: int
    receiver: int
    terminals: tuple
    inhibited: tuple
    passed: bool
    one_way_to_terminals: bool
    one_way_to_receiver: bool
    one_way_return: bool
    thresholds: tuple

    @property
    def aspects(self) -> tuple:
        return (self.one_way_to_terminals, self.one_way_to_receiver, self.one_way_return)


def _orientation(s, transmitter: int, receiver: int, high: float, low: float):
    t, r = transmitter, receiver
    inhibited_pairs = ((r, t), (t, 3), (t, 4), (3, r), (4, r))
    inhibited = tuple((i, j, float(s[i - 1, j - 1])) for i, j in inhibited_pairs)
    to_terminals = (
        s[2, t - 1] >= high
        and s[3, t - 1] >= high
        and s[t - 1, 2] <= low
        and s[t - 1, 3] <= low
    )
    to_receiver = (
        s[r - 1, 2] >= high
        and s[r - 1, 3] >= high
        and s[2, r - 1] <= low
        and s[3, r - 1] <= low
    )
    one_way_return = s[t - 1, r - 1] >= 2.0 * high and s[r - 1, t - 1] <= low
    passed = to_terminals and to_receiver and one_way_return
    # margin score for picking the "closer" orientation on failure
    score = sum(
        [
            s[2, t - 1] >= high,
            s[3, t - 1] >= high,
            s[t - 1, 2] <= low,
            s[t - 1, 3] <= low,
            s[r - 1, 2] >= high,
            s[r - 1, 3] >= high,
            s[2, r - 1] <= low,
            s[3, r - 1] <= low,
            s[t - 1, r - 1] >= 2.0 * high,
            s[r - 1, t - 1] <= low,
        ]
    )
    verdict = RoutingVerdict(
        transmitter=t,
        receiver=r,
        terminals=(3, 4),
        inhibited=inhibited,
        passed=passed,
        one_way_to_terminals=to_terminals,
        one_way_to_receiver=to_receiver,
        one_way_return=one_way_return,
        thresholds=(high, low),
    )
    return verdict, score


def classify_direction(
    result: ScatteringResult, high: float = 0.4, low: float = 0.05
) -> RoutingVerdict:
    """Test both router orientations against (high, low) thresholds.

    Orientation A transmits from a1 (port 1), orientation B from a2
    (port 2).  The suppressed set must sit at or below ``low``, the
    spread/collect paths at or above ``high``, and the return path at or
    above ``2 * high``.  Returns the passing orientation, or the closer
    orientation's diagnostics with ``passed=False``.

    Raises :class:`AmbiguousRouting` if both orientations pass, which can
    only happen with inconsistent thresholds.
    """
    if not (0.0 <= low < high <= 1.0):
        raise InvalidParameter(f"thresholds must satisfy 0 <= low < high <= 1, got ({high}, {low})")
    s = result.s
    verdict_a, score_a = _orientation(s, 1, 2, high, low)
    verdict_b, score_b = _orientation(s, 2, 1, high, low)
    if verdict_a.passed and verdict_b.passed:
        raise AmbiguousRouting("both orientations pass; thresholds are too loose")
    if verdict_a.passed:
        return verdict_a
    if verdict_b.passed:
        return verdict_b
    return verdict_a if score_a >= score_b else verdict_b


def optimal_preset(J_c: float, gamma: float, J_m: float, flux: float) -> LinearizedSystem:
    """Linearized system at the ideal routing point, in the frame w_m = 0.

    Sets kappa_e = kappa = 2 J_c, G_1 = G_2 = sqrt(J_c * gamma),
    gamma_e = gamma, no internal loss, degenerate mechanical modes with
    both effective detunings on resonance, and phases (0, flux).  Probe
    the result at omega = -J_m or +J_m for the two routing directions.
    """
    for name, value in (("J_c", J_c), ("gamma", gamma), ("J_m", J_m)):
        if value <= 0:
            raise InvalidParameter(f"{name} must be > 0, got {value!r}")
    g = math.sqrt(J_c * gamma)
    return linearized_direct(
        Delta_1=0.0,
        Delta_2=0.0,
        omega_1=0.0,
        omega_2=0.0,
        G_1=g,
        G_2=g,
        phi_1=0.0,
        phi_2=flux,
        J_c=J_c,
        J_m=J_m,
        kappa_e=2.0 * J_c,
        kappa_0=0.0,
        gamma_e=gamma,
        gamma_0=0.0,
    )


# Suppressed sets for the four (flux, probe) combinations: orientation A
# blocks {S21, S13, S14, S32, S42}; orientation B the index-swapped set.
_INHIBITED_A = ((2, 1), (1, 3), (1, 4), (3, 2), (4, 2))
_INHIBITED_B = ((1, 2), (3, 1), (4, 1), (2, 3), (2, 4))


@dataclass(frozen=True)
class InhibitionCell:
    """One (flux, probe) combination with its suppressed-path values."""

    flux: float
    omega: float
    entries: tuple  # of (i, j, value, ok)
    all_inhibited: bool


@dataclass(frozen=True)
class InhibitionGrid:
    """2x2 grid over flux {pi/2, 3pi/2} x probe {w_m - J_m, w_m + J_m}."""

    cells: tuple
    tol_low: float

    def cell(self, flux: float, omega: float) -> InhibitionCell:
        for c in self.cells:
            if c.flux == flux and c.omega == omega:
                return c
        raise KeyError((flux, omega))


def _check_regime(base: LinearizedSystem, factor: float) -> None:
    # Nominal regime: w_m >> kappa = 2 J_c >> J_m >> gamma with
    # G1 G2 = J_c gamma.  Warn only when a condition fails by more than
    # 10x the declared factor; the check flags, it never enforces.
    hard = factor / 10.0
    problems = []
    if base.J_m > 0 and base.kappa / base.J_m < hard:
        problems.append(f"kappa/J_m = {base.kappa / base.J_m:.3g} < {hard:g}")
    if base.J_m == 0:
        problems.append("J_m = 0")
    if base.gamma > 0 and base.J_m > 0 and base.J_m / base.gamma < hard:
        problems.append(f"J_m/gamma = {base.J_m / base.gamma:.3g} < {hard:g}")
    if base.J_c > 0:
        q = base.kappa / (2.0 * base.J_c)
        if not (0.1 <= q <= 10.0):
            problems.append(f"kappa/(2 J_c) = {q:.3g} outside [0.1, 10]")
        qg = (base.G_1 * base.G_2) / (base.J_c * base.gamma) if base.gamma > 0 else math.inf
        if not (0.1 <= qg <= 10.0):
            problems.append(f"G1*G2/(J_c*gamma) = {qg:.3g} outside [0.1, 10]")
    else:
        problems.append("J_c = 0")
    physical_wm = base.omega_m + base.frame_ref
    if physical_wm != 0.0 and base.kappa > 0 and abs(physical_wm) / base.kappa < hard:
        problems.append(f"omega_m/kappa = {abs(physical_wm) / base.kappa:.3g} < {hard:g}")
    if problems:
        warnings.warn(
            RegimeViolationWarning("outside the routing regime: " + "; ".join(problems)),
            stacklevel=3,
        )


def inhibited_path_grid(
    base: LinearizedSystem, tol_low: float = 0.01, regime_factor: float = 10.0
) -> InhibitionGrid:
    """Evaluate the suppressed scattering paths over flux and probe.

    For each flux in {pi/2, 3pi/2} and probe in {w_m - J_m, w_m + J_m}
    (stored frame), rebuilds ``base`` with phases (0, flux) and reports
    each path of the combination's suppressed set together with whether
    it sits at or below ``tol_low``.

    Emits a :class:`RegimeViolationWarning` when ``base`` is far from the
    regime the suppression pattern was derived for.
    """
    if tol_low <= 0:
        raise InvalidParameter(f"tol_low must be > 0, got {tol_low!r}")
    _check_regime(base, regime_factor)
    wm = base.omega_m
    jm = base.J_m
    cells = []
    for flux in (math.pi / 2, 3 * math.pi / 2):
        lin = replace(base, phi_1=0.0, phi_2=flux)
        d = build_dynamics_matrix(lin)
        for omega, pairs in ((wm - jm, None), (wm + jm, None)):
            low_probe = omega == wm - jm
            if flux == math.pi / 2:
                pairs = _INHIBITED_A if low_probe else _INHIBITED_B
            else:
                pairs = _INHIBITED_B if low_probe else _INHIBITED_A
            s = scattering_matrix(d, omega).s
            entries = tuple(
                (i, j, float(s[i - 1, j - 1]), bool(s[i - 1, j - 1] <= tol_low))
                for i, j in pairs
            )
            cells.append(
                InhibitionCell(
                    flux=flux,
                    omega=omega,
                    entries=entries,
                    all_inhibited=all(e[3] for e in entries),
                )
            )
    return InhibitionGrid(cells=tuple(cells), tol_low=float(tol_low))


def flux_reversed(flux: float) -> float:
    """The time-reversed loop phase, reduced to [0, 2*pi)."""
    return (-flux) % TWO_PI
