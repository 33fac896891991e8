"""Physical parameters, classical steady state, and the linearized system.

The model is a four-mode loop: two driven optical modes (a1, a2) that hop
with rate J_c and two mechanical modes (b1, b2) that hop with rate J_m,
with each optical mode coupled to its mechanical partner by radiation
pressure.  Strong pumps displace the modes to classical amplitudes
(alpha_j, beta_j).  Expanding around those amplitudes gives a linear
fluctuation model whose enhanced couplings G_j = |alpha_j| g_j carry the
phases phi_j = arg(alpha_j); the loop phase phi_2 - phi_1 acts as a
synthetic flux threading the plaquette and is the knob that breaks
time-reversal symmetry downstream.

Mean-field steady state (time derivatives set to zero, noise dropped):

    (-kappa/2 - i Delta_1) alpha_1 - i J_c alpha_2 = eps_1 e^{-i varphi_1}
    (-kappa/2 - i Delta_2) alpha_2 - i J_c alpha_1 = eps_2 e^{-i varphi_2}
    (gamma/2 + i omega_1) beta_1 + i J_m beta_2    = -i g_1 |alpha_1|^2
    (gamma/2 + i omega_2) beta_2 + i J_m beta_1    = -i g_2 |alpha_2|^2

with the effective detunings Delta_j = delta0_j + 2 g_j Re(beta_j).  The
two 2x2 blocks are linear, so the only self-consistency is the detuning
shift fed by beta; a damped fixed-point iteration on beta resolves it.

All rates are dimensionless multiples of a user-declared reference rate
(the ``unit`` string); the reference is metadata only and never enters a
computation.  Frequencies may be stored relative to a common offset
``frame_ref`` since the linear response depends only on differences.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidParameter, NonConvergence, RotatingWaveWarning

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PlaquetteParams:
    """Full physical parameter set of the driven plaquette.

    Parameters
    ----------
    omega_1, omega_2:
        Mechanical resonance frequencies.
    delta0_1, delta0_2:
        Bare pump detunings (cavity frequency minus pump frequency).
    g_1, g_2:
        Single-photon optomechanical coupling rates.
    J_c, J_m:
        Optical and mechanical hopping rates.
    kappa_e, kappa_0:
        External / internal optical decay rates (shared by both optical
        modes).
    gamma_e, gamma_0:
        External / internal mechanical decay rates (shared by both
        mechanical modes).
    eps_1, eps_2:
        Pump amplitudes (real, >= 0).
    varphi_1, varphi_2:
        Pump phases in radians.  Magnitudes are kept non-negative; the
        phases carry all sign information.
    unit:
        Name of the reference rate the numbers are expressed in.
        Metadata only.
    """

    omega_1: float
    omega_2: float
    delta0_1: float
    delta0_2: float
    g_1: float
    g_2: float
    J_c: float
    J_m: float
    kappa_e: float
    kappa_0: float
    gamma_e: float
    gamma_0: float
    eps_1: float
    eps_2: float
    varphi_1: float
    varphi_2: float
    unit: str = "gamma"

    def __post_init__(self):
        for name in ("kappa_e", "kappa_0", "gamma_e", "gamma_0"):
            if getattr(self, name) < 0:
                raise InvalidParameter(f"{name} must be >= 0, got {getattr(self, name)!r}")
        if self.kappa <= 0:
            raise InvalidParameter("total optical decay kappa_e + kappa_0 must be > 0")
        if self.gamma <= 0:
            raise InvalidParameter("total mechanical decay gamma_e + gamma_0 must be > 0")
        for name in ("J_c", "J_m", "g_1", "g_2", "eps_1", "eps_2"):
            if getattr(self, name) < 0:
                raise InvalidParameter(
                    f"{name} must be >= 0 (phases carry the sign), got {getattr(self, name)!r}"
                )

    @property
    def kappa(self) -> float:
        """Total optical decay rate."""
        return self.kappa_e + self.kappa_0

    @property
    def gamma(self) -> float:
        """Total mechanical decay rate."""
        return self.gamma_e + self.gamma_0


@dataclass(frozen=True)
class SteadyState:
    """Classical mean-field amplitudes with convergence metadata."""

    alpha_1: complex
    alpha_2: complex
    beta_1: complex
    beta_2: complex
    residual: float
    iterations: int


def steady_state_residual(
    params: PlaquetteParams,
    alpha_1: complex,
    alpha_2: complex,
    beta_1: complex,
    beta_2: complex,
) -> float:
    """Max norm of the four zero-derivative mean-field equations."""
    d1 = params.delta0_1 + 2.0 * params.g_1 * beta_1.real
    d2 = params.delta0_2 + 2.0 * params.g_2 * beta_2.real
    r1 = (
        (-params.kappa / 2 - 1j * d1) * alpha_1
        - 1j * params.J_c * alpha_2
        - params.eps_1 * cmath.exp(-1j * params.varphi_1)
    )
    r2 = (
        (-params.kappa / 2 - 1j * d2) * alpha_2
        - 1j * params.J_c * alpha_1
        - params.eps_2 * cmath.exp(-1j * params.varphi_2)
    )
    r3 = (
        (-params.gamma / 2 - 1j * params.omega_1) * beta_1
        - 1j * params.g_1 * abs(alpha_1) ** 2
        - 1j * params.J_m * beta_2
    )
    r4 = (
        (-params.gamma / 2 - 1j * params.omega_2) * beta_2
        - 1j * params.g_2 * abs(alpha_2) ** 2
        - 1j * params.J_m * beta_1
    )
    return max(abs(r1), abs(r2), abs(r3), abs(r4))


def solve_steady_state(
    params: PlaquetteParams,
    tol: float = 1e-12,
    max_iter: int = 500,
    damping: float = 0.5,
) -> SteadyState:
    """Solve the self-consistent classical steady state.

    Damped fixed-point iteration on the mechanical amplitudes: given
    beta, the effective detunings fix a 2x2 linear optical system solved
    exactly for alpha; given alpha, the 2x2 mechanical system is solved
    exactly, and beta is relaxed toward that solution with weight
    ``damping``.  Plain iteration can limit-cycle when the radiation
    pressure shift g |alpha|^2 is large; damping < 1 tames that.

    Raises
    ------
    NonConvergence
        If the residual stays above ``tol`` after ``max_iter`` sweeps.
        The exception carries the last iterate in ``last_state``.
    """
    if tol <= 0:
        raise InvalidParameter(f"tol must be > 0, got {tol!r}")
    if max_iter < 1:
        raise InvalidParameter(f"max_iter must be >= 1, got {max_iter!r}")
    if not 0.0 < damping <= 1.0:
        raise InvalidParameter(f"damping must be in (0, 1], got {damping!r}")

    drive = np.array(
        [
            params.eps_1 * cmath.exp(-1j * params.varphi_1),
            params.eps_2 * cmath.exp(-1j * params.varphi_2),
        ]
    )
    g = np.array([params.g_1, params.g_2])
    mech = np.array(
        [
            [params.gamma / 2 + 1j * params.omega_1, 1j * params.J_m],
            [1j * params.J_m, params.gamma / 2 + 1j * params.omega_2],
        ]
    )
    alpha = np.zeros(2, dtype=complex)
    beta = np.zeros(2, dtype=complex)
    residual = math.inf
    for iteration in range(1, max_iter + 1):
        detuning = np.array([params.delta0_1, params.delta0_2]) + 2.0 * g * beta.real
        optical = np.array(
            [
                [-params.kappa / 2 - 1j * detuning[0], -1j * params.J_c],
                [-1j * params.J_c, -params.kappa / 2 - 1j * detuning[1]],
            ]
        )
        alpha = np.linalg.solve(optical, drive)
        beta_target = np.linalg.solve(mech, -1j * g * np.abs(alpha) ** 2)
        beta = (1.0 - damping) * beta + damping * beta_target
        residual = steady_state_residual(params, alpha[0], alpha[1], beta[0], beta[1])
        if residual <= tol:
            return SteadyState(alpha[0], alpha[1], beta[0], beta[1], residual, iteration)
    raise NonConvergence(
        f"steady state residual {residual:.3e} > tol {tol:.3e} after {max_iter} iterations",
        last_state=SteadyState(alpha[0], alpha[1], beta[0], beta[1], residual, max_iter),
    )


@dataclass(frozen=True)
class LinearizedSystem:
    """Parameters of the linear fluctuation model around a steady state.

    ``Delta_j`` are the effective detunings, ``G_j`` the enhanced coupling
    magnitudes (always >= 0) and ``phi_j`` their phases.  ``frame_ref`` is
    a common frequency offset already subtracted from ``Delta_j`` and
    ``omega_j`` (0 if none); the linear response is invariant under such a
    shift, so storing desk-scale numbers loses nothing.
    """

    Delta_1: float
    Delta_2: float
    omega_1: float
    omega_2: float
    G_1: float
    G_2: float
    phi_1: float
    phi_2: float
    J_c: float
    J_m: float
    kappa_e: float
    kappa_0: float
    gamma_e: float
    gamma_0: float
    frame_ref: float = 0.0

    def __post_init__(self):
        for name in ("G_1", "G_2", "J_c", "J_m", "kappa_e", "kappa_0", "gamma_e", "gamma_0"):
            if getattr(self, name) < 0:
                raise InvalidParameter(f"{name} must be >= 0, got {getattr(self, name)!r}")

    @property
    def kappa(self) -> float:
        return self.kappa_e + self.kappa_0

    @property
    def gamma(self) -> float:
        return self.gamma_e + self.gamma_0

    @property
    def flux(self) -> float:
        """Loop phase phi_2 - phi_1 reduced to [0, 2*pi)."""
        return (self.phi_2 - self.phi_1) % TWO_PI

    @property
    def delta(self) -> float:
        """Mechanical frequency difference omega_1 - omega_2."""
        return self.omega_1 - self.omega_2

    @property
    def omega_m(self) -> float:
        """Mean mechanical frequency (in the stored frame)."""
        return 0.5 * (self.omega_1 + self.omega_2)

    def shift_frame(self, shift: float) -> "LinearizedSystem":
        """Subtract a common offset from all detunings and frequencies.

        Probe frequencies must be shifted by the same amount; the
        scattering response is unchanged.
        """
        return replace(
            self,
            Delta_1=self.Delta_1 - shift,
            Delta_2=self.Delta_2 - shift,
            omega_1=self.omega_1 - shift,
            omega_2=self.omega_2 - shift,
            frame_ref=self.frame_ref + shift,
        )


def linearize(
    params: PlaquetteParams,
    steady: SteadyState,
    *,
    detuning_window: float = 0.1,
    coupling_margin: float = 10.0,
) -> LinearizedSystem:
    """Produce the linear fluctuation model for a converged steady state.

    ``G_j = |alpha_j| g_j``, ``phi_j = arg(alpha_j)`` (zero amplitude gets
    phase 0; any value is gauge equivalent), and the effective detunings
    pick up the static radiation pressure shift ``2 g_j Re(beta_j)``.

    The particle-nonconserving coupling terms were dropped from the model,
    which is justified when each ``Delta_j`` sits close to ``omega_j`` and
    both dwarf ``G_j``.  A :class:`RotatingWaveWarning` is emitted (never
    an error) when ``|Delta_j - omega_j| > detuning_window * |omega_j|``
    or ``|omega_j| < coupling_margin * G_j``.
    """
    amps = (steady.alpha_1, steady.alpha_2)
    gs = (params.g_1, params.g_2)
    G = tuple(abs(a) * g for a, g in zip(amps, gs))
    phi = tuple(cmath.phase(a) if a != 0 else 0.0 for a in amps)
    Delta = (
        params.delta0_1 + 2.0 * params.g_1 * steady.beta_1.real,
        params.delta0_2 + 2.0 * params.g_2 * steady.beta_2.real,
    )
    omegas = (params.omega_1, params.omega_2)
    for j in range(2):
        if abs(Delta[j] - omegas[j]) > detuning_window * abs(omegas[j]):
            warnings.warn(
                RotatingWaveWarning(
                    f"mode {j + 1}: effective detuning {Delta[j]:.6g} is more than "
                    f"{detuning_window:g} * omega away from omega {omegas[j]:.6g}"
                ),
                stacklevel=2,
            )
        if abs(omegas[j]) < coupling_margin * G[j]:
            warnings.warn(
                RotatingWaveWarning(
                    f"mode {j + 1}: omega {omegas[j]:.6g} is not >= "
                    f"{coupling_margin:g} * G ({G[j]:.6g})"
                ),
                stacklevel=2,
            )
    return LinearizedSystem(
        Delta_1=Delta[0],
        Delta_2=Delta[1],
        omega_1=params.omega_1,
        omega_2=params.omega_2,
        G_1=G[0],
        G_2=G[1],
        phi_1=phi[0],
        phi_2=phi[1],
        J_c=params.J_c,
        J_m=params.J_m,
        kappa_e=params.kappa_e,
        kappa_0=params.kappa_0,
        gamma_e=params.gamma_e,
        gamma_0=params.gamma_0,
    )


def linearized_direct(
    Delta_1: float,
    Delta_2: float,
    omega_1: float,
    omega_2: float,
    G_1: float,
    G_2: float,
    phi_1: float,
    phi_2: float,
    J_c: float,
    J_m: float,
    kappa_e: float,
    kappa_0: float,
    gamma_e: float,
    gamma_0: float,
    frame_ref: float = 0.0,
) -> LinearizedSystem:
    """Construct the linearized description without a nonlinear solve.

    Entry point for working directly at the fluctuation level, e.g. when
    the couplings and detunings are regarded as freely tunable.  Raises
    :class:`InvalidParameter` on negative magnitudes or rates.
    """
    return LinearizedSystem(
        Delta_1=Delta_1,
        Delta_2=Delta_2,
        omega_1=omega_1,
        omega_2=omega_2,
        G_1=G_1,
        G_2=G_2,
        phi_1=phi_1,
        phi_2=phi_2,
        J_c=J_c,
        J_m=J_m,
        kappa_e=kappa_e,
        kappa_0=kappa_0,
        gamma_e=gamma_e,
        gamma_0=gamma_0,
        frame_ref=frame_ref,
    )
