"""Linearized coefficient matrix, stability, and the collective-mode basis.

The fluctuation vector v = (a1, a2, b1, b2) obeys dv/dt = -M v + inputs,
with

        | k/2 + i D1   i Jc          i G1 e^{+i p1}   0              |
    M = | i Jc         k/2 + i D2    0                i G2 e^{+i p2} |
        | i G1 e^{-i p1}  0          g/2 + i w1       i Jm           |
        | 0            i G2 e^{-i p2}   i Jm          g/2 + i w2     |

where k and g are the total optical and mechanical decay rates.  M splits
as (positive diagonal damping) + i (Hermitian), so M + M^dag is real and
diagonal with entries {k, k, g, g}; that pins every eigenvalue real part
inside [min(k, g)/2, max(k, g)/2] and makes the beam-splitter form
unconditionally damped.

The mechanical pair can be rewritten in its collective (normal) modes
b_pm = (b1 +- b2) / sqrt(2), resonant at w_m +- Jm for equal bare
frequencies.  The change of basis is a real orthogonal conjugation that
leaves the decay vectors untouched because both mechanical modes share
the same decay rates.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

import numpy as np

from .errors import BasisError, EigenFailure, InvalidParameter
from .model import LinearizedSystem


class Basis(enum.Enum):
    """Mode basis of a dynamics matrix and everything derived from it."""

    BARE = "bare"      # ports: a1, a2, b1, b2
    NORMAL = "normal"  # ports: a1, a2, b+, b-


PORT_LABELS = {
    Basis.BARE: ("a1", "a2", "b1", "b2"),
    Basis.NORMAL: ("a1", "a2", "b+", "b-"),
}


@dataclass(frozen=True)
class DynamicsMatrix:
    """4x4 coefficient matrix plus the external/internal decay split.

    ``gamma_e_vec`` and ``gamma_0_vec`` are the diagonals of the external
    and internal decay matrices; their sum equals the diagonal of
    ``m + m^dag``.
    """

    m: np.ndarray
    basis: Basis
    gamma_e_vec: np.ndarray
    gamma_0_vec: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=complex)
        if m.shape != (4, 4):
            raise InvalidParameter(f"dynamics matrix must be 4x4, got shape {m.shape}")
        ge = np.array(self.gamma_e_vec, dtype=float)
        g0 = np.array(self.gamma_0_vec, dtype=float)
        for name, vec in (("gamma_e_vec", ge), ("gamma_0_vec", g0)):
            if vec.shape != (4,):
                raise InvalidParameter(f"{name} must have length 4")
            if np.any(vec < 0):
                raise InvalidParameter(f"{name} entries must be >= 0")
        for arr in (m, ge, g0):
            arr.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "gamma_e_vec", ge)
        object.__setattr__(self, "gamma_0_vec", g0)

    @property
    def total_decay_vec(self) -> np.ndarray:
        return self.gamma_e_vec + self.gamma_0_vec

    @property
    def ports(self) -> tuple:
        return PORT_LABELS[self.basis]


def build_dynamics_matrix(lin: LinearizedSystem) -> DynamicsMatrix:
    """Assemble M for a linearized system, in the bare basis."""
    k2 = lin.kappa / 2
    g2 = lin.gamma / 2
    up1 = 1j * lin.G_1 * cmath.exp(1j * lin.phi_1)
    up2 = 1j * lin.G_2 * cmath.exp(1j * lin.phi_2)
    dn1 = 1j * lin.G_1 * cmath.exp(-1j * lin.phi_1)
    dn2 = 1j * lin.G_2 * cmath.exp(-1j * lin.phi_2)
    m = np.array(
        [
            [k2 + 1j * lin.Delta_1, 1j * lin.J_c, up1, 0.0],
            [1j * lin.J_c, k2 + 1j * lin.Delta_2, 0.0, up2],
            [dn1, 0.0, g2 + 1j * lin.omega_1, 1j * lin.J_m],
            [0.0, dn2, 1j * lin.J_m, g2 + 1j * lin.omega_2],
        ]
    )
    gamma_e_vec = np.array([lin.kappa_e, lin.kappa_e, lin.gamma_e, lin.gamma_e])
    gamma_0_vec = np.array([lin.kappa_0, lin.kappa_0, lin.gamma_0, lin.gamma_0])
    return DynamicsMatrix(m=m, basis=Basis.BARE, gamma_e_vec=gamma_e_vec, gamma_0_vec=gamma_0_vec)


@dataclass(frozen=True)
class StabilityReport:
    """Eigenvalues of M sorted by (Re, Im) ascending, and the verdict.

    ``stable`` means every eigenvalue real part is strictly positive, so
    fluctuations decay.
    """

    eigenvalues: np.ndarray
    stable: bool

    def __post_init__(self):
        lam = np.array(self.eigenvalues, dtype=complex)
        lam.setflags(write=False)
        object.__setattr__(self, "eigenvalues", lam)


def stability_report(d: DynamicsMatrix) -> StabilityReport:
    """Eigenvalues of M, deterministically ordered, plus stability."""
    try:
        lam = np.linalg.eigvals(d.m)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigenvalue solver failed: {exc}") from exc
    order = np.lexsort((lam.imag, lam.real))
    lam = lam[order]
    return StabilityReport(eigenvalues=lam, stable=bool(lam.real.min() > 0.0))


def to_normal_mode(d: DynamicsMatrix) -> DynamicsMatrix:
    """Conjugate M into the collective mechanical basis (b+, b-).

    Uses b_pm = (b1 +- b2) / sqrt(2) on the mechanical block;
    the optical block is untouched.  For equal bare mechanical
    frequencies the mechanical block becomes diagonal at w_m +- Jm;
    otherwise the residual b+ <-> b- coupling is i (w1 - w2) / 2.
    """
    if d.basis is Basis.NORMAL:
        raise BasisError("dynamics matrix is already in the normal-mode basis")
    if d.gamma_e_vec[2] != d.gamma_e_vec[3] or d.gamma_0_vec[2] != d.gamma_0_vec[3]:
        raise InvalidParameter("normal-mode transform needs mode-symmetric mechanical decays")
    t = np.eye(4)
    t[2:, 2:] = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    m = t @ d.m @ t.T
    return DynamicsMatrix(
        m=m,
        basis=Basis.NORMAL,
        gamma_e_vec=d.gamma_e_vec,
        gamma_0_vec=d.gamma_0_vec,
    )
