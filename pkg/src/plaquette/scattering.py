"""Frequency-resolved scattering matrices, numeric and closed form.

Fourier transforming the fluctuation dynamics gives the linear response
(M - i w I)^-1, and the standard input-output boundary condition
(out + in = sqrt(decay) * intracavity) turns it into port scattering:

    U(w) = sqrt(Ge) (M - i w I)^-1 sqrt(Ge) - I     (coherent inputs)
    W(w) = sqrt(Ge) (M - i w I)^-1 sqrt(G0)         (internal noise inputs)
    S_ij(w) = |U_ij(w)|^2                           (port j -> port i)

with Ge / G0 the external / internal decay matrices.  The numeric path
inverts the 4x4 response by direct LU with partial pivoting and is the
ground truth.  ``analytical_scattering`` evaluates hand-derived cofactor
closed forms for every element; the two routes cross-validate each other
through ``verify_closed_forms``.

The closed forms were re-derived symbolically from the cofactor expansion
of (M - i w I).  A commonly transcribed variant of two elements carries
copy errors, an effective optical detuning where a mechanical frequency
belongs: the U11 term proportional to G2^2 and the U32 term proportional
to Jc G1.  Both coincide with the corrected forms exactly when each
Delta_j equals omega_j, which is the usual operating regime and is why
the slip is easy to miss.  ``as_printed=True`` evaluates the uncorrected
variant so reports can document the difference.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .dynamics import PORT_LABELS, Basis, DynamicsMatrix, build_dynamics_matrix
from .errors import InvalidParameter, SingularMatrix
from .model import LinearizedSystem

# ~1/(1e4 * machine epsilon): conservative detection of an undamped pole.
CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class ScatteringResult:
    """Scattering response at one probe frequency.

    ``s[i, j] = |u[i, j]|^2`` is the power transmission probability from
    input port j+1 to output port i+1 (0-based arrays, 1-based ports).
    ``w`` is computed on demand; no routing result consumes it, it exists
    for completeness of the noise response.
    """

    omega: float
    u: np.ndarray
    s: np.ndarray
    basis: Basis
    ports: tuple
    resolvent: np.ndarray = field(repr=False)
    gamma_e_vec: np.ndarray = field(repr=False)
    gamma_0_vec: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("u", "s", "resolvent", "gamma_e_vec", "gamma_0_vec"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def w(self) -> np.ndarray:
        """Noise scattering matrix sqrt(Ge) (M - i w I)^-1 sqrt(G0)."""
        sq_e = np.sqrt(self.gamma_e_vec)
        sq_0 = np.sqrt(self.gamma_0_vec)
        return sq_e[:, None] * self.resolvent * sq_0[None, :]

    def prob(self, i: int, j: int) -> float:
        """Scattering probability from port j to port i (ports are 1..4)."""
        if not (1 <= i <= 4 and 1 <= j <= 4):
            raise InvalidParameter(f"ports must be in 1..4, got ({i}, {j})")
        return float(self.s[i - 1, j - 1])


def scattering_matrix(d: DynamicsMatrix, omega: float) -> ScatteringResult:
    """Compute U, S (and lazily W) at probe frequency ``omega``.

    Raises :class:`SingularMatrix` when the condition estimate of
    (M - i w I) exceeds ``CONDITION_LIMIT``, which signals probing exactly
    at an undamped pole; it cannot occur when all total decays are > 0.
    """
    omega = float(omega)
    n = d.m - 1j * omega * np.eye(4)
    cond = np.linalg.cond(n)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularMatrix(
            f"response matrix condition {cond:.3e} exceeds {CONDITION_LIMIT:.0e} "
            f"at omega={omega!r} (undamped pole)"
        )
    lu, piv = scipy.linalg.lu_factor(n, check_finite=False)
    resolvent = scipy.linalg.lu_solve((lu, piv), np.eye(4, dtype=complex), check_finite=False)
    sq_e = np.sqrt(d.gamma_e_vec)
    u = sq_e[:, None] * resolvent * sq_e[None, :] - np.eye(4)
    s = np.abs(u) ** 2
    return ScatteringResult(
        omega=omega,
        u=u,
        s=s,
        basis=d.basis,
        ports=PORT_LABELS[d.basis],
        resolvent=resolvent,
        gamma_e_vec=d.gamma_e_vec,
        gamma_0_vec=d.gamma_0_vec,
    )


def analytical_scattering(
    lin: LinearizedSystem, omega: float, as_printed: bool = False
) -> np.ndarray:
    """Evaluate U(omega) from the cofactor closed forms (bare basis).

    With ``as_printed=True`` the two transcription slips described in the
    module docstring are reproduced instead of the corrected factors; use
    that only for discrepancy reporting.

    Raises :class:`SingularMatrix` if the determinant underflows.
    """
    w = float(omega)
    k2 = lin.kappa / 2
    g2 = lin.gamma / 2
    d1 = k2 + 1j * (lin.Delta_1 - w)
    d2 = k2 + 1j * (lin.Delta_2 - w)
    m1 = g2 + 1j * (lin.omega_1 - w)
    m2 = g2 + 1j * (lin.omega_2 - w)
    G1, G2, Jc, Jm = lin.G_1, lin.G_2, lin.J_c, lin.J_m
    e1 = cmath.exp(1j * lin.phi_1)
    e2 = cmath.exp(1j * lin.phi_2)
    c1 = e1.conjugate()
    c2 = e2.conjugate()

    z = (
        d1 * d2 * m1 * m2
        + G1**2 * d2 * m2
        + G2**2 * d1 * m1
        + Jc**2 * m1 * m2
        + Jm**2 * d1 * d2
        + Jc**2 * Jm**2
        + G1**2 * G2**2
        - 2.0 * Jc * Jm * G1 * G2 * math.cos(lin.phi_1 - lin.phi_2)
    )
    if abs(z) < np.finfo(float).tiny:
        raise SingularMatrix(f"determinant underflowed ({z!r}) at omega={w!r}")

    # Corrected cofactors use the mechanical factors m1/m2 here; the
    # uncorrected transcription put the optical detuning in their place.
    f11 = g2 + 1j * (lin.Delta_1 - w) if as_printed else m1
    f32 = g2 + 1j * (lin.Delta_2 - w) if as_printed else m2

    ke = lin.kappa_e
    ge = lin.gamma_e
    sk = math.sqrt(ke * ge)

    u = np.empty((4, 4), dtype=complex)
    u[0, 0] = ke * ((m1 * m2 + Jm**2) * d2 + G2**2 * f11) / z - 1.0
    u[0, 1] = -ke * (1j * Jc * m1 * m2 - 1j * Jm * G1 * G2 * e1 * c2 + 1j * Jc * Jm**2) / z
    u[0, 2] = sk * (-1j * G2**2 * G1 * e1 + 1j * Jm * Jc * G2 * e2 - 1j * G1 * e1 * d2 * m2) / z
    u[0, 3] = -sk * (Jc * G2 * e2 * m1 + Jm * G1 * e1 * d2) / z
    u[1, 0] = -ke * (1j * Jc * m1 * m2 - 1j * Jm * G1 * G2 * e2 * c1 + 1j * Jc * Jm**2) / z
    u[1, 1] = ke * ((m1 * m2 + Jm**2) * d1 + G1**2 * m2) / z - 1.0
    u[1, 2] = -sk * (Jm * G2 * e2 * d1 + Jc * G1 * e1 * m2) / z
    u[1, 3] = sk * (-1j * G2 * G1**2 * e2 + 1j * Jc * Jm * G1 * e1 - 1j * G2 * e2 * d1 * m1) / z
    u[2, 0] = sk * (-1j * G2**2 * G1 * c1 + 1j * Jc * Jm * G2 * c2 - 1j * G1 * c1 * d2 * m2) / z
    u[2, 1] = -sk * (Jm * G2 * c2 * d1 + Jc * G1 * c1 * f32) / z
    u[2, 2] = ge * ((d1 * d2 + Jc**2) * m2 + G2**2 * d1) / z - 1.0
    u[2, 3] = -ge * (1j * Jm * d1 * d2 - 1j * Jc * G1 * G2 * e2 * c1 + 1j * Jc**2 * Jm) / z
    u[3, 0] = -sk * (Jc * G2 * c2 * m1 + Jm * G1 * c1 * d2) / z
    u[3, 1] = sk * (-1j * G2 * c2 * d1 * m1 + 1j * Jc * Jm * G1 * c1 - 1j * G1**2 * G2 * c2) / z
    u[3, 2] = -ge * (1j * Jm * d1 * d2 - 1j * G1 * G2 * Jc * e1 * c2 + 1j * Jc**2 * Jm) / z
    u[3, 3] = ge * ((d1 * d2 + Jc**2) * m1 + G1**2 * d2) / z - 1.0
    return u


@dataclass(frozen=True)
class DiscrepancyReport:
    """Elementwise max deviation between numeric and closed-form U.

    ``max_dev_corrected`` / ``max_dev_printed`` hold, per element, the
    largest absolute deviation over the frequency grid for the corrected
    and the uncorrected closed forms.  ``flagged_*`` list the 1-based
    (i, j) pairs whose deviation exceeds ``tol``.
    """

    omega_grid: tuple
    tol: float
    max_dev_corrected: np.ndarray
    max_dev_printed: np.ndarray
    flagged_corrected: tuple
    flagged_printed: tuple

    def __post_init__(self):
        for name in ("max_dev_corrected", "max_dev_printed"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def summary(self, as_printed: bool = False) -> str:
        dev = self.max_dev_printed if as_printed else self.max_dev_corrected
        flagged = set(self.flagged_printed if as_printed else self.flagged_corrected)
        variant = "as-printed" if as_printed else "corrected"
        lines = [
            f"closed-form check ({variant}) over {len(self.omega_grid)} frequencies, "
            f"tol {self.tol:.1e}"
        ]
        for i in range(4):
            for j in range(4):
                mark = "  FLAG" if (i + 1, j + 1) in flagged else ""
                lines.append(f"U{i + 1}{j + 1}: max|numeric - closed form| = {dev[i, j]:.3e}{mark}")
        lines.append(f"worst element: {dev.max():.3e}")
        return "\n".join(lines)


def verify_closed_forms(
    lin: LinearizedSystem, omega_grid, tol: float = 1e-10
) -> DiscrepancyReport:
    """Cross-validate the closed forms against LU inversion on a grid."""
    grid = tuple(float(w) for w in omega_grid)
    if not grid:
        raise InvalidParameter("omega_grid must be non-empty")
    if tol <= 0:
        raise InvalidParameter(f"tol must be > 0, got {tol!r}")
    d = build_dynamics_matrix(lin)
    dev_corrected = np.zeros((4, 4))
    dev_printed = np.zeros((4, 4))
    for w in grid:
        u_num = scattering_matrix(d, w).u
        dev_corrected = np.maximum(dev_corrected, np.abs(analytical_scattering(lin, w) - u_num))
        dev_printed = np.maximum(
            dev_printed, np.abs(analytical_scattering(lin, w, as_printed=True) - u_num)
        )
    flag_c = tuple((int(i) + 1, int(j) + 1) for i, j in zip(*np.where(dev_corrected > tol)))
    flag_p = tuple((int(i) + 1, int(j) + 1) for i, j in zip(*np.where(dev_printed > tol)))
    return DiscrepancyReport(
        omega_grid=grid,
        tol=float(tol),
        max_dev_corrected=dev_corrected,
        max_dev_printed=dev_printed,
        flagged_corrected=flag_c,
        flagged_printed=flag_p,
    )
