"""The collective-mode picture of the two resonances.

Rewriting the mechanical pair as b+- = (b1 +- b2)/sqrt(2) diagonalizes
their coupling: b+ sits at omega_m + J_m, b- at omega_m - J_m, and the
two stop talking to each other directly.  Probing at either collective
resonance shows one collective mode running the router while the other
reflects everything: the router addresses one terminal at a time in
this basis, instead of splitting 50/50 over b1 and b2.
"""

import math

import numpy as np

from plaquette import (
    build_dynamics_matrix,
    optimal_preset,
    scattering_matrix,
    stability_report,
    to_normal_mode,
)

lin = optimal_preset(J_c=500.0, gamma=1.0, J_m=10.0, flux=math.pi / 2)
bare = build_dynamics_matrix(lin)
collective = to_normal_mode(bare)

print("mechanical block in the collective basis:")
print(np.round(collective.m[2:, 2:], 6))
report = stability_report(collective)
print("eigenvalue real parts:", np.round(report.eigenvalues.real, 4), "stable:", report.stable)

for omega, label in ((-10.0, "omega_m - J_m"), (+10.0, "omega_m + J_m")):
    r = scattering_matrix(collective, omega)
    print(f"\nprobe at {label}:")
    header = "        " + "".join(f"{'from ' + p:>10}" for p in r.ports)
    print(header)
    for i, port in enumerate(r.ports):
        print(f"to {port:<4} " + "".join(f"{r.s[i, j]:>10.4f}" for j in range(4)))

r = scattering_matrix(collective, -10.0)
print("\ncross transport between collective modes at the lower resonance:")
print(f"  S(b+ <- b-) = {r.prob(3, 4):.3e}   (compare 0.25 between b1 and b2 in the bare basis)")
