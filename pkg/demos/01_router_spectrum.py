"""Directional routing across the probe band.

Builds the ideal operating point (kappa = 2 J_c, G = sqrt(J_c gamma),
flux pi/2) and scans the probe frequency across both collective
mechanical resonances.  At omega_m - J_m the first optical mode
transmits: it feeds both mechanical terminals 50/50, the terminals feed
the second optical mode, and the only open optical path runs a2 -> a1.
At omega_m + J_m every arrow reverses.
"""

import math

import numpy as np

from plaquette import SweepAxis, SweepSpec, build_dynamics_matrix, optimal_preset, run_sweep
from plaquette.sweep import S_COLUMNS
from plaquette import scattering_matrix

lin = optimal_preset(J_c=500.0, gamma=1.0, J_m=10.0, flux=math.pi / 2)
print("operating point: J_c=500, J_m=10, kappa=1000, G=%.3f (units of gamma)" % lin.G_1)

spec = SweepSpec(base=lin, axis=SweepAxis.FREQUENCY, start=-30.0, stop=30.0, points=401)
table = run_sweep(spec)

x = table.axis_values
for name in ("S12", "S21", "S31", "S23"):
    col = table.s[:, S_COLUMNS.index(name)]
    print(
        f"{name}: max {col.max():.4f} at omega-omega_m = {x[np.argmax(col)]:+.2f}, "
        f"min {col.min():.2e} at {x[np.argmin(col)]:+.2f}"
    )

print("\nfull probability matrix at the lower resonance (omega_m - J_m):")
result = scattering_matrix(build_dynamics_matrix(lin), -10.0)
header = "        " + "".join(f"{'from ' + p:>10}" for p in result.ports)
print(header)
for i, port in enumerate(result.ports):
    print(f"to {port:<4} " + "".join(f"{result.s[i, j]:>10.4f}" for j in range(4)))
print("\ncolumn sums (lossless, must be 1):", np.round(result.s.sum(axis=0), 12))
