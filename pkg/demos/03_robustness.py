"""How fabrication imperfections erode the nonreciprocity.

Three knobs that ideal treatments set to zero: a mechanical frequency
difference between the two resonators, internal optical loss, and
internal mechanical loss.  Each one degrades the isolation figures from
their ideal-point values but leaves the router functional, which is the
practical robustness argument.
"""

import math
from dataclasses import replace

from plaquette import build_dynamics_matrix, isolation_db, optimal_preset, scattering_matrix

base = optimal_preset(J_c=500.0, gamma=1.0, J_m=10.0, flux=math.pi / 2)
PROBE = -10.0  # omega_m - J_m in the stored frame


def isolations(lin):
    r = scattering_matrix(build_dynamics_matrix(lin), PROBE)
    pairs = {(1, 2): None, (4, 1): None, (3, 1): None, (2, 3): None, (2, 4): None}
    return {pair: isolation_db(r, *pair) for pair in pairs}


print("ideal point:")
for pair, db in isolations(base).items():
    print(f"  S{pair[0]}{pair[1]}/S{pair[1]}{pair[0]}: {db:6.2f} dB")

print("\nmechanical frequency difference delta (symmetric split):")
for delta in (1.0, 2.5, 5.0):
    iso = isolations(replace(base, omega_1=delta / 2, omega_2=-delta / 2))
    worst_pair = min(v for k, v in iso.items() if k != (1, 2))
    print(f"  delta = {delta:3.1f} gamma: optical {iso[(1, 2)]:5.1f} dB, worst terminal pair {worst_pair:5.1f} dB")

print("\ninternal optical loss kappa_0 (kappa_e fixed):")
for ratio in (0.25, 0.5, 1.0):
    iso = isolations(replace(base, kappa_0=ratio * base.kappa_e))
    worst_pair = min(v for k, v in iso.items() if k != (1, 2))
    print(f"  kappa_0/kappa_e = {ratio:4.2f}: optical {iso[(1, 2)]:5.1f} dB, worst terminal pair {worst_pair:5.1f} dB")

print("\ninternal mechanical loss gamma_0 (gamma_e fixed):")
for ratio in (0.25, 0.5, 1.0):
    iso = isolations(replace(base, gamma_0=ratio * base.gamma_e))
    print(f"  gamma_0/gamma_e = {ratio:4.2f}: optical {iso[(1, 2)]:5.1f} dB")
