"""Shared fixtures and random-system factories for the test suite."""

import math

import numpy as np
import pytest

from plaquette import linearized_direct, optimal_preset


@pytest.fixture
def router_preset():
    """Ideal routing point: J_c = 500, J_m = 10, flux pi/2, rates in gamma."""
    return optimal_preset(J_c=500.0, gamma=1.0, J_m=10.0, flux=math.pi / 2)


def random_system(rng, lossless=False):
    """Random stable linearized system with desk-scale rates.

    Rates span roughly two decades so conditioning stays benign; every
    draw is stable by construction (positive total decays).
    """
    return linearized_direct(
        Delta_1=rng.uniform(-25, 25),
        Delta_2=rng.uniform(-25, 25),
        omega_1=rng.uniform(-25, 25),
        omega_2=rng.uniform(-25, 25),
        G_1=rng.uniform(0, 10),
        G_2=rng.uniform(0, 10),
        phi_1=rng.uniform(0, 2 * math.pi),
        phi_2=rng.uniform(0, 2 * math.pi),
        J_c=rng.uniform(0, 20),
        J_m=rng.uniform(0, 8),
        kappa_e=rng.uniform(0.5, 30),
        kappa_0=0.0 if lossless else rng.uniform(0, 8),
        gamma_e=rng.uniform(0.2, 3),
        gamma_0=0.0 if lossless else rng.uniform(0, 1),
    )


def random_probe(rng):
    return float(rng.uniform(-40, 40))
