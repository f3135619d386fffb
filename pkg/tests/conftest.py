import math

import numpy as np
import pytest

from zonalprop.anomaly import anomalies_from_true
from zonalprop.gravity import GravityField
from zonalprop.states import DelaunayState, delaunay_to_polar, polar_to_cartesian

MU = 398600.4418
ALPHA = 6378.137
C20 = -1.08262668e-3
C30 = 2.53265648e-6


@pytest.fixture
def earth():
    return GravityField(mu=MU, alpha=ALPHA, c20=C20, c30=C30)


@pytest.fixture
def earth_j2():
    return GravityField(mu=MU, alpha=ALPHA, c20=C20)


@pytest.fixture
def kepler_field():
    return GravityField(mu=MU, alpha=ALPHA)


@pytest.fixture
def rng():
    return np.random.default_rng(20190412)


def delaunay_from_elements(a, e, inclination, node=0.0, perigee=0.0, true_anomaly=0.0, mu=MU):
    """Delaunay state from classical elements, angles in degrees."""
    L = math.sqrt(mu * a)
    G = L * math.sqrt(1.0 - e * e)
    f = math.radians(true_anomaly)
    ell = anomalies_from_true(f, e).ell if e > 0 else f
    return DelaunayState(
        ell=ell, g=math.radians(perigee), h=math.radians(node),
        L=L, G=G, H=G * math.cos(math.radians(inclination)),
    )


@pytest.fixture
def delaunay_state():
    return delaunay_from_elements


@pytest.fixture
def polar_state():
    def make(*args, **kwargs):
        return delaunay_to_polar(delaunay_from_elements(*args, **kwargs), kwargs.get('mu', MU))
    return make


@pytest.fixture
def cartesian_state(polar_state):
    def make(*args, **kwargs):
        return polar_to_cartesian(polar_state(*args, **kwargs))
    return make


@pytest.fixture
def leo(cartesian_state):
    """a = 7000 km, e = 0.05, i = 30 deg."""
    return cartesian_state(7000.0, 0.05, 30.0, node=40.0, perigee=60.0, true_anomaly=20.0)


def random_elements(rng, count, e_range=(0.0, 0.9), i_range=(0.0, 180.0), a_range=(6800.0, 42000.0),
                    avoid_critical=0.0):
    """Seeded classical elements (a, e, i, node, perigee, true anomaly), angles in degrees."""
    elements = []
    while len(elements) < count:
        a = rng.uniform(*a_range)
        e = rng.uniform(*e_range)
        i = rng.uniform(*i_range)
        c = math.cos(math.radians(i))
        if avoid_critical and abs(1.0 - 5.0 * c * c) < avoid_critical:
            continue
        node, perigee, f = rng.uniform(-180.0, 180.0, 3)
        elements.append((a, e, i, node, perigee, f))
    return elements


@pytest.fixture
def random_orbits(rng):
    def make(count, **kwargs):
        return random_elements(rng, count, **kwargs)
    return make
