"""Orbit geometry kernel.

Everything here works from the eccentricity-vector projections

    kappa = p/r - 1,    sigma = p R / Theta

which are regular for circular orbits, so callers never need e and f as
intermediaries. Scalar math goes through ``math.<name>`` attribute lookups;
the benchmark counts transcendental calls by patching the ``math`` module.
"""
import math
import logging
from dataclasses import dataclass

from . import exceptions
from .utils import check_finite, wrap_angle

logger = logging.getLogger(__name__)

# Below this eccentricity the orbit is treated as exactly circular
CIRCULAR_TOL = 1e-12

KEPLER_MAX_NEWTON = 25
KEPLER_STEP_TOL = 1e-13


@dataclass(frozen=True)
class OrbitProjections:
    kappa: float
    sigma: float
    eta: float
    e: float
    p: float

    @property
    def circular(self):
        return self.e < CIRCULAR_TOL


@dataclass(frozen=True)
class AnomalyTriple:
    f: float
    u: float
    ell: float


def projections(r, R, Theta, mu):
    check_finite(r, R, Theta, mu, what="orbit state")
    if r <= 0:
        raise exceptions.NonEllipticError(f"Radius must be positive, got {r}")
    if Theta <= 0:
        raise exceptions.NonEllipticError(f"Angular momentum must be positive, got {Theta}")

    p = Theta * Theta / mu
    kappa = p / r - 1.0
    sigma = p * R / Theta
    e = math.hypot(kappa, sigma)
    if e >= 1.0:
        raise exceptions.NonEllipticError(f"Orbit is not elliptic (e={e})")

    return OrbitProjections(kappa=kappa, sigma=sigma, eta=math.sqrt((1.0 - e) * (1.0 + e)), e=e, p=p)


def solve_kepler(ell, e):
    """Eccentric anomaly in (-pi, pi] from the mean anomaly."""
    check_finite(ell, e, what="Kepler equation argument")
    if not 0.0 <= e < 1.0:
        raise exceptions.NonEllipticError(f"Kepler equation needs 0 <= e < 1, got {e}")

    ell = wrap_angle(ell)
    if e == 0.0:
        return ell

    u = ell + e * math.sin(ell)
    for _ in range(KEPLER_MAX_NEWTON):
        step = (u - e * math.sin(u) - ell) / (1.0 - e * math.cos(u))
        u -= step
        if abs(step) < KEPLER_STEP_TOL:
            # the root lies in [-pi, pi]; only rounding can push it outside
            return min(max(u, -math.pi), math.pi)

    logger.debug(f"Newton did not converge for ell={ell}, e={e}; bisecting")
    return _bisect_kepler(ell, e)


def _bisect_kepler(ell, e):
    # u - e sin u is monotonic, and the root lies in [-pi, pi] for ell in (-pi, pi]
    low, high = -math.pi, math.pi
    for _ in range(200):
        middle = 0.5 * (low + high)
        if middle == low or middle == high:
            break
        if middle - e * math.sin(middle) - ell < 0.0:
            low = middle
        else:
            high = middle
    return 0.5 * (low + high)


def true_from_eccentric(u, e):
    eta = math.sqrt((1.0 - e) * (1.0 + e))
    return math.atan2(eta * math.sin(u), math.cos(u) - e)


def eccentric_from_true(f, e):
    eta = math.sqrt((1.0 - e) * (1.0 + e))
    return math.atan2(eta * math.sin(f), e + math.cos(f))


def anomalies_from_true(f, e):
    u = eccentric_from_true(f, e)
    return AnomalyTriple(f=wrap_angle(f), u=u, ell=wrap_angle(u - e * math.sin(u)))


def anomalies_from_mean(ell, e):
    u = solve_kepler(ell, e)
    return AnomalyTriple(f=true_from_eccentric(u, e), u=u, ell=wrap_angle(ell))


def true_from_projections(proj):
    if proj.e == 0.0 or proj.circular:
        raise exceptions.DomainError("True anomaly is undefined for a circular orbit")
    return math.atan2(proj.sigma, proj.kappa)


def equation_of_center(proj):
    """phi = f - ell, computed on matching branches of f and u."""
    if proj.circular:
        return 0.0

    kappa, sigma, eta = proj.kappa, proj.sigma, proj.eta
    f = math.atan2(sigma, kappa)
    u = math.atan2(eta * sigma, proj.e * proj.e + kappa)
    # e sin u = eta sigma / (1 + kappa)
    return f - u + eta * sigma / (1.0 + kappa)


def equation_of_center_series(f, e):
    """Expansion of f - ell in powers of e, truncated after e^3."""
    return 2.0 * e * math.sin(f) - 0.75 * e * e * math.sin(2.0 * f) + e ** 3 / 3.0 * math.sin(3.0 * f)


def phi_partials(r, R, Theta, mu):
    """(dphi/dr, dphi/dR, dphi/dTheta) at fixed remaining polar-nodal momenta."""
    proj = projections(r, R, Theta, mu)
    kappa, sigma, eta = proj.kappa, proj.sigma, proj.eta
    one_eta = 1.0 + eta
    one_kappa = 1.0 + kappa

    dphi_dr = sigma / r * (one_kappa / one_eta + eta / one_kappa)
    # sigma / R written as p / Theta
    dphi_dR = proj.p / Theta * (kappa / one_eta + 2.0 * eta / one_kappa)
    dphi_dTheta = -sigma / Theta * (2.0 + kappa) / one_eta
    return dphi_dr, dphi_dR, dphi_dTheta
