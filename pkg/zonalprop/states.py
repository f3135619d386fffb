"""State representations and the exact maps between them.

Charts: the nonsingular set uses psi = theta + nu (prograde chart) or
psi* = theta - nu (retrograde chart). The retrograde chart is the prograde
chart of the state mirrored through the x-z plane, which flips the sign of N
and keeps theta, xi and chi. Every formula is therefore written once, in terms
of the chart cosine ``ns.cosine`` which is |c| whenever the chart matches the
sign of N.
"""
import math
import logging
from dataclasses import dataclass

import numpy as np

from . import exceptions
from .anomaly import projections, anomalies_from_true, solve_kepler, true_from_eccentric
from .utils import check_finite, wrap_angle

logger = logging.getLogger(__name__)

PROGRADE = 'prograde'
RETROGRADE = 'retrograde'
CHARTS = (PROGRADE, RETROGRADE)

# theta and nu are not separated below this sin(I)
EQUATORIAL_TOL = 1e-12
# smallest 1 + c accepted by the rotation auxiliaries
CHART_TOL = 1e-12


@dataclass(frozen=True)
class CartesianState:
    x: float
    y: float
    z: float
    X: float
    Y: float
    Z: float

    @classmethod
    def from_vectors(cls, position, velocity):
        return cls(*(float(i) for i in position), *(float(i) for i in velocity))

    @property
    def position(self):
        return np.array([self.x, self.y, self.z])

    @property
    def velocity(self):
        return np.array([self.X, self.Y, self.Z])

    def as_array(self):
        return np.array([self.x, self.y, self.z, self.X, self.Y, self.Z])

    def mirrored(self):
        """Reflection through the x-z plane."""
        return CartesianState(self.x, -self.y, self.z, self.X, -self.Y, self.Z)

    @property
    def angular_momentum(self):
        return np.cross(self.position, self.velocity)


@dataclass(frozen=True)
class PolarNodalState:
    r: float
    theta: float
    nu: float
    R: float
    Theta: float
    N: float

    @property
    def cosine(self):
        return self.N / self.Theta

    @property
    def sine(self):
        c = self.cosine
        return math.sqrt(max(0.0, (1.0 - c) * (1.0 + c)))


@dataclass(frozen=True)
class NonsingularState:
    psi: float
    xi: float
    chi: float
    r: float
    R: float
    Theta: float
    N: float
    chart: str = PROGRADE

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise exceptions.ChartError(f"Unknown chart '{self.chart}'")

    @property
    def retrograde(self):
        return self.chart == RETROGRADE

    @property
    def cosine(self):
        """Cosine of the inclination as seen from the active chart."""
        c = self.N / self.Theta
        return -c if self.retrograde else c

    @property
    def sine_squared(self):
        return self.xi * self.xi + self.chi * self.chi


@dataclass(frozen=True)
class DelaunayState:
    ell: float
    g: float
    h: float
    L: float
    G: float
    H: float

    @property
    def eta(self):
        return self.G / self.L

    @property
    def eccentricity(self):
        eta = self.eta
        return math.sqrt(max(0.0, (1.0 - eta) * (1.0 + eta)))


@dataclass(frozen=True)
class RotationAux:
    t: float
    tau: float
    q: float


def chart_for(N):
    # N == 0 (polar orbit) stays in the prograde chart
    return RETROGRADE if N < 0 else PROGRADE


def rotation_aux(xi, chi, c):
    one_c = 1.0 + c
    if one_c < CHART_TOL:
        raise exceptions.ChartError("1 + c vanishes in this chart, use the retrograde chart")
    return RotationAux(t=1.0 - xi * xi / one_c, tau=1.0 - chi * chi / one_c, q=xi * chi / one_c)


def polar_to_nonsingular(pn, chart=None):
    check_finite(pn.r, pn.theta, pn.nu, pn.R, pn.Theta, pn.N, what="polar-nodal state")
    if pn.Theta <= 0:
        raise exceptions.NonEllipticError(f"Angular momentum must be positive, got {pn.Theta}")

    chart = chart or chart_for(pn.N)
    s = pn.sine
    psi = pn.theta - pn.nu if chart == RETROGRADE else pn.theta + pn.nu
    return NonsingularState(
        psi=wrap_angle(psi),
        xi=s * math.sin(pn.theta),
        chi=s * math.cos(pn.theta),
        r=pn.r, R=pn.R, Theta=pn.Theta, N=pn.N,
        chart=chart,
    )


def nonsingular_to_polar(ns, tolerance=EQUATORIAL_TOL):
    s = math.hypot(ns.xi, ns.chi)
    if s < tolerance:
        raise exceptions.EquatorialDecompositionError(
            f"Argument of latitude and node are undefined for an equatorial orbit (sin I = {s:g})"
        )

    theta = math.atan2(ns.xi, ns.chi)
    nu = theta - ns.psi if ns.retrograde else ns.psi - theta
    return PolarNodalState(r=ns.r, theta=theta, nu=wrap_angle(nu), R=ns.R, Theta=ns.Theta, N=ns.N)


def nonsingular_to_cartesian(ns):
    check_finite(ns.psi, ns.xi, ns.chi, ns.r, ns.R, ns.Theta, ns.N, what="nonsingular state")
    if ns.r <= 0 or ns.Theta <= 0:
        raise exceptions.NonEllipticError(f"Need r > 0 and Theta > 0, got r={ns.r}, Theta={ns.Theta}")

    aux = rotation_aux(ns.xi, ns.chi, ns.cosine)
    t, tau, q = aux.t, aux.tau, aux.q
    cpsi = math.cos(ns.psi)
    spsi = math.sin(ns.psi)
    r, R, xi = ns.r, ns.R, ns.xi
    vt = ns.Theta / r

    ux = t * cpsi + q * spsi
    uy = t * spsi - q * cpsi

    x = r * ux
    y = r * uy
    z = r * xi
    X = R * ux - vt * (q * cpsi + tau * spsi)
    Y = R * uy - vt * (q * spsi - tau * cpsi)
    Z = R * xi + vt * ns.chi

    if ns.retrograde:
        y, Y = -y, -Y
    return CartesianState(x, y, z, X, Y, Z)


def cartesian_to_nonsingular(cart, mu=None):
    """Nonsingular elements of a Cartesian state; the chart follows the sign of N.

    ``mu``, when given, additionally rejects non-elliptic states.
    """
    check_finite(*cart.as_array(), what="Cartesian state")
    chart = chart_for(cart.x * cart.Y - cart.y * cart.X)
    work = cart.mirrored() if chart == RETROGRADE else cart
    x, y, z, X, Y, Z = work.x, work.y, work.z, work.X, work.Y, work.Z

    r = math.sqrt(x * x + y * y + z * z)
    if r == 0.0:
        raise exceptions.NonEllipticError("Position vector is zero")
    R = (x * X + y * Y + z * Z) / r
    N = x * Y - y * X
    Theta = math.sqrt((y * Z - z * Y) ** 2 + (z * X - x * Z) ** 2 + N * N)
    if Theta == 0.0:
        raise exceptions.NonEllipticError("Rectilinear orbit: angular momentum is zero")
    if mu is not None:
        projections(r, R, Theta, mu)

    chi = (r * Z - z * R) / Theta
    xi = z / r
    aux = rotation_aux(xi, chi, N / Theta)
    t, tau, q = aux.t, aux.tau, aux.q

    # psi from the position projections, reinforced by the transverse velocity
    # ones so that the polar orbit over the pole (t = q = 0) stays determined
    a = -(r / Theta) * (X - R * x / r)
    b = -(r / Theta) * (Y - R * y / r)
    spsi = (x * q + y * t) / r + (tau * a + q * b)
    cpsi = (x * t - y * q) / r + (q * a - tau * b)

    original_N = -N if chart == RETROGRADE else N
    return NonsingularState(
        psi=math.atan2(spsi, cpsi), xi=xi, chi=chi, r=r, R=R, Theta=Theta, N=original_N, chart=chart
    )


def cartesian_to_polar(cart, mu=None):
    return nonsingular_to_polar(cartesian_to_nonsingular(cart, mu))


def polar_to_cartesian(pn):
    return nonsingular_to_cartesian(polar_to_nonsingular(pn))


def delaunay_to_polar(d, mu):
    check_finite(d.ell, d.g, d.h, d.L, d.G, d.H, what="Delaunay state")
    if not 0.0 < d.G <= d.L:
        raise exceptions.NonEllipticError(f"Delaunay actions need 0 < G <= L, got G={d.G}, L={d.L}")
    if abs(d.H) > d.G:
        raise exceptions.DomainError(f"Delaunay actions need |H| <= G, got H={d.H}, G={d.G}")

    e = d.eccentricity
    u = solve_kepler(d.ell, e)
    f = true_from_eccentric(u, e)
    p = d.G * d.G / mu

    return PolarNodalState(
        r=p / (1.0 + e * math.cos(f)),
        theta=wrap_angle(f + d.g),
        nu=wrap_angle(d.h),
        R=d.G / p * e * math.sin(f),
        Theta=d.G,
        N=d.H,
    )


def polar_to_delaunay(pn, mu):
    """Delaunay elements; circular orbits put f = ell = 0, equatorial ones put h = 0."""
    proj = projections(pn.r, pn.R, pn.Theta, mu)

    if proj.circular:
        f = ell = 0.0
    else:
        f = math.atan2(proj.sigma, proj.kappa)
        ell = anomalies_from_true(f, proj.e).ell

    v2 = pn.R * pn.R + (pn.Theta / pn.r) ** 2
    a = 1.0 / (2.0 / pn.r - v2 / mu)
    g = pn.theta - f
    h = pn.nu
    if abs(abs(pn.N) - pn.Theta) <= 1e-15 * pn.Theta:
        g += math.copysign(1.0, pn.N) * pn.nu
        h = 0.0

    return DelaunayState(ell=ell, g=wrap_angle(g), h=wrap_angle(h), L=math.sqrt(mu * a), G=pn.Theta, H=pn.N)


def delaunay_to_nonsingular(d, mu):
    return polar_to_nonsingular(delaunay_to_polar(d, mu))
