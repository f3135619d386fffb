"""First-order short-period corrections of the J2 problem.

The generating function is

    V1 = eps2 Theta [(2 - 3 s^2)(phi + sigma) + 1/2 (3 + 4 kappa) s^2 sin 2theta - sigma s^2 cos 2theta]

and each correction is the Poisson bracket {rho, V1} with {q, W} = dW/dp,
{p, W} = -dW/dq. Direct corrections are evaluated at mean (prime) variables
and added, inverse ones at osculating variables and subtracted.
"""
import math
import logging
from dataclasses import dataclass, replace

from . import exceptions
from .anomaly import projections, equation_of_center
from .gravity import small_params
from .states import PolarNodalState, NonsingularState, DelaunayState, RETROGRADE
from .utils import wrap_angle

logger = logging.getLogger(__name__)

DIRECT = 'direct'
INVERSE = 'inverse'
ORIENTATIONS = (DIRECT, INVERSE)

POLAR_NODAL = 'polar-nodal'
NONSINGULAR = 'nonsingular'
LOW_INCLINATION = 'low-inclination'
DELAUNAY = 'delaunay'
FORMULATIONS = (POLAR_NODAL, NONSINGULAR, LOW_INCLINATION)

LAYOUTS = {
    POLAR_NODAL: ('r', 'theta', 'nu', 'R', 'Theta', 'N'),
    NONSINGULAR: ('psi', 'xi', 'chi', 'r', 'R', 'Theta', 'N'),
    DELAUNAY: ('ell', 'g', 'h', 'L', 'G', 'H'),
}
ANGLES = ('theta', 'nu', 'psi', 'ell', 'g', 'h')
# actions conserved by every zonal correction
INTEGRALS = ('N', 'H')


@dataclass(frozen=True)
class CorrectionSet:
    """Additive periodic corrections laid out like a polar-nodal, nonsingular or Delaunay state."""
    layout: str
    deltas: tuple
    orientation: str = DIRECT
    formulation: str = ''

    def __post_init__(self):
        if self.layout not in LAYOUTS:
            raise exceptions.LayoutError(f"Unknown correction layout '{self.layout}'")
        if len(self.deltas) != len(LAYOUTS[self.layout]):
            raise exceptions.LayoutError(f"{self.layout} corrections need {len(LAYOUTS[self.layout])} values")
        if self.orientation not in ORIENTATIONS:
            raise exceptions.LayoutError(f"Unknown orientation '{self.orientation}'")

    @classmethod
    def zero(cls, layout, orientation=DIRECT):
        return cls(layout, (0.0,) * len(LAYOUTS[layout]), orientation)

    @property
    def fields(self):
        return LAYOUTS[self.layout]

    def __getitem__(self, name):
        return self.deltas[self.fields.index(name)]

    def as_dict(self):
        return dict(zip(self.fields, self.deltas))


def _layout_of(state):
    if isinstance(state, PolarNodalState):
        return POLAR_NODAL
    if isinstance(state, NonsingularState):
        return NONSINGULAR
    if isinstance(state, DelaunayState):
        return DELAUNAY
    raise exceptions.LayoutError(f"Corrections do not apply to {type(state).__name__}")


def apply_correction(state, corr, direction=None):
    """Add (direct) or subtract (inverse) a correction set; N and H are never touched."""
    direction = direction or corr.orientation
    if direction not in ORIENTATIONS:
        raise exceptions.LayoutError(f"Unknown direction '{direction}'")
    if _layout_of(state) != corr.layout:
        raise exceptions.LayoutError(
            f"Cannot apply {corr.layout} corrections to a {type(state).__name__}"
        )

    sign = 1.0 if direction == DIRECT else -1.0
    values = {}
    for name, delta in zip(corr.fields, corr.deltas):
        if name in INTEGRALS:
            continue
        value = getattr(state, name) + sign * delta
        values[name] = wrap_angle(value) if name in ANGLES else value

    return replace(state, **values)


def _common(r, R, Theta, field):
    sp = small_params(Theta, field)
    proj = projections(r, R, Theta, field.mu)
    return sp, proj, equation_of_center(proj)


def v1(pn, field):
    sp, proj, phi = _common(pn.r, pn.R, pn.Theta, field)
    s2 = 1.0 - pn.cosine ** 2
    kappa, sigma = proj.kappa, proj.sigma
    two_theta = 2.0 * pn.theta
    return sp.eps2 * pn.Theta * (
        (2.0 - 3.0 * s2) * (phi + sigma)
        + 0.5 * (3.0 + 4.0 * kappa) * s2 * math.sin(two_theta)
        - sigma * s2 * math.cos(two_theta)
    )


def short_corrections_polar(pn, field, orientation=DIRECT):
    sp, proj, phi = _common(pn.r, pn.R, pn.Theta, field)
    eps2, p = sp.eps2, sp.p
    kappa, sigma, eta = proj.kappa, proj.sigma, proj.eta
    c = pn.cosine
    s2 = 1.0 - c * c
    Theta = pn.Theta

    s2t = math.sin(2.0 * pn.theta)
    c2t = math.cos(2.0 * pn.theta)
    one_kappa2 = (1.0 + kappa) ** 2
    g = (2.0 + kappa) / (1.0 + eta)
    a = kappa / (1.0 + eta) + 2.0 * eta / (1.0 + kappa) + 1.0

    dr = eps2 * p * ((2.0 - 3.0 * s2) * a - s2 * c2t)
    dtheta = eps2 * (
        -3.0 * (4.0 - 5.0 * s2) * phi
        + (3.0 - 3.5 * s2 + (4.0 - 6.0 * s2) * kappa) * s2t
        - 2.0 * sigma * (5.0 - 6.0 * s2 + g * (1.0 - 1.5 * s2) + (1.0 - 2.0 * s2) * c2t)
    )
    dnu = eps2 * c * (6.0 * phi - (4.0 * kappa + 3.0) * s2t + 2.0 * sigma * (3.0 + c2t))
    dR = eps2 * Theta / p * (
        2.0 * one_kappa2 * s2 * s2t - (2.0 - 3.0 * s2) * sigma * (eta + one_kappa2 / (1.0 + eta))
    )
    dTheta = -eps2 * Theta * s2 * ((3.0 + 4.0 * kappa) * c2t + 2.0 * sigma * s2t)

    return CorrectionSet(POLAR_NODAL, (dr, dtheta, dnu, dR, dTheta, 0.0), orientation, POLAR_NODAL)


def short_corrections_nonsingular(ns, field, orientation=DIRECT):
    sp, proj, phi = _common(ns.r, ns.R, ns.Theta, field)
    eps2, p = sp.eps2, sp.p
    kappa, sigma, eta = proj.kappa, proj.sigma, proj.eta
    xi, chi = ns.xi, ns.chi
    c = ns.cosine
    c2 = c * c
    s2 = xi * xi + chi * chi
    Theta = ns.Theta

    one_kappa2 = (1.0 + kappa) ** 2
    g = (2.0 + kappa) / (1.0 + eta)
    a = 1.0 + kappa / (1.0 + eta) + 2.0 * eta / (1.0 + kappa)
    one_3c2 = 1.0 - 3.0 * c2
    xi_chi = xi * chi

    dpsi = eps2 * (
        (3.0 + 6.0 * c - 15.0 * c2) * phi
        + sigma * (2.0 + 6.0 * c - 12.0 * c2 + one_3c2 * g + (2.0 + 4.0 * c) / (1.0 + c) * (chi * chi - xi * xi))
        - (1.0 + 7.0 * c + 4.0 * (1.0 + 3.0 * c) * kappa) / (1.0 + c) * xi_chi
    )
    dxi = eps2 * (
        sigma * (4.0 * chi * chi - 12.0 * c2 + one_3c2 * g) * chi
        - ((1.0 + 4.0 * kappa) * chi * chi - (3.0 + 4.0 * kappa) * c2) * xi
        + 3.0 * (1.0 - 5.0 * c2) * phi * chi
    )
    dchi = -eps2 * (
        sigma * (4.0 * chi * chi - 8.0 * c2 + one_3c2 * g) * xi
        - ((1.0 + 4.0 * kappa) * xi * xi - (3.0 + 4.0 * kappa) * c2) * chi
        + 3.0 * (1.0 - 5.0 * c2) * phi * xi
    )
    dr = eps2 * p * (xi * xi - chi * chi + a * (2.0 - 3.0 * s2))
    dR = eps2 * Theta / p * (
        4.0 * one_kappa2 * xi_chi - sigma * (eta + one_kappa2 / (1.0 + eta)) * (2.0 - 3.0 * s2)
    )
    dTheta = eps2 * Theta * ((3.0 + 4.0 * kappa) * (xi * xi - chi * chi) - 4.0 * sigma * xi_chi)

    return CorrectionSet(NONSINGULAR, (dpsi, dxi, dchi, dr, dR, dTheta, 0.0), orientation, NONSINGULAR)


def short_corrections_low_inclination(ns, field, orientation=DIRECT):
    """Nonsingular corrections with terms of order sin^2 I dropped."""
    sp, proj, phi = _common(ns.r, ns.R, ns.Theta, field)
    eps2, p = sp.eps2, sp.p
    kappa, sigma, eta = proj.kappa, proj.sigma, proj.eta
    xi, chi = ns.xi, ns.chi
    g = (2.0 + kappa) / (1.0 + eta)

    dpsi = -2.0 * eps2 * (3.0 * phi + (2.0 + g) * sigma)
    dxi = eps2 * ((3.0 + 4.0 * kappa) * xi - 2.0 * (6.0 + g) * sigma * chi - 12.0 * phi * chi)
    dchi = -eps2 * ((3.0 + 4.0 * kappa) * chi - 2.0 * (4.0 + g) * sigma * xi - 12.0 * phi * xi)
    dr = 2.0 * eps2 * p * (1.0 + kappa / (1.0 + eta) + 2.0 * eta / (1.0 + kappa))
    dR = -2.0 * eps2 * ns.Theta / p * sigma * (eta + (1.0 + kappa) ** 2 / (1.0 + eta))

    return CorrectionSet(NONSINGULAR, (dpsi, dxi, dchi, dr, dR, 0.0, 0.0), orientation, LOW_INCLINATION)


def polar_to_nonsingular_corrections(pn, corr, chart=None):
    """Chain-rule image of polar-nodal corrections on (psi, xi, chi, r, R, Theta)."""
    if corr.layout != POLAR_NODAL:
        raise exceptions.LayoutError("Expected polar-nodal corrections")
    s = pn.sine
    if s == 0.0:
        raise exceptions.EquatorialDecompositionError("Chain rule needs sin I > 0")

    c = pn.cosine
    sin_t = math.sin(pn.theta)
    cos_t = math.cos(pn.theta)
    dTheta = corr['Theta']
    dtheta = corr['theta']
    radial = dTheta / s * c * c / pn.Theta
    along = s * dtheta

    chart = chart or (RETROGRADE if pn.N < 0 else None)
    dpsi = dtheta - corr['nu'] if chart == RETROGRADE else dtheta + corr['nu']

    return CorrectionSet(
        NONSINGULAR,
        (dpsi, radial * sin_t + along * cos_t, radial * cos_t - along * sin_t,
         corr['r'], corr['R'], dTheta, 0.0),
        corr.orientation,
        corr.formulation,
    )
