"""First-order long-period corrections from the J2 and J3 zonal terms.

Generating function in polar-nodal variables:

    Y1 = -eps2 Theta s^2 (14 - 15 s^2) / (8 (4 - 5 s^2)) [(k^2 - sg^2) sin 2theta - 2 k sg cos 2theta]
         + eps3 Theta s (k cos theta + sg sin theta)

with k = kappa, sg = sigma. The nonsingular forms are the chain-rule image of
the polar-nodal ones, which also fixes their eps2 prefactors to
1 / (1 - 5c^2)^2. Direct corrections are evaluated at double-prime variables,
inverse ones at prime variables.
"""
import math
import logging

from . import exceptions
from .anomaly import projections
from .gravity import small_params, q_polynomials, p_coefficients, critical_factor
from .short_period import (
    CorrectionSet, DIRECT, POLAR_NODAL, NONSINGULAR, LOW_INCLINATION,
)

logger = logging.getLogger(__name__)

CRITICAL_TOL = 1e-3


def critical_inclination_guard(c, tolerance=CRITICAL_TOL):
    """Reject inclinations where 1 - 5 cos^2 I is within ``tolerance`` of zero."""
    factor = critical_factor(c)
    if abs(factor) < tolerance:
        inclination = math.degrees(math.acos(max(-1.0, min(1.0, c))))
        raise exceptions.CriticalInclinationError(
            f"Inclination {inclination:.4f} deg is within the critical band (|1 - 5c^2| = {abs(factor):.3g} "
            f"< {tolerance:g}); long-period corrections do not apply"
        )
    return True


def _common(r, R, Theta, field):
    return small_params(Theta, field), projections(r, R, Theta, field.mu)


def y1(pn, field, tolerance=CRITICAL_TOL):
    c = pn.cosine
    critical_inclination_guard(c, tolerance)
    sp, proj = _common(pn.r, pn.R, pn.Theta, field)
    kappa, sigma = proj.kappa, proj.sigma
    s = pn.sine
    s2 = s * s

    two_theta = 2.0 * pn.theta
    eps2_part = -sp.eps2 * s2 * (14.0 - 15.0 * s2) / (8.0 * (4.0 - 5.0 * s2)) * (
        (kappa * kappa - sigma * sigma) * math.sin(two_theta) - 2.0 * kappa * sigma * math.cos(two_theta)
    )
    eps3_part = sp.eps3 * s * (kappa * math.cos(pn.theta) + sigma * math.sin(pn.theta))
    return pn.Theta * (eps2_part + eps3_part)


def long_corrections_polar(pn, field, orientation=DIRECT, tolerance=CRITICAL_TOL):
    c = pn.cosine
    critical_inclination_guard(c, tolerance)
    s = pn.sine
    if s == 0.0:
        raise exceptions.EquatorialDecompositionError(
            "Polar-nodal long-period corrections are singular for equatorial orbits, use the nonsingular form"
        )

    sp, proj = _common(pn.r, pn.R, pn.Theta, field)
    eps2, eps3, p = sp.eps2, sp.eps3, sp.p
    kappa, sigma = proj.kappa, proj.sigma
    q = q_polynomials(c)
    s2 = s * s
    factor = critical_factor(c)
    k_factor = (1.0 - 15.0 * c * c) / (4.0 * factor)
    Theta = pn.Theta

    sin_t = math.sin(pn.theta)
    cos_t = math.cos(pn.theta)
    s2t = 2.0 * sin_t * cos_t
    c2t = cos_t * cos_t - sin_t * sin_t
    k2_sg2 = kappa * kappa - sigma * sigma
    one_kappa2 = (1.0 + kappa) ** 2

    dr = p * (eps2 * s2 * k_factor * (kappa * c2t + sigma * s2t) + eps3 * s * sin_t)
    dtheta = (
        eps2 / (2.0 * factor * factor) * (
            (q.q2 + q.q5 * kappa) * sigma * c2t
            - (q.q1 * sigma * sigma + q.q2 * kappa + q.q3 * kappa * kappa) * s2t
        )
        + eps3 * ((kappa / s + 2.0 * s) * cos_t + (1.0 / s - s) * sigma * sin_t)
    )
    dnu = (
        eps2 * q.q6 / (4.0 * factor * factor) * (k2_sg2 * s2t - 2.0 * kappa * sigma * c2t)
        - eps3 * c / s * (kappa * cos_t + sigma * sin_t)
    )
    dR = Theta / p * one_kappa2 * (
        eps2 * k_factor * s2 * (sigma * c2t - kappa * s2t) + eps3 * s * cos_t
    )
    dTheta = Theta * (
        eps2 * k_factor * s2 * (k2_sg2 * c2t + 2.0 * kappa * sigma * s2t)
        + eps3 * s * (kappa * sin_t - sigma * cos_t)
    )

    return CorrectionSet(POLAR_NODAL, (dr, dtheta, dnu, dR, dTheta, 0.0), orientation, POLAR_NODAL)


def long_corrections_nonsingular(ns, field, orientation=DIRECT, tolerance=CRITICAL_TOL):
    c = ns.cosine
    critical_inclination_guard(c, tolerance)
    sp, proj = _common(ns.r, ns.R, ns.Theta, field)
    eps2, eps3, p = sp.eps2, sp.eps3, sp.p
    kappa, sigma = proj.kappa, proj.sigma
    xi, chi = ns.xi, ns.chi
    q = q_polynomials(c)
    P = p_coefficients(kappa, sigma, q)

    c2 = c * c
    s2 = xi * xi + chi * chi
    factor = critical_factor(c)
    factor2 = factor * factor
    k_factor = (1.0 - 15.0 * c2) / (4.0 * factor)
    xi2, chi2 = xi * xi, chi * chi
    xi_chi = xi * chi
    k2_sg2 = kappa * kappa - sigma * sigma
    Theta = ns.Theta

    dpsi = (
        -eps2 / (2.0 * factor2) * (
            2.0 * xi_chi * (q.q13 * kappa + q.q14 * kappa * kappa + q.q15 * sigma * sigma)
            - sigma * (chi2 - xi2) * (q.q13 - q.q6 * kappa)
        )
        + eps3 * ((2.0 + 2.0 * c + kappa) * chi - c * sigma * xi)
    ) / (1.0 + c)
    dxi = (
        -eps2 / (4.0 * factor2) * (
            P.P1 * xi + P.P2 * (3.0 * chi2 - xi2) * xi - P.P3 * sigma * chi - P.P4 * sigma * (chi2 - 3.0 * xi2) * chi
        )
        + 0.5 * eps3 * (2.0 * s2 + (1.0 + c2) * kappa + (2.0 + kappa) * (chi2 - xi2))
    )
    dchi = (
        eps2 / (4.0 * factor2) * (
            P.P1 * chi + P.P2 * (3.0 * xi2 - chi2) * chi + P.P3 * sigma * xi + P.P4 * sigma * (xi2 - 3.0 * chi2) * xi
        )
        - eps3 * (c2 * sigma + (2.0 + kappa) * chi * xi)
    )
    dr = p * (eps2 * k_factor * (kappa * (chi2 - xi2) + 2.0 * sigma * xi_chi) + eps3 * xi)
    dR = Theta / p * (1.0 + kappa) ** 2 * (
        eps2 * k_factor * (sigma * (chi2 - xi2) - 2.0 * kappa * xi_chi) + eps3 * chi
    )
    dTheta = Theta * (
        eps2 * k_factor * (k2_sg2 * (chi2 - xi2) + 4.0 * kappa * sigma * xi_chi)
        + eps3 * (kappa * xi - sigma * chi)
    )

    return CorrectionSet(NONSINGULAR, (dpsi, dxi, dchi, dr, dR, dTheta, 0.0), orientation, NONSINGULAR)


def long_corrections_low_inclination(ns, field, orientation=DIRECT):
    """Nonsingular corrections with terms of order sin^2 I dropped.

    On the equator they reduce to delta xi = eps3 kappa, delta chi = -eps3 sigma.
    """
    sp, proj = _common(ns.r, ns.R, ns.Theta, field)
    eps2, eps3, p = sp.eps2, sp.eps3, sp.p
    kappa, sigma = proj.kappa, proj.sigma
    xi, chi = ns.xi, ns.chi
    k2_sg2 = kappa * kappa - sigma * sigma
    Theta = ns.Theta

    dpsi = 0.5 * eps3 * ((4.0 + kappa) * chi - xi * sigma)
    dxi = -0.875 * eps2 * (k2_sg2 * xi - 2.0 * kappa * sigma * chi) + eps3 * kappa
    dchi = 0.875 * eps2 * (k2_sg2 * chi + 2.0 * kappa * sigma * xi) - eps3 * sigma
    dr = eps3 * xi * p
    dR = eps3 * (1.0 + kappa) ** 2 * chi * Theta / p
    dTheta = eps3 * (kappa * xi - sigma * chi) * Theta

    return CorrectionSet(NONSINGULAR, (dpsi, dxi, dchi, dr, dR, dTheta, 0.0), orientation, LOW_INCLINATION)
