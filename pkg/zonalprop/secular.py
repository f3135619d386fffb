"""Secular theory: the mean Hamiltonian and linear propagation of mean elements.

The double-averaged Hamiltonian is K = H00 F with H00 = -mu^2 / (2 L^2) and

    F = 1 - eps2 eta (4 - 6 s^2) + 3/4 eps2^2 eta B
    B = 5 (8 - 16 s^2 + 7 s^4) + (4 - 6 s^2)^2 eta - (8 - 8 s^2 - 5 s^4) eta^2

where eta = G/L, s^2 = 1 - H^2/G^2 and eps2 = C20 alpha^2 mu^2 / (4 G^4).
The J3 part of the second-order term averages out over the perigee.
Rates are Hamilton's equations (l', g', h') = (dK/dL, dK/dG, dK/dH), so the
Keplerian limit gives l' = n > 0.
"""
import math
import logging
from dataclasses import dataclass

from . import exceptions
from .anomaly import projections, anomalies_from_true, solve_kepler, true_from_eccentric
from .gravity import small_params
from .states import DelaunayState
from .utils import check_finite, wrap_angle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SecularRates:
    ell_dot: float
    g_dot: float
    h_dot: float
    L: float
    G: float
    H: float


def _check_actions(L, G, H):
    check_finite(L, G, H, what="Delaunay action")
    if not 0.0 < G <= L:
        raise exceptions.NonEllipticError(f"Delaunay actions need 0 < G <= L, got G={G}, L={L}")
    if abs(H) > G:
        raise exceptions.DomainError(f"Delaunay actions need |H| <= G, got H={H}, G={G}")


def _terms(L, G, H, field):
    _check_actions(L, G, H)
    eta = G / L
    c = H / G
    s2 = 1.0 - c * c
    eps2 = small_params(G, field).eps2
    h00 = -field.mu ** 2 / (2.0 * L * L)

    a1 = -(4.0 - 6.0 * s2)
    b = (
        5.0 * (8.0 - 16.0 * s2 + 7.0 * s2 * s2)
        + (4.0 - 6.0 * s2) ** 2 * eta
        - (8.0 - 8.0 * s2 - 5.0 * s2 * s2) * eta ** 2
    )
    return eta, c, s2, eps2, h00, a1, b


def mean_hamiltonian(L, G, H, field):
    eta, _, _, eps2, h00, a1, b = _terms(L, G, H, field)
    return h00 * (1.0 + eps2 * eta * a1 + 0.75 * eps2 * eps2 * eta * b)


def secular_rates(L, G, H, field):
    eta, c, s2, eps2, h00, a1, b = _terms(L, G, H, field)
    f = 1.0 + eps2 * eta * a1 + 0.75 * eps2 * eps2 * eta * b

    db_deta = (4.0 - 6.0 * s2) ** 2 - 2.0 * (8.0 - 8.0 * s2 - 5.0 * s2 * s2) * eta
    db_ds2 = -80.0 + 70.0 * s2 - 12.0 * (4.0 - 6.0 * s2) * eta + (8.0 + 10.0 * s2) * eta * eta

    df_deta = eps2 * a1 + 0.75 * eps2 * eps2 * (b + eta * db_deta)
    df_ds2 = 6.0 * eps2 * eta + 0.75 * eps2 * eps2 * eta * db_ds2
    df_deps2 = eta * a1 + 1.5 * eps2 * eta * b

    # eta = G/L, s^2 = 1 - H^2/G^2, eps2 ~ G^-4
    ell_dot = field.mu ** 2 / L ** 3 * f - h00 * df_deta * eta / L
    g_dot = h00 * (df_deta / L + df_ds2 * 2.0 * c * c / G - 4.0 * eps2 * df_deps2 / G)
    h_dot = -h00 * df_ds2 * 2.0 * c / G

    return SecularRates(ell_dot=ell_dot, g_dot=g_dot, h_dot=h_dot, L=L, G=G, H=H)


def keplerian_rates(L, G, H, mu):
    _check_actions(L, G, H)
    return SecularRates(ell_dot=mu * mu / L ** 3, g_dot=0.0, h_dot=0.0, L=L, G=G, H=H)


def propagate_mean(d, rates, dt):
    """Advance mean Delaunay angles linearly; actions are carried over untouched."""
    return DelaunayState(
        ell=wrap_angle(d.ell + rates.ell_dot * dt),
        g=wrap_angle(d.g + rates.g_dot * dt),
        h=wrap_angle(d.h + rates.h_dot * dt),
        L=d.L, G=d.G, H=d.H,
    )


def propagate_mean_nonsingular(ns, rates, dt, mu):
    """Secular advance of a mean nonsingular state.

    The mean anomaly moves through Kepler's equation, (xi, chi) turn with the
    argument of latitude and psi follows theta and the node, so g and h are
    never formed and equatorial or circular orbits need no special path.
    """
    proj = projections(ns.r, ns.R, ns.Theta, mu)
    if proj.circular:
        e = f0 = ell0 = 0.0
    else:
        e = proj.e
        f0 = math.atan2(proj.sigma, proj.kappa)
        ell0 = anomalies_from_true(f0, e).ell

    u1 = solve_kepler(ell0 + rates.ell_dot * dt, e)
    f1 = true_from_eccentric(u1, e)

    dtheta = wrap_angle(f1 - f0) + rates.g_dot * dt
    dnu = rates.h_dot * dt
    cos_d = math.cos(dtheta)
    sin_d = math.sin(dtheta)

    p = proj.p
    return ns.__class__(
        psi=wrap_angle(ns.psi + dtheta + (-dnu if ns.retrograde else dnu)),
        xi=ns.xi * cos_d + ns.chi * sin_d,
        chi=ns.chi * cos_d - ns.xi * sin_d,
        r=p / (1.0 + e * math.cos(f1)),
        R=ns.Theta / p * e * math.sin(f1),
        Theta=ns.Theta,
        N=ns.N,
        chart=ns.chart,
    )
