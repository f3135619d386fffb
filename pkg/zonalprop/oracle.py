"""Independent checks for the analytic theory.

* numerical integration of the J2 + J3 equations of motion (scipy DOP853),
* the zonal potential, its gradient and the Hamiltonian split H00 + H10 + H20/2,
* central-difference Poisson brackets of any generating function,
* the Delaunay-form generating functions U1, X1 and their closed-form
  corrections, which also serve as the trigonometric-series path of the
  benchmark.
"""
import math
import logging

import numpy as np
from scipy.integrate import solve_ivp

from . import exceptions
from .anomaly import solve_kepler, true_from_eccentric, CIRCULAR_TOL
from .gravity import small_params
from .long_period import critical_inclination_guard, CRITICAL_TOL
from .short_period import CorrectionSet, DELAUNAY, DIRECT
from .states import CartesianState, PolarNodalState, DelaunayState, cartesian_to_nonsingular, polar_to_nonsingular
from .utils import wrap_angle

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-12
FD_RELATIVE_STEP = 1e-6

CANONICAL_PAIRS = {
    PolarNodalState: (('r', 'R'), ('theta', 'Theta'), ('nu', 'N')),
    DelaunayState: (('ell', 'L'), ('g', 'G'), ('h', 'H')),
}


def zonal_potential(cart, field):
    """-mu/r plus the degree 2 and 3 zonal terms, sin(latitude) = z/r."""
    r = math.sqrt(cart.x ** 2 + cart.y ** 2 + cart.z ** 2)
    if r == 0.0:
        raise exceptions.DomainError("Potential is undefined at the origin")
    sin_lat = cart.z / r
    a_r = field.alpha / r
    p2 = 0.5 * (3.0 * sin_lat ** 2 - 1.0)
    p3 = 0.5 * (5.0 * sin_lat ** 3 - 3.0 * sin_lat)
    return -field.mu / r * (1.0 + a_r ** 2 * field.c20 * p2 + a_r ** 3 * field.c30 * p3)


def zonal_acceleration(cart, field):
    x, y, z = cart.x, cart.y, cart.z
    r2 = x * x + y * y + z * z
    if r2 == 0.0:
        raise exceptions.DomainError("Acceleration is undefined at the origin")
    r = math.sqrt(r2)
    mu, alpha = field.mu, field.alpha
    j2, j3 = field.j2, field.j3
    z2_r2 = z * z / r2

    central = -mu / (r2 * r)
    acc = np.array([central * x, central * y, central * z])

    if j2:
        k2 = -1.5 * j2 * mu * alpha ** 2 / r ** 5
        acc += k2 * np.array([x * (1.0 - 5.0 * z2_r2), y * (1.0 - 5.0 * z2_r2), z * (3.0 - 5.0 * z2_r2)])

    if j3:
        k3 = -2.5 * j3 * mu * alpha ** 3 / r ** 7
        planar = 3.0 * z - 7.0 * z ** 3 / r2
        acc += k3 * np.array([x * planar, y * planar, 6.0 * z * z - 7.0 * z ** 4 / r2 - 0.6 * r2])

    return acc


def total_energy(cart, field):
    v2 = cart.X ** 2 + cart.Y ** 2 + cart.Z ** 2
    return 0.5 * v2 + zonal_potential(cart, field)


def hamiltonian_terms(state, field):
    """(H00, H10, H20) with H00 + H10 + H20/2 the total energy.

    Written in the nonsingular elements: s^2 cos 2theta = chi^2 - xi^2 and
    s^3 sin 3theta = 3 s^2 xi - 4 xi^3, so equatorial states need no node.
    """
    if isinstance(state, CartesianState):
        ns = cartesian_to_nonsingular(state)
    elif isinstance(state, PolarNodalState):
        ns = polar_to_nonsingular(state)
    else:
        ns = state

    mu, alpha = field.mu, field.alpha
    r, xi, chi = ns.r, ns.xi, ns.chi
    s2 = xi * xi + chi * chi

    h00 = 0.5 * ns.R ** 2 + ns.Theta ** 2 / (2.0 * r * r) - mu / r
    h10 = mu / r * 0.25 * field.c20 * (alpha / r) ** 2 * (2.0 - 3.0 * s2 + 3.0 * (chi * chi - xi * xi))
    h20 = mu / r * 0.5 * field.c30 * (alpha / r) ** 3 * (
        6.0 * (1.0 - 1.25 * s2) * xi + 2.5 * (3.0 * s2 * xi - 4.0 * xi ** 3)
    )
    return h00, h10, h20


def _rhs(field):
    def rhs(t, y):
        acc = zonal_acceleration(CartesianState(*y), field)
        return np.concatenate([y[3:], acc])
    return rhs


def _solve(cart0, t0, times, field, tol):
    y0 = cart0.as_array()
    scale = np.concatenate([np.full(3, np.linalg.norm(y0[:3])), np.full(3, np.linalg.norm(y0[3:]))])
    solution = solve_ivp(
        _rhs(field), (t0, times[-1]), y0,
        method='DOP853', t_eval=times, rtol=tol, atol=tol * scale,
    )
    if solution.status != 0:
        raise exceptions.ConvergenceError(f"Integration failed: {solution.message}", stage='oracle')
    logger.debug(f"DOP853 {t0} -> {times[-1]}: {solution.nfev} evaluations")
    return [CartesianState(*column) for column in solution.y.T]


def integrate_grid(cart0, t0, ts, field, tol=DEFAULT_TOLERANCE):
    """Reference states at every time in ``ts`` (any order, either side of t0)."""
    if not 1e-14 <= tol <= 1e-6:
        raise exceptions.ConfigError(f"Integrator tolerance must lie in [1e-14, 1e-6], got {tol}")

    ts = np.asarray(ts, dtype=float)
    results = [None] * len(ts)
    for sign in (1.0, -1.0):
        indices = [i for i, t in enumerate(ts) if (t - t0) * sign > 0]
        if not indices:
            continue
        order = sorted(indices, key=lambda i: sign * (ts[i] - t0))
        states = _solve(cart0, t0, np.array([ts[i] for i in order]), field, tol)
        for i, state in zip(order, states):
            results[i] = state

    return [cart0 if state is None else state for state in results]


def integrate(cart0, t0, t1, field, tol=DEFAULT_TOLERANCE):
    return integrate_grid(cart0, t0, [t1], field, tol)[0]


def _fd_steps(state, relative_step):
    if isinstance(state, PolarNodalState):
        return {
            'r': relative_step * state.r,
            'theta': relative_step,
            'nu': relative_step,
            'R': relative_step * state.Theta / state.r,
            'Theta': relative_step * state.Theta,
            'N': relative_step * state.Theta,
        }
    return {
        'ell': relative_step, 'g': relative_step, 'h': relative_step,
        'L': relative_step * state.L, 'G': relative_step * state.L, 'H': relative_step * state.L,
    }


def _partial(gen, state, name, step):
    value = getattr(state, name)
    plus = gen(state.__class__(**{**state.__dict__, name: value + step}))
    minus = gen(state.__class__(**{**state.__dict__, name: value - step}))
    if not (math.isfinite(plus) and math.isfinite(minus)):
        raise exceptions.DomainError(f"Generator is not finite around {name}={value}")
    return (plus - minus) / (2.0 * step)


def poisson_bracket_fd(gen, coordinate, state, relative_step=FD_RELATIVE_STEP):
    """{coordinate, gen} by central differences, with {q, W} = dW/dp and {p, W} = -dW/dq.

    ``coordinate`` is a variable name or an index into the state's field order;
    polar-nodal and Delaunay states are supported.
    """
    pairs = CANONICAL_PAIRS.get(type(state))
    if pairs is None:
        raise exceptions.LayoutError(f"{type(state).__name__} is not a canonical set")
    if isinstance(coordinate, int):
        coordinate = list(state.__dataclass_fields__)[coordinate]

    steps = _fd_steps(state, relative_step)
    for q, p in pairs:
        if coordinate == q:
            return _partial(gen, state, p, steps[p])
        if coordinate == p:
            return -_partial(gen, state, q, steps[q])
    raise exceptions.LayoutError(f"Unknown canonical variable '{coordinate}'")


def _kepler(d):
    e = d.eccentricity
    u = solve_kepler(d.ell, e)
    f = true_from_eccentric(u, e)
    return e, f, wrap_angle(f - d.ell)


def u1_delaunay(d, field):
    eps2 = small_params(d.G, field).eps2
    e, f, phi = _kepler(d)
    c = d.H / d.G
    s2 = 1.0 - c * c
    g2 = 2.0 * d.g
    return 0.5 * d.G * eps2 * (
        (4.0 - 6.0 * s2) * (phi + e * math.sin(f))
        + 3.0 * e * s2 * math.sin(f + g2)
        + 3.0 * s2 * math.sin(2.0 * f + g2)
        + e * s2 * math.sin(3.0 * f + g2)
    )


def _long_coefficient(s2):
    """-(14 - 15 s^2) s^2 / (8 (4 - 5 s^2)) and its derivative in s^2."""
    b = -(14.0 - 15.0 * s2) / (8.0 * (4.0 - 5.0 * s2))
    db = -5.0 / (4.0 * (4.0 - 5.0 * s2) ** 2)
    return b * s2, b + s2 * db


def x1_delaunay(d, field, tolerance=CRITICAL_TOL):
    c = d.H / d.G
    critical_inclination_guard(c, tolerance)
    sp = small_params(d.G, field)
    e = d.eccentricity
    s2 = 1.0 - c * c
    coefficient, _ = _long_coefficient(s2)
    return d.G * (sp.eps2 * coefficient * e * e * math.sin(2.0 * d.g) + sp.eps3 * math.sqrt(s2) * e * math.cos(d.g))


def _eccentricity_partials(d, e):
    if e < CIRCULAR_TOL:
        raise exceptions.DomainError("Delaunay corrections are singular for circular orbits")
    eta = d.eta
    return eta * eta / (d.L * e), -eta / (d.L * e)


def short_corrections_delaunay(d, field, orientation=DIRECT):
    """{rho, U1} in Delaunay variables, evaluated as a series in f, f+2g, 2f+2g and 3f+2g."""
    G, L = d.G, d.L
    eps2 = small_params(G, field).eps2
    e, f, phi = _kepler(d)
    de_dL, de_dG = _eccentricity_partials(d, e)
    eta = d.eta
    c = d.H / G
    s2 = 1.0 - c * c
    a = 4.0 - 6.0 * s2
    g2 = 2.0 * d.g

    sin_f, cos_f = math.sin(f), math.cos(f)
    sin_1, cos_1 = math.sin(f + g2), math.cos(f + g2)
    sin_2, cos_2 = math.sin(2.0 * f + g2), math.cos(2.0 * f + g2)
    sin_3, cos_3 = math.sin(3.0 * f + g2), math.cos(3.0 * f + g2)

    periodic = 3.0 * e * sin_1 + 3.0 * sin_2 + e * sin_3
    t = a * (phi + e * sin_f) + s2 * periodic
    t_f = a * (1.0 + e * cos_f) + s2 * (3.0 * e * cos_1 + 6.0 * cos_2 + 3.0 * e * cos_3)
    t_e = a * sin_f + s2 * (3.0 * sin_1 + sin_3)
    t_g = s2 * (6.0 * e * cos_1 + 6.0 * cos_2 + 2.0 * e * cos_3)
    t_s2 = -6.0 * (phi + e * sin_f) + periodic

    df_dell = (1.0 + e * cos_f) ** 2 / eta ** 3
    df_de = sin_f * (2.0 + e * cos_f) / (eta * eta)
    t_de = t_f * df_de + t_e
    half = 0.5 * G * eps2

    d_ell = half * t_de * de_dL
    d_g = -1.5 * eps2 * t + half * (t_de * de_dG + t_s2 * 2.0 * c * c / G)
    d_h = -eps2 * c * t_s2
    d_L = -half * (t_f * df_dell - a)
    d_G = -half * t_g

    return CorrectionSet(DELAUNAY, (d_ell, d_g, d_h, d_L, d_G, 0.0), orientation, DELAUNAY)


def long_corrections_delaunay(d, field, orientation=DIRECT, tolerance=CRITICAL_TOL):
    """{rho, X1} in Delaunay variables."""
    G = d.G
    c = d.H / G
    critical_inclination_guard(c, tolerance)
    sp = small_params(G, field)
    eps2, eps3 = sp.eps2, sp.eps3
    e = d.eccentricity
    de_dL, de_dG = _eccentricity_partials(d, e)
    s2 = 1.0 - c * c
    s = math.sqrt(s2)
    if s == 0.0:
        raise exceptions.EquatorialDecompositionError("Delaunay corrections are singular for equatorial orbits")
    coefficient, dcoefficient = _long_coefficient(s2)

    sin_g, cos_g = math.sin(d.g), math.cos(d.g)
    sin_2g, cos_2g = math.sin(2.0 * d.g), math.cos(2.0 * d.g)

    g_eps2 = G * eps2
    g_eps3 = G * eps3
    e2_sin = e * e * sin_2g
    # dX1/de at fixed g and inclination
    dx_de = g_eps2 * coefficient * 2.0 * e * sin_2g + g_eps3 * s * cos_g

    d_ell = dx_de * de_dL
    d_g = (
        -3.0 * eps2 * coefficient * e2_sin
        + g_eps2 * dcoefficient * 2.0 * c * c / G * e2_sin
        + dx_de * de_dG
        - eps3 * s * e * cos_g
        + g_eps3 * c * c / (s * G) * e * cos_g
    )
    d_h = -g_eps2 * dcoefficient * 2.0 * c / G * e2_sin - g_eps3 * c / (s * G) * e * cos_g
    d_G = -(2.0 * g_eps2 * coefficient * e * e * cos_2g - g_eps3 * s * e * sin_g)

    return CorrectionSet(DELAUNAY, (d_ell, d_g, d_h, 0.0, d_G, 0.0), orientation, DELAUNAY)
