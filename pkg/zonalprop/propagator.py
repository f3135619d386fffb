"""Analytic ephemeris: osculating -> mean, secular advance, mean -> osculating.

Inverse corrections are evaluated at the osculating (then prime) state and
subtracted; direct corrections at the double-prime (then prime) state and
added. The mean state is carried in nonsingular elements throughout, so
equatorial and circular orbits take the same path as any other orbit.
"""
import math
import logging
from contextlib import contextmanager
from dataclasses import dataclass, replace
from typing import Optional

from . import exceptions
from .anomaly import projections
from .long_period import (
    CRITICAL_TOL, long_corrections_polar, long_corrections_nonsingular, long_corrections_low_inclination,
)
from .secular import secular_rates, keplerian_rates, propagate_mean_nonsingular
from .short_period import (
    DIRECT, INVERSE, POLAR_NODAL, NONSINGULAR, LOW_INCLINATION, FORMULATIONS,
    apply_correction, short_corrections_polar, short_corrections_nonsingular, short_corrections_low_inclination,
)
from .states import (
    CartesianState, NonsingularState, DelaunayState,
    cartesian_to_nonsingular, nonsingular_to_cartesian, nonsingular_to_polar, polar_to_nonsingular,
    polar_to_delaunay, delaunay_to_nonsingular,
)

logger = logging.getLogger(__name__)

AUTO = 'auto'
DISABLED = 'none'

SHORT_FORMS = {
    POLAR_NODAL: short_corrections_polar,
    NONSINGULAR: short_corrections_nonsingular,
    LOW_INCLINATION: short_corrections_low_inclination,
}


@dataclass(frozen=True)
class PropagatorOptions:
    short_period: bool = True
    long_period: bool = True
    secular: bool = True
    formulation: str = AUTO
    critical_tolerance: float = CRITICAL_TOL
    # None means |C20| of the field, i.e. an inclination of about 2 degrees for the Earth
    low_inclination_s2: Optional[float] = None
    equatorial_tolerance: float = 1e-3

    def __post_init__(self):
        if self.formulation not in FORMULATIONS + (AUTO,):
            raise exceptions.ConfigError(
                f"Unknown formulation '{self.formulation}', use one of {', '.join(FORMULATIONS + (AUTO,))}"
            )
        if self.critical_tolerance < 0 or self.equatorial_tolerance < 0:
            raise exceptions.ConfigError("Guard tolerances must be >= 0")
        if self.low_inclination_s2 is not None and self.low_inclination_s2 < 0:
            raise exceptions.ConfigError("low_inclination_s2 must be >= 0")


@dataclass(frozen=True)
class MeanState:
    """Double-prime state with the bookkeeping needed to reproduce it.

    ``delaunay`` is None for circular or near-equatorial mean orbits, where g
    and h are not defined.
    """
    ns: NonsingularState
    L: float
    G: float
    H: float
    delaunay: Optional[DelaunayState]
    chart: str
    short_formulation: str
    long_formulation: str


@contextmanager
def _stage(name):
    try:
        yield
    except exceptions.Error as e:
        if e.stage is None:
            e.stage = name
        raise


def resolve_formulation(ns, field, options):
    if options.formulation != AUTO:
        return options.formulation
    threshold = options.low_inclination_s2
    if threshold is None:
        threshold = abs(field.c20)
    return LOW_INCLINATION if ns.sine_squared < threshold else NONSINGULAR


def _long_form(formulation, state, field, orientation, options):
    if formulation == POLAR_NODAL:
        return long_corrections_polar(state, field, orientation, options.critical_tolerance)
    if formulation == NONSINGULAR:
        return long_corrections_nonsingular(state, field, orientation, options.critical_tolerance)
    return long_corrections_low_inclination(state, field, orientation)


def _correct(kind, ns, field, options, orientation):
    """Apply one correction stage to a nonsingular state, in the chosen formulation."""
    formulation = resolve_formulation(ns, field, options)
    logger.debug(f"{kind}-period {orientation} corrections, {formulation} form, {ns.chart} chart")

    if formulation == POLAR_NODAL:
        state = nonsingular_to_polar(ns, options.equatorial_tolerance)
    else:
        state = ns

    if kind == 'short':
        corr = SHORT_FORMS[formulation](state, field, orientation)
    else:
        corr = _long_form(formulation, state, field, orientation, options)
    corrected = apply_correction(state, corr)

    if formulation == POLAR_NODAL:
        corrected = polar_to_nonsingular(corrected, chart=ns.chart)
    return corrected, formulation


def reconcile(ns):
    """Put a corrected state back on xi^2 + chi^2 = 1 - (N/Theta)^2 keeping N.

    Where sin^2 I >= cos^2 I the (xi, chi) vector is rescaled, otherwise Theta
    is recomputed from N and xi^2 + chi^2.
    """
    c = ns.N / ns.Theta
    target = (1.0 - c) * (1.0 + c)
    current = ns.sine_squared

    if target >= c * c and current > 0.0:
        scale = math.sqrt(target / current)
        return replace(ns, xi=ns.xi * scale, chi=ns.chi * scale)
    if current >= 1.0:
        raise exceptions.DomainError(f"Corrected state has xi^2 + chi^2 = {current} >= 1")
    return replace(ns, Theta=abs(ns.N) / math.sqrt(1.0 - current))


def _mean_state(ns, field, options, short_formulation, long_formulation):
    proj = projections(ns.r, ns.R, ns.Theta, field.mu)
    G = ns.Theta
    delaunay = None
    if not proj.circular and math.sqrt(ns.sine_squared) > options.equatorial_tolerance:
        delaunay = polar_to_delaunay(nonsingular_to_polar(ns), field.mu)
    return MeanState(
        ns=ns, L=G / proj.eta, G=G, H=ns.N, delaunay=delaunay, chart=ns.chart,
        short_formulation=short_formulation, long_formulation=long_formulation,
    )


def osculating_to_mean(cart, field, options=None):
    options = options or PropagatorOptions()

    with _stage('cartesian-to-nonsingular'):
        ns = cartesian_to_nonsingular(cart, field.mu)

    short_formulation = long_formulation = DISABLED
    if options.short_period:
        with _stage('inverse-short-period'):
            ns, short_formulation = _correct('short', ns, field, options, INVERSE)
    if options.long_period:
        with _stage('inverse-long-period'):
            ns, long_formulation = _correct('long', ns, field, options, INVERSE)

    with _stage('mean-elements'):
        ns = reconcile(ns)
        return _mean_state(ns, field, options, short_formulation, long_formulation)


def _as_nonsingular(mean, mu):
    if isinstance(mean, MeanState):
        return mean.ns
    if isinstance(mean, DelaunayState):
        return delaunay_to_nonsingular(mean, mu)
    if isinstance(mean, NonsingularState):
        return mean
    raise exceptions.LayoutError(f"Cannot use a {type(mean).__name__} as a mean state")


def mean_to_osculating(mean, field, options=None):
    """Cartesian state of a mean state given as MeanState, DelaunayState or NonsingularState."""
    options = options or PropagatorOptions()

    with _stage('mean-to-nonsingular'):
        ns = _as_nonsingular(mean, field.mu)
    if options.long_period:
        with _stage('direct-long-period'):
            ns, _ = _correct('long', ns, field, options, DIRECT)
    if options.short_period:
        with _stage('direct-short-period'):
            ns, _ = _correct('short', ns, field, options, DIRECT)

    with _stage('nonsingular-to-cartesian'):
        return nonsingular_to_cartesian(reconcile(ns))


def mean_rates(mean, field, options=None):
    options = options or PropagatorOptions()
    with _stage('secular'):
        if options.secular:
            return secular_rates(mean.L, mean.G, mean.H, field)
        return keplerian_rates(mean.L, mean.G, mean.H, field.mu)


def advance(mean, rates, dt, field, options=None):
    """Mean state ``dt`` after ``mean``."""
    options = options or PropagatorOptions()
    with _stage('secular'):
        ns = propagate_mean_nonsingular(mean.ns, rates, dt, field.mu)
        return _mean_state(ns, field, options, mean.short_formulation, mean.long_formulation)


def mean_ephemeris(cart0, t0, ts, field, options=None):
    """(mean state, osculating Cartesian state) for every time in ``ts``."""
    options = options or PropagatorOptions()
    if not isinstance(cart0, CartesianState):
        raise exceptions.LayoutError(f"Initial state must be Cartesian, got {type(cart0).__name__}")

    mean0 = osculating_to_mean(cart0, field, options)
    rates = mean_rates(mean0, field, options)
    logger.debug(f"Mean rates: {rates}")

    results = []
    for t in ts:
        if not math.isfinite(t):
            raise exceptions.DomainError(f"Non-finite grid time {t}", stage='ephemeris')
        mean = advance(mean0, rates, t - t0, field, options)
        results.append((mean, mean_to_osculating(mean, field, options)))
    return results


def ephemeris(cart0, t0, ts, field, options=None):
    return [cart for _, cart in mean_ephemeris(cart0, t0, ts, field, options)]
