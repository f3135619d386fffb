"""Cost of evaluating the periodic corrections in nonsingular vs Delaunay variables.

The nonsingular forms need the equation of the center only, through two
arctangents, while the Delaunay series need Kepler's equation and the sines
and cosines of f, f + 2g, 2f + 2g, 3f + 2g (or g, 2g). Both the wall time and
the number of calls into ``math`` transcendental functions are measured.
"""
import math
import logging
from collections import Counter
from contextlib import contextmanager
from functools import wraps
from timeit import default_timer

import numpy as np

from . import exceptions
from .gravity import critical_factor
from .long_period import long_corrections_nonsingular
from .oracle import short_corrections_delaunay, long_corrections_delaunay
from .short_period import short_corrections_nonsingular
from .states import DelaunayState, delaunay_to_nonsingular

logger = logging.getLogger(__name__)

TRANSCENDENTALS = ('sin', 'cos', 'tan', 'asin', 'acos', 'atan', 'atan2', 'exp', 'log')

PATHS = {
    'nonsingular-short': lambda d, ns, field: short_corrections_nonsingular(ns, field),
    'delaunay-short': lambda d, ns, field: short_corrections_delaunay(d, field),
    'nonsingular-long': lambda d, ns, field: long_corrections_nonsingular(ns, field),
    'delaunay-long': lambda d, ns, field: long_corrections_delaunay(d, field),
}


@contextmanager
def count_transcendentals():
    """Count calls into the transcendental functions of ``math`` while active."""
    counts = Counter()
    originals = {name: getattr(math, name) for name in TRANSCENDENTALS}

    def counting(name, function):
        @wraps(function)
        def wrapper(*args):
            counts[name] += 1
            return function(*args)
        return wrapper

    try:
        for name, function in originals.items():
            setattr(math, name, counting(name, function))
        yield counts
    finally:
        for name, function in originals.items():
            setattr(math, name, function)


def random_states(field, count, seed=0, critical_margin=0.05):
    """Seeded (DelaunayState, NonsingularState) pairs of eccentric, inclined orbits away from the critical band."""
    if count < 1:
        raise exceptions.ConfigError(f"Need at least one benchmark state, got {count}")
    rng = np.random.default_rng(seed)
    states = []
    while len(states) < count:
        a = rng.uniform(1.1, 4.0) * field.alpha
        e = rng.uniform(0.01, 0.3)
        c = math.cos(math.radians(rng.uniform(5.0, 175.0)))
        if abs(critical_factor(c)) < critical_margin:
            continue
        ell, g, h = rng.uniform(-math.pi, math.pi, 3)
        L = math.sqrt(field.mu * a)
        G = L * math.sqrt(1.0 - e * e)
        d = DelaunayState(ell=ell, g=g, h=h, L=L, G=G, H=G * c)
        states.append((d, delaunay_to_nonsingular(d, field.mu)))
    return states


def run(field, iterations, count=20, seed=0):
    """Benchmark report: per-evaluation call counts and (for iterations > 0) wall times."""
    if iterations < 0:
        raise exceptions.ConfigError(f"iterations must be >= 0, got {iterations}")

    states = random_states(field, count, seed)
    report = {'iterations': iterations, 'states': count, 'seed': seed, 'counts': {}, 'timing': {}}

    for name, path in PATHS.items():
        with count_transcendentals() as counts:
            for d, ns in states:
                path(d, ns, field)
        report['counts'][name] = {
            'per_evaluation': sum(counts.values()) / count,
            'by_function': {key: counts[key] / count for key in sorted(counts)},
        }

    if iterations:
        for name, path in PATHS.items():
            start = default_timer()
            for _ in range(iterations):
                for d, ns in states:
                    path(d, ns, field)
            elapsed = default_timer() - start
            evaluations = iterations * count
            report['timing'][name] = {
                'total_seconds': elapsed,
                'per_evaluation_seconds': elapsed / evaluations,
            }
            logger.debug(f"{name}: {elapsed / evaluations * 1e6:.3f} us per evaluation")

    return report
