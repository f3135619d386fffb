import os
import sys
import csv
import json
import logging
import textwrap
import argparse

import numpy as np
import jmespath
from jmespath.exceptions import JMESPathError

from . import (exceptions, utils, config as configuration, oracle, benchmark, propagator)

__author__ = """Lars Solberg"""
__email__ = 'lars.solberg@gmail.com'
__version__ = '0.1.0'

if sys.version_info[0:2] < (3, 7):
    raise Exception('You need at least python 3.7')

EPHEMERIS_COLUMNS = ('t', 'x', 'y', 'z', 'X', 'Y', 'Z')
MEAN_COLUMNS = ('psi', 'xi', 'chi', 'r', 'R', 'Theta', 'L', 'G', 'H')

EXIT_ERROR = 1
EXIT_CRITICAL_INCLINATION = 2

setattr(logging, 'VERBOSE', 15)


# Logging that sends info, verbose and debug to stdout, and warning or greater to stderr
# https://stackoverflow.com/a/16066513/452081
class InfoFilter(logging.Filter):
    def filter(self, rec):
        return rec.levelno in (logging.DEBUG, logging.VERBOSE, logging.INFO)


class Logger(logging.Logger):
    def __init__(self, name, level=logging.NOTSET):
        super().__init__(name, level)

        logging.addLevelName(logging.VERBOSE, "VERBOSE")

    def verbose(self, msg, *args, **kwargs):
        if self.isEnabledFor(logging.VERBOSE):
            self._log(logging.VERBOSE, msg, args, **kwargs)


# Registered with the logging manager, so the zonalprop.* module loggers propagate here
logging.setLoggerClass(Logger)
logger = logging.getLogger("zonalprop")
logging.setLoggerClass(logging.Logger)

h1 = logging.StreamHandler(sys.stdout)
h1.setLevel(logging.DEBUG)
h1.addFilter(InfoFilter())
logger.addHandler(h1)

h2 = logging.StreamHandler()
h2.setLevel(logging.WARNING)
logger.addHandler(h2)

logger.propagate = False

# Default
logger.setLevel(logging.INFO)

_json_output = False


def configure(*, output=None):
    if output is not None:
        global _json_output
        _json_output = False
        logger.disabled = False

        if output == "DEBUG" or os.environ.get("DEBUG"):
            logger.setLevel(logging.DEBUG)
        elif output == "VERBOSE" or os.environ.get("VERBOSE"):
            logger.setLevel(logging.VERBOSE)
        elif output == "INFO":
            logger.setLevel(logging.INFO)
        elif output == "JSON":
            _json_output = True
        elif output == "QUIET":
            logger.disabled = True
        else:
            raise exceptions.ConfigError(f'Invalid output option: {output}')


def log(text, loglevel='info', category='general', data=None):
    if _json_output:
        data = data or {}

        data['_category'] = category
        data['_loglevel'] = loglevel
        data['_text'] = str(text)
        getattr(logger, loglevel)(json.dumps(data))
    else:
        getattr(logger, loglevel)(text)


def _open_output(path):
    try:
        return open(path, 'w', newline='')
    except OSError as e:
        raise exceptions.Error(f"Unable to write {path}: {e}")


def _write_report(report, path):
    with _open_output(path) as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write('\n')
    log(f"Wrote report: {path}", loglevel='verbose')


def _query(report, expression):
    if expression:
        try:
            result = jmespath.search(expression, report)
        except JMESPathError as e:
            raise exceptions.ConfigError(f"Invalid query '{expression}': {e}")
        log(json.dumps(result, sort_keys=True), category='query', data={'query': expression, 'result': result})
    return report


def _mean_row(mean):
    ns = mean.ns
    return [ns.psi, ns.xi, ns.chi, ns.r, ns.R, ns.Theta, mean.L, mean.G, mean.H]


def run_propagate(config):
    """Write the analytic ephemeris of ``config`` as CSV; returns the output path."""
    field = configuration.gravity_field(config)
    options = configuration.propagator_options(config)
    cart0 = configuration.initial_state(config)
    ts = utils.time_grid(config.time.epoch, config.time.duration, config.time.step)
    log(f"Propagating {len(ts)} epochs with the {config.model.model} model", loglevel='verbose')

    rows = propagator.mean_ephemeris(cart0, config.time.epoch, ts, field, options)
    mean_elements = config.output.mean_elements

    path = config.output.ephemeris
    with _open_output(path) as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(EPHEMERIS_COLUMNS + (MEAN_COLUMNS if mean_elements else ()))
        for t, (mean, cart) in zip(ts, rows):
            values = [t, *cart.as_array()]
            if mean_elements:
                values += _mean_row(mean)
            writer.writerow([utils.format_number(float(v)) for v in values])

    log(f"Wrote {len(ts)} epochs to {path}", category='propagate', data={'path': path, 'epochs': len(ts)})
    return path


def _errors(analytic, reference):
    position = [float(np.linalg.norm(a.position - b.position)) for a, b in zip(analytic, reference)]
    velocity = [float(np.linalg.norm(a.velocity - b.velocity)) for a, b in zip(analytic, reference)]
    return position, velocity


def _rms(values):
    return float(np.sqrt(np.mean(np.square(values))))


def compare(cart0, t0, ts, field, options, multipliers, tolerance):
    """Analytic vs numerical ephemeris, with the J2-inflation scaling table (J3 switched off there)."""
    analytic = propagator.ephemeris(cart0, t0, ts, field, options)
    reference = oracle.integrate_grid(cart0, t0, ts, field, tolerance)
    position, velocity = _errors(analytic, reference)

    scaling = {'multipliers': list(multipliers), 'position_rms': [], 'round_trip': []}
    j2_field = field.for_model('j2')
    for multiplier in multipliers:
        inflated = j2_field.inflated(multiplier)
        a_states = propagator.ephemeris(cart0, t0, ts, inflated, options)
        r_states = oracle.integrate_grid(cart0, t0, ts, inflated, tolerance)
        scaling['position_rms'].append(_rms(_errors(a_states, r_states)[0]))

        mean = propagator.osculating_to_mean(cart0, inflated, options)
        back = propagator.mean_to_osculating(mean, inflated, options)
        scaling['round_trip'].append(float(np.linalg.norm(back.position - cart0.position)))

    scaling['position_slope'] = utils.loglog_slope(multipliers, scaling['position_rms'])
    scaling['round_trip_slope'] = utils.loglog_slope(multipliers, scaling['round_trip'])

    return {
        'epochs': [
            {'t': float(t), 'position_error': p, 'velocity_error': v}
            for t, p, v in zip(ts, position, velocity)
        ],
        'position_rms': _rms(position),
        'position_max': max(position),
        'velocity_rms': _rms(velocity),
        'velocity_max': max(velocity),
        'position_relative': utils.relative_difference(
            [a.position for a in analytic], [b.position for b in reference]
        ),
        'scaling': scaling,
    }


def run_compare(config, query=None):
    field = configuration.gravity_field(config)
    options = configuration.propagator_options(config)
    cart0 = configuration.initial_state(config)
    ts = utils.time_grid(config.time.epoch, config.time.duration, config.time.step)

    report = compare(
        cart0, config.time.epoch, ts, field, options,
        list(config.compare.multipliers), config.integrator.tolerance,
    )
    report['model'] = config.model.model
    report['formulation'] = config.model.formulation

    log(
        f"Position error rms {report['position_rms']:.6g} km, max {report['position_max']:.6g} km",
        category='compare',
        data={'position_rms': report['position_rms'], 'position_max': report['position_max']},
    )
    _write_report(report, config.output.report)
    return _query(report, query)


def run_benchmark(config, query=None):
    field = configuration.gravity_field(config)
    report = benchmark.run(field, config.benchmark.iterations, config.benchmark.states, config.benchmark.seed)

    for name, counts in report['counts'].items():
        log(f"{name}: {counts['per_evaluation']:g} transcendental calls per evaluation", loglevel='verbose')
    _write_report(report, config.output.report)
    return _query(report, query)


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with EXIT_ERROR; status 2 is kept for critical-inclination rejections."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _config_flags(parser):
    group = parser.add_argument_group(
        "config overrides",
        "Every config key has a flag of the same name; flags override the config file."
    )
    for section, keys in configuration.SCHEMA.items():
        for key, (parse, default) in keys.items():
            name = key.replace('_', '-')
            if parse is configuration.parse_bool:
                # switches take no value, so they never swallow the CONFIG positional
                group.add_argument(
                    f"--{name}", dest=key, action="store_const", const=True, default=None,
                    help=f"[{section}] {key} (default: {'yes' if default else 'no'})",
                )
                group.add_argument(
                    f"--no-{name}", dest=key, action="store_const", const=False, default=None,
                    help=f"Disable [{section}] {key}",
                )
            else:
                group.add_argument(f"--{name}", dest=key, default=None, help=f"[{section}] {key} (default: {default})")


def main(known_args=None, reraise=False):
    # known_args lets tests (or scripts) run the cli without a subprocess

    parser = ArgumentParser(
        description="Analytic J2/J3 zonal orbit propagation in nonsingular variables"
    )

    logoptions = parser.add_mutually_exclusive_group()
    logoptions.add_argument(
        "--debug",
        action="store_true",
        help="Print debug-info about what we are doing",
    )
    logoptions.add_argument(
        "--verbose",
        action="store_true",
        help="Print extra info about what we are doing",
    )
    logoptions.add_argument(
        "--quiet",
        action="store_true",
        help="Print no outputs",
    )

    parser.add_argument(
        "--json-output",
        action="store_true",
        help="Output in json-format (1 entry per line).",
    )

    subparsers = parser.add_subparsers(dest="cmd")
    subparsers.required = True

    # propagate
    parser_propagate = subparsers.add_parser(
        "propagate", help="Write the analytic ephemeris as CSV", formatter_class=argparse.RawTextHelpFormatter
    )
    parser_propagate.add_argument(
        "--output",
        dest="ephemeris",
        default=None,
        metavar='PATH',
        help=textwrap.dedent("""\
        Ephemeris file. Columns t,x,y,z,X,Y,Z with 17 significant digits, followed by
        the mean elements psi,xi,chi,r,R,Theta,L,G,H when --mean-elements is given."""),
    )

    # compare
    parser_compare = subparsers.add_parser(
        "compare", help="Compare the analytic ephemeris against numerical integration"
    )
    parser_compare.add_argument("--query", default=None, help="jmespath expression to print from the report")

    # benchmark
    parser_benchmark = subparsers.add_parser(
        "benchmark", help="Time and count the correction evaluations in nonsingular and Delaunay variables"
    )
    parser_benchmark.add_argument("--query", default=None, help="jmespath expression to print from the report")

    for sub in (parser_propagate, parser_compare, parser_benchmark):
        sub.add_argument("config", nargs='?', default=None, help="INI config file (default: built-in Earth values)")
        _config_flags(sub)

    args = parser.parse_args(known_args)

    if args.verbose or os.environ.get("VERBOSE"):
        configure(output='VERBOSE')

    if args.debug or os.environ.get("DEBUG"):
        configure(output='DEBUG')

    if args.json_output:
        configure(output='JSON')

    if args.quiet or os.environ.get("QUIET"):
        configure(output='QUIET')

    overrides = {key: getattr(args, key, None) for key in configuration.KEY_SECTION}

    try:
        config = configuration.load(args.config, overrides)
        if args.cmd == 'propagate':
            run_propagate(config)
        elif args.cmd == 'compare':
            run_compare(config, args.query)
        elif args.cmd == 'benchmark':
            run_benchmark(config, args.query)
    except exceptions.CriticalInclinationError as e:
        log(e, loglevel='error', category='critical-inclination')
        if reraise:
            raise
        sys.exit(EXIT_CRITICAL_INCLINATION)
    except exceptions.Error as e:
        log(e, loglevel='error', category='exception')
        if reraise:
            raise
        sys.exit(EXIT_ERROR)


if __name__ == "__main__":  # pragma: no cover
    main()  # pragma: no cover
