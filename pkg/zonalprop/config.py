"""Run configuration: an INI file, overridden by command-line flags, exposed as a Box."""
import os
import logging
import configparser

from box import Box

from . import exceptions
from .gravity import GravityField
from .propagator import PropagatorOptions
from .states import CartesianState
from .utils import parse_float_list

logger = logging.getLogger(__name__)

_BOOLEANS = configparser.ConfigParser.BOOLEAN_STATES


def parse_bool(value):
    if isinstance(value, bool):
        return value
    try:
        return _BOOLEANS[str(value).strip().lower()]
    except KeyError:
        raise exceptions.ConfigError(f"Expected a boolean (yes/no, true/false, on/off, 1/0), got: {value}")


def parse_optional_float(value):
    if value is None or str(value).strip().lower() in ('', 'auto', 'none'):
        return None
    return float(value)


# section -> key -> (parser, default). Defaults are the values of configs/earth.ini
SCHEMA = {
    'gravity': {
        'mu': (float, 398600.4418),
        'alpha': (float, 6378.137),
        'c20': (float, -1.08262668e-3),
        'c30': (float, 2.53265648e-6),
    },
    'state': {
        'x': (float, 6650.0),
        'y': (float, 0.0),
        'z': (float, 0.0),
        'vx': (float, 0.0),
        'vy': (float, 6.870423),
        'vz': (float, 3.966640),
    },
    'time': {
        'epoch': (float, 0.0),
        'duration': (float, 5828.5),
        'step': (float, 60.0),
    },
    'model': {
        'model': (str, 'j2j3'),
        'short_period': (parse_bool, True),
        'long_period': (parse_bool, True),
        'secular': (parse_bool, True),
        'formulation': (str, 'auto'),
    },
    'guards': {
        'critical_tolerance': (float, 1e-3),
        'low_inclination_s2': (parse_optional_float, None),
        'equatorial_tolerance': (float, 1e-3),
    },
    'integrator': {
        'tolerance': (float, 1e-12),
    },
    'output': {
        'ephemeris': (str, 'ephemeris.csv'),
        'report': (str, 'report.json'),
        'mean_elements': (parse_bool, False),
    },
    'benchmark': {
        'iterations': (int, 1000),
        'states': (int, 20),
        'seed': (int, 0),
    },
    'compare': {
        'multipliers': (parse_float_list, [1.0, 0.5, 0.25, 0.125]),
    },
}

# every key is unique across sections, so flags can use the bare key name
KEY_SECTION = {key: section for section, keys in SCHEMA.items() for key in keys}


def _convert(section, key, value):
    parser, _ = SCHEMA[section][key]
    try:
        return parser(value)
    except exceptions.ConfigError as e:
        raise exceptions.ConfigError(f"[{section}] {key}: {e}")
    except (TypeError, ValueError):
        raise exceptions.ConfigError(f"[{section}] {key}: invalid value '{value}'")


def defaults():
    return Box({section: {key: default for key, (_, default) in keys.items()} for section, keys in SCHEMA.items()})


def load(path=None, overrides=None):
    """Read ``path`` (optional) on top of the defaults, then apply ``overrides`` (flat key -> value)."""
    config = defaults()

    if path is not None:
        if not os.path.isfile(path):
            raise exceptions.ConfigError(f"Unable to find config file: {path}")
        parser = configparser.ConfigParser()
        try:
            parser.read(path)
        except configparser.Error as e:
            raise exceptions.ConfigError(f"Unable to parse {path}: {e}")

        for section in parser.sections():
            if section not in SCHEMA:
                raise exceptions.ConfigError(f"Unknown section [{section}] in {path}")
            for key, value in parser.items(section):
                if key not in SCHEMA[section]:
                    raise exceptions.ConfigError(f"Unknown key '{key}' in section [{section}] of {path}")
                config[section][key] = _convert(section, key, value)
        logger.debug(f"Loaded config from {path}")

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in KEY_SECTION:
            raise exceptions.ConfigError(f"Unknown config key '{key}'")
        section = KEY_SECTION[key]
        config[section][key] = _convert(section, key, value)

    return config


def gravity_field(config):
    try:
        field = GravityField(**config.gravity)
    except exceptions.DomainError as e:
        raise exceptions.ConfigError(f"[gravity] {e}")
    return field.for_model(config.model.model)


def initial_state(config):
    s = config.state
    return CartesianState(s.x, s.y, s.z, s.vx, s.vy, s.vz)


def propagator_options(config):
    return PropagatorOptions(
        short_period=config.model.short_period,
        long_period=config.model.long_period,
        secular=config.model.secular,
        formulation=config.model.formulation,
        critical_tolerance=config.guards.critical_tolerance,
        low_inclination_s2=config.guards.low_inclination_s2,
        equatorial_tolerance=config.guards.equatorial_tolerance,
    )
