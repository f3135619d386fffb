import math
import textwrap

import numpy as np
import pytest

from zonalprop import config, exceptions, utils
from zonalprop.propagator import AUTO

config_file = "configs/earth.ini"


def write(tmpdir, text):
    path = f"{tmpdir}/run.ini"
    with open(path, 'w') as f:
        f.write(textwrap.dedent(text))
    return path


def test_defaults_match_earth_ini():
    assert config.load(config_file) == config.load()


def test_defaults():
    c = config.load()
    assert c.gravity.mu == 398600.4418
    assert c.model.model == 'j2j3'
    assert c.model.short_period is True
    assert c.guards.low_inclination_s2 is None
    assert c.compare.multipliers == [1.0, 0.5, 0.25, 0.125]
    assert c.benchmark.iterations == 1000


def test_partial_file_and_overrides(tmpdir):
    path = write(tmpdir, """\
    [model]
    model = j2
    long_period = off

    [guards]
    low_inclination_s2 = 1e-4
    """)
    c = config.load(path, {'duration': '120', 'long_period': 'yes', 'mu': None})
    assert c.model.model == 'j2'
    assert c.model.long_period is True
    assert c.guards.low_inclination_s2 == 1e-4
    assert c.time.duration == 120.0
    assert c.gravity.mu == 398600.4418


@pytest.mark.parametrize('text', [
    "[orbit]\na = 7000\n",
    "[gravity]\nj2 = 0.001\n",
    "[time]\nstep = fast\n",
    "[model]\nsecular = maybe\n",
    "not an ini file\n",
])
def test_bad_files(tmpdir, text):
    with pytest.raises(exceptions.ConfigError):
        config.load(write(tmpdir, text))


def test_bad_overrides():
    with pytest.raises(exceptions.ConfigError):
        config.load(overrides={'j2': '0.001'})
    with pytest.raises(exceptions.ConfigError) as ex:
        config.load(overrides={'iterations': '1.5'})
    assert '[benchmark] iterations' in str(ex.value)


def test_missing_file(tmpdir):
    with pytest.raises(exceptions.ConfigError):
        config.load(f"{tmpdir}/missing.ini")


def test_builders():
    c = config.load(overrides={'model': 'j2', 'formulation': 'nonsingular', 'critical_tolerance': '0.01'})
    field = config.gravity_field(c)
    assert field.c30 == 0.0
    assert field.c20 == c.gravity.c20

    options = config.propagator_options(c)
    assert options.formulation == 'nonsingular'
    assert options.critical_tolerance == 0.01

    cart = config.initial_state(c)
    assert cart.x == 6650.0
    # the default state is the a = 7000 km, e = 0.05, i = 30 deg LEO at perigee
    assert math.degrees(math.atan2(cart.Z, cart.Y)) == pytest.approx(30.0, abs=1e-5)
    assert config.propagator_options(config.load()).formulation == AUTO


def test_bad_gravity():
    with pytest.raises(exceptions.ConfigError):
        config.gravity_field(config.load(overrides={'mu': '-1'}))
    with pytest.raises(exceptions.ConfigError):
        config.gravity_field(config.load(overrides={'model': 'j4'}))


def test_parsers():
    assert config.parse_bool('Yes') is True
    assert config.parse_bool('0') is False
    assert config.parse_bool(False) is False
    assert config.parse_optional_float('auto') is None
    assert config.parse_optional_float('') is None
    assert config.parse_optional_float('2.5') == 2.5
    with pytest.raises(exceptions.ConfigError):
        config.parse_bool('perhaps')


def test_wrap_angle():
    assert utils.wrap_angle(math.pi) == math.pi
    assert utils.wrap_angle(-math.pi) == pytest.approx(math.pi)
    assert utils.wrap_angle(3.0 * math.pi / 2.0) == pytest.approx(-math.pi / 2.0)
    assert utils.wrap_angle(-7.0) == pytest.approx(-7.0 + 2.0 * math.pi)


def test_loglog_slope():
    xs = [1.0, 0.5, 0.25, 0.125]
    assert utils.loglog_slope(xs, [3.0 * x ** 2 for x in xs]) == pytest.approx(2.0)
    assert utils.loglog_slope(xs, [0.0, 1.0, 1.0, 1.0]) is None


def test_time_grid():
    np.testing.assert_array_equal(utils.time_grid(10.0, 0.0, 60.0), [10.0])
    np.testing.assert_array_equal(utils.time_grid(0.0, 180.0, 60.0), [0.0, 60.0, 120.0, 180.0])
    np.testing.assert_array_equal(utils.time_grid(0.0, 170.0, 60.0), [0.0, 60.0, 120.0])
    with pytest.raises(exceptions.ConfigError):
        utils.time_grid(0.0, -1.0, 60.0)
    with pytest.raises(exceptions.ConfigError):
        utils.time_grid(0.0, 60.0, 0.0)


def test_number_helpers():
    assert float(utils.format_number(0.1 + 0.2)) == 0.1 + 0.2
    assert utils.parse_float_list("1, 0.5,0.25") == [1.0, 0.5, 0.25]
    assert utils.parse_float_list((1, 2)) == [1.0, 2.0]
    with pytest.raises(exceptions.ConfigError):
        utils.parse_float_list("1, half")
    assert utils.relative_difference([1.0, 2.0], [1.0, 2.0 + 2e-12]) == pytest.approx(1e-12)
    with pytest.raises(exceptions.DomainError):
        utils.check_finite(1.0, float('inf'))
