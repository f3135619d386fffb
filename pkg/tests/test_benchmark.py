import math

import pytest

from zonalprop import benchmark, exceptions


def test_count_transcendentals_restores_math():
    sin = math.sin
    with benchmark.count_transcendentals() as counts:
        math.sin(1.0)
        math.atan2(1.0, 2.0)
        math.sqrt(2.0)
    assert counts['sin'] == 1
    assert counts['atan2'] == 1
    assert 'sqrt' not in counts
    assert math.sin is sin


def test_count_transcendentals_restores_on_error():
    cos = math.cos
    with pytest.raises(ZeroDivisionError):
        with benchmark.count_transcendentals():
            1 / 0
    assert math.cos is cos


def test_random_states(earth):
    states = benchmark.random_states(earth, 10, seed=3)
    assert len(states) == 10
    assert states == benchmark.random_states(earth, 10, seed=3)
    for d, ns in states:
        assert d.H == ns.N
        assert abs(1.0 - 5.0 * (d.H / d.G) ** 2) >= 0.05

    with pytest.raises(exceptions.ConfigError):
        benchmark.random_states(earth, 0)


def test_nonsingular_short_path_is_cheaper(earth):
    report = benchmark.run(earth, 0, count=10)
    counts = report['counts']
    assert set(counts) == set(benchmark.PATHS)
    assert counts['nonsingular-short']['per_evaluation'] < counts['delaunay-short']['per_evaluation']
    assert counts['nonsingular-short']['by_function'].get('atan2', 0) > 0
    assert 'sin' in counts['delaunay-short']['by_function']


def test_report_layout(earth):
    report = benchmark.run(earth, 0, count=5, seed=7)
    assert report['timing'] == {}
    assert (report['iterations'], report['states'], report['seed']) == (0, 5, 7)
    assert report['counts'] == benchmark.run(earth, 0, count=5, seed=7)['counts']

    timed = benchmark.run(earth, 2, count=3)
    for name in benchmark.PATHS:
        assert timed['timing'][name]['total_seconds'] >= 0.0
        assert timed['timing'][name]['per_evaluation_seconds'] == pytest.approx(
            timed['timing'][name]['total_seconds'] / 6.0
        )


def test_negative_iterations(earth):
    with pytest.raises(exceptions.ConfigError):
        benchmark.run(earth, -1)
