import math
import logging

import numpy as np

from . import exceptions

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def wrap_angle(angle):
    """Reduce an angle to (-pi, pi]."""
    wrapped = math.fmod(angle, TWO_PI)
    if wrapped > math.pi:
        wrapped -= TWO_PI
    elif wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


def check_finite(*values, what="input"):
    for value in values:
        if not math.isfinite(value):
            raise exceptions.DomainError(f"Non-finite {what}: {values}")


def relative_difference(a, b, floor=0.0):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = max(float(np.max(np.abs(b))), floor)
    if scale == 0.0:
        return float(np.max(np.abs(a - b)))
    return float(np.max(np.abs(a - b))) / scale


def loglog_slope(xs, ys):
    """Least-squares slope of log(ys) against log(xs)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        return None
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


def format_number(value):
    # 17 significant digits survive a text round trip of a binary double
    return f"{value:.17g}"


def parse_float_list(value):
    if isinstance(value, (list, tuple)):
        return [float(i) for i in value]
    try:
        return [float(i) for i in str(value).replace(' ', '').split(',') if i]
    except ValueError:
        raise exceptions.ConfigError(f"Expected a comma separated list of numbers, got: {value}")


def time_grid(epoch, duration, step):
    """Output epochs from epoch to epoch+duration, both ends included when reachable."""
    if duration < 0:
        raise exceptions.ConfigError(f"duration must be >= 0, got {duration}")
    if duration == 0:
        return np.array([float(epoch)])
    if step <= 0:
        raise exceptions.ConfigError(f"step must be > 0, got {step}")

    count = int(math.floor(duration / step + 1e-9)) + 1
    return epoch + step * np.arange(count, dtype=float)
