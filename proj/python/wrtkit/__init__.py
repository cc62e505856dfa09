"""Windowed ray transform: forward model, four inversions, calibration."""

import json

import numpy as np

from . import _wrtkit
from ._wrtkit import InvalidArgument, NumericalError

__all__ = [
    "InvalidArgument",
    "NumericalError",
    "sample_phantom",
    "window_eval",
    "window_ft",
    "forward",
    "ray",
    "invert",
    "calibrate",
    "rel_l2_error",
    "write_gf1",
    "read_gf1",
    "selftest",
]


def _spec(x):
    return x if isinstance(x, str) else json.dumps(x)


def _window(w):
    if isinstance(w, str) and not w.lstrip().startswith("{"):
        return json.dumps({"kind": w})
    return _spec(w)


def sample_phantom(spec, size=64, extent=8.0, center=()):
    return _wrtkit.sample_phantom(_spec(spec), size, extent, list(center))


def window_eval(window, t):
    return np.asarray(_wrtkit.window_eval(_window(window), np.atleast_1d(t).astype(float).tolist()))


def window_ft(window, eta):
    return np.asarray(_wrtkit.window_ft(_window(window), np.atleast_1d(eta).astype(float).tolist()))


def forward(spec, window, vset, size=64, extent=8.0):
    """P_h f on a size^n u-grid; rows are u (C order), columns are the v-set."""
    return _wrtkit.forward(_spec(spec), _window(window), size, extent, _spec(vset))


def ray(spec, window, u, v):
    return _wrtkit.ray(_spec(spec), _window(window), list(u), list(v))


def invert(method, spec, window, size=64, extent=8.0, **params):
    return _wrtkit.invert(method, _spec(spec), _window(window), size, extent, params)


def calibrate(method, window="gaussian", size=32, extent=8.0):
    return _wrtkit.calibrate(method, _window(window), size, extent)


def rel_l2_error(a, b):
    return _wrtkit.rel_l2_error(np.ascontiguousarray(a, dtype=float), np.ascontiguousarray(b, dtype=float))


def write_gf1(path, values, extent):
    _wrtkit.write_gf1(str(path), np.asarray(values, dtype=float), extent)


def read_gf1(path):
    return _wrtkit.read_gf1(str(path))


def selftest(seed=1):
    return _wrtkit.selftest(seed)
