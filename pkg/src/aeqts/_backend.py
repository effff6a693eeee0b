"""Kernel backend selection.

``AEQTS_BACKEND=numpy`` forces the pure-numpy kernels; ``numba`` (the
default) uses the compiled ones and falls back to numpy with a warning when
numba cannot be imported.
"""

import importlib
import os
import warnings
from contextlib import contextmanager

ENV_VAR = "AEQTS_BACKEND"
BACKENDS = ("numba", "numpy")

_loaded = {}
_active = None


def _load(name):
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    if name not in _loaded:
        _loaded[name] = importlib.import_module(f"aeqts._kernels_{name}")
    return _loaded[name]


def available(name):
    try:
        _load(name)
    except ImportError:
        return False
    return True


def _initial():
    wanted = os.environ.get(ENV_VAR, "numba").strip().lower() or "numba"
    if wanted == "numba" and not available("numba"):
        warnings.warn("numba unavailable, using numpy kernels", RuntimeWarning)
        return "numpy"
    _load(wanted)
    return wanted


def active():
    global _active
    if _active is None:
        _active = _initial()
    return _active


def kernels():
    return _load(active())


def set_backend(name):
    global _active
    _load(name)
    _active = name


@contextmanager
def use_backend(name):
    previous = active()
    set_backend(name)
    try:
        yield _load(name)
    finally:
        set_backend(previous)
