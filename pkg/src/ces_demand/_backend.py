"""Kernel backend selection.

The hot norm kernels exist twice: a compiled Cython extension
(``_kernels_cy``) and a pure-Python mirror (``_kernels_py``).  At import the
compiled one is picked when built; set ``CES_DEMAND_BACKEND=python`` (or
``compiled`` / ``auto``) to override.  ``use_backend`` swaps the active
backend temporarily, which the benchmark and the cross-backend tests rely on.
"""

import os
from contextlib import contextmanager

from . import _kernels_py

try:
    from . import _kernels_cy
except ImportError:
    _kernels_cy = None

_BACKENDS = {"python": _kernels_py}
if _kernels_cy is not None:
    _BACKENDS["compiled"] = _kernels_cy


def available_backends():
    return tuple(sorted(_BACKENDS))


def load_backend(name):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise KeyError(
            f"backend {name!r} not available; have {available_backends()}"
        ) from None


def _default():
    choice = os.environ.get("CES_DEMAND_BACKEND", "auto").lower()
    if choice == "auto":
        return _BACKENDS.get("compiled", _kernels_py)
    if choice in _BACKENDS:
        return _BACKENDS[choice]
    raise ImportError(
        f"CES_DEMAND_BACKEND={choice!r} is not available; "
        f"options: auto, {', '.join(available_backends())}"
    )


kernels = _default()


def backend_name():
    """Name of the active kernel backend ('compiled' or 'python')."""
    return kernels.NAME


@contextmanager
def use_backend(name):
    """Temporarily route all norm evaluations through the named backend."""
    global kernels
    previous = kernels
    kernels = load_backend(name)
    try:
        yield kernels
    finally:
        kernels = previous
