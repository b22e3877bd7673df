"""Compilation switch for the numeric kernels.

Kernels in :mod:`pcageom.kernels` are written once in numpy style and
compiled with numba when it is available.  Setting the environment
variable ``PCAGEOM_DISABLE_NUMBA`` to ``1`` (or ``true``/``yes``/``on``)
before import selects the plain-Python path instead; the same happens
automatically when numba is not installed.  Either way the decorated
functions keep identical signatures and results, only their speed
differs.
"""

from __future__ import annotations

import os

__all__ = ["njit", "NUMBA_ENABLED", "DISABLE_ENV_VAR"]

DISABLE_ENV_VAR = "PCAGEOM_DISABLE_NUMBA"


def _disabled_by_env() -> bool:
    return os.environ.get(DISABLE_ENV_VAR, "").strip().lower() in {"1", "true", "yes", "on"}


NUMBA_ENABLED = False

if not _disabled_by_env():
    try:
        from numba import njit as _numba_njit

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False

if NUMBA_ENABLED:
    njit = _numba_njit
else:

    def njit(*args, **kwargs):
        """Signature-compatible stand-in that returns the function unchanged."""

        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap
