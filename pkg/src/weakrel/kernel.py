"""Closure kernel selection.

The compiled kernel is used when it imported and every bound is an integer;
otherwise (rationals, huge integers, missing extension, or
``WEAKREL_PURE_PYTHON=1``) the pure-Python kernel runs.
"""

import os

from ._dbm_py import floyd_warshall as floyd_warshall_python

try:
    from ._dbm import floyd_warshall as floyd_warshall_native
except ImportError:  # extension not built
    floyd_warshall_native = None

FORCE_PYTHON = os.environ.get("WEAKREL_PURE_PYTHON", "") not in ("", "0")


def have_native() -> bool:
    return floyd_warshall_native is not None


def floyd_warshall(ub, n):
    if floyd_warshall_native is not None and not FORCE_PYTHON:
        if all(v is None or type(v) is int for v in ub):
            try:
                return floyd_warshall_native(ub, n)
            except OverflowError:
                pass
    return floyd_warshall_python(ub, n)
