"""Backend selection for the hot kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python ``_purekernels`` module. Setting ``HOOKDET_PURE_PYTHON=1`` forces
the fallback. Callers go through this module's attributes, so ``use_backend``
switches every caller at once (the benchmark relies on that).
"""

import importlib
import os

from hookdet import _purekernels

_NAMES = ("mono_mul", "add_terms", "addmul_into", "mul_terms", "strip_zeros",
          "bareiss_det", "vd_search", "eval_terms")


def _load_compiled():
    try:
        return importlib.import_module("hookdet._speedups")
    except ImportError:
        return None


_compiled = _load_compiled()


def available_backends():
    names = ["python"]
    if _compiled is not None:
        names.append("cython")
    return names


def backend_module(name):
    if name == "python":
        return _purekernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled hookdet._speedups extension is not built")
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def use_backend(name):
    global BACKEND
    mod = backend_module(name)
    g = globals()
    for n in _NAMES:
        g[n] = getattr(mod, n)
    BACKEND = mod.BACKEND


BACKEND = "python"
if _compiled is not None and not os.environ.get("HOOKDET_PURE_PYTHON"):
    use_backend("cython")
else:
    use_backend("python")
