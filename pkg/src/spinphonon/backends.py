"""Selection between the compiled RK4 kernel and the pure-NumPy fallback.

The compiled extension is picked automatically when importable; set the
environment variable ``SPINPHONON_BACKEND=python`` (or ``compiled``) to
force a choice, or pass ``backend=`` to :func:`spinphonon.lindblad.evolve`.
"""

from __future__ import annotations

import os

from . import _core_py

try:
    from . import _core
except ImportError:  # extension not built; fall back to NumPy
    _core = None

BACKENDS = ("compiled", "python")


def available_backends() -> tuple[str, ...]:
    return BACKENDS if _core is not None else ("python",)


def default_backend() -> str:
    forced = os.environ.get("SPINPHONON_BACKEND", "").strip().lower()
    if forced:
        if forced not in BACKENDS:
            raise ValueError(
                f"SPINPHONON_BACKEND={forced!r} not one of {BACKENDS}"
            )
        if forced == "compiled" and _core is None:
            raise ValueError(
                "SPINPHONON_BACKEND=compiled but the extension is not built"
            )
        return forced
    return "compiled" if _core is not None else "python"


def get_kernel(backend: str = "auto"):
    """Return the ``rk4_lindblad`` kernel for the requested backend."""
    if backend in (None, "auto"):
        backend = default_backend()
    if backend == "compiled":
        if _core is None:
            raise ValueError("compiled backend requested but the extension is not built")
        return _core.rk4_lindblad
    if backend == "python":
        return _core_py.rk4_lindblad
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS} or 'auto'")
