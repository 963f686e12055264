"""Kernel backend selection: compiled extension with pure-Python fallback.

The compiled module (``_ckern``, built from Cython) and ``pure`` export the
same functions with identical semantics. Selection order:

  * env var ``DYNBET_BACKEND`` = ``compiled`` | ``pure`` forces a backend
    (``compiled`` raises if the extension is missing);
  * otherwise the compiled backend is used when importable, else pure.

``use_backend`` switches at runtime, mainly for the twin-equivalence tests
and the backend comparison benchmark.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import pure

try:
    from . import _ckern
except ImportError:  # extension not built; pure fallback stays active
    _ckern = None


def available_backends() -> tuple[str, ...]:
    return ("compiled", "pure") if _ckern is not None else ("pure",)


def _resolve(name: str):
    if name == "pure":
        return pure
    if name == "compiled":
        if _ckern is None:
            raise RuntimeError(
                "compiled backend requested via DYNBET_BACKEND but the "
                "dynbet._kernels._ckern extension is not built"
            )
        return _ckern
    raise ValueError(f"unknown backend {name!r} (expected 'compiled' or 'pure')")


_env = os.environ.get("DYNBET_BACKEND")
if _env:
    _active = _resolve(_env)
else:
    _active = _ckern if _ckern is not None else pure


def kern():
    """The active kernel module."""
    return _active


def backend_name() -> str:
    return _active.BACKEND


def set_backend(name: str) -> None:
    global _active
    _active = _resolve(name)


@contextmanager
def use_backend(name: str):
    global _active
    prev = _active
    _active = _resolve(name)
    try:
        yield _active
    finally:
        _active = prev
