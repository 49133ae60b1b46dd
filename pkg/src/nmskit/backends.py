"""Kernel backend selection.

The compiled extension is preferred when it built successfully; otherwise
the pure numpy kernels are used. Both expose identical functions and make
bit-identical keep/delete decisions, so the choice only affects speed.
"""

from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _kernels  # type: ignore[attr-defined]
except ImportError:
    _kernels = None

_BACKENDS: dict[str, ModuleType] = {}
if _kernels is not None:
    _BACKENDS["compiled"] = _kernels
_BACKENDS["python"] = _pykernels

HAVE_COMPILED = _kernels is not None


def available_backends() -> tuple[str, ...]:
    """Backend names usable with the suppression functions' ``backend=`` kwarg."""
    return tuple(_BACKENDS)


def default_backend() -> str:
    return "compiled" if HAVE_COMPILED else "python"


def get_backend(name: str | None = None) -> ModuleType:
    """Resolve a backend name to its kernel module (None = default)."""
    if name is None:
        name = default_backend()
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {', '.join(_BACKENDS)}"
        ) from None
