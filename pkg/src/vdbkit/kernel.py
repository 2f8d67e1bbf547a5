"""Selects the enumeration kernel at import time.

The compiled ``_enumc`` extension is preferred; the pure-Python twin in
``_enum_py`` is used when the extension is missing or when the environment
sets ``VDBKIT_PURE_PYTHON=1``.
"""

from __future__ import annotations

import os

from . import _enum_py

try:
    from . import _enumc
except ImportError:  # extension not built
    _enumc = None

KERNELS = {"python": _enum_py.enumerate_profiles}
if _enumc is not None:
    KERNELS["compiled"] = _enumc.enumerate_profiles

if _enumc is not None and os.environ.get("VDBKIT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

enumerate_profiles = KERNELS[BACKEND]


def get_kernel(name: str | None = None):
    """Kernel by name ("compiled" or "python"); None means the import-time choice."""
    name = name or BACKEND
    if name not in KERNELS:
        raise ValueError(f"kernel {name!r} unavailable; have {sorted(KERNELS)}")
    return KERNELS[name]


def releases_gil(name: str | None = None) -> bool:
    return (name or BACKEND) == "compiled"
