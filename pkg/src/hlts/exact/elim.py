"""Backend selection for integer row reduction.

The compiled ``_elim_c`` kernel is used when it was built and the input fits
in int64; it falls back to the arbitrary-precision ``_elim_py`` path on
overflow.  Set ``HLTS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _elim_py

try:
    if os.environ.get("HLTS_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python mode requested")
    from . import _elim_c
except ImportError:
    _elim_c = None

BACKEND = "compiled" if _elim_c is not None else "python"


def rref_int(rows, ncols, backend=None):
    """Fully reduced integer echelon basis of ``rows``; see ``_elim_py``."""
    use = backend or BACKEND
    if use == "compiled" and _elim_c is not None:
        rows = rows if isinstance(rows, list) else list(rows)
        try:
            return _elim_c.rref_int(rows, ncols)
        except OverflowError:
            pass
    return _elim_py.rref_int(rows, ncols)
