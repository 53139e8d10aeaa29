"""Select the jet kernel backend at import time.

The compiled extension is preferred; the pure-NumPy module is the fallback.
Set OPINEQ_JET_BACKEND=pure or =compiled to force a choice (benchmarks use
this; =compiled raises if the extension is missing).
"""

import os

_requested = os.environ.get("OPINEQ_JET_BACKEND", "").strip().lower()

if _requested == "pure":
    from . import _jetpure as kernels

    BACKEND = "pure"
elif _requested == "compiled":
    from . import _jetcore as kernels

    BACKEND = "compiled"
elif _requested == "":
    try:
        from . import _jetcore as kernels

        BACKEND = "compiled"
    except ImportError:
        from . import _jetpure as kernels

        BACKEND = "pure"
else:
    raise ImportError(
        f"OPINEQ_JET_BACKEND={_requested!r}: expected 'pure' or 'compiled'"
    )


def backend_name():
    return BACKEND
