"""Select the compiled kernels when available, else the pure-Python ones.

Set ``ORIGAMI_VEECH_PURE=1`` to force the fallback.
"""

import os

BACKEND = "python"

if not os.environ.get("ORIGAMI_VEECH_PURE"):
    try:
        from ._ckernels import canonical_encoding, closure_mod  # noqa: F401

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import canonical_encoding, closure_mod  # noqa: F401

__all__ = ["BACKEND", "canonical_encoding", "closure_mod"]
