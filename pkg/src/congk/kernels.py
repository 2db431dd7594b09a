"""Backend selection for the residue kernels.

The compiled extension is used when it imports; set ``CONGK_PURE_PYTHON=1``
to force the reference implementation.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("CONGK_PURE_PYTHON"):
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

reduce_residue = _impl.reduce_residue
residue_mul = _impl.residue_mul
unit_residues = _impl.unit_residues
residue_bfs = _impl.residue_bfs

__all__ = ["BACKEND", "reduce_residue", "residue_mul", "unit_residues", "residue_bfs"]
