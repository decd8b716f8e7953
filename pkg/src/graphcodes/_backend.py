"""Kernel backend selection.

Imports the compiled extension when it is built, otherwise falls back to the
numpy implementations.  BACKEND names the active choice.
"""

try:
    from . import _kernels as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built on this installation
    from . import _kernels_py as _impl

    BACKEND = "numpy"

find_even_k4_quadruple = _impl.find_even_k4_quadruple
decomposability_step = _impl.decomposability_step
