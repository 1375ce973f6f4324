"""Dense series kernels: compiled int64 core with an exact pure-Python fallback.

The compiled module is used when it was built and ``EQUIZETA_PURE_PYTHON`` is
unset.  On int64 overflow the call is repeated on the pure-Python path, so
results are always exact.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

HAVE_EXTENSION = _ckernels is not None


def backend():
    if _ckernels is not None and not os.environ.get("EQUIZETA_PURE_PYTHON"):
        return "compiled"
    return "python"


def _dispatch(name, *args):
    if backend() == "compiled":
        try:
            return getattr(_ckernels, name)(*args)
        except OverflowError:
            pass
    return getattr(_pykernels, name)(*args)


def count_monomials(q, xchar, table, D):
    return _dispatch("count_monomials", list(q), list(xchar), table, D)


def mul_geometric(arr, shift, char, table):
    return _dispatch("mul_geometric", arr, shift, char, table)


def mul_one_minus(arr, shift, char, table):
    return _dispatch("mul_one_minus", arr, shift, char, table)


def convolve(a, b, table):
    return _dispatch("convolve", a, b, table)
