"""Kernel selection: compiled Cython extension when available, pure Python
otherwise. Set ``EXTRAGRAM_KERNEL=python`` or ``=c`` to force one.
"""

import os

from . import _graph_py

_requested = os.environ.get("EXTRAGRAM_KERNEL", "").lower()

if _requested in ("python", "py"):
    _impl = _graph_py
else:
    try:
        from . import _graph_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested in ("c", "compiled"):
            raise ImportError(
                "EXTRAGRAM_KERNEL=c requested but the compiled kernel is not "
                "built; run `python setup.py build_ext --inplace`")
        _impl = _graph_py

unify_and_pack = _impl.unify_and_pack
KERNEL_NAME = _impl.KERNEL_NAME


def available_kernels():
    names = ["python"]
    try:
        from . import _graph_c  # noqa: F401
        names.append("c")
    except ImportError:
        pass
    return names
