"""Schroedinger operators on radial tree graphs with generalized point
interactions: coupling conversions, halfline decomposition, Weyl m-functions
and ac-spectrum indicators, backed by the C++ core."""

try:
    from ._qgs import *  # noqa: F401,F403  (installed package layout)
    from ._qgs import __doc__ as _core_doc  # noqa: F401
except ImportError:  # in-tree builds put the module next to the build dir
    from _qgs import *  # noqa: F401,F403
