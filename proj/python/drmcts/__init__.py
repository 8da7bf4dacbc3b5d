"""Doubly robust Monte Carlo tree search: python facade over the C++ core."""

try:
    # Installed layout: the extension module lives inside this package.
    from ._core import *  # noqa: F401,F403
except ImportError:
    # In-tree layout: the built extension sits on PYTHONPATH (e.g. the CMake
    # build directory when running the test suite without installing).
    from _core import *  # noqa: F401,F403
