"""Curvature-flow laboratory for star-shaped surfaces in hyperbolic 3-space.

Thin Python face over the compiled core: symmetric-function algebra,
sphere-grid geometry, the radial-graph flow integrator with its scalar
diagnostics, the seeded verification suites, and the config-driven batch
runner.
"""

try:
    from ._hypflow import *  # noqa: F401,F403  (installed package layout)
    from . import _hypflow as _impl
except ImportError:  # build-tree layout: _hypflow.so on sys.path directly
    from _hypflow import *  # noqa: F401,F403
    import _hypflow as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
