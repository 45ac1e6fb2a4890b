"""Hardy constants of planar quadrilaterals with one reflex corner.

Exact sector constants via a transcendental characterization, the one-signed
eigen-profile of the weighted sector problem, quadrilateral normalization and
classification, pointwise inequality sweeps, and independent numerical
eigenvalue oracles (1D sector scheme, 2D discretized Rayleigh quotient).
"""

try:
    # installed layout: the extension lives inside the package
    from ._hardyq import *  # noqa: F401,F403
    from . import _hardyq as _impl
except ImportError:
    # build-tree layout: the extension directory is on sys.path
    from _hardyq import *  # noqa: F401,F403
    import _hardyq as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "1.0.0"
