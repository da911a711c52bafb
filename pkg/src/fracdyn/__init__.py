"""fracdyn: singular points of fractional-order linear dynamical systems.

Core pieces: Mittag-Leffler evaluation (mlf), exact linear-system
trajectories (linsys), stability classification (stability), geometric
singular-point detection (singular), Region-II band estimation
(region2), a nonlinear predictor-corrector solver (fdesolve), and
serialization plus CLI/HTTP front ends (document, svg, cli, service).
"""

__version__ = "0.1.0"

from .errors import FracdynError

__all__ = ["FracdynError", "__version__"]
