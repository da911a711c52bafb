"""Empirical estimation of the Region-II band half-widths.

For eigenvalues r e^(+-i theta) the trajectory develops singular points
(cusps, double points) exactly when theta lies in a narrow band
(b - delta1, b + delta2) around the stability boundary b = alpha*pi/2.
The band edges are located by probing trajectories for singular points
and bisecting the transition on each side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import BracketFailure, DomainError
from .linsys import AdaptivePolicy
from .singular import MLCurve, SingularConfig, detect_singularities


@dataclass(frozen=True)
class Region2Config:
    r: float = 1.0
    x0: tuple[float, float] = (1.0, 0.0)
    t_start: float = 0.5
    t_max: float = 500.0
    bisect_tol_delta1: float = 1e-5
    bisect_tol_delta2: float = 1e-4
    probe_init: float = 1e-3  # first offset from the boundary angle
    bracket_growth: float = 1.6
    max_offset: float = 1.2  # widest offset tried during bracketing
    singular: SingularConfig = field(
        default_factory=lambda: SingularConfig(
            sampling=AdaptivePolicy(max_turn_angle=0.05, max_points=200000)
        )
    )


@dataclass
class Region2Estimate:
    alpha: float
    delta1: float
    delta2: float
    boundary_angle: float
    n_probes: int
    config: Region2Config


def has_singular_trajectory(
    alpha: float, theta: float, config: Region2Config | None = None
) -> bool:
    """True when the trajectory for eigenvalue angle theta develops at
    least one singular point on the probe window."""
    config = config or Region2Config()
    if not 0.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (0, 1)")
    curve = MLCurve(alpha=alpha, r=config.r, theta=theta, x0=config.x0)
    pts = detect_singularities(
        curve, (config.t_start, config.t_max), config.singular
    )
    return len(pts) > 0


def _edge(alpha, boundary, sign, tol, config, scan_full=False):
    """Bisect the band edge at boundary + sign*delta; returns (delta, n).

    With scan_full the whole offset ladder up to max_offset is probed and
    the outermost singular->smooth transition is bracketed: detection can
    have interior gaps (near-boundary crossings drift past t_max, and the
    cusp regime flattens before the loop regime opens), so stopping at
    the first smooth probe would truncate the band.
    """
    probe = lambda d: has_singular_trajectory(alpha, boundary + sign * d, config)
    n = 0
    d = config.probe_init
    # inner point: must be singular; shrink toward the boundary if not
    inner = None
    while d > 1e-7:
        n += 1
        if probe(d):
            inner = d
            break
        d /= 4.0
    if inner is None:
        raise BracketFailure(
            f"no singular trajectory found near the boundary (side {sign:+d})"
        )
    # outer point: grow until the singular points disappear
    outer = None
    d = max(inner * config.bracket_growth, config.probe_init)
    while d <= config.max_offset:
        n += 1
        if probe(d):
            inner = d
            outer = None
            d *= config.bracket_growth
        else:
            outer = d
            if not scan_full:
                break
            d *= config.bracket_growth
    if outer is None:
        raise BracketFailure(
            f"singular trajectories persist out to offset {config.max_offset}"
        )
    while outer - inner > tol:
        mid = 0.5 * (inner + outer)
        n += 1
        if probe(mid):
            inner = mid
        else:
            outer = mid
    return 0.5 * (inner + outer), n


def estimate_deltas(
    alpha: float, config: Region2Config | None = None
) -> Region2Estimate:
    """Estimate (delta1, delta2) for the given order by bisection on both
    sides of the boundary angle."""
    config = config or Region2Config()
    if not 0.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (0, 1)")
    boundary = alpha * math.pi / 2.0
    d2, n2 = _edge(alpha, boundary, +1, config.bisect_tol_delta2, config, scan_full=True)
    d1, n1 = _edge(alpha, boundary, -1, config.bisect_tol_delta1, config)
    return Region2Estimate(
        alpha=alpha,
        delta1=d1,
        delta2=d2,
        boundary_angle=boundary,
        n_probes=n1 + n2,
        config=config,
    )
