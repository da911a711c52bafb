"""Stability classification for fractional linear systems.

An eigenvalue lambda of cD^alpha X = AX is asymptotically stable iff
|arg lambda| > alpha*pi/2 (Matignon-type condition).  The argument plane
splits into Region I (unstable sector), Region III (stable sector), and
the narrow Region II band (alpha*pi/2 - delta1, alpha*pi/2 + delta2)
around the boundary where trajectories develop singular points.

Incommensurate systems with rational orders p_i/q_i are classified via
the characteristic function Delta(lambda) = diag(lambda^(M alpha_i)) - J
with M = lcm(q_i): the equilibrium is asymptotically stable iff every
root of det Delta satisfies |arg lambda| > pi/(2M).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegreeTooLarge,
    DomainError,
    IllConditionedRoots,
    InsufficientRange,
)
from .linsys import FractionalLinearSystem, JordanBlock, Trajectory

# angular tolerance for the measure-zero critical case
ANGLE_TOL = 1e-9

# (delta1, delta2) samples used for default Region-II band interpolation,
# indexed by alpha = 0.1 .. 0.9
_BAND_ALPHAS = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
_BAND_D1 = [0.0014, 0.0027, 0.0039, 0.005, 0.0057, 0.0059, 0.0058, 0.0049, 0.0031]
_BAND_D2 = [
    0.0639204,
    0.127841,
    0.195761,
    0.264681,
    0.341602,
    0.422522,
    0.520443,
    0.633363,
    0.796283,
]


def default_deltas(alpha: float) -> tuple[float, float]:
    """Region-II band half-widths interpolated from tabulated samples."""
    d1 = float(np.interp(alpha, _BAND_ALPHAS, _BAND_D1))
    d2 = float(np.interp(alpha, _BAND_ALPHAS, _BAND_D2))
    return d1, d2


@dataclass(frozen=True)
class EigenClassification:
    eigenvalue: complex
    arg_abs: float
    boundary_angle: float
    region: str  # "I" | "II" | "III"
    stability: str  # "unstable" | "critical" | "asymptotically_stable"
    portrait: str
    derivative_kind: str  # "caputo" | "riemann_liouville"


@dataclass(frozen=True)
class IncommensurateSpec:
    orders: tuple  # of Fraction
    jacobian: np.ndarray

    @property
    def m(self) -> int:
        return math.lcm(*(f.denominator for f in self.orders))


def classify_eigenvalue(
    alpha: float,
    lam: complex,
    deltas: tuple[float, float] | None = None,
    kind: str = "caputo",
) -> EigenClassification:
    """Classify a single eigenvalue for order alpha.

    Region II membership uses the supplied (delta1, delta2) or the
    interpolated defaults.  The portrait label follows the planar
    taxonomy: real positive -> source side, real negative -> sink node,
    complex unstable -> spiral source, complex stable -> spiral sink,
    boundary -> boundary orbit.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (0, 1)")
    if kind not in ("caputo", "riemann_liouville"):
        raise DomainError(f"unknown derivative kind {kind!r}")
    lam = complex(lam)
    boundary = alpha * math.pi / 2.0
    if deltas is None:
        deltas = default_deltas(alpha)
    d1, d2 = deltas
    if lam == 0:
        return EigenClassification(
            eigenvalue=lam,
            arg_abs=0.0,
            boundary_angle=boundary,
            region="I",
            stability="critical",
            portrait="degenerate",
            derivative_kind=kind,
        )
    a = abs(cmath.phase(lam))
    if a > boundary + ANGLE_TOL:
        stability = "asymptotically_stable"
    elif a < boundary - ANGLE_TOL:
        stability = "unstable"
    else:
        stability = "critical"
    if boundary - d1 < a < boundary + d2:
        region = "II"
    elif a < boundary:
        region = "I"
    else:
        region = "III"
    if abs(lam.imag) == 0.0:
        if stability == "unstable":
            portrait = "source"
        else:
            portrait = "sink_node"
    elif stability == "critical":
        portrait = "boundary_orbit"
    elif stability == "unstable":
        portrait = "spiral_source"
    else:
        portrait = "spiral_sink"
    return EigenClassification(
        eigenvalue=lam,
        arg_abs=a,
        boundary_angle=boundary,
        region=region,
        stability=stability,
        portrait=portrait,
        derivative_kind=kind,
    )


def classify_system(
    system: FractionalLinearSystem,
    deltas: tuple[float, float] | None = None,
    kind: str = "caputo",
) -> tuple[list[EigenClassification], str]:
    """Per-eigenvalue classifications plus the overall verdict.

    Overall: asymptotically_stable iff every eigenvalue is; otherwise
    stable when all non-stable eigenvalues are critical with geometric
    multiplicity one (a Jordan block on a critical eigenvalue makes the
    system unstable); otherwise unstable.  The mixed-sign real case is
    reported as a saddle in the per-eigenvalue portraits.
    """
    alpha = system.alpha
    eigs = system.eigenvalues()
    out = [classify_eigenvalue(alpha, lam, deltas, kind) for lam in eigs]
    reals = [c.eigenvalue.real for c in out if c.eigenvalue.imag == 0.0]
    if reals and min(reals) < 0.0 < max(reals):
        out = [
            EigenClassification(
                eigenvalue=c.eigenvalue,
                arg_abs=c.arg_abs,
                boundary_angle=c.boundary_angle,
                region=c.region,
                stability=c.stability,
                portrait="saddle" if c.eigenvalue.imag == 0.0 else c.portrait,
                derivative_kind=c.derivative_kind,
            )
            for c in out
        ]
    if all(c.stability == "asymptotically_stable" for c in out):
        return out, "asymptotically_stable"
    if any(c.stability == "unstable" for c in out):
        return out, "unstable"
    # remaining criticals: Jordan structure decides
    boundary = alpha * math.pi / 2.0
    for block in system.blocks:
        if isinstance(block, JordanBlock):
            a = abs(cmath.phase(complex(block.lam))) if block.lam != 0 else 0.0
            if abs(a - boundary) <= ANGLE_TOL or block.lam == 0.0:
                return out, "unstable"
    return out, "stable"


def classify_incommensurate(
    spec: IncommensurateSpec,
    degree_bound: int = 12,
    root_residual_tol: float = 1e-6,
) -> tuple[list[complex], bool]:
    """Roots of det(diag(lambda^(M alpha_i)) - J) and the stability verdict.

    Stable iff every root satisfies |arg lambda| > pi/(2M).  Roots are
    found from the polynomial companion matrix and each is checked by a
    residual test on the determinant.
    """
    orders = [Fraction(o) if not isinstance(o, Fraction) else o for o in spec.orders]
    for o in orders:
        if not 0 < o < 2:
            raise DomainError(f"order {o} outside (0, 2)")
    j = np.asarray(spec.jacobian, dtype=float)
    n = len(orders)
    if j.shape != (n, n):
        raise DomainError("jacobian shape does not match orders")
    m = math.lcm(*(o.denominator for o in orders))
    powers = [int(o * m) for o in orders]
    total = sum(powers)
    if total > degree_bound:
        raise DegreeTooLarge(f"characteristic degree {total} > bound {degree_bound}")
    # det(diag(mu^p_i) - J) expanded symbolically over subsets is
    # exponential; n is small here, so build it via polynomial arithmetic
    # on the permanent-free cofactor expansion
    poly = _char_poly(powers, j)
    roots = np.roots(poly)
    # residual check in the original determinant
    clean: list[complex] = []
    scale = max(1.0, float(np.abs(j).max()))
    for root in roots:
        mat = np.diag([complex(root) ** p for p in powers]) - j
        res = abs(np.linalg.det(mat))
        if res > root_residual_tol * max(1.0, abs(root)) ** total * scale:
            raise IllConditionedRoots(
                f"root {root} has determinant residual {res:.2e}"
            )
        clean.append(complex(root))
    clean.sort(key=lambda z: (round(abs(z), 12), cmath.phase(z)))
    threshold = math.pi / (2.0 * m)
    stable = all(abs(cmath.phase(z)) > threshold for z in clean)
    return clean, stable


def _char_poly(powers: list[int], j: np.ndarray) -> np.ndarray:
    """Coefficients (highest degree first) of det(diag(x^p_i) - J)."""
    n = len(powers)

    def det(rows, cols):
        # Laplace expansion over the first remaining row; entries are
        # polynomials represented as coefficient arrays
        if not rows:
            return np.array([1.0])
        r = rows[0]
        acc = None
        for idx, c in enumerate(cols):
            entry = np.zeros(powers[r] + 1)
            if r == c:
                entry[0] = 1.0  # x^p_r
            entry[-1] -= j[r, c]
            if not np.any(entry):
                continue
            sub = det(rows[1:], cols[:idx] + cols[idx + 1 :])
            term = np.polymul(entry, sub)
            if idx % 2 == 1:
                term = -term
            acc = term if acc is None else np.polyadd(acc, term)
        if acc is None:
            acc = np.array([0.0])
        return acc

    return det(list(range(n)), list(range(n)))


def decay_exponent(traj: Trajectory) -> float:
    """Least-squares slope of log||X|| against log t over the window.

    Empirical check of the algebraic decay of stable fractional systems;
    requires at least two decades of time range.
    """
    t = traj.t
    if t[0] <= 0.0:
        keep = t > 0.0
        t = t[keep]
        states = traj.states[keep]
    else:
        states = traj.states
    if t.size < 8 or t[-1] / t[0] < 100.0:
        raise InsufficientRange("need t_end/t_start >= 100 and enough samples")
    norms = np.linalg.norm(states, axis=1)
    if np.any(norms <= 0.0):
        raise InsufficientRange("trajectory reaches zero norm; no log fit")
    slope = np.polyfit(np.log(t), np.log(norms), 1)[0]
    return float(slope)
