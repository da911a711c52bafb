"""Exact solutions of linear Caputo systems in canonical form.

The canonical blocks are real eigenvalues, real Jordan blocks, and 2x2
complex-conjugate pair blocks.  Solutions are built from Mittag-Leffler
evaluations:

* real eigenvalue lambda:  x(t) = E_alpha(lambda t^alpha) x0,
* Jordan block of size m:  upper-triangular Toeplitz fundamental matrix
  with entries t^(k alpha) E_alpha^(k)(lambda t^alpha) / k! on the k-th
  super-diagonal (the factorial normalization follows from the Laplace
  image k! s^(alpha-1)/(s^alpha - lambda)^(k+1) of those entries),
* complex pair a +- ib = r e^(+-i theta):  the 2x2 rotation-like block
  [[Re E, Im E], [-Im E, Re E]] with E = E_alpha((a+ib) t^alpha).

A similarity transform P maps a general system onto canonical
coordinates: X(t) = P Y(t) with Y(0) = P^-1 X(0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad as _quad

from .errors import (
    BudgetExceeded,
    DomainError,
    QuadratureFailure,
    SingularTransform,
)
from .mlf import MLParams, ml1, ml2, ml_deriv, ml_ray, reciprocal_gamma


@dataclass(frozen=True)
class RealEigen:
    lam: float

    @property
    def dim(self) -> int:
        return 1


@dataclass(frozen=True)
class JordanBlock:
    lam: float
    size: int

    def __post_init__(self):
        if self.size < 2:
            raise DomainError("JordanBlock size must be >= 2")

    @property
    def dim(self) -> int:
        return self.size


@dataclass(frozen=True)
class ComplexPair:
    a: float
    b: float

    def __post_init__(self):
        if self.b == 0.0:
            raise DomainError("ComplexPair requires b != 0")

    @property
    def dim(self) -> int:
        return 2

    @property
    def r(self) -> float:
        return math.hypot(self.a, self.b)

    @property
    def theta(self) -> float:
        return math.atan2(self.b, self.a)


CanonicalBlock = RealEigen | JordanBlock | ComplexPair


@dataclass
class FractionalLinearSystem:
    """Caputo system cD^alpha X = A X with A given in canonical blocks."""

    alpha: float
    blocks: list
    x0: np.ndarray
    transform_P: np.ndarray | None = None
    ml: MLParams | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"system alpha={self.alpha} outside (0, 1)")
        self.x0 = np.asarray(self.x0, dtype=float)
        dim = sum(b.dim for b in self.blocks)
        if self.x0.shape != (dim,):
            raise DomainError(f"x0 has shape {self.x0.shape}, expected ({dim},)")
        if self.ml is None:
            self.ml = MLParams(alpha=self.alpha)
        if self.transform_P is not None:
            p = np.asarray(self.transform_P, dtype=float)
            if p.shape != (dim, dim):
                raise DomainError("transform_P shape mismatch")
            if not np.all(np.isfinite(p)) or np.linalg.cond(p) > 1e12:
                raise SingularTransform("transform_P is numerically singular")
            self.transform_P = p
            self._p_inv = np.linalg.inv(p)
        else:
            self._p_inv = None

    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    def eigenvalues(self) -> list[complex]:
        out: list[complex] = []
        for b in self.blocks:
            if isinstance(b, RealEigen):
                out.append(complex(b.lam))
            elif isinstance(b, JordanBlock):
                out.extend([complex(b.lam)] * b.size)
            else:
                out.extend([complex(b.a, b.b), complex(b.a, -b.b)])
        return out


@dataclass
class Trajectory:
    """Sampled solution curve; samples are (t, state) with t increasing."""

    alpha: float
    t: np.ndarray
    states: np.ndarray  # shape (n, dim)
    source: dict = field(default_factory=dict)
    uniform: bool = False
    flagged_params: list = field(default_factory=list)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.states = np.asarray(self.states, dtype=float)
        if self.t.ndim != 1 or self.states.shape[0] != self.t.shape[0]:
            raise DomainError("trajectory sample shape mismatch")
        if np.any(np.diff(self.t) <= 0.0):
            raise DomainError("trajectory times must be strictly increasing")
        if not (np.all(np.isfinite(self.t)) and np.all(np.isfinite(self.states))):
            raise DomainError("trajectory contains non-finite samples")

    @property
    def dim(self) -> int:
        return self.states.shape[1]


@dataclass(frozen=True)
class UniformPolicy:
    n: int


@dataclass(frozen=True)
class AdaptivePolicy:
    max_turn_angle: float = 0.05
    min_dt: float | None = None  # default: 1e-7 of the span
    max_points: int = 200000


@dataclass(frozen=True)
class QuadPolicy:
    epsabs: float = 1e-10
    epsrel: float = 1e-10
    limit: int = 200


def _block_solve(block, alpha: float, ml: MLParams, t: float, c: np.ndarray) -> np.ndarray:
    """Canonical-coordinate solution of one block at a single time."""
    if t == 0.0:
        return c.copy()
    ta = t**alpha
    if isinstance(block, RealEigen):
        e = ml1(ml, block.lam * ta).real
        return np.array([e * c[0]])
    if isinstance(block, ComplexPair):
        lam = complex(block.a, block.b)
        e = ml1(ml, lam * ta)
        m = np.array([[e.real, e.imag], [-e.imag, e.real]])
        return m @ c
    # Jordan block
    m = block.size
    out = np.zeros(m)
    z = block.lam * ta
    gs = [
        (ta**k) * ml_deriv(ml, k, z).real / math.factorial(k) for k in range(m)
    ]
    for i in range(m):
        out[i] = sum(gs[j - i] * c[j] for j in range(i, m))
    return out


def solve_at(system: FractionalLinearSystem, t: float) -> np.ndarray:
    """Exact solution X(t) of the system."""
    if not (np.isfinite(t) and t >= 0.0):
        raise DomainError("t must be finite and non-negative")
    y0 = system.x0 if system._p_inv is None else system._p_inv @ system.x0
    out = np.empty(system.dim)
    ml = system.ml
    pos = 0
    for block in system.blocks:
        d = block.dim
        out[pos : pos + d] = _block_solve(block, system.alpha, ml, t, y0[pos : pos + d])
        pos += d
    if system.transform_P is not None:
        out = system.transform_P @ out
    return out


def _rayable(system: FractionalLinearSystem) -> bool:
    """True when every block admits the vectorized ray evaluator."""
    a = system.alpha
    for b in system.blocks:
        if isinstance(b, JordanBlock):
            return False
        if isinstance(b, RealEigen):
            th = 0.0 if b.lam >= 0.0 else math.pi
            if b.lam != 0.0 and abs(abs(th) - a * math.pi) < 0.02:
                return False
        else:
            if abs(abs(b.theta) - a * math.pi) < 0.02:
                return False
    return True


def _eval_many(system: FractionalLinearSystem, ts: np.ndarray) -> np.ndarray:
    """Solution states at many times; vectorized where possible."""
    a = system.alpha
    ml = system.ml
    y0 = system.x0 if system._p_inv is None else system._p_inv @ system.x0
    n = ts.shape[0]
    out = np.empty((n, system.dim))
    pos_t = ts > 0.0
    ta = np.zeros_like(ts)
    ta[pos_t] = ts[pos_t] ** a
    if _rayable(system):
        pos = 0
        for block in system.blocks:
            if isinstance(block, RealEigen):
                lam = block.lam
                if lam == 0.0:
                    out[:, pos] = y0[pos]
                else:
                    th = 0.0 if lam > 0.0 else math.pi
                    vals = np.ones(n, dtype=complex)
                    vals[pos_t] = ml_ray(a, 1.0, abs(lam) * ta[pos_t], th)
                    out[:, pos] = vals.real * y0[pos]
                pos += 1
            else:
                th = block.theta
                vals = np.ones(n, dtype=complex)
                vals[pos_t] = ml_ray(a, 1.0, block.r * ta[pos_t], th)
                c1, c2 = y0[pos], y0[pos + 1]
                out[:, pos] = vals.real * c1 + vals.imag * c2
                out[:, pos + 1] = -vals.imag * c1 + vals.real * c2
                pos += 2
    else:
        ysys = FractionalLinearSystem(
            alpha=a, blocks=system.blocks, x0=y0, transform_P=None, ml=ml
        )
        for i, t in enumerate(ts):
            out[i] = solve_at(ysys, float(t))
    if system.transform_P is not None:
        out = out @ system.transform_P.T
    return out


def sample_trajectory(
    system: FractionalLinearSystem,
    t_start: float,
    t_end: float,
    policy: UniformPolicy | AdaptivePolicy,
) -> Trajectory:
    """Sample the exact solution on [t_start, t_end].

    The adaptive policy refines until the polyline turning angle at every
    interior vertex is below max_turn_angle, except where the local step
    has already reached min_dt (near-stationary points such as cusps);
    those parameters are flagged on the trajectory instead.
    """
    if not (0.0 <= t_start < t_end):
        raise DomainError("need 0 <= t_start < t_end")
    src = {
        "kind": "linsys",
        "alpha": system.alpha,
        "blocks": [repr(b) for b in system.blocks],
        "x0": [float(v) for v in system.x0],
    }
    if isinstance(policy, UniformPolicy):
        if policy.n < 2:
            raise DomainError("uniform policy needs n >= 2")
        ts = np.linspace(t_start, t_end, policy.n)
        states = _eval_many(system, ts)
        return Trajectory(
            alpha=system.alpha, t=ts, states=states, source=src, uniform=True
        )
    min_dt = policy.min_dt
    if min_dt is None:
        min_dt = 1e-7 * (t_end - t_start)
    ts = np.linspace(t_start, t_end, 512)
    states = _eval_many(system, ts)
    flagged: list[float] = []
    for _ in range(60):
        seg = np.diff(states, axis=0)
        # turning angle at interior vertices
        d0 = seg[:-1]
        d1 = seg[1:]
        cross = d0[:, 0] * d1[:, 1] - d0[:, 1] * d1[:, 0] if states.shape[1] == 2 else None
        if cross is not None:
            dot = (d0 * d1).sum(axis=1)
            ang = np.abs(np.arctan2(cross, dot))
        else:
            n0 = np.linalg.norm(d0, axis=1)
            n1 = np.linalg.norm(d1, axis=1)
            cosv = (d0 * d1).sum(axis=1) / np.maximum(n0 * n1, 1e-300)
            ang = np.arccos(np.clip(cosv, -1.0, 1.0))
        bad = np.where(ang > policy.max_turn_angle)[0] + 1  # vertex index
        if bad.size == 0:
            break
        dt = np.diff(ts)
        new_ts = []
        for v in bad:
            for iv in (v - 1, v):
                if dt[iv] > 2.0 * min_dt:
                    new_ts.append(0.5 * (ts[iv] + ts[iv + 1]))
                else:
                    flagged.append(float(ts[v]))
        if not new_ts:
            break
        merged = np.unique(np.concatenate([ts, np.array(new_ts)]))
        if merged.size > policy.max_points:
            raise BudgetExceeded(
                f"adaptive sampling needs > {policy.max_points} points"
            )
        add = np.setdiff1d(merged, ts)
        add_states = _eval_many(system, add)
        order = np.argsort(np.concatenate([ts, add]))
        ts = np.concatenate([ts, add])[order]
        states = np.concatenate([states, add_states], axis=0)[order]
    flagged = sorted(set(flagged))
    return Trajectory(
        alpha=system.alpha,
        t=ts,
        states=states,
        source=src,
        uniform=False,
        flagged_params=flagged,
    )


def solve_scalar_nonhomogeneous(
    alpha: float,
    lam: float,
    g,
    y0: float,
    x: float,
    quad: QuadPolicy | None = None,
) -> float:
    """Solution at x of cD^alpha y + lam*y = g(t), y(0) = y0.

    y(x) = int_0^x t^(alpha-1) E_{alpha,alpha}(-lam t^alpha) g(x-t) dt
           + y0 E_alpha(-lam x^alpha).

    The weakly singular factor t^(alpha-1) is removed exactly by the
    substitution u = t^alpha, after which a standard adaptive rule
    applies.
    """
    if not (0.0 < alpha < 1.0 or alpha == 1.0):
        raise DomainError("alpha must lie in (0, 1]")
    if x <= 0.0:
        raise DomainError("x must be positive")
    quad = quad or QuadPolicy()
    ml_a = MLParams(alpha=alpha, beta=alpha)
    ml_1 = MLParams(alpha=alpha)

    def f(u):
        t = u ** (1.0 / alpha)
        return ml2(ml_a, -lam * u).real * g(x - t) / alpha

    val, err = _quad(
        f, 0.0, x**alpha, epsabs=quad.epsabs, epsrel=quad.epsrel, limit=quad.limit
    )
    if err > max(quad.epsabs, quad.epsrel * abs(val)) * 50.0:
        raise QuadratureFailure(f"quadrature error estimate {err:.2e} too large")
    return val + y0 * ml1(ml_1, -lam * x**alpha).real
