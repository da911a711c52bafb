"""Predictor-corrector solver for nonlinear Caputo systems.

Implements the fractional Adams-Bashforth-Moulton scheme on a uniform
grid: a fractional-Euler predictor followed by a trapezoidal corrector,
with per-component orders so incommensurate systems are handled
directly.  Cost is O(n^2) in the number of steps; first-order memory
weights are precomputed incrementally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma

from .errors import Blowup, DomainError, InvalidStep
from .linsys import Trajectory


@dataclass(frozen=True)
class PCOptions:
    corrector_iterations: int = 1
    blowup_norm: float = 1e12


def solve_pc(
    f,
    orders,
    x0,
    t_end: float,
    n_steps: int,
    options: PCOptions | None = None,
) -> Trajectory:
    """Integrate cD^(alpha_i) x_i = f_i(t, x) from t = 0 with x(0) = x0.

    orders: scalar or per-component sequence, each in (0, 1].
    Raises Blowup when the solution norm exceeds options.blowup_norm and
    InvalidStep for a non-positive step count or horizon.
    """
    options = options or PCOptions()
    x0 = np.asarray(x0, dtype=float)
    if x0.ndim != 1 or x0.size == 0:
        raise DomainError("x0 must be a nonempty 1-d vector")
    d = x0.size
    alphas = np.broadcast_to(np.asarray(orders, dtype=float), (d,)).copy()
    if np.any(alphas <= 0.0) or np.any(alphas > 1.0):
        raise DomainError("component orders must lie in (0, 1]")
    if n_steps < 1 or t_end <= 0.0:
        raise InvalidStep("need n_steps >= 1 and t_end > 0")
    h = t_end / n_steps
    ts = h * np.arange(n_steps + 1)
    xs = np.empty((n_steps + 1, d))
    xs[0] = x0
    fs = np.empty((n_steps + 1, d))
    f0 = np.asarray(f(0.0, x0), dtype=float)
    if f0.shape != (d,):
        raise DomainError("f must return a vector matching x0")
    fs[0] = f0

    ha1 = h**alphas / gamma(alphas + 1.0)  # predictor scale, per component
    ha2 = h**alphas / gamma(alphas + 2.0)  # corrector scale
    ap1 = alphas + 1.0

    for n in range(n_steps):
        j = np.arange(n + 1)
        # predictor weights b_{j,n+1} = (n+1-j)^a - (n-j)^a
        steps_hi = (n + 1 - j)[:, None] ** alphas[None, :]
        steps_lo = (n - j)[:, None] ** alphas[None, :]
        pred = xs[0] + ha1 * np.sum((steps_hi - steps_lo) * fs[: n + 1], axis=0)
        # corrector weights
        k = (n - j)[:, None]
        a_w = (k + 2.0) ** ap1[None, :] + np.maximum(k, 0.0) ** ap1[None, :] - 2.0 * (
            k + 1.0
        ) ** ap1[None, :]
        a_w[0] = n**ap1 - (n - alphas) * (n + 1) ** alphas
        hist = np.sum(a_w * fs[: n + 1], axis=0)
        t_next = ts[n + 1]
        x_next = pred
        for _ in range(options.corrector_iterations):
            fp = np.asarray(f(t_next, x_next), dtype=float)
            x_next = xs[0] + ha2 * (hist + fp)
        if not np.all(np.isfinite(x_next)) or np.linalg.norm(x_next) > options.blowup_norm:
            raise Blowup(f"solution norm exceeded {options.blowup_norm:g} at t={t_next:g}")
        xs[n + 1] = x_next
        fs[n + 1] = np.asarray(f(t_next, x_next), dtype=float)

    return Trajectory(
        alpha=float(alphas[0]),
        t=ts,
        states=xs,
        source={
            "kind": "adams_pc",
            "orders": [float(a) for a in alphas],
            "h": h,
            "n_steps": n_steps,
        },
        uniform=True,
    )
