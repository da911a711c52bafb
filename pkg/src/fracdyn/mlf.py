"""Mittag-Leffler functions E_{alpha,beta}(z) over the complex plane.

Evaluation strategy
-------------------
The defining power series converges everywhere but suffers catastrophic
cancellation once |z|^(1/alpha) is large compared to log|E(z)|.  Four
routes cover the plane:

* direct float series with compensated stopping (benign arguments),
* an exponentially-improved algebraic expansion for large |z| inside the
  sector |arg z| <= mu,
* a real-line integral representation (valid for 0 < alpha <= 1,
  beta < 1 + alpha) that is immune to cancellation in the mid range,
* an adaptive-precision series fallback whose working precision is keyed
  to the estimated cancellation loss.

For alpha in (1, 2] the duplication identity
E_{a,b}(z) = (E_{a/2,b}(sqrt z) + E_{a/2,b}(-sqrt z)) / 2 reduces to the
first case.  All branches use real series coefficients, so conjugate
symmetry E(conj z) = conj E(z) holds by construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import warnings

import numpy as np
from mpmath import mp, mpc, mpf, gamma as _mp_gamma
from scipy.integrate import IntegrationWarning, quad

from .errors import (
    ContourThroughZero,
    DomainError,
    NewtonDivergence,
    NonConvergence,
    RangeOverflow,
)

# log of the largest magnitude we allow before declaring double overflow
_LOG_HUGE = 690.0

# cancellation loss (in ln units) tolerated by the float series
_FLOAT_LOSS = 11.5

# precision ceiling for the adaptive mpmath fallback
_MP_DPS_CAP = 1500

_LN10 = math.log(10.0)


def reciprocal_gamma(x: float) -> float:
    """1/Gamma(x) for real x, exactly 0 at non-positive integers.

    Uses the reflection formula for x <= 1/2 so that the zeros of
    1/Gamma are hit exactly; returns a signed infinity only on genuine
    overflow of Gamma(1-x), which callers treat in log space instead.
    """
    if x > 0.5:
        try:
            return 1.0 / math.gamma(x)
        except OverflowError:
            return 0.0
    n = round(x)
    if x <= 0.0 and abs(x - n) < 1e-12:
        return 0.0
    s = math.sin(math.pi * x)
    try:
        return s * math.gamma(1.0 - x) / math.pi
    except OverflowError:
        return math.copysign(math.inf, s)


def _rgamma_ln(x: float) -> tuple[float, float]:
    """(sign, ln magnitude) of 1/Gamma(x); sign 0 at poles of Gamma."""
    if x > 0.5:
        return 1.0, -math.lgamma(x)
    n = round(x)
    if x <= 0.0 and abs(x - n) < 1e-12:
        return 0.0, -math.inf
    s = math.sin(math.pi * x)
    return math.copysign(1.0, s), (
        math.log(abs(s)) + math.lgamma(1.0 - x) - math.log(math.pi)
    )


@dataclass(frozen=True)
class MLParams:
    """Evaluation policy for E_{alpha,beta}.

    mu is the half-angle of the sector in which the large-|z| expansion
    is trusted; it must lie strictly inside (alpha*pi/2, min(pi, alpha*pi))
    and defaults to just inside the outer limit.  switch_radius is the
    series/asymptotic crossover modulus.
    """

    alpha: float
    beta: float = 1.0
    series_tol: float = 1e-14
    max_terms: int = 20000
    asym_p: int = 40
    mu: float | None = None
    switch_radius: float = 10.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 2.0:
            raise DomainError(f"alpha={self.alpha} outside (0, 2]")
        if not self.beta > 0.0:
            raise DomainError(f"beta={self.beta} must be positive")
        if self.series_tol <= 0.0 or self.max_terms < 1 or self.asym_p < 1:
            raise DomainError("invalid series/asymptotic policy")
        if self.switch_radius <= 0.0:
            raise DomainError("switch_radius must be positive")
        lo = self.alpha * math.pi / 2.0
        hi = min(math.pi, self.alpha * math.pi)
        if hi - lo < 1e-12:
            # alpha >= 2: no valid sector; the asymptotic branch is
            # unreachable (duplication halves alpha first)
            if self.mu is None:
                object.__setattr__(self, "mu", lo)
            return
        if self.mu is None:
            object.__setattr__(self, "mu", max(hi * 0.99, lo * 1.01))
        if not lo < self.mu < hi:
            raise DomainError(f"mu={self.mu} outside ({lo}, {hi})")


@dataclass(frozen=True)
class MLZero:
    """A refined zero of E_{alpha,beta} with its isolating cell."""

    z: complex
    modulus: float
    argument: float
    residual: float
    winding_cell: tuple[float, float, float, float]


def _series_cost(alpha: float, z: complex) -> tuple[float, float]:
    """Estimate (ln peak term, ln result magnitude) for the power series.

    The peak summand has magnitude ~ exp(|z|^(1/alpha)); the result is
    the exponential part inside |arg z| < alpha*pi and algebraically
    small, ~ 1/|z|, outside.  The gap between the two is the number of
    ln units of cancellation the summation must absorb.
    """
    az = abs(z)
    if az <= 1.0:
        return 0.0, 0.0
    x = az ** (1.0 / alpha)
    arga = abs(cmath.phase(z)) / alpha
    alg_ln = -math.log(az) - 5.0
    exp_ln = x * math.cos(arga) if arga < math.pi else -math.inf
    return x, max(exp_ln, alg_ln)


def _series_float(params: MLParams, z: complex):
    """Plain double-precision series; None signals the caller to escalate."""
    a, b = params.alpha, params.beta
    tol = params.series_tol
    az = abs(z)
    kpeak = int(az ** (1.0 / a) / a) + 2 if az > 1.0 else 0
    s = 0.0 + 0.0j
    zp = 1.0 + 0.0j
    small = 0
    for k in range(params.max_terms):
        term = zp * math.exp(-math.lgamma(a * k + b))
        s += term
        if abs(term) <= tol * (1.0 + abs(s)) and k >= kpeak:
            small += 1
            if small >= 2:
                return s
        else:
            small = 0
        zp *= z
        if abs(zp) > 1e300:
            return None
    return None


def _series_mp(alpha: float, beta: float, z: complex, extra: int = 25) -> complex:
    """Adaptive-precision series fallback.

    Working precision is the estimated cancellation loss plus guard
    digits.  The Gamma arguments alpha*k + beta are formed in extended
    precision: under heavy cancellation even 1-ulp rounding of the
    argument is amplified beyond the final tolerance.
    """
    x, res_ln = _series_cost(alpha, z)
    loss = max(0.0, x - res_ln)
    dps = int(loss / _LN10) + extra
    if dps > _MP_DPS_CAP:
        raise NonConvergence(
            f"series for alpha={alpha}, |z|={abs(z):.3g} needs ~{dps} digits "
            f"(cap {_MP_DPS_CAP})"
        )
    old = mp.dps
    mp.dps = dps
    try:
        a = mpf(alpha)
        b = mpf(beta)
        zz = mpc(z)
        s = mpc(0)
        zp = mpc(1)
        kpeak = int(x / alpha) + 10 if abs(z) > 1.0 else 10
        cut = mpf(10) ** (-dps + 5)
        k = 0
        while True:
            s += zp / _mp_gamma(a * k + b)
            k += 1
            zp *= zz
            if k > kpeak and abs(zp / _mp_gamma(a * k + b)) < cut * (1 + abs(s)):
                break
            if k > 20 * kpeak + 200000:
                raise NonConvergence("extended-precision series stalled")
        return complex(s)
    finally:
        mp.dps = old


def ml_series(params: MLParams, z: complex) -> complex:
    """Power-series evaluation (float with extended-precision fallback)."""
    z = complex(z)
    if z == 0:
        return complex(reciprocal_gamma(params.beta))
    x, res_ln = _series_cost(params.alpha, z)
    if res_ln > _LOG_HUGE:
        raise RangeOverflow(f"|E| ~ exp({res_ln:.1f}) exceeds double range")
    if x < 660.0 and x - res_ln < _FLOAT_LOSS:
        v = _series_float(params, z)
        if v is not None:
            return v
    return _series_mp(params.alpha, params.beta, z)


def ml_asymptotic(params: MLParams, z: complex) -> complex:
    """Large-|z| expansion inside the sector |arg z| <= mu.

    Exponential leading term plus the algebraic correction sum, truncated
    at asym_p or at the smallest term (optimal truncation), whichever
    comes first.  Remainder is O(|z|^(-1-p)) plus a beyond-all-orders
    term ~ exp(-|z|^(1/alpha)) that dominates near the sector edge.
    """
    z = complex(z)
    a, b = params.alpha, params.beta
    if not 0.0 < a < 2.0:
        raise DomainError("asymptotic branch requires 0 < alpha < 2")
    if z == 0:
        raise DomainError("asymptotic branch undefined at z = 0")
    argz = cmath.phase(z)
    if abs(argz) > params.mu + 1e-15:
        raise DomainError(f"|arg z|={abs(argz):.6f} outside sector mu={params.mu:.6f}")
    az = abs(z)
    lnaz = math.log(az)
    w = z ** (1.0 / a)
    lead_ln = w.real + (1.0 - b) / a * lnaz
    if lead_ln > _LOG_HUGE:
        raise RangeOverflow("exponential term exceeds double range")
    lead = z ** ((1.0 - b) / a) * cmath.exp(w) / a
    corr = 0.0 + 0.0j
    prev_ln = math.inf
    for k in range(1, params.asym_p + 1):
        sgn, rg_ln = _rgamma_ln(b - a * k)
        if sgn == 0.0:
            continue
        t_ln = rg_ln - k * lnaz
        if t_ln >= prev_ln and k > 2:
            break
        prev_ln = t_ln
        if t_ln < -745.0:
            break
        corr += sgn * math.exp(t_ln) * cmath.exp(-1j * k * argz)
    return lead - corr


def _integral_ok(alpha: float, beta: float, z: complex) -> bool:
    """Applicability guard for the integral representation."""
    if not (0.0 < alpha <= 1.0 and beta < 1.0 + alpha - 1e-9):
        return False
    argz = abs(cmath.phase(z))
    if abs(argz - alpha * math.pi) < 0.01:
        return False
    if argz < alpha * math.pi:
        x = abs(z) ** (1.0 / alpha)
        if x * math.cos(argz / alpha) + abs((1.0 - beta) / alpha) * abs(
            math.log(abs(z))
        ) > _LOG_HUGE:
            return False
    return True


def _ml_integral(alpha: float, beta: float, z: complex) -> complex:
    """Real-line integral representation, exact in the mid range.

    E = chi_{|arg z| < alpha*pi} * (1/alpha) z^((1-beta)/alpha) e^{z^(1/alpha)}
        + (1/pi) int_0^inf e^{-u} u^(alpha-beta)
          (u^alpha sin(pi(1-beta)) - z sin(pi(1-beta+alpha)))
          / (u^(2alpha) - 2 u^alpha z cos(alpha pi) + z^2) du.

    The integrand peaks near u = |z|^(1/alpha); beyond u ~ 690 the
    exponential factor is below double underflow, so the tail is capped.
    """
    s1 = math.sin(math.pi * (1.0 - beta))
    s2 = math.sin(math.pi * (1.0 - beta + alpha))
    c = math.cos(alpha * math.pi)

    def f(u):
        ua = u**alpha
        return (
            (ua * s1 - z * s2)
            * math.exp(-u)
            * u ** (alpha - beta)
            / ((ua * ua - 2.0 * ua * z * c + z * z) * math.pi)
        )

    big_u = abs(z) ** (1.0 / alpha)
    upper = min(big_u, _LOG_HUGE) + 60.0
    # the u^(alpha-beta) endpoint factor can be strongly singular (down
    # to u^(-1+eps) for beta near 1+alpha); flatten it on [0, 1] with the
    # substitution u = w^p, which also keeps quad's error estimate honest
    p = max(1.0, 2.0 / (alpha - beta + 1.0))
    with warnings.catch_warnings():
        # the error estimate is checked below; a noisy estimate routes to
        # the exact series instead
        warnings.simplefilter("ignore", IntegrationWarning)
        val0, err0 = quad(
            lambda w: f(w**p) * p * w ** (p - 1.0),
            0.0, 1.0, complex_func=True, limit=200,
            epsabs=1e-13, epsrel=1e-12,
        )
        pts = [big_u] if 1.0 < big_u < upper else None
        val1, err1 = quad(
            f, 1.0, upper, complex_func=True, points=pts, limit=500,
            epsabs=1e-13, epsrel=1e-12,
        )
    val = val0 + val1
    err = abs(err0) + abs(err1)
    if abs(cmath.phase(z)) < alpha * math.pi:
        val = val + z ** ((1.0 - beta) / alpha) * cmath.exp(z ** (1.0 / alpha)) / alpha
    if abs(err) > 1e-7 * (abs(val) + 1e-280):
        # quadrature failed to settle: fall back to the slow exact series
        return _series_mp(alpha, beta, z)
    return val


def ml2(params: MLParams, z: complex) -> complex:
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z)."""
    z = complex(z)
    a, b = params.alpha, params.beta
    if z == 0:
        return complex(reciprocal_gamma(b))
    if a > 1.0:
        w = cmath.sqrt(z)
        half = replace(params, alpha=a / 2.0, mu=None)
        return 0.5 * (ml2(half, w) + ml2(half, -w))
    x, res_ln = _series_cost(a, z)
    if res_ln > _LOG_HUGE:
        raise RangeOverflow(f"|E| ~ exp({res_ln:.1f}) exceeds double range")
    az = abs(z)
    argz = abs(cmath.phase(z))
    if az <= params.switch_radius and x < 660.0 and x - res_ln < _FLOAT_LOSS:
        v = _series_float(params, z)
        if v is not None:
            return v
    if (
        az >= params.switch_radius
        and argz <= params.mu
        and -x - res_ln < math.log(1e-9)
    ):
        # asymptotic remainder ~ exp(-x) is negligible against the result
        return ml_asymptotic(params, z)
    if _integral_ok(a, b, z):
        return _ml_integral(a, b, z)
    if az >= params.switch_radius and argz <= params.mu and 0.0 < a < 2.0:
        return ml_asymptotic(params, z)
    if a <= 1.0 and b > 1.0 + a - 1e-9 and az > 1.5:
        # no fast branch covers beta > 1 + alpha directly; reduce beta
        # into the integral range with E_{a,b} = (E_{a,b-a} - 1/G(b-a))/z,
        # stepping up from b - k*a in (1 - a, 1].  Each step divides by
        # z, so the |z| > 1.5 guard keeps the recurrence contractive.
        k = math.ceil((b - 1.0) / a - 1e-12)
        bred = b - k * a
        if bred > 0.0 and _integral_ok(a, bred, z):
            v = _ml_integral(a, bred, z)
            for i in range(k):
                v = (v - reciprocal_gamma(bred + i * a)) / z
            return v
    return ml_series(params, z)


def ml1(params: MLParams, z: complex) -> complex:
    """One-parameter Mittag-Leffler function E_alpha(z) = E_{alpha,1}(z)."""
    if params.beta == 1.0:
        return ml2(params, z)
    return ml2(replace(params, beta=1.0), z)


def _ml2_any_beta(params: MLParams, beta: float, z: complex) -> complex:
    """E_{alpha,beta} for arbitrary real beta (internal).

    Non-positive beta is lifted into the supported range via
    E_{a,b}(z) = 1/Gamma(b) + z E_{a,b+a}(z).
    """
    if beta > 0.25:
        return ml2(replace(params, beta=beta), z)
    return reciprocal_gamma(beta) + z * _ml2_any_beta(params, beta + params.alpha, z)


def _deriv_series_float(params: MLParams, k: int, z: complex):
    """Term-differentiated series in doubles; None -> escalate."""
    a, b = params.alpha, params.beta
    tol = params.series_tol
    az = abs(z)
    kpeak = int(az ** (1.0 / a) / a) + 2 if az > 1.0 else 0
    # ratio of consecutive falling-factorial prefactors handled via lgamma
    s = 0.0 + 0.0j
    zp = 1.0 + 0.0j
    small = 0
    for j in range(params.max_terms):
        ln_pref = math.lgamma(j + k + 1) - math.lgamma(j + 1)
        term = zp * math.exp(ln_pref - math.lgamma(a * (j + k) + b))
        s += term
        if abs(term) <= tol * (1.0 + abs(s)) and j >= kpeak:
            small += 1
            if small >= 2:
                return s
        else:
            small = 0
        zp *= z
        if abs(zp) > 1e290:
            return None
    return None


def _deriv_series_mp(params: MLParams, k: int, z: complex, extra: int = 25) -> complex:
    a, b = params.alpha, params.beta
    x, res_ln = _series_cost(a, z)
    loss = max(0.0, x - res_ln)
    dps = int(loss / _LN10) + extra
    if dps > _MP_DPS_CAP:
        raise NonConvergence("derivative series needs too many digits")
    old = mp.dps
    mp.dps = dps
    try:
        aa = mpf(a)
        bb = mpf(b)
        zz = mpc(z)
        s = mpc(0)
        zp = mpc(1)
        kpeak = int(x / a) + 10 if abs(z) > 1.0 else 10
        cut = mpf(10) ** (-dps + 5)
        j = 0
        while True:
            pref = _mp_gamma(j + k + 1) / _mp_gamma(j + 1)
            term = zp * pref / _mp_gamma(aa * (j + k) + bb)
            s += term
            j += 1
            zp *= zz
            if j > kpeak and abs(term) < cut * (1 + abs(s)):
                break
            if j > 20 * kpeak + 200000:
                raise NonConvergence("derivative series stalled")
        return complex(s)
    finally:
        mp.dps = old


def ml_deriv(params: MLParams, k: int, z: complex) -> complex:
    """k-th derivative of E_{alpha,beta} at z.

    Small arguments use the term-differentiated series.  Away from the
    origin the derivative is rewritten exactly in terms of undifferentiated
    E values through E'_{a,b}(z) = (E_{a,b-1}(z) - (b-1) E_{a,b}(z)) / (a z),
    applied k times symbolically, so every evaluation branch of ml2 is
    available to it.
    """
    if k < 0:
        raise DomainError("derivative order must be >= 0")
    if k == 0:
        return ml2(params, z)
    z = complex(z)
    a, b = params.alpha, params.beta
    if z == 0:
        return complex(math.factorial(k) * reciprocal_gamma(a * k + b))
    x, res_ln = _series_cost(a, z)
    if abs(z) <= 1.0 or (x - res_ln < _FLOAT_LOSS and x < 600.0):
        v = _deriv_series_float(params, k, z)
        if v is not None:
            return v
        if abs(z) <= 1.0:
            return _deriv_series_mp(params, k, z)
    # symbolic reduction: terms {(shift, power): coeff} meaning
    # coeff * z**power * E_{a, b - shift}(z)
    terms: dict[tuple[int, int], float] = {(0, 0): 1.0}
    for _ in range(k):
        new: dict[tuple[int, int], float] = {}

        def add(key, val):
            new[key] = new.get(key, 0.0) + val

        for (sh, p), cc in terms.items():
            bv = b - sh
            if p != 0:
                add((sh, p - 1), cc * p)
            add((sh + 1, p - 1), cc / a)
            add((sh, p - 1), -cc * (bv - 1.0) / a)
        terms = new
    total = 0.0 + 0.0j
    for (sh, p), cc in terms.items():
        if cc == 0.0:
            continue
        total += cc * z**p * _ml2_any_beta(params, b - sh, z)
    return total


# ---------------------------------------------------------------------------
# vectorized evaluation along a fixed-argument ray (trajectory workloads)
# ---------------------------------------------------------------------------


def _panel_edges(big_lo: float, big_hi: float, gap_over_alpha: float) -> np.ndarray:
    """Panel boundaries for the ray quadrature.

    The kernel has a resonance of relative width ~ gap/alpha near
    u = |z|^(1/alpha), which sweeps over [big_lo, big_hi] as the modulus
    varies; the geometric ladder must start below the smallest resonance
    and be fine enough to resolve the narrowest one.  The e^{-u} bulk
    always lives on u in [0, ~60]."""
    u_max = min(big_hi, _LOG_HUGE) + 60.0
    lo = min(1e-3, big_lo / 16.0)
    lo = max(lo, 1e-280)
    ratio = math.exp(min(0.288, max(gap_over_alpha, 0.02) / 4.0))
    n = math.ceil(math.log(u_max / lo) / math.log(ratio))
    if n > 800:
        ratio = (u_max / lo) ** (1.0 / 800.0)
        n = 800
    edges = [0.0, lo]
    u = lo
    for _ in range(n):
        u *= ratio
        edges.append(min(u, u_max))
        if u >= u_max:
            break
    return np.unique(np.array(edges))


def ml_ray(
    alpha: float,
    beta: float,
    moduli: np.ndarray,
    theta: float,
    nodes_per_panel: int = 24,
) -> np.ndarray:
    """E_{alpha,beta}(m * e^{i theta}) for an array of moduli m >= 0.

    Vectorized composite Gauss-Legendre version of the integral
    representation, sharing one node set across all points.  Requires
    0 < alpha <= 1, beta < 1 + alpha, |theta| bounded away from
    alpha*pi, and an exponential part representable in doubles.
    Intended for dense trajectory sampling; agreement with ml2 is the
    correctness contract (tested).
    """
    if not (0.0 < alpha <= 1.0 and beta < 1.0 + alpha - 1e-9):
        raise DomainError("ml_ray requires 0 < alpha <= 1 and beta < 1 + alpha")
    if abs(abs(theta) - alpha * math.pi) < 0.02:
        raise DomainError("ray too close to the representation's singular ray")
    m = np.asarray(moduli, dtype=float)
    if m.size == 0:
        return np.zeros(0, dtype=complex)
    if np.any(m < 0):
        raise DomainError("moduli must be non-negative")
    z = m * cmath.exp(1j * theta)
    mpos = m[m > 0]
    big = mpos ** (1.0 / alpha) if mpos.size else np.array([1.0])
    gap = abs(abs(theta) - alpha * math.pi) / alpha
    edges = _panel_edges(float(big.min()), float(big.max()), gap)
    # Gauss-Legendre nodes mapped into each panel; the first panel gets a
    # power substitution u = w^q to absorb the u^(alpha-beta) singularity
    xg, wg = np.polynomial.legendre.leggauss(nodes_per_panel)
    us = []
    ws = []
    q = max(1.0, 2.0 / alpha)
    for a0, b0 in zip(edges[:-1], edges[1:]):
        if a0 == 0.0:
            # u = b0 * w**q on w in [0,1]
            w0 = 0.5 * (xg + 1.0)
            jac = 0.5 * b0 * q * w0 ** (q - 1.0)
            us.append(b0 * w0**q)
            ws.append(wg * jac)
        else:
            us.append(0.5 * (b0 - a0) * xg + 0.5 * (b0 + a0))
            ws.append(wg * 0.5 * (b0 - a0))
    u = np.concatenate(us)
    w = np.concatenate(ws)
    good = u > 0.0
    u = u[good]
    w = w[good]
    s1 = math.sin(math.pi * (1.0 - beta))
    s2 = math.sin(math.pi * (1.0 - beta + alpha))
    c = math.cos(alpha * math.pi)
    ua = u**alpha
    base = np.exp(-u) * u ** (alpha - beta) / math.pi * w
    # kernel(u, z) = (ua*s1 - z*s2) / (ua^2 - 2 ua z c + z^2), outer product
    # evaluated in chunks to bound the temporary matrices
    vals = np.empty(z.shape, dtype=complex)
    ua2 = ua * ua
    for lo in range(0, z.size, 512):
        zz = z[lo : lo + 512, None]
        num = ua[None, :] * s1 - zz * s2
        den = ua2[None, :] - 2.0 * c * ua[None, :] * zz + zz * zz
        vals[lo : lo + 512] = (num / den * base[None, :]).sum(axis=1)
    if abs(theta) < alpha * math.pi:
        wexp = np.zeros_like(vals)
        pos = m > 0
        zp = z[pos]
        wr = zp ** (1.0 / alpha)
        if np.any(wr.real > _LOG_HUGE):
            raise RangeOverflow("exponential term exceeds double range on ray")
        wexp[pos] = zp ** ((1.0 - beta) / alpha) * np.exp(wr) / alpha
        vals = vals + wexp
    vals[m == 0.0] = reciprocal_gamma(beta)
    return vals


# ---------------------------------------------------------------------------
# zero finding via the argument principle on an adaptive quadtree
# ---------------------------------------------------------------------------


def _cell_winding(evaluate, rect, n_per_edge: int, budget: int = 6000):
    """Winding number of E over the rectangle boundary.

    Boundary samples are refined adaptively on three triggers: a phase
    step above 1.0 radian, a sharp magnitude dip between neighbors, and
    a step differing from its predecessor by more than 0.25 radian.  The
    last two matter for zeros just inside an edge: their phase swing can
    hide between samples with every wrapped step small (a full 2 pi turn
    aliasing to ~0), but the swing bends the step profile and dips |E|,
    which the variation and dip tests detect.  Returns (winding, min
    |E|); None winding signals an unreliable contour (unresolved
    refinement or a value too close to zero) that the caller resolves by
    subdividing.
    """
    x0, x1, y0, y1 = rect
    corners = [
        complex(x0, y0),
        complex(x1, y0),
        complex(x1, y1),
        complex(x0, y1),
    ]
    pts: list[complex] = []
    for c0, c1 in zip(corners, corners[1:] + corners[:1]):
        for k in range(n_per_edge):
            pts.append(c0 + (k / n_per_edge) * (c1 - c0))
    vals = [evaluate(p) for p in pts]
    vmin = min(abs(v) for v in vals)
    scale = sorted(abs(v) for v in vals)[len(vals) // 2] + 1e-300
    tiny = 1e-9 * (2.0 * (x1 - x0) + 2.0 * (y1 - y0))
    resolved = False
    while not resolved:
        n = len(pts)
        steps = [
            _wrap_angle(cmath.phase(vals[(i + 1) % n]) - cmath.phase(vals[i]))
            for i in range(n)
        ]
        new_pts: list[complex] = []
        new_vals: list[complex] = []
        resolved = True
        for i in range(n):
            new_pts.append(pts[i])
            new_vals.append(vals[i])
            j = (i + 1) % n
            a0, a1 = abs(vals[i]), abs(vals[j])
            seg = abs(pts[j] - pts[i])
            big_step = abs(steps[i]) > 1.0
            bend = abs(steps[i] - steps[i - 1]) > 0.25 and seg > tiny
            dip = (
                min(a0, a1) < 0.4 * max(a0, a1)
                and min(a0, a1) < 0.5 * scale
                and seg > tiny
            )
            if big_step or bend or dip:
                mid = 0.5 * (pts[i] + pts[j])
                vm = evaluate(mid)
                vmin = min(vmin, abs(vm))
                new_pts.append(mid)
                new_vals.append(vm)
                resolved = False
        pts, vals = new_pts, new_vals
        if vmin < 1e-5 * scale:
            return None, vmin
        if not resolved and len(pts) > budget:
            return None, vmin
    if vmin < 1e-5 * scale:
        return None, vmin
    total = 0.0
    for i in range(len(pts)):
        total += _wrap_angle(
            cmath.phase(vals[(i + 1) % len(pts)]) - cmath.phase(vals[i])
        )
    return int(round(total / (2.0 * math.pi))), vmin


def _wrap_angle(a: float) -> float:
    return (a + math.pi) % (2.0 * math.pi) - math.pi


def _newton_zero(params: MLParams, z0: complex, rect, zero_tol: float):
    """Damped Newton refinement from z0, confined near rect."""
    x0, x1, y0, y1 = rect
    diag = math.hypot(x1 - x0, y1 - y0)
    z = z0
    fz = ml2(params, z)
    for _ in range(80):
        if abs(fz) <= zero_tol:
            return z, abs(fz)
        d = ml_deriv(params, 1, z)
        if d == 0:
            raise NewtonDivergence("zero derivative at Newton iterate")
        step = fz / d
        lam = 1.0
        for _ in range(30):
            zn = z - lam * step
            try:
                fn = ml2(params, zn)
            except RangeOverflow:
                # trial point deep in the growth sector; shorten the step
                lam *= 0.5
                continue
            if abs(fn) < abs(fz):
                z, fz = zn, fn
                break
            lam *= 0.5
        else:
            raise NewtonDivergence("no descent direction")
        if abs(z - z0) > 4.0 * diag:
            raise NewtonDivergence("iterate left the isolating cell")
    if abs(fz) <= zero_tol:
        return z, abs(fz)
    raise NewtonDivergence("Newton failed to reach residual tolerance")


def ml_zeros(
    params: MLParams,
    region: tuple[float, float, float, float],
    zero_tol: float = 1e-10,
    max_depth: int = 13,
    samples_per_edge: int = 16,
) -> list[MLZero]:
    """All zeros of E_{alpha,beta} in the rectangle region.

    region is (re_min, re_max, im_min, im_max).  Cells with nonzero
    winding are subdivided until a single zero is isolated, then refined
    by damped Newton; the result list is sorted by (modulus, argument).
    """
    if zero_tol <= 0.0:
        raise DomainError("zero_tol must be positive")
    x0, x1, y0, y1 = region
    if not (x0 < x1 and y0 < y1):
        raise DomainError("degenerate zero-search region")
    found: list[MLZero] = []
    # boundary points recur across sibling and parent cells; memoize
    cache: dict[complex, complex] = {}

    def evaluate(z: complex) -> complex:
        v = cache.get(z)
        if v is None:
            v = ml2(params, z)
            cache[z] = v
        return v

    def visit(rect, depth, spe=samples_per_edge):
        """Process one cell; returns the set of zero ids accounted for,
        which the caller checks against its own winding count.  A child
        can compute winding 0 while hiding a zero pair just inside a
        shared edge (the boundary walk misses a full phase turn), so the
        parent re-subdivides with a shifted split when the counts
        disagree.  Returning ids (indices into found) instead of counts
        keeps zeros on shared edges from being double-counted."""
        wind, vmin = _cell_winding(evaluate, rect, spe)
        if wind is None:
            if depth >= max_depth:
                raise ContourThroughZero(
                    f"cell {rect} boundary stayed near a zero at depth {depth}"
                )
            return _subdivide(rect, depth, spe)
        if wind == 0:
            return frozenset()
        rx0, rx1, ry0, ry1 = rect
        diag = math.hypot(rx1 - rx0, ry1 - ry0)
        if wind == 1 or diag < 1e-3:
            center = complex(0.5 * (rx0 + rx1), 0.5 * (ry0 + ry1))
            try:
                z, res = _newton_zero(params, center, rect, zero_tol)
            except NewtonDivergence:
                if depth >= max_depth:
                    raise ContourThroughZero(f"unresolvable cell {rect}")
                return _subdivide(rect, depth, spe)
            if not (
                rx0 - 1e-9 <= z.real <= rx1 + 1e-9
                and ry0 - 1e-9 <= z.imag <= ry1 + 1e-9
            ):
                # Newton escaped its isolating cell: the start point was
                # poor, not the cell; subdivide to get a better one
                if depth >= max_depth:
                    raise ContourThroughZero(f"unresolvable cell {rect}")
                return _subdivide(rect, depth, spe)
            for idx, prior in enumerate(found):
                if abs(prior.z - z) < 1e-7 * (1.0 + abs(z)):
                    return frozenset({idx})
            found.append(
                MLZero(
                    z=z,
                    modulus=abs(z),
                    argument=cmath.phase(z),
                    residual=res,
                    winding_cell=rect,
                )
            )
            return frozenset({len(found) - 1})
        if depth >= max_depth:
            raise ContourThroughZero(f"could not separate {wind} zeros in {rect}")
        got = _subdivide(rect, depth, spe)
        if len(got) >= wind:
            # children's zeros are Newton-verified and deduped, so an
            # overcount means this cell's own walk missed a turn; accept
            return got
        # children found fewer zeros than this cell's winding: either a
        # child aliased a phase turn (hidden pair near a shared edge) or
        # this cell overcounted.  Re-measure this cell with a denser walk
        # first (cheap) before re-running subtrees with shifted splits.
        wind2, _ = _cell_winding(evaluate, rect, max(spe * 4, 64))
        if wind2 is not None and len(got) >= wind2:
            return got
        got = got | _subdivide(rect, depth, max(spe * 4, 64), frac=0.4411331)
        if len(got) >= wind:
            return got
        got = got | _subdivide(rect, depth, max(spe * 8, 128), frac=0.5598669)
        if len(got) < wind:
            raise ContourThroughZero(
                f"cell {rect}: winding {wind} but {len(got)} zeros recovered"
            )
        return got

    def _subdivide(rect, depth, spe, frac=0.5073917):
        rx0, rx1, ry0, ry1 = rect
        # nudge the split point so a zero sitting exactly on the new
        # interior edges is unlikely
        mx = rx0 + frac * (rx1 - rx0)
        my = ry0 + (1.0 - frac) * (ry1 - ry0)
        total = frozenset()
        for sub in (
            (rx0, mx, ry0, my),
            (mx, rx1, ry0, my),
            (rx0, mx, my, ry1),
            (mx, rx1, my, ry1),
        ):
            total = total | visit(sub, depth + 1, spe)
        return total

    visit((x0, x1, y0, y1), 0)
    found[:] = [
        w
        for w in found
        if x0 - 1e-9 <= w.z.real <= x1 + 1e-9 and y0 - 1e-9 <= w.z.imag <= y1 + 1e-9
    ]
    found.sort(key=lambda w: (w.modulus, w.argument))
    return found
