"""Singular-point detection on parametric curves and ML trajectories.

Cusps are parameters where the velocity vanishes and the traversal
tangent direction jumps; for ML trajectories they correspond exactly to
zeros of E_{alpha,alpha} along the eigenvalue ray.  Double and multiple
points are transverse self-intersections of the curve.  A vanishing
velocity with no genuine tangent discontinuity (the curve retraces its
own branch) is a reducible parametrization artifact and is flagged, not
reported.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DegenerateTangent, DomainError
from .linsys import (
    AdaptivePolicy,
    ComplexPair,
    FractionalLinearSystem,
    RealEigen,
    Trajectory,
    UniformPolicy,
    sample_trajectory,
)
from .mlf import MLParams, MLZero, ml2, ml_ray, ml_zeros


@dataclass(frozen=True)
class MLCurve:
    """Planar trajectory of the complex-pair system with eigenvalues
    r e^(+-i theta), initial condition (c1, c2)."""

    alpha: float
    r: float
    theta: float
    x0: tuple[float, float] = (1.0, 0.0)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError("MLCurve alpha must lie in (0, 1)")
        if self.r <= 0.0:
            raise DomainError("MLCurve r must be positive")

    @property
    def lam(self) -> complex:
        return self.r * cmath.exp(1j * self.theta)


@dataclass(frozen=True)
class AnalyticCurve:
    """Curve given by value and derivative handles on [t_min, t_max]."""

    x: object
    y: object
    dx: object
    dy: object
    t_min: float
    t_max: float


@dataclass(frozen=True)
class SampledCurve:
    traj: Trajectory


ParametricCurve = MLCurve | AnalyticCurve | SampledCurve


@dataclass
class SingularPoint:
    kind: str  # "cusp" | "double" | "multiple"
    location: tuple[float, float]
    parameters: list[float]
    tangent_jump: float | None = None
    speed_min: float | None = None
    reducible_flag: bool = False


@dataclass
class LimitCircleReport:
    predicted_radius: float
    sampled_radius: float
    relative_error: float
    window: tuple[float, float]


@dataclass(frozen=True)
class SingularConfig:
    cusp_angle_threshold: float = math.pi / 2.0
    speed_tol_factor: float = 1e-3  # times the median sampled speed
    dip_prominence: float = 0.25  # near-cusp trigger, times the median speed
    dip_recovery: float = 10.0  # both-sided speed recovery factor for a dip
    merge_radius: float | None = None  # default 1e-6 x bbox diagonal
    param_separation: float | None = None  # default 1e-3 x (t_end - t_start)
    zero_tol: float = 1e-9
    arg_match_tol: float = 1e-6
    zero_arg_window: float = 0.5  # sector half-width for the zero search
    sampling: AdaptivePolicy = AdaptivePolicy()


# ---------------------------------------------------------------------------
# curve evaluation
# ---------------------------------------------------------------------------


def _ml_params(curve: MLCurve, beta: float) -> MLParams:
    return MLParams(alpha=curve.alpha, beta=beta)


def _position(curve: ParametricCurve, t: float) -> np.ndarray:
    if isinstance(curve, MLCurve):
        e = ml2(_ml_params(curve, 1.0), curve.lam * t**curve.alpha) if t > 0 else 1.0 + 0.0j
        c1, c2 = curve.x0
        return np.array([e.real * c1 + e.imag * c2, -e.imag * c1 + e.real * c2])
    if isinstance(curve, AnalyticCurve):
        return np.array([float(curve.x(t)), float(curve.y(t))])
    traj = curve.traj
    return np.array(
        [
            np.interp(t, traj.t, traj.states[:, 0]),
            np.interp(t, traj.t, traj.states[:, 1]),
        ]
    )


def _velocity(curve: ParametricCurve, t: float) -> np.ndarray:
    if isinstance(curve, MLCurve):
        if t <= 0.0:
            raise DomainError("MLCurve velocity needs t > 0")
        d = (
            curve.lam
            * t ** (curve.alpha - 1.0)
            * ml2(_ml_params(curve, curve.alpha), curve.lam * t**curve.alpha)
        )
        c1, c2 = curve.x0
        return np.array([d.real * c1 + d.imag * c2, -d.imag * c1 + d.real * c2])
    if isinstance(curve, AnalyticCurve):
        return np.array([float(curve.dx(t)), float(curve.dy(t))])
    traj = curve.traj
    i = int(np.searchsorted(traj.t, t))
    i = min(max(i, 1), traj.t.size - 1)
    dt = traj.t[i] - traj.t[i - 1]
    return (traj.states[i] - traj.states[i - 1]) / dt


def _speed(curve: ParametricCurve, t: float) -> float:
    return float(np.linalg.norm(_velocity(curve, t)))


def _t_interval(curve: ParametricCurve, t_range=None) -> tuple[float, float]:
    if t_range is not None:
        lo, hi = float(t_range[0]), float(t_range[1])
    elif isinstance(curve, AnalyticCurve):
        lo, hi = curve.t_min, curve.t_max
    elif isinstance(curve, SampledCurve):
        lo, hi = float(curve.traj.t[0]), float(curve.traj.t[-1])
    else:
        raise DomainError("MLCurve operations need an explicit t_range")
    if not lo < hi:
        raise DomainError("empty parameter interval")
    return lo, hi


def _sample_curve(curve: ParametricCurve, t_range, config: SingularConfig) -> Trajectory:
    """Adaptively sampled polyline of the curve."""
    lo, hi = _t_interval(curve, t_range)
    if isinstance(curve, SampledCurve):
        return curve.traj
    if isinstance(curve, MLCurve):
        lam = curve.lam
        if lam.imag == 0.0:
            # real eigenvalue: the rotation block degenerates to a
            # common scalar factor on both components
            blocks = [RealEigen(lam.real), RealEigen(lam.real)]
        else:
            blocks = [ComplexPair(lam.real, lam.imag)]
        sys = FractionalLinearSystem(
            alpha=curve.alpha, blocks=blocks, x0=list(curve.x0)
        )
        return sample_trajectory(sys, lo, hi, config.sampling)
    # analytic curve: same turn-angle refinement loop as linsys sampling
    pol = config.sampling
    min_dt = pol.min_dt if pol.min_dt is not None else 1e-7 * (hi - lo)
    ts = np.linspace(lo, hi, 512)
    xs = np.array([[float(curve.x(t)), float(curve.y(t))] for t in ts])
    for _ in range(60):
        seg = np.diff(xs, axis=0)
        cross = seg[:-1, 0] * seg[1:, 1] - seg[:-1, 1] * seg[1:, 0]
        dot = (seg[:-1] * seg[1:]).sum(axis=1)
        ang = np.abs(np.arctan2(cross, dot))
        bad = np.where(ang > pol.max_turn_angle)[0] + 1
        if bad.size == 0:
            break
        dt = np.diff(ts)
        new_ts = [
            0.5 * (ts[iv] + ts[iv + 1])
            for v in bad
            for iv in (v - 1, v)
            if dt[iv] > 2.0 * min_dt
        ]
        if not new_ts:
            break
        merged = np.unique(np.concatenate([ts, np.array(new_ts)]))
        if merged.size > pol.max_points:
            merged = merged[: pol.max_points]
        add = np.setdiff1d(merged, ts)
        if add.size == 0:
            break
        add_xs = np.array([[float(curve.x(t)), float(curve.y(t))] for t in add])
        order = np.argsort(np.concatenate([ts, add]))
        ts = np.concatenate([ts, add])[order]
        xs = np.concatenate([xs, add_xs], axis=0)[order]
    return Trajectory(alpha=1.0, t=ts, states=xs, source={"kind": "analytic"})


# ---------------------------------------------------------------------------
# critical points (vanishing velocity)
# ---------------------------------------------------------------------------


def critical_points(
    curve: ParametricCurve,
    t_range=None,
    config: SingularConfig | None = None,
) -> list[tuple[float, dict]]:
    """Parameters t0 with (numerically) vanishing velocity.

    MLCurve: reduces exactly to zeros z* of E_{alpha,alpha} via
    t0 = (|z*|/r)^(1/alpha), restricted to zeros whose argument matches
    the eigenvalue angle theta within arg_match_tol.  Other curves:
    bracketed speed minima below the scaled speed tolerance.
    """
    config = config or SingularConfig()
    lo, hi = _t_interval(curve, t_range)
    if isinstance(curve, MLCurve):
        out = []
        for z in _ray_zeros(curve, lo, hi, config):
            mism = abs(z.argument - curve.theta)
            if mism <= config.arg_match_tol:
                t0 = (z.modulus / curve.r) ** (1.0 / curve.alpha)
                out.append(
                    (
                        t0,
                        {
                            "zero": z.z,
                            "residual": z.residual,
                            "arg_mismatch": mism,
                        },
                    )
                )
        out.sort(key=lambda p: p[0])
        return out
    traj = _sample_curve(curve, (lo, hi), config)
    dts = np.diff(traj.t)
    speeds = np.linalg.norm(np.diff(traj.states, axis=0), axis=1) / dts
    med = float(np.median(speeds))
    tol = config.speed_tol_factor * med
    out = []
    for i in range(1, speeds.size - 1):
        if speeds[i] <= speeds[i - 1] and speeds[i] <= speeds[i + 1] and speeds[i] < tol:
            a, b = traj.t[i - 1], traj.t[i + 2]
            res = minimize_scalar(
                lambda t: _speed(curve, t), bounds=(a, b), method="bounded",
                options={"xatol": 1e-12 * (hi - lo)},
            )
            t0 = float(res.x)
            if out and abs(t0 - out[-1][0]) < 1e-6 * (hi - lo):
                continue
            out.append((t0, {"speed_min": float(res.fun)}))
    return out


def _ray_zeros(curve: MLCurve, t_lo: float, t_hi: float, config: SingularConfig):
    """Zeros of E_{alpha,alpha} inside the sector swept by the ray."""
    a = curve.alpha
    m_lo = curve.r * max(t_lo, 1e-6) ** a
    m_hi = curve.r * t_hi**a
    w = config.zero_arg_window
    phis = np.linspace(curve.theta - w, curve.theta + w, 41)
    res = np.concatenate([m_lo * np.cos(phis), m_hi * np.cos(phis)])
    ims = np.concatenate([m_lo * np.sin(phis), m_hi * np.sin(phis)])
    region = (
        float(res.min()) - 0.05 * m_hi,
        float(res.max()) + 0.05 * m_hi,
        float(ims.min()) - 0.05 * m_hi,
        float(ims.max()) + 0.05 * m_hi,
    )
    params = MLParams(alpha=a, beta=a)
    zeros = ml_zeros(params, region, zero_tol=config.zero_tol)
    keep = []
    for z in zeros:
        if m_lo - 1e-9 <= z.modulus <= m_hi + 1e-9 and abs(z.argument - curve.theta) <= w:
            keep.append(z)
    return keep


# ---------------------------------------------------------------------------
# tangent jump
# ---------------------------------------------------------------------------


def _unit(v: np.ndarray) -> np.ndarray | None:
    n = np.linalg.norm(v)
    if n < 1e-300:
        return None
    return v / n


def tangent_jump(curve: ParametricCurve, t0: float, probe_dt: float) -> float:
    """Angle between the traversal tangents just before and after t0.

    Probes a halving sequence of offsets and reports the converged
    angle.  When the incoming and outgoing arcs coincide as point sets
    (a reducible parametrization retracing its own branch), the tangent
    of the underlying curve is continuous and the jump is reported
    through the unoriented tangent line instead.
    """
    if probe_dt <= 0.0:
        raise DomainError("probe_dt must be positive")
    angles = []
    dt = probe_dt
    got_any = False
    for _ in range(14):
        um = _unit(_velocity(curve, t0 - dt))
        up = _unit(_velocity(curve, t0 + dt))
        if um is not None and up is not None:
            got_any = True
            c = float(np.clip(np.dot(um, up), -1.0, 1.0))
            angles.append(math.acos(c))
            if len(angles) >= 3 and abs(angles[-1] - angles[-2]) < 0.02 and abs(
                angles[-2] - angles[-3]
            ) < 0.02:
                break
        dt *= 0.5
    if not got_any:
        raise DegenerateTangent("velocity below round-off on the probe sequence")
    angle = angles[-1]
    if angle > math.pi / 2.0 and _arcs_coincide(curve, t0, probe_dt):
        return math.pi - angle  # unoriented tangent line of the retraced branch
    return angle


def _corner_angle(curve: ParametricCurve, t0: float, probe_dt: float) -> float | None:
    """Tangent turn across t0 at the fixed probe scale (no extrapolation).

    A near-cusp is smooth at vanishing scale, so the probe_dt -> 0 limit
    of tangent_jump is 0 there; the corner visible at the dip's own width
    is what detection classifies on.  The reducible-retrace reduction
    matches tangent_jump."""
    um = _unit(_velocity(curve, t0 - probe_dt))
    up = _unit(_velocity(curve, t0 + probe_dt))
    if um is None or up is None:
        return None
    angle = math.acos(float(np.clip(np.dot(um, up), -1.0, 1.0)))
    if angle > math.pi / 2.0 and _arcs_coincide(curve, t0, probe_dt):
        return math.pi - angle
    return angle


def _arcs_coincide(curve: ParametricCurve, t0: float, probe_dt: float) -> bool:
    """True when the arcs before and after t0 trace the same point set."""
    for s in (0.35 * probe_dt, 0.7 * probe_dt, probe_dt):
        p = _position(curve, t0 - s)
        scale = np.linalg.norm(p - _position(curve, t0))
        if scale < 1e-300:
            continue
        res = minimize_scalar(
            lambda u: float(np.linalg.norm(_position(curve, t0 + u) - p)),
            bounds=(1e-6 * probe_dt, 2.0 * probe_dt),
            method="bounded",
            options={"xatol": 1e-10 * probe_dt},
        )
        if float(res.fun) > 1e-5 * max(scale, 1e-300):
            return False
    return True


# ---------------------------------------------------------------------------
# self-intersections
# ---------------------------------------------------------------------------


def _vertex_of(seg: int, s: float, eps: float = 1e-9) -> int | None:
    if s <= eps:
        return seg
    if s >= 1.0 - eps:
        return seg + 1
    return None


def _arc_neighbors(n: int, k: int, closed: bool):
    prev = k - 1 if k >= 1 else (n - 2 if closed else None)
    nxt = k + 1 if k <= n - 2 else (1 if closed else None)
    return prev, nxt


def _arc_crosses_line(points, d, base, nbrs) -> bool:
    """True when both arc neighbors lie strictly on opposite sides of the
    line through base with direction d."""
    prev, nxt = nbrs
    if prev is None or nxt is None:
        return False
    cp = d[0] * (points[prev][1] - base[1]) - d[1] * (points[prev][0] - base[0])
    cn = d[0] * (points[nxt][1] - base[1]) - d[1] * (points[nxt][0] - base[0])
    return cp * cn < 0.0


def _segment_crossings(points: np.ndarray, ts: np.ndarray, closed: bool):
    """Transverse crossings of the polyline, via a spatial hash on segments.

    Yields (i, j, s, v, xy): segment indices, local parameters in [0, 1],
    and the crossing location.  Adjacent segments are excluded; parallel
    overlaps are ignored (non-transverse).  A crossing that lands on a
    polyline vertex is accepted only when the two arcs actually pass
    through each other there (opposite-side test); this rejects the
    vertex touches generated by a retraced branch."""
    seg_a = points[:-1]
    seg_d = np.diff(points, axis=0)
    n = seg_a.shape[0]
    lens = np.linalg.norm(seg_d, axis=1)
    h = float(np.median(lens[lens > 0])) * 2.0 if np.any(lens > 0) else 1.0
    if h <= 0.0:
        return
    # when segment lengths span many orders of magnitude (e.g. an
    # exponentially growing ray) the median-based cell would rasterize
    # long segments over astronomically many cells; floor the cell size
    # against the bounding box instead
    diag = float(np.linalg.norm(points.max(axis=0) - points.min(axis=0)))
    h = max(h, diag / 512.0) if diag > 0.0 else h
    grid: dict[tuple[int, int], list[int]] = {}
    mins = np.minimum(seg_a, seg_a + seg_d) / h
    maxs = np.maximum(seg_a, seg_a + seg_d) / h
    for i in range(n):
        for cx in range(int(math.floor(mins[i, 0])), int(math.floor(maxs[i, 0])) + 1):
            for cy in range(int(math.floor(mins[i, 1])), int(math.floor(maxs[i, 1])) + 1):
                grid.setdefault((cx, cy), []).append(i)
    # candidate pairs from shared buckets, deduplicated, then batch
    # intersection arithmetic; only the few surviving hits get the
    # per-hit vertex-touch treatment
    pair_blocks = []
    for bucket in grid.values():
        if len(bucket) < 2:
            continue
        arr = np.asarray(bucket, dtype=np.int64)
        ii, jj = np.meshgrid(arr, arr, indexing="ij")
        mask = jj > ii + 1
        if np.any(mask):
            pair_blocks.append(ii[mask] * n + jj[mask])
    if not pair_blocks:
        return
    keys = np.unique(np.concatenate(pair_blocks))
    pi = keys // n
    pj = keys % n
    u_all = seg_d[pi]
    w_all = seg_d[pj]
    den_all = u_all[:, 0] * w_all[:, 1] - u_all[:, 1] * w_all[:, 0]
    # require genuine transversality: near-parallel segment pairs
    # (retraced branches, shared tangent lines) are not self-intersections
    ok = np.abs(den_all) >= 1e-9 * lens[pi] * lens[pj]
    r_all = seg_a[pj] - seg_a[pi]
    with np.errstate(divide="ignore", invalid="ignore"):
        s_all = (r_all[:, 0] * w_all[:, 1] - r_all[:, 1] * w_all[:, 0]) / den_all
        v_all = (r_all[:, 0] * u_all[:, 1] - r_all[:, 1] * u_all[:, 0]) / den_all
    ok &= (s_all >= -1e-12) & (s_all <= 1.0 + 1e-12)
    ok &= (v_all >= -1e-12) & (v_all <= 1.0 + 1e-12)
    nv = points.shape[0]
    touched: set[tuple[int, int, int]] = set()
    for idx in np.nonzero(ok)[0]:
        i = int(pi[idx])
        j = int(pj[idx])
        s = min(max(float(s_all[idx]), 0.0), 1.0)
        v = min(max(float(v_all[idx]), 0.0), 1.0)
        u = seg_d[i]
        w = seg_d[j]
        xy = seg_a[i] + s * u
        k = _vertex_of(i, s)
        m = _vertex_of(j, v)
        if k is None and m is None:
            yield i, j, s, v, xy
            continue
        if k is not None and m is not None:
            key = (min(k, m), max(k, m), -1)
            if key in touched:
                continue
            touched.add(key)
            kn = _arc_neighbors(nv, k, closed)
            mn = _arc_neighbors(nv, m, closed)
            if kn[0] is None or kn[1] is None or mn[0] is None or mn[1] is None:
                continue
            dk = points[kn[1]] - points[kn[0]]
            dm = points[mn[1]] - points[mn[0]]
            if _arc_crosses_line(points, dk, points[k], mn) and _arc_crosses_line(
                points, dm, points[m], kn
            ):
                yield i, j, s, v, xy
            continue
        # mixed: one polyline vertex touches the interior of the other
        # segment; the vertex arc must cross that segment
        if k is None:
            k, seg, d = m, i, u
        else:
            seg, d = j, w
        key = (k, seg, -2)
        if key in touched:
            continue
        touched.add(key)
        if _arc_crosses_line(points, d, points[k], _arc_neighbors(nv, k, closed)):
            yield i, j, s, v, xy


def _refine_crossing(
    curve: ParametricCurve, t1: float, t2: float, span: float, lo: float, hi: float
):
    """Newton iteration on X(t1) - X(t2) = 0 with the analytic velocity."""
    for _ in range(25):
        f = _position(curve, t1) - _position(curve, t2)
        if np.linalg.norm(f) < 1e-14:
            break
        j = np.column_stack([_velocity(curve, t1), -_velocity(curve, t2)])
        try:
            step = np.linalg.solve(j, f)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(step)):
            return None
        lim = 0.1 * span
        step = np.clip(step, -lim, lim)
        # stay inside the sampled window: MLCurve velocities need t > 0
        # and a crossing refined outside the window is discarded anyway
        t1 = min(max(t1 - float(step[0]), lo), hi)
        t2 = min(max(t2 - float(step[1]), lo), hi)
    return t1, t2


def self_intersections(
    traj: Trajectory,
    merge_radius: float | None = None,
    param_separation: float | None = None,
    curve: ParametricCurve | None = None,
) -> list[SingularPoint]:
    """Double/multiple points of the sampled polyline.

    Crossings within merge_radius of each other are merged; a merged
    group with k distinct parameters reports kind "double" (k = 2) or
    "multiple" (k > 2).  When the underlying curve is supplied, each
    polyline crossing is refined on the exact curve.
    """
    points = traj.states
    if points.shape[0] < 4:
        raise DomainError("need at least 4 samples")
    ts = traj.t
    span = float(ts[-1] - ts[0])
    bbox = points.max(axis=0) - points.min(axis=0)
    diag = float(np.hypot(bbox[0], bbox[1]))
    if merge_radius is None:
        merge_radius = 1e-6 * diag if diag > 0 else 1e-12
    if param_separation is None:
        param_separation = 1e-3 * span
    # closed traversal: the shared endpoint is one parameter, not two
    closed = float(np.linalg.norm(points[-1] - points[0])) <= merge_radius
    hits = []
    for i, j, s, v, xy in _segment_crossings(points, ts, closed):
        t1 = float(ts[i] + s * (ts[i + 1] - ts[i]))
        t2 = float(ts[j] + v * (ts[j + 1] - ts[j]))
        if curve is not None and not isinstance(curve, SampledCurve):
            ref = _refine_crossing(curve, t1, t2, span, float(ts[0]), float(ts[-1]))
            if ref is not None:
                r1, r2 = ref
                if (
                    ts[0] - 1e-9 <= r1 <= ts[-1] + 1e-9
                    and ts[0] - 1e-9 <= r2 <= ts[-1] + 1e-9
                    and abs(r1 - t2) + abs(r2 - t1) > 1e-12
                ):
                    t1, t2 = float(r1), float(r2)
                    xy = 0.5 * (_position(curve, t1) + _position(curve, t2))
        if abs(t1 - t2) <= param_separation:
            continue
        hits.append((np.asarray(xy, dtype=float), sorted((t1, t2))))
    if not hits:
        return []
    # merge crossings by location
    used = [False] * len(hits)
    out: list[SingularPoint] = []
    for i in range(len(hits)):
        if used[i]:
            continue
        cluster = [i]
        used[i] = True
        for j in range(i + 1, len(hits)):
            if used[j]:
                continue
            if any(
                np.linalg.norm(hits[j][0] - hits[k][0]) <= merge_radius for k in cluster
            ):
                cluster.append(j)
                used[j] = True
        params: list[float] = []
        for k in cluster:
            for t in hits[k][1]:
                if closed and abs(t - ts[-1]) <= param_separation:
                    t = float(ts[0])
                if all(abs(t - t0) > param_separation for t0 in params):
                    params.append(t)
        params.sort()
        if len(params) < 2:
            continue
        loc = np.mean([hits[k][0] for k in cluster], axis=0)
        out.append(
            SingularPoint(
                kind="double" if len(params) == 2 else "multiple",
                location=(float(loc[0]), float(loc[1])),
                parameters=params,
            )
        )
    out.sort(key=lambda s: s.parameters[0])
    return out


# ---------------------------------------------------------------------------
# combined detection and the limit-circle check
# ---------------------------------------------------------------------------


def _cusp_candidates(
    curve: ParametricCurve, traj: Trajectory, config: SingularConfig
) -> list[SingularPoint]:
    """Cusps from speed dips of the sampled polyline.

    A dip is a local discrete-speed minimum below the scaled tolerance;
    the tangent jump is probed at the dip's own width so that both exact
    cusps and near-cusp geometry (dips that do not reach zero speed) are
    classified by the angle test."""
    dts = np.diff(traj.t)
    disp = np.diff(traj.states, axis=0)
    speeds = np.linalg.norm(disp, axis=1) / dts
    med = float(np.median(speeds))
    tol = config.speed_tol_factor * med
    n = speeds.size
    lo, hi = float(traj.t[0]), float(traj.t[-1])
    out: list[SingularPoint] = []
    i = 1
    while i < n - 1:
        near_zero = speeds[i] < tol
        prominent = speeds[i] < config.dip_prominence * med
        if not (
            (near_zero or prominent)
            and speeds[i] <= speeds[i - 1]
            and speeds[i] <= speeds[i + 1]
        ):
            i += 1
            continue
        # dip width: walk outward until speed recovers
        rec = config.dip_recovery
        a = i
        while a > 0 and speeds[a - 1] < rec * speeds[i] + tol:
            a -= 1
        b = i
        while b < n - 1 and speeds[b + 1] < rec * speeds[i] + tol:
            b += 1
        if not near_zero and (a == 0 or b == n - 1):
            # shallow minimum without both-sided recovery: ordinary spiral
            # geometry, not a (near-)cusp; the walk consumed samples that
            # may hold a true dip, so advance by one only
            i += 1
            continue
        t0 = float(traj.t[i] + 0.5 * dts[i])
        smin = float(speeds[i])
        if not isinstance(curve, SampledCurve):
            res = minimize_scalar(
                lambda t: _speed(curve, t),
                bounds=(float(traj.t[max(a - 1, 0)]), float(traj.t[min(b + 2, n)])),
                method="bounded",
                options={"xatol": 1e-12 * (hi - lo)},
            )
            t0 = float(res.x)
            smin = float(res.fun)
        probe = max(float(traj.t[min(b + 1, n)] - traj.t[max(a - 1, 0)]) * 0.5, 4.0 * float(dts[i]))
        if t0 - probe <= lo or t0 + probe >= hi:
            i = b + 1
            continue
        jump = _corner_angle(curve, t0, probe)
        if jump is None:
            try:
                jump = tangent_jump(curve, t0, probe)
            except DegenerateTangent:
                i = b + 1
                continue
        if jump > config.cusp_angle_threshold:
            out.append(
                SingularPoint(
                    kind="cusp",
                    location=tuple(_position(curve, t0)) if not isinstance(curve, SampledCurve) else tuple(traj.states[i]),
                    parameters=[t0],
                    tangent_jump=float(jump),
                    speed_min=smin,
                )
            )
        i = b + 1
    return out


def detect_singularities(
    curve: ParametricCurve,
    t_range=None,
    config: SingularConfig | None = None,
) -> list[SingularPoint]:
    """All singular points (cusps and self-intersections) on the curve.

    Deterministic for fixed configuration.  Reducible critical points
    (vanishing velocity with a continuous set-tangent) are suppressed.
    """
    config = config or SingularConfig()
    lo, hi = _t_interval(curve, t_range)
    traj = _sample_curve(curve, (lo, hi), config)
    out = _cusp_candidates(curve, traj, config)
    crossings = self_intersections(
        traj,
        merge_radius=config.merge_radius,
        param_separation=config.param_separation,
        curve=curve,
    )
    # a crossing whose location coincides with a cusp is kept separately;
    # crossings between the two branches of one cusp are artifacts of
    # sampling and are excluded by parameter proximity
    for c in crossings:
        if any(
            p.kind == "cusp"
            and all(abs(t - p.parameters[0]) < 2e-3 * (hi - lo) for t in c.parameters)
            for p in out
        ):
            continue
        out.append(c)
    out.sort(key=lambda s: s.parameters[0])
    return out


def limit_circle(
    alpha: float,
    r: float,
    x0: tuple[float, float],
    t_window: tuple[float, float],
    n_samples: int = 400,
) -> LimitCircleReport:
    """Compare the sampled terminal radius against sqrt(C1^2+C2^2)/alpha.

    The eigenvalue argument is pinned to the boundary angle alpha*pi/2;
    valid for alpha in (0, 1]."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError("alpha must lie in (0, 1]")
    if r <= 0.0:
        raise DomainError("r must be positive")
    lo, hi = float(t_window[0]), float(t_window[1])
    if not 0.0 < lo < hi:
        raise DomainError("t_window must satisfy 0 < lo < hi")
    c1, c2 = x0
    predicted = math.hypot(c1, c2) / alpha
    theta = alpha * math.pi / 2.0
    ts = np.linspace(lo, hi, n_samples)
    e = ml_ray(alpha, 1.0, r * ts**alpha, theta)
    xs = e.real * c1 + e.imag * c2
    ys = -e.imag * c1 + e.real * c2
    sampled = float(np.mean(np.hypot(xs, ys)))
    return LimitCircleReport(
        predicted_radius=predicted,
        sampled_radius=sampled,
        relative_error=abs(sampled - predicted) / predicted,
        window=(lo, hi),
    )
