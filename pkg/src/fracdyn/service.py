"""Stateless HTTP service exposing trajectory and classification queries.

Endpoints return canonical JSON built by the document module, so a
repeated identical query yields byte-identical bodies.  The eigenvalue
angle is parametrized as theta = alpha*pi/2 + epsilon, i.e. an offset
from the stability boundary.  A bounded memo cache keyed by the query
parameters is transparent: hit and miss produce the same bytes.
"""

from __future__ import annotations

import math
from functools import lru_cache

from fastapi import FastAPI, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .document import build_document, canonical_json
from .errors import DomainError, FracdynError
from .linsys import AdaptivePolicy, ComplexPair, FractionalLinearSystem, UniformPolicy, sample_trajectory
from .region2 import Region2Config, estimate_deltas
from .singular import MLCurve, SingularConfig, detect_singularities
from .stability import classify_eigenvalue, default_deltas

T_START_DEFAULT = 0.5


def _region_info(alpha: float) -> dict:
    d1, d2 = default_deltas(alpha)
    b = alpha * math.pi / 2.0
    return {
        "name": "II",
        "delta1": d1,
        "delta2": d2,
        "boundary": b,
        "interval": [b - d1, b + d2],
    }


@lru_cache(maxsize=64)
def _trajectory_body(
    alpha: float,
    r: float,
    epsilon: float,
    tmax: float,
    n: int | None,
    x0a: float,
    x0b: float,
    with_samples: bool,
) -> bytes:
    if r <= 0.0:
        raise DomainError("r must be positive")
    if tmax <= T_START_DEFAULT:
        raise DomainError(f"tmax must exceed t_start = {T_START_DEFAULT}")
    theta = alpha * math.pi / 2.0 + epsilon
    curve = MLCurve(alpha=alpha, r=r, theta=theta, x0=(x0a, x0b))
    config = SingularConfig()
    points = detect_singularities(curve, (T_START_DEFAULT, tmax), config)
    if with_samples:
        lam = curve.lam
        sys = FractionalLinearSystem(
            alpha=alpha, blocks=[ComplexPair(lam.real, lam.imag)], x0=[x0a, x0b]
        )
        policy = UniformPolicy(n) if n else AdaptivePolicy()
        traj = sample_trajectory(sys, T_START_DEFAULT, tmax, policy)
        t, states = traj.t, traj.states
    else:
        t, states = [], [[0.0, 0.0]][:0]
    doc = build_document(
        alpha=alpha,
        eigenvalue={"r": r, "theta": theta, "epsilon": epsilon},
        x0=[x0a, x0b],
        t=t,
        states=states,
        singular_points=points,
        region=_region_info(alpha),
        config={
            "t_start": T_START_DEFAULT,
            "tmax": tmax,
            "n": n,
            "cusp_angle_threshold": config.cusp_angle_threshold,
            "speed_tol_factor": config.speed_tol_factor,
        },
    )
    return doc.to_json().encode()


def create_app() -> FastAPI:
    app = FastAPI(title="fracdyn", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.exception_handler(FracdynError)
    async def _domain_error(request, exc: FracdynError):
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/classify")
    def classify(
        alpha: float = Query(gt=0.0, lt=1.0),
        re: float = 0.0,
        im: float = 0.0,
    ):
        c = classify_eigenvalue(alpha, complex(re, im))
        body = canonical_json(
            {
                "alpha": alpha,
                "eigenvalue": {"re": re, "im": im},
                "arg_abs": c.arg_abs,
                "boundary_angle": c.boundary_angle,
                "region": c.region,
                "stability": c.stability,
                "portrait": c.portrait,
            }
        )
        return Response(content=body, media_type="application/json")

    @app.get("/trajectory")
    def trajectory(
        alpha: float = Query(gt=0.0, lt=1.0),
        r: float = 1.0,
        epsilon: float = 0.0,
        tmax: float = 500.0,
        n: int | None = Query(default=None, ge=2, le=100000),
        x0a: float = 1.0,
        x0b: float = 0.0,
    ):
        body = _trajectory_body(alpha, r, epsilon, tmax, n, x0a, x0b, True)
        return Response(content=body, media_type="application/json")

    @app.get("/singularities")
    def singularities(
        alpha: float = Query(gt=0.0, lt=1.0),
        r: float = 1.0,
        epsilon: float = 0.0,
        tmax: float = 500.0,
        x0a: float = 1.0,
        x0b: float = 0.0,
    ):
        body = _trajectory_body(alpha, r, epsilon, tmax, None, x0a, x0b, False)
        return Response(content=body, media_type="application/json")

    @app.get("/region2")
    def region2(
        alpha: float = Query(gt=0.0, lt=1.0),
        r: float = 1.0,
        estimate: bool = False,
    ):
        info = _region_info(alpha)
        if estimate:
            est = estimate_deltas(alpha, Region2Config(r=r))
            info = {
                "name": "II",
                "delta1": est.delta1,
                "delta2": est.delta2,
                "boundary": est.boundary_angle,
                "interval": [
                    est.boundary_angle - est.delta1,
                    est.boundary_angle + est.delta2,
                ],
                "estimated": True,
                "n_probes": est.n_probes,
            }
        body = canonical_json({"alpha": alpha, "r": r, "region": info})
        return Response(content=body, media_type="application/json")

    return app


def serve(port: int = 8000, bind: str = "127.0.0.1") -> None:
    import uvicorn

    uvicorn.run(create_app(), host=bind, port=port, log_level="warning")
