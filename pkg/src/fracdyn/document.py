"""Canonical JSON/CSV serialization of trajectory artifacts.

The JSON form is canonical: keys sorted, compact separators, floats in
shortest round-trip notation (repr), so identical inputs always produce
byte-identical documents and parsing recovers the exact values.
"""

from __future__ import annotations

import hashlib
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DomainError

SCHEMA_VERSION = "1.0"


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, no whitespace padding."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(config).encode()).hexdigest()[:16]


@dataclass
class TrajectoryDocument:
    schema_version: str
    alpha: float
    eigenvalue: dict  # {"r": ..., "theta": ...} or {"matrix": [[...]]}
    x0: list
    samples: list  # of {"t", "x", "y"}
    singular_points: list  # of {"kind", "x", "y", "params", "tangent_jump"?}
    region: dict  # {"name", "delta1"?, "delta2"?}
    provenance: dict

    def to_json(self) -> str:
        return canonical_json(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "TrajectoryDocument":
        data = json.loads(text)
        try:
            return cls(**{k: data[k] for k in cls.__dataclass_fields__})
        except KeyError as exc:
            raise DomainError(f"document missing field {exc}") from exc

    def validate(self) -> None:
        ts = [s["t"] for s in self.samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DomainError("samples not ordered by t")
        if ts:
            lo, hi = ts[0], ts[-1]
            for p in self.singular_points:
                if any(not lo <= t <= hi for t in p["params"]):
                    raise DomainError("singular point parameter outside sample range")


def build_document(
    alpha: float,
    eigenvalue: dict,
    x0,
    t,
    states,
    singular_points,
    region: dict,
    config: dict,
) -> TrajectoryDocument:
    """Assemble a TrajectoryDocument from arrays and detection output."""
    t = np.asarray(t, dtype=float)
    states = np.asarray(states, dtype=float)
    samples = [
        {"t": float(ti), "x": float(xi), "y": float(yi)}
        for ti, (xi, yi) in zip(t, states)
    ]
    sp = []
    for p in singular_points:
        entry = {
            "kind": p.kind,
            "x": float(p.location[0]),
            "y": float(p.location[1]),
            "params": [float(v) for v in p.parameters],
        }
        if p.tangent_jump is not None:
            entry["tangent_jump"] = float(p.tangent_jump)
        sp.append(entry)
    from . import __version__

    doc = TrajectoryDocument(
        schema_version=SCHEMA_VERSION,
        alpha=float(alpha),
        eigenvalue=eigenvalue,
        x0=[float(v) for v in x0],
        samples=samples,
        singular_points=sp,
        region=region,
        provenance={
            "package": "fracdyn",
            "version": __version__,
            "config_hash": config_hash(config),
        },
    )
    doc.validate()
    return doc


def samples_csv(t, states) -> str:
    """CSV dump of the samples: header t,x,y with '.' decimals."""
    buf = io.StringIO()
    buf.write("t,x,y\n")
    for ti, row in zip(
        np.asarray(t, dtype=float).tolist(), np.asarray(states, dtype=float).tolist()
    ):
        buf.write(f"{ti!r},{row[0]!r},{row[1]!r}\n")
    return buf.getvalue()


def region2_csv(rows) -> str:
    """Table-shaped report: alpha, boundary angle, delta1, delta2, interval."""
    buf = io.StringIO()
    buf.write("alpha,boundary,delta1,delta2,interval_lo,interval_hi\n")
    for r in rows:
        lo = r["boundary"] - r["delta1"]
        hi = r["boundary"] + r["delta2"]
        buf.write(
            f"{r['alpha']!r},{r['boundary']!r},{r['delta1']!r},{r['delta2']!r},{lo!r},{hi!r}\n"
        )
    return buf.getvalue()
