"""Canonical serialization: byte determinism and exact round-trips."""

import json
import math

import numpy as np
import pytest

from fracdyn.document import (
    SCHEMA_VERSION,
    TrajectoryDocument,
    build_document,
    canonical_json,
    config_hash,
    region2_csv,
    samples_csv,
)
from fracdyn.errors import DomainError
from fracdyn.singular import SingularPoint


def _doc():
    t = np.array([0.5, 1.0, 2.0, 4.0])
    states = np.array([[1.0, 0.0], [0.7, 0.2], [0.3, 0.3], [0.1, 0.1]])
    sp = [
        SingularPoint(
            kind="double",
            location=(0.3, 0.3),
            parameters=(1.0, 2.0),
            tangent_jump=None,
        )
    ]
    return build_document(
        alpha=0.5,
        eigenvalue={"r": 1.0, "theta": 0.8},
        x0=[1.0, 0.0],
        t=t,
        states=states,
        singular_points=sp,
        region={"name": "II", "delta1": 0.0057, "delta2": 0.341602},
        config={"n": 4, "tmax": 4.0},
    )


def test_round_trip_value_identical():
    doc = _doc()
    text = doc.to_json()
    back = TrajectoryDocument.from_json(text)
    assert back == doc
    assert back.to_json() == text


def test_canonical_bytes_deterministic():
    assert _doc().to_json() == _doc().to_json()
    # key order in input dicts must not matter
    a = canonical_json({"b": 1, "a": [1.5, 2.25]})
    b = canonical_json({"a": [1.5, 2.25], "b": 1})
    assert a == b == '{"a":[1.5,2.25],"b":1}'


def test_floats_shortest_round_trip():
    v = 0.1 + 0.2
    text = canonical_json({"v": v})
    assert json.loads(text)["v"] == v


def test_nan_rejected():
    with pytest.raises(ValueError):
        canonical_json({"v": math.nan})


def test_schema_and_provenance():
    doc = _doc()
    assert doc.schema_version == SCHEMA_VERSION
    assert doc.provenance["package"] == "fracdyn"
    assert doc.provenance["config_hash"] == config_hash({"n": 4, "tmax": 4.0})
    assert len(doc.provenance["config_hash"]) == 16


def test_config_hash_order_independent():
    assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})
    assert config_hash({"a": 1}) != config_hash({"a": 2})


def test_validate_unordered_samples():
    doc = _doc()
    doc.samples[1], doc.samples[2] = doc.samples[2], doc.samples[1]
    with pytest.raises(DomainError):
        doc.validate()


def test_validate_param_out_of_range():
    doc = _doc()
    doc.singular_points[0]["params"] = [9.0]
    with pytest.raises(DomainError):
        doc.validate()


def test_from_json_missing_field():
    data = json.loads(_doc().to_json())
    del data["samples"]
    with pytest.raises(DomainError):
        TrajectoryDocument.from_json(json.dumps(data))


def test_samples_csv():
    text = samples_csv([0.5, 1.5], [[1.0, 0.25], [0.5, -0.125]])
    lines = text.strip().split("\n")
    assert lines[0] == "t,x,y"
    assert lines[1] == "0.5,1.0,0.25"
    assert lines[2] == "1.5,0.5,-0.125"
    # exact float recovery from repr
    assert float(lines[2].split(",")[2]) == -0.125


def test_region2_csv():
    rows = [{"alpha": 0.5, "boundary": 0.25, "delta1": 0.5, "delta2": 0.75}]
    text = region2_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "alpha,boundary,delta1,delta2,interval_lo,interval_hi"
    assert lines[1] == "0.5,0.25,0.5,0.75,-0.25,1.0"
