"""SVG phase-portrait rendering."""

import numpy as np
import pytest

from fracdyn.singular import SingularPoint
from fracdyn.svg import render_svg


def _traj(phase=0.0):
    t = np.linspace(0.0, 2.0 * np.pi, 50)
    return np.stack([np.cos(t + phase), np.sin(t + phase)], axis=1)


def test_one_polyline_per_trajectory():
    svg = render_svg([_traj(), _traj(1.0), _traj(2.0)])
    assert svg.count("<polyline") == 3
    assert svg.startswith("<svg")
    assert svg.endswith("</svg>")


def test_marker_per_kind():
    pts = [
        SingularPoint("cusp", (0.0, 0.0), (1.0,), 3.1),
        SingularPoint("double", (0.5, 0.5), (1.0, 2.0), None),
        SingularPoint("multiple", (-0.5, 0.2), (1.0, 2.0, 3.0), None),
    ]
    svg = render_svg([_traj()], pts)
    assert svg.count('class="marker cusp"') == 1
    assert svg.count('class="marker double"') == 1
    assert svg.count('class="marker multiple"') == 1
    # distinct glyph elements
    assert '<path class="marker cusp"' in svg
    assert '<circle class="marker double"' in svg
    assert '<rect class="marker multiple"' in svg


def test_equal_aspect_scaling():
    # a 2x1 data box maps to a 2x1 viewBox (same scale on both axes)
    traj = np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]])
    svg = render_svg([traj], size=600)
    header = svg.split("\n")[0]
    vb = header.split('viewBox="')[1].split('"')[0].split()
    w, h = float(vb[2]), float(vb[3])
    # 5% margin per side scales both axes by 1.1, preserving the 2:1 ratio
    assert w / h == pytest.approx(2.0, rel=1e-6)


def test_deterministic_output():
    assert render_svg([_traj()]) == render_svg([_traj()])


def test_empty_rejected():
    with pytest.raises(ValueError):
        render_svg([])
