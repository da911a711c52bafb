"""Exact canonical-block solutions and trajectory sampling."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracdyn.errors import DomainError, SingularTransform
from fracdyn.linsys import (
    AdaptivePolicy,
    ComplexPair,
    FractionalLinearSystem,
    JordanBlock,
    RealEigen,
    UniformPolicy,
    sample_trajectory,
    solve_at,
    solve_scalar_nonhomogeneous,
)
from fracdyn.mlf import MLParams, ml1, ml2


def test_real_eigen_matches_scalar_ml():
    sys = FractionalLinearSystem(alpha=0.6, blocks=[RealEigen(-1.5)], x0=[2.0])
    p = MLParams(alpha=0.6)
    for t in (0.0, 0.3, 1.0, 7.0):
        ref = 2.0 * ml1(p, -1.5 * t**0.6).real
        assert solve_at(sys, t)[0] == pytest.approx(ref, rel=1e-12, abs=1e-14)


def test_complex_pair_matches_complex_scalar():
    # the 2x2 rotation block is the real form of the complex scalar system
    a, b = 0.3, 0.9
    alpha = 0.7
    c1, c2 = 1.0, -0.5
    sys = FractionalLinearSystem(alpha=alpha, blocks=[ComplexPair(a, b)], x0=[c1, c2])
    p = MLParams(alpha=alpha)
    for t in (0.2, 1.0, 4.0):
        e = ml1(p, complex(a, b) * t**alpha)
        ref = np.array([e.real * c1 + e.imag * c2, -e.imag * c1 + e.real * c2])
        got = solve_at(sys, t)
        assert np.allclose(got, ref, rtol=1e-12, atol=1e-14)


def test_jordan_block_vs_nonhomogeneous_oracle():
    # [[lam,1],[0,lam]]: the second component drives the first, so the
    # scalar variation-of-constants formula is an independent oracle
    alpha, lam = 0.8, -0.7
    c1, c2 = 0.4, 1.3
    sys = FractionalLinearSystem(
        alpha=alpha, blocks=[JordanBlock(lam, 2)], x0=[c1, c2]
    )
    pa = MLParams(alpha=alpha)

    def g(t):
        return c2 * ml1(pa, lam * t**alpha).real if t > 0 else c2

    for t in (0.5, 1.5, 3.0):
        got = solve_at(sys, t)
        y2 = c2 * ml1(pa, lam * t**alpha).real
        y1 = solve_scalar_nonhomogeneous(alpha, -lam, g, c1, t)
        assert got[1] == pytest.approx(y2, rel=1e-10)
        assert got[0] == pytest.approx(y1, rel=1e-7, abs=1e-9)


def test_scalar_nonhomogeneous_constant_forcing():
    # cD^a y + y = 1, y(0)=0 has solution 1 - E_a(-x^a)
    alpha = 0.5
    p = MLParams(alpha=alpha)
    for x in (0.5, 1.0, 2.5):
        got = solve_scalar_nonhomogeneous(alpha, 1.0, lambda t: 1.0, 0.0, x)
        ref = 1.0 - ml1(p, -(x**alpha)).real
        assert got == pytest.approx(ref, rel=1e-8, abs=1e-10)


def test_initial_condition_exact():
    sys = FractionalLinearSystem(
        alpha=0.4,
        blocks=[RealEigen(2.0), ComplexPair(0.1, 1.0)],
        x0=[1.0, -2.0, 3.0],
    )
    assert np.array_equal(solve_at(sys, 0.0), np.array([1.0, -2.0, 3.0]))


def test_transform_consistency():
    # X = P Y: the transformed trajectory is the canonical one mapped by P
    alpha = 0.6
    P = np.array([[2.0, 1.0], [0.5, 1.5]])
    x0_orig = np.array([1.0, 1.0])
    blocks = [ComplexPair(-0.2, 0.8)]
    sys_t = FractionalLinearSystem(
        alpha=alpha, blocks=blocks, x0=x0_orig, transform_P=P
    )
    sys_c = FractionalLinearSystem(
        alpha=alpha, blocks=blocks, x0=np.linalg.solve(P, x0_orig)
    )
    for t in (0.3, 1.0, 5.0):
        assert np.allclose(solve_at(sys_t, t), P @ solve_at(sys_c, t), rtol=1e-12)


def test_singular_transform_rejected():
    with pytest.raises(SingularTransform):
        FractionalLinearSystem(
            alpha=0.5,
            blocks=[ComplexPair(0.0, 1.0)],
            x0=[1.0, 0.0],
            transform_P=np.array([[1.0, 2.0], [2.0, 4.0]]),
        )


def test_eigenvalues_listing():
    sys = FractionalLinearSystem(
        alpha=0.5,
        blocks=[RealEigen(3.0), ComplexPair(1.0, 2.0), JordanBlock(-1.0, 2)],
        x0=np.zeros(5),
    )
    assert sys.eigenvalues() == [3.0 + 0j, 1 + 2j, 1 - 2j, -1.0 + 0j, -1.0 + 0j]


def test_uniform_sampling_grid_and_values():
    sys = FractionalLinearSystem(
        alpha=0.5, blocks=[ComplexPair(0.0, 1.0)], x0=[1.0, 0.0]
    )
    traj = sample_trajectory(sys, 0.5, 10.5, UniformPolicy(101))
    assert traj.t.shape == (101,)
    assert traj.t[0] == 0.5 and traj.t[-1] == 10.5
    assert np.all(np.diff(traj.t) > 0)
    # spot-check sampled states against the scalar evaluator
    for i in (0, 37, 100):
        assert np.allclose(traj.states[i], solve_at(sys, traj.t[i]), atol=1e-7)


def test_adaptive_sampling_turn_angle():
    sys = FractionalLinearSystem(
        alpha=0.7, blocks=[ComplexPair(-0.05, 1.0)], x0=[1.0, 0.0]
    )
    pol = AdaptivePolicy(max_turn_angle=0.05)
    traj = sample_trajectory(sys, 0.5, 60.0, pol)
    seg = np.diff(traj.states, axis=0)
    norms = np.linalg.norm(seg, axis=1)
    keep = norms > 1e-12
    u = seg[keep] / norms[keep][:, None]
    cosang = np.clip(np.sum(u[:-1] * u[1:], axis=1), -1.0, 1.0)
    angles = np.arccos(cosang)
    # refinement targets the policy angle; allow a modest overshoot factor
    assert np.quantile(angles, 0.99) < 3.0 * pol.max_turn_angle


def test_sample_rejects_bad_window():
    sys = FractionalLinearSystem(alpha=0.5, blocks=[RealEigen(-1.0)], x0=[1.0])
    with pytest.raises(DomainError):
        sample_trajectory(sys, 2.0, 1.0, UniformPolicy(10))
    with pytest.raises(DomainError):
        sample_trajectory(sys, -1.0, 1.0, UniformPolicy(10))


def test_alpha_domain():
    with pytest.raises(DomainError):
        FractionalLinearSystem(alpha=1.2, blocks=[RealEigen(1.0)], x0=[1.0])
    with pytest.raises(DomainError):
        ComplexPair(1.0, 0.0)
    with pytest.raises(DomainError):
        JordanBlock(1.0, 1)


@settings(max_examples=20, deadline=None)
@given(
    alpha=st.floats(0.3, 0.95),
    a=st.floats(-1.0, 0.5),
    b=st.floats(0.2, 2.0),
    t=st.floats(0.1, 5.0),
)
def test_rotation_block_norm_property(alpha, a, b, t):
    # |X(t)| equals |E(lam t^alpha)| for unit initial data, any rotation phase
    sys = FractionalLinearSystem(alpha=alpha, blocks=[ComplexPair(a, b)], x0=[1.0, 0.0])
    e = ml1(MLParams(alpha=alpha), complex(a, b) * t**alpha)
    assert np.linalg.norm(solve_at(sys, t)) == pytest.approx(abs(e), rel=1e-9)
