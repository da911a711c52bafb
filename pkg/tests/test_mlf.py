"""Mittag-Leffler evaluation: frozen oracle values, identities, zeros."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracdyn.errors import DomainError, RangeOverflow
from fracdyn.mlf import (
    MLParams,
    ml1,
    ml2,
    ml_asymptotic,
    ml_deriv,
    ml_ray,
    ml_series,
    ml_zeros,
)

# frozen high-precision series values (cancellation-adaptive mpmath run)
_ORACLE = [
    (0.3, 1.0, complex(2.0, 0.0), complex(79485.90762518356, 0.0)),
    (0.3, 1.0, complex(-5.0, 0.0), complex(0.13708086902027064, 0.0)),
    (0.3, 0.3, complex(1.0, 2.0), complex(-0.059413586211191485, -0.028435863698215796)),
    (0.5, 1.0, complex(-9.0, 0.0), complex(0.06230772403777468, 0.0)),
    (0.5, 0.5, complex(3.0, -4.0), complex(0.006383749372778157, 0.013004119842100535)),
    (0.7, 1.0, complex(0.5, 0.5), complex(1.373332457799279, 1.0513856532500399)),
    (0.7, 0.7, complex(-2.0, 7.0), complex(-0.004476051709634349, 0.0015731967479740122)),
    (0.9, 1.0, complex(-30.0, 0.0), complex(0.003713707698459852, 0.0)),
    (0.9, 0.9, complex(10.0, 12.0), complex(77287.29782019375, -214087.93440189798)),
    (1.0, 1.0, complex(1.0, 1.0), complex(1.4686939399158851, 2.2873552871788423)),
    (2.0, 1.0, complex(-4.0, 0.0), complex(-0.4161468365471424, 0.0)),
    (1.5, 1.0, complex(2.0, 3.0), complex(0.6419192773656884, 4.217650924260712)),
    (0.2, 0.2, complex(1.5, 0.5), complex(3.6821789545509116, -21.319724543310016)),
    (0.4, 1.3, complex(-3.0, 1.0), complex(0.23814357002234834, 0.06393118227248488)),
    (0.6, 2.0, complex(4.0, -2.0), complex(123.7238773852309, -808.016768881428)),
]

_DERIV_ORACLE = [
    (0.5, 1.0, complex(0.7, 0.2), 1, complex(4.248610574404432, 2.3211296614547092)),
    (0.5, 1.0, complex(0.7, 0.2), 2, complex(10.01656127431486, 6.837222890810654)),
    (0.8, 0.8, complex(-1.0, 1.0), 1, complex(0.07298155912945418, 0.25394331181368857)),
    (0.3, 1.0, complex(0.5, 0.0), 3, complex(50.44435375173295, 0.0)),
]


@pytest.mark.parametrize("alpha,beta,z,ref", _ORACLE)
def test_ml2_oracle(alpha, beta, z, ref):
    v = ml2(MLParams(alpha=alpha, beta=beta), z)
    assert abs(v - ref) <= 1e-10 * abs(ref)


@pytest.mark.parametrize("alpha,beta,z,k,ref", _DERIV_ORACLE)
def test_ml_deriv_oracle(alpha, beta, z, k, ref):
    v = ml_deriv(MLParams(alpha=alpha, beta=beta), k, z)
    assert abs(v - ref) <= 1e-10 * abs(ref)


def test_exponential_identity():
    p = MLParams(alpha=1.0, beta=1.0)
    for z in [0.0, 1.0, -3.0, 2 + 2j, -4 + 1j, 5j]:
        assert abs(ml2(p, z) - cmath.exp(z)) < 1e-10 * max(1.0, abs(cmath.exp(z)))


def test_cosine_identity():
    p = MLParams(alpha=2.0, beta=1.0)
    for t in np.linspace(0.0, 5.0, 21):
        assert abs(ml2(p, -t * t) - math.cos(t)) < 1e-10


def test_erfc_identity():
    # E_{1/2}(z) = exp(z^2) erfc(-z) on the real axis
    from scipy.special import erfc

    p = MLParams(alpha=0.5, beta=1.0)
    for x in [-2.0, -1.0, -0.3, 0.4, 1.0]:
        ref = math.exp(x * x) * erfc(-x)
        assert abs(ml2(p, x) - ref) < 1e-10 * abs(ref)


def test_value_at_zero():
    for a, b in [(0.4, 1.0), (0.9, 0.9), (1.7, 2.3)]:
        assert ml2(MLParams(alpha=a, beta=b), 0.0) == pytest.approx(
            1.0 / math.gamma(b), rel=1e-14
        )


def test_recurrence_identity():
    # E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z)
    for a in (0.3, 0.6, 0.9):
        for b in (0.5, 1.0):
            for z in (0.7 + 0.3j, -2.0 + 1.0j, 3.0 - 2.0j):
                lhs = ml2(MLParams(alpha=a, beta=b), z)
                rhs = 1.0 / math.gamma(b) + z * ml2(MLParams(alpha=a, beta=a + b), z)
                assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))


def test_conjugate_symmetry_exact():
    for a, b, z, _ in _ORACLE:
        p = MLParams(alpha=a, beta=b)
        assert ml2(p, z.conjugate()) == ml2(p, z).conjugate()


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(0.2, 1.0),
    re=st.floats(-4.0, 4.0),
    im=st.floats(0.0, 4.0),
)
def test_conjugate_symmetry_property(a, re, im):
    p = MLParams(alpha=a, beta=a)
    z = complex(re, im)
    # small alpha with z on the growth sector can legitimately exceed
    # the double range; symmetry still requires both sides to overflow
    try:
        lhs = ml2(p, z.conjugate())
    except RangeOverflow:
        with pytest.raises(RangeOverflow):
            ml2(p, z)
        return
    assert lhs == ml2(p, z).conjugate()


@settings(max_examples=30, deadline=None)
@given(
    a=st.floats(0.3, 0.95),
    re=st.floats(-3.0, 3.0),
    im=st.floats(-3.0, 3.0),
)
def test_recurrence_property(a, re, im):
    z = complex(re, im)
    lhs = ml2(MLParams(alpha=a, beta=1.0), z)
    rhs = 1.0 + z * ml2(MLParams(alpha=a, beta=1.0 + a), z)
    assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))


def test_branch_consistency_series_vs_asymptotic():
    # on an overlap annulus in the growth sector both expansions agree
    for a in (0.3, 0.6, 0.9):
        p = MLParams(alpha=a, beta=1.0)
        # keep |z|^(1/alpha) inside double range so both branches evaluate
        for az in (0.5 * 700.0**a, 0.9 * 700.0**a):
            for arg in (0.0, 0.3 * a * math.pi):
                z = az * cmath.exp(1j * arg)
                s = ml_series(p, z)
                asym = ml_asymptotic(p, z)
                assert abs(s - asym) < 1e-6 * abs(s)


def test_ml1_matches_ml2():
    p = MLParams(alpha=0.7, beta=1.0)
    z = -2.0 + 1.5j
    assert ml1(p, z) == ml2(p, z)


def test_monotone_decay_on_negative_axis():
    p = MLParams(alpha=0.6, beta=1.0)
    xs = np.linspace(0.0, 50.0, 200)
    vals = [ml2(p, -x).real for x in xs]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert all(v > 0.0 for v in vals)


def test_range_overflow():
    with pytest.raises(RangeOverflow):
        ml2(MLParams(alpha=0.2, beta=1.0), 4.0)


def test_domain_errors():
    with pytest.raises(DomainError):
        MLParams(alpha=0.0, beta=1.0)
    with pytest.raises(DomainError):
        MLParams(alpha=-0.5, beta=1.0)
    with pytest.raises(DomainError):
        ml_deriv(MLParams(alpha=0.5, beta=1.0), -1, 1.0)


def test_ml_ray_matches_scalar():
    p = MLParams(alpha=0.5, beta=0.5)
    theta = 0.5 * math.pi / 2.0 + 0.1
    us = np.linspace(0.3, 20.0, 60)
    vals = ml_ray(0.5, 0.5, us, theta)
    for u, v in zip(us, vals):
        ref = ml2(p, u * cmath.exp(1j * theta))
        assert abs(v - ref) < 1e-7 * max(1.0, abs(ref))


def test_zeros_exponential_empty():
    assert ml_zeros(MLParams(alpha=1.0, beta=1.0), (-10.0, 10.0, -10.0, 10.0)) == []


def test_zeros_cosh():
    # E_2(z) = cosh(sqrt z) vanishes at -(pi/2)^2
    zs = ml_zeros(MLParams(alpha=2.0, beta=1.0), (-4.0, -1.0, -1.0, 1.0))
    assert len(zs) == 1
    assert zs[0].z.real == pytest.approx(-((math.pi / 2.0) ** 2), abs=1e-8)
    assert abs(zs[0].z.imag) < 1e-8


def test_zeros_small_alpha_first():
    # frozen: smallest-modulus zero of E_{0.2,0.2} in the first quadrant
    zs = ml_zeros(MLParams(alpha=0.2, beta=0.2), (0.5, 1.8, 0.1, 1.2))
    assert zs
    z0 = zs[0]
    assert z0.z.real == pytest.approx(1.3719943310186482, abs=1e-6)
    assert z0.z.imag == pytest.approx(0.6481784478738504, abs=1e-6)
    assert z0.residual < 1e-9


def test_zeros_sorted_and_residuals():
    zs = ml_zeros(MLParams(alpha=0.8, beta=0.8), (-6.0, 6.0, 6.0, 16.0))
    mods = [z.modulus for z in zs]
    assert mods == sorted(mods)
    assert all(z.residual < 1e-9 for z in zs)
    assert len(zs) == 3
