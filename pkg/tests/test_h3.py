import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schwarzfront.h3 import (ChartError, H3Point, HermitianForm, Isometry,
                             NotPositiveDefiniteError, apply_isometry,
                             ball_to_lorentz, convert, hermitian_to_ball,
                             hermitian_to_lorentz,
                             hermitian_to_upper_half_space,
                             hyperbolic_distance, lorentz_inner,
                             lorentz_to_ball, lorentz_to_hermitian,
                             upper_half_space_to_hermitian)

ROUNDTRIP_TOL = 1e-10

finite = st.floats(-5.0, 5.0, allow_nan=False)
height = st.floats(0.05, 5.0, allow_nan=False)


def test_hermitian_form_requires_positive_definite():
    with pytest.raises(NotPositiveDefiniteError):
        HermitianForm(1.0, 1.0, 2.0)
    with pytest.raises(NotPositiveDefiniteError):
        HermitianForm(-1.0, 1.0, 0.0)


def test_from_matrix_rejects_non_hermitian():
    with pytest.raises(ValueError):
        HermitianForm.from_matrix([[1.0, 0.5j], [0.0, 1.0]])


@given(finite, finite, height)
@settings(max_examples=60, deadline=None)
def test_uhs_roundtrip_through_all_charts(a, b, t):
    p = H3Point.upper_half_space(complex(a, b), t)
    H = upper_half_space_to_hermitian(p)
    q = hermitian_to_upper_half_space(
        lorentz_to_hermitian(ball_to_lorentz(lorentz_to_ball(
            hermitian_to_lorentz(H)))))
    assert abs(q.coords[0] - complex(a, b)) < ROUNDTRIP_TOL * (1 + abs(t))
    assert abs(q.coords[1] - t) < ROUNDTRIP_TOL * (1 + abs(t))


def test_convert_between_named_charts():
    p = H3Point.upper_half_space(0.3 + 0.4j, 1.2)
    b = convert(p, "ball")
    assert b.chart == "ball"
    back = convert(b, "uhs")
    assert abs(back.coords[0] - p.coords[0]) < ROUNDTRIP_TOL
    with pytest.raises(ChartError):
        upper_half_space_to_hermitian(b)


def test_lorentz_point_is_normalized():
    p = H3Point.lorentz(2.0, 1.0, 0.5, 0.5)
    x0, x1, x2, x3 = p.coords
    assert abs(x0 * x0 - x1 * x1 - x2 * x2 - x3 * x3 - 1.0) < 1e-12


def test_distance_is_isometry_invariant():
    rng = np.random.default_rng(3)
    P = np.array([[1.1 + 0.2j, 0.3], [0.1j, 0.9]])
    iso = Isometry(P)
    for _ in range(20):
        Ha = HermitianForm(2.0 + rng.random(), 1.0 + rng.random(),
                           0.3 * (rng.random() + 1j * rng.random()))
        Hb = HermitianForm(1.0 + rng.random(), 2.0 + rng.random(),
                           0.2 * (rng.random() + 1j * rng.random()))
        d0 = hyperbolic_distance(hermitian_to_lorentz(Ha),
                                 hermitian_to_lorentz(Hb))
        d1 = hyperbolic_distance(
            hermitian_to_lorentz(apply_isometry(iso, Ha)),
            hermitian_to_lorentz(apply_isometry(iso, Hb)))
        assert abs(d0 - d1) < 1e-9 * (1.0 + d0)


def test_distance_zero_on_projective_rescaling():
    H = HermitianForm(2.0, 1.5, 0.4 + 0.1j)
    p = hermitian_to_lorentz(H)
    q = hermitian_to_lorentz(H.scaled(7.5))
    assert hyperbolic_distance(p, q) < 1e-7


def test_lorentz_inner_of_equal_points_is_one():
    p = hermitian_to_lorentz(HermitianForm(2.0, 1.0, 0.5j))
    assert abs(lorentz_inner(p, p) - 1.0) < 1e-12


def test_boundary_scale_forms_still_convert():
    # det stays 1 while h*k grows, as for the front near its ends
    H = HermitianForm(1e7, 1e-7 + 1e-14 + 1.0 / 1e7, 1.0)
    p = hermitian_to_ball(H)
    assert np.linalg.norm(p.coords) < 1.0
