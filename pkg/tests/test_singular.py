import math
from fractions import Fraction as Fr

import numpy as np
import pytest

from schwarzfront import singular as sg
from schwarzfront.elimination import swallowtail_t_exact
from schwarzfront.equation import (SingularPointError, eval_q,
                                   exponents_from_mu)
from schwarzfront.front import eval_front_closed_form
from schwarzfront.h3 import hyperbolic_distance, hermitian_to_lorentz
from schwarzfront.modular import LambdaInverse, fuchsian_z_from_x


@pytest.fixture(scope="module")
def fuchsian():
    return exponents_from_mu(0, 0, 0)


@pytest.fixture(scope="module")
def dihedral3():
    return exponents_from_mu(Fr(1, 2), Fr(1, 2), Fr(1, 3))


@pytest.fixture(scope="module")
def fuchsian_curve(fuchsian):
    return sg.trace_singular_curve(fuchsian)


@pytest.fixture(scope="module")
def dihedral_curve(dihedral3):
    return sg.trace_singular_curve(dihedral3)


def test_classify_regular_point(fuchsian):
    p = sg.classify_point(fuchsian, 0.5 + 0.0j)
    assert p.cls == sg.NOT_SINGULAR


def test_classify_swallowtail_point(fuchsian):
    t_star = swallowtail_t_exact()
    p = sg.classify_point(fuchsian, complex(0.5, t_star))
    assert p.cls == sg.SWALLOWTAIL
    assert abs(p.abs_q - 1.0) < 1e-10


def test_classify_cuspidal_edge_point(fuchsian, fuchsian_curve):
    # a generic curve sample away from the symmetry line
    x = min(fuchsian_curve.samples, key=lambda s: abs(s.real - 0.2))
    p = sg.classify_point(fuchsian, x)
    assert p.cls == sg.CUSPIDAL_EDGE


def test_classify_rejects_equation_singularities(fuchsian):
    with pytest.raises(SingularPointError):
        sg.classify_point(fuchsian, 0.0)
    with pytest.raises(SingularPointError):
        sg.classify_point(fuchsian, 1.0)


@pytest.mark.parametrize("curve_name", ["fuchsian_curve", "dihedral_curve"])
def test_curve_samples_satisfy_defining_equation(curve_name, request):
    curve = request.getfixturevalue(curve_name)
    e_name = "fuchsian" if curve_name == "fuchsian_curve" else "dihedral3"
    e = request.getfixturevalue(e_name)
    assert curve.closed
    assert len(curve.samples) > 100
    for x in curve.samples[::7]:
        f, _, _ = sg._f_and_grad(e, x)
        assert abs(f) < sg.CURVE_TOL
        assert abs(abs(eval_q(e, x).q) - 1.0) < 1e-8


def test_curve_has_reflection_symmetry(fuchsian, fuchsian_curve):
    # mu0 = mu1 makes the curve symmetric about Re x = 1/2
    for x in fuchsian_curve.samples[::11]:
        xr = 1.0 - x.conjugate()
        assert abs(sg._newton_to_curve(fuchsian, xr) - xr) < 1e-8


def test_swallowtail_pipelines_agree(fuchsian, fuchsian_curve):
    t_star = swallowtail_t_exact()
    by_newton = sg.swallowtail_by_newton(fuchsian, 0.5 + 0.35j)
    assert abs(by_newton - complex(0.5, t_star)) < 1e-9
    sws = sg.find_swallowtails(fuchsian, fuchsian_curve)
    upper = [p.x for p in sws if p.x.imag > 0]
    assert len(upper) == 1
    assert abs(upper[0] - complex(0.5, t_star)) < 1e-9


def test_curve_is_cuspidal_away_from_swallowtails(fuchsian, fuchsian_curve):
    sws = [p.x for p in sg.find_swallowtails(fuchsian, fuchsian_curve)]
    checked = kept = 0
    for x in fuchsian_curve.samples[::5]:
        if min(abs(x - s) for s in sws) < 1e-3:
            continue
        checked += 1
        if sg.classify_point(fuchsian, x).cls == sg.CUSPIDAL_EDGE:
            kept += 1
    assert checked > 50
    assert kept >= 0.99 * checked


@pytest.fixture(scope="module")
def fuchsian_front():
    inv = LambdaInverse()

    def front_of_x(x):
        return eval_front_closed_form(inv, fuchsian_z_from_x(x)).H

    return front_of_x


@pytest.fixture(scope="module")
def self_intersection(fuchsian, fuchsian_front):
    t_star = swallowtail_t_exact()
    levels = [0.015, 0.03, t_star - 1e-4]
    return sg.find_self_intersection(fuchsian, fuchsian_front, levels)


def test_self_intersection_images_coincide(self_intersection, fuchsian_front):
    assert len(self_intersection.pairs) == 3
    for xa, xb in self_intersection.pairs:
        assert abs(xa.real + xb.real - 1.0) < 1e-14
        pa = hermitian_to_lorentz(fuchsian_front(xa))
        pb = hermitian_to_lorentz(fuchsian_front(xb))
        assert hyperbolic_distance(pa, pb) < 1e-6


def test_self_intersection_ends_at_swallowtail(self_intersection):
    t_star = swallowtail_t_exact()
    last = self_intersection.samples[-1]
    assert last.imag == pytest.approx(t_star - 1e-4)
    # the offset from the symmetry line shrinks to zero at the swallowtail
    offsets = self_intersection.samples.real - 0.5
    assert offsets[-1] < offsets[0]
    assert offsets[-1] < 2e-2


def test_self_intersection_meets_real_axis_perpendicularly(
        fuchsian, fuchsian_front):
    levels = [0.004, 0.008]
    curve = sg.find_self_intersection(fuchsian, fuchsian_front, levels)
    assert len(curve.samples) == 2
    dx = curve.samples[1] - curve.samples[0]
    angle = abs(math.degrees(math.atan2(dx.imag, dx.real)))
    assert abs(angle - 90.0) < 2.0


def test_cusp_model_discriminant():
    for s, t in [(0.3, -0.7), (-1.1, 0.4), (0.0, 1.0)]:
        x, y = sg.local_model_cusp(s, t)
        assert 27 * y * y + 4 * x ** 3 == pytest.approx(
            (s + 2 * t * t) ** 2 * (4 * s - t * t), abs=1e-12)


def test_swallowtail_model_value():
    assert sg.local_model_swallowtail(-2.0, 1.0) == (-3.0, -2.0, 12.0)


def test_swallowtail_chart_conjugation():
    for u, v in [(0.5, -0.3), (-1.2, 0.8), (0.0, 0.0), (1.0, 1.0)]:
        lhs = sg.swallowtail_canonical(u, v)
        st = sg.swallowtail_chart_source(u, v)
        rhs = sg.swallowtail_chart_target(*sg.local_model_swallowtail(*st))
        assert max(abs(a - b) for a, b in zip(lhs, rhs)) < 1e-12
