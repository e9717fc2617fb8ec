import math

import pytest
import sympy as sp

from schwarzfront import elimination as el
from schwarzfront.elimination import S, T, U, V, fuchsian_elimination


@pytest.fixture(scope="module")
def data():
    return fuchsian_elimination()


def test_f_has_constant_term_one_half(data):
    assert data.F.subs({U: 0, T: 0}) == sp.Rational(1, 2)


def test_g_constant_term(data):
    assert data.G.subs({U: 0, T: 0}) == sp.Rational(1323, 256)


def test_calibration_is_a_sign(data):
    assert abs(data.calibration) == 1


def test_g1_closed_form(data):
    printed = (256 * S ** 3 - 43 * S ** 2 + 1024 * S * V
               - sp.Rational(353, 2) * S + 340 * V
               - sp.Rational(1283, 16))
    assert sp.simplify(data.G1 - printed) == 0


def test_g1_is_linear_in_v(data):
    assert sp.Poly(data.G1, V).degree() == 1


def test_f1_combination(data):
    back = sp.expand(256 * data.F
                     - 16 * data.G1.subs({S: U - T, V: U * T}))
    assert sp.simplify(data.F1.subs({S: U - T, V: U * T}) - back) == 0


def test_eliminant_cubic_coefficients(data):
    assert data.cubic.all_coeffs() == [32768, -50448, -84888, -26521]


def test_eliminant_has_no_admissible_root(data):
    assert len(data.cubic_real_roots) == 1
    assert data.cubic_real_roots[0] == pytest.approx(2.638, abs=2e-3)
    assert data.admissible_roots == ()


def test_symmetry_line_root(data):
    assert len(data.symmetry_line_T) == 1
    assert data.symmetry_line_T[0] == pytest.approx(
        (-3.0 + math.sqrt(17.0)) / 8.0, abs=1e-14)


def test_swallowtail_height():
    t_star = el.swallowtail_t_exact()
    assert t_star == pytest.approx(
        math.sqrt((-3.0 + math.sqrt(17.0)) / 8.0), abs=1e-15)
    assert t_star == pytest.approx(0.3746841379111312, abs=1e-15)
