import cmath
import math
from fractions import Fraction as Fr

import numpy as np
import pytest

from schwarzfront import front as fr
from schwarzfront.equation import eval_q, exponents_from_mu
from schwarzfront.h3 import Isometry, apply_isometry, hermitian_to_ball
from schwarzfront.modular import LambdaInverse, fuchsian_z_from_x
from schwarzfront.polyhedral import PolyhedralInverse, dihedral_z_from_x

DET_TOL = 1e-10
ORACLE_TOL = 1e-6


@pytest.fixture(scope="module")
def dihedral3():
    return PolyhedralInverse("dihedral", 3)


def test_front_matrix_is_unimodular(dihedral3):
    rng = np.random.default_rng(3)
    for _ in range(50):
        z = rng.uniform(0.2, 0.9) * cmath.exp(1j * rng.uniform(0.05, 1.0))
        U, _ = fr.eval_front_matrix(dihedral3, z)
        assert abs(np.linalg.det(U) - 1.0) < DET_TOL


def test_hermitian_matches_matrix_square(dihedral3):
    rng = np.random.default_rng(5)
    for _ in range(30):
        z = rng.uniform(0.2, 0.9) * cmath.exp(1j * rng.uniform(0.05, 1.0))
        U, _ = fr.eval_front_matrix(dihedral3, z)
        H = fr.eval_front_closed_form(dihedral3, z).H
        m = U @ U.conj().T
        assert np.linalg.norm(H.matrix() - m) < 1e-10 * np.linalg.norm(m)


def test_front_hermitian_det_is_one(dihedral3):
    for z in (0.3 + 0.2j, 0.55 * cmath.exp(0.8j)):
        H = fr.eval_front_closed_form(dihedral3, z).H
        assert abs(H.det() - 1.0) < 1e-9


def test_ramification_point_rejected(dihedral3):
    # dx/dz = 0 at the cube roots of -1 and 1 on the unit circle
    with pytest.raises(fr.RamificationError):
        fr.eval_front_matrix(dihedral3, cmath.exp(1j * math.pi / 3))


def test_sqrt_branch_continuation(dihedral3):
    # continuation along a loop around a ramification point flips the sign
    z0 = cmath.exp(1j * math.pi / 3)
    s_prev = None
    path = [z0 + 0.05 * cmath.exp(1j * t)
            for t in np.linspace(0.0, 2.0 * math.pi, 200)]
    first = fr.eval_front_matrix(dihedral3, path[0])[1]
    for z in path:
        _, s_prev = fr.eval_front_matrix(dihedral3, z, sqrt_prev=s_prev)
    assert abs(s_prev + first) < 1e-3 * abs(first)


def test_integrate_requires_unimodular_start():
    e = exponents_from_mu(Fr(1, 2), Fr(1, 2), Fr(1, 3))
    with pytest.raises(ValueError):
        fr.integrate_sl_form(e, [0.4 + 0.4j, 0.5 + 0.4j],
                             U0=2.0 * np.eye(2))


def test_integrate_rejects_paths_near_singularities():
    e = exponents_from_mu(Fr(1, 2), Fr(1, 2), Fr(1, 3))
    with pytest.raises(fr.PathError):
        fr.integrate_sl_form(e, [-0.5 + 1e-5j, 0.5 + 1e-5j])


def test_integration_is_path_independent():
    e = exponents_from_mu(Fr(1, 2), Fr(1, 2), Fr(1, 3))
    a, b = 0.4 + 0.5j, 0.7 + 0.3j
    direct = fr.integrate_sl_form(e, [a, b]).U
    detour = fr.integrate_sl_form(e, [a, 0.5 + 0.8j, b]).U
    assert np.linalg.norm(direct - detour) < 1e-9 * np.linalg.norm(direct)


def test_wronskian_is_preserved():
    e = exponents_from_mu(0, 0, 0)
    U = fr.integrate_sl_form(e, [0.5 + 0.4j, 0.3 + 0.6j]).U
    assert abs(np.linalg.det(U) - 1.0) < 1e-10


def test_match_isometry_recovers_known_transform(dihedral3):
    zs = [r * cmath.exp(1j * t) for r in (0.35, 0.5, 0.65)
          for t in (0.15, 0.45, 0.75)]
    Ha = [fr.eval_front_closed_form(dihedral3, z).H for z in zs]
    P0 = np.array([[1.2 + 0.3j, 0.4 - 0.1j], [0.2j, 0.8]])
    P0 /= np.sqrt(np.linalg.det(P0))
    Hb = [apply_isometry(Isometry(np.linalg.inv(P0)), H) for H in Ha]
    iso, resid = fr.match_isometry(Ha, Hb)
    assert resid < 1e-10
    rel = iso.matrix / P0
    assert np.allclose(rel, rel[0, 0] * np.ones((2, 2)), atol=1e-8)


def test_closed_form_agrees_with_ode_oracle_dihedral(dihedral3):
    e = exponents_from_mu(Fr(1, 2), Fr(1, 2), Fr(1, 3))
    center = 0.5 + 0.45j
    xs = [center] + [center + 0.25 * cmath.exp(1j * 0.7 * k) * (0.4 + 0.06 * k)
                     for k in range(8)]
    Ha, Hb = [], []
    for x in xs:
        z = dihedral_z_from_x(3, x)
        Ha.append(fr.eval_front_closed_form(dihedral3, z).H)
        U = np.eye(2, dtype=complex) if x == xs[0] else \
            fr.integrate_sl_form(e, [xs[0], x]).U
        Hb.append(fr.hermitian_of_solution(U))
    _, resid = fr.match_isometry(Ha, Hb)
    assert resid < ORACLE_TOL


def test_closed_form_agrees_with_ode_oracle_fuchsian():
    e = exponents_from_mu(0, 0, 0)
    inv = LambdaInverse()
    center = 0.5 + 0.45j
    xs = [center] + [center + 0.2 * cmath.exp(1j * 0.9 * k) * (0.5 + 0.05 * k)
                     for k in range(8)]
    Ha, Hb = [], []
    for x in xs:
        z = fuchsian_z_from_x(x)
        Ha.append(fr.eval_front_closed_form(inv, z).H)
        U = np.eye(2, dtype=complex) if x == xs[0] else \
            fr.integrate_sl_form(e, [xs[0], x]).U
        Hb.append(fr.hermitian_of_solution(U))
    _, resid = fr.match_isometry(Ha, Hb)
    assert resid < ORACLE_TOL


def test_end_probe_reaches_boundary(dihedral3):
    zs = [0.02 * cmath.exp(0.3j) * (0.85 ** k) for k in range(10)]
    probe = fr.end_behavior_probe(dihedral3, zs, cauchy_tol=5e-3)
    assert probe.monotone_tail
    assert probe.norms[-1] > 1.0 - 1e-3
    assert probe.limit is not None
