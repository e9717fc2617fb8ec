"""Exact polynomial elimination for the singular locus with mu = (0, 0, 0).

On the line of symmetry variables x = s + i t, s = 1/2 + u, the defining
function of the singular curve and the swallowtail condition become
polynomials in U = u^2 and T = t^2.  Eliminating one variable leaves a
cubic in S = U - T whose admissible roots locate swallowtail candidates
off the symmetry line, and a quartic in T for candidates on it.

Everything here is exact rational arithmetic (sympy); floating point
enters only when roots are extracted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import sympy as sp


@dataclass(frozen=True)
class FuchsianEliminationData:
    F: sp.Expr               # |Q|^2 - 16|x(1-x)|^4 in U, T
    G: sp.Expr               # Im(Q^3 conj(R)^2) / (t(2s-1)), calibrated, in U, T
    G1: sp.Expr              # 5F - 16G, rewritten in S = U - T, V = U*T
    F1: sp.Expr              # 256F - 16G1, rewritten in S, V
    substitutions: dict      # record of the variable changes
    calibration: sp.Rational      # global factor fixed by G(0,0) = 1323/256
    cubic: sp.Poly           # eliminant in S
    cubic_real_roots: tuple  # real roots of the eliminant, as floats
    admissible_roots: tuple  # real roots compatible with U, T >= 0
    symmetry_line_quartic: sp.Poly   # F(0, T) as a polynomial in T
    symmetry_line_T: tuple   # nonnegative real roots of F(0, T)


U, T, S, V = sp.symbols("U T S V", real=True)
_u, _t = sp.symbols("u t", real=True)


def _even_poly_to_UT(expr: sp.Expr) -> sp.Expr:
    """Rewrite a polynomial even in both u and t via U = u^2, T = t^2."""
    p = sp.Poly(sp.expand(expr), _u, _t)
    out = sp.Integer(0)
    for (eu, et), c in p.terms():
        if eu % 2 or et % 2:
            raise ValueError("polynomial is not even in (u, t)")
        out += c * U ** (eu // 2) * T ** (et // 2)
    return sp.expand(out)


def _rewrite_S_V(expr: sp.Expr) -> sp.Expr:
    """Express a polynomial in U, T through S = U - T and V = U*T.

    Only possible when the expression actually lies in the subring
    generated by U - T and U*T; solved by matching coefficients of a
    general ansatz of the right degree.
    """
    p = sp.Poly(expr, U, T)
    deg = p.total_degree()
    coeffs = []
    ansatz = sp.Integer(0)
    for i in range(deg + 1):
        for j in range(deg + 1):
            if i + 2 * j <= deg:
                a = sp.Symbol(f"a_{i}_{j}")
                coeffs.append(a)
                ansatz += a * S ** i * V ** j
    expanded = ansatz.subs({S: U - T, V: U * T})
    residue = sp.Poly(sp.expand(expanded - expr), U, T)
    sol = sp.solve(residue.coeffs(), coeffs, dict=True)
    if not sol:
        raise ValueError("expression is not a polynomial in S and V")
    subs = {a: sol[0].get(a, 0) for a in coeffs}
    return sp.expand(ansatz.subs(subs))


@lru_cache(maxsize=1)
def fuchsian_elimination() -> FuchsianEliminationData:
    s = sp.Rational(1, 2) + _u
    x = s + sp.I * _t
    xb = s - sp.I * _t

    def Qof(y):
        return 1 - y + y ** 2

    def Rof(y):
        return (2 * y - 1) * y * (1 - y) - 2 * Qof(y) * (1 - 2 * y)

    Q, Qb = Qof(x), Qof(xb)
    R, Rb = Rof(x), Rof(xb)
    g, gb = x * (1 - x), xb * (1 - xb)

    f = sp.expand(Q * Qb - 16 * (g * gb) ** 2)
    F = _even_poly_to_UT(f)

    W = sp.expand(Q ** 3 * Rb ** 2)
    Wb = sp.expand(Qb ** 3 * R ** 2)
    imW = sp.expand((W - Wb) / (2 * sp.I))
    G_raw = sp.cancel(imW / (_t * (2 * s - 1)))
    G_raw = _even_poly_to_UT(G_raw)

    target = sp.Rational(1323, 256)
    calibration = sp.Rational(sp.nsimplify(target / G_raw.subs({U: 0, T: 0})))
    G = sp.expand(calibration * G_raw)

    G1 = _rewrite_S_V(sp.expand(5 * F - 16 * G))
    F1 = _rewrite_S_V(sp.expand(256 * F - 16 * G1.subs({S: U - T, V: U * T})))

    # G1 is linear in V: solve for V and eliminate from F1.
    g1 = sp.Poly(G1, V)
    assert g1.degree() == 1
    V_of_S = sp.cancel(-g1.nth(0) / g1.nth(1))
    eliminant = sp.together(F1.subs(V, V_of_S))
    numer, _ = sp.fraction(eliminant)
    cubic = sp.Poly(sp.expand(numer), S)
    cubic = sp.Poly(cubic / sp.gcd_list(cubic.coeffs()), S)
    if sp.LC(cubic) < 0:
        cubic = sp.Poly(-cubic.as_expr(), S)

    real_roots = tuple(float(r) for r in sp.Poly(cubic, S).real_roots())
    admissible = []
    for r in real_roots:
        v = float(V_of_S.subs(S, r))
        # U, T are the (nonnegative) roots of y^2 - (U+T) y + V with
        # U + T = sqrt(S^2 + 4V); both nonnegative needs V >= 0.
        if v < 0 or r * r + 4 * v < 0:
            continue
        admissible.append(r)

    quartic = sp.Poly(F.subs(U, 0), T)
    sym_T = tuple(float(r) for r in quartic.real_roots() if r >= 0)

    return FuchsianEliminationData(
        F=F, G=G, G1=G1, F1=F1,
        substitutions={"s": "1/2 + u", "U": "u^2", "T": "t^2",
                       "S": "U - T", "V": "U*T",
                       "calibration": "G scaled so G(0,0) = 1323/256"},
        calibration=calibration,
        cubic=cubic,
        cubic_real_roots=real_roots,
        admissible_roots=tuple(admissible),
        symmetry_line_quartic=quartic,
        symmetry_line_T=sym_T,
    )


def swallowtail_t_exact() -> float:
    """The symmetry-line swallowtail height t* = sqrt((-3 + sqrt(17))/8)."""
    data = fuchsian_elimination()
    ts = [math.sqrt(Tv) for Tv in data.symmetry_line_T]
    target = math.sqrt((-3.0 + math.sqrt(17.0)) / 8.0)
    return min(ts, key=lambda t: abs(t - target))
