from fractions import Fraction

import pytest
import sympy as sp

from qfuzzy import spheres
from qfuzzy.scalars import I, LAM, ONE, Q, T, ZERO, PoleError, Scalar


@pytest.mark.parametrize("kind", spheres.PROJECTOR_KINDS)
def test_projector_invariants(kind):
    assert spheres.build_projector(kind).is_projector()


def test_fuzzy_at_zero_is_classical():
    F0 = spheres.build_projector("fuzzy", lam=0)
    C = spheres.build_projector("classical")
    for rf, rc in zip(F0.e, C.e):
        for x, y in zip(rf, rc):
            assert x.terms == y.terms


def test_classical_relations_force_projector():
    P = spheres.build_projector("classical")
    a, b, bs = (P.p.gen(x) for x in ("a", "b", "b†"))
    assert b * bs == a * (1 - a)
    assert bs * b == a * (1 - a)


def test_wrong_trace_is_detected():
    P = spheres.build_projector("qfuzzy")
    P.q_trace = False
    assert not P.trace_residual().is_zero()


def test_unknown_kind():
    with pytest.raises(ValueError):
        spheres.build_projector("torus")


def test_pauli_algebra():
    sig = spheres.pauli_matrices()
    eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}
    for i in range(3):
        for j in range(3):
            prod = [[sum((sig[i][r][m] * sig[j][m][c] for m in range(2)), ZERO) for c in range(2)] for r in range(2)]
            want = [[ONE if (r == c and i == j) else ZERO for c in range(2)] for r in range(2)]
            for k in range(3):
                e = eps.get((i, j, k), 0)
                want = [[want[r][c] + e * I * sig[k][r][c] for c in range(2)] for r in range(2)]
            assert prod == want


def test_pauli_form():
    assert spheres.pauli_form_check().ok
    assert spheres.pauli_form_check(lam=0).ok


def test_radius_of_classical_sphere():
    p = spheres.cartesian_fuzzy(lam=0)
    x = [p.gen(f"x{k}") for k in (1, 2, 3)]
    assert x[0] * x[0] + x[1] * x[1] + x[2] * x[2] == p.scalar(Scalar.coerce(1) / 4)


@pytest.mark.parametrize("suite", ["prop1_suite", "prop3_suite", "prop4_suite", "localization_suite"])
def test_suites_pass(suite):
    rep = getattr(spheres, suite)()
    assert rep.ok, [c for c in rep.claims if c.status != "pass"]


def test_s_parameters_are_inverse():
    # s² = (1 - λ')/λ' for one map, λ'/(1 - λ') for the alternate one
    lp = LAM / (Q * Q - 1)
    s2 = (1 - lp) / lp
    s2_alt = lp / (1 - lp)
    assert s2 * s2_alt == ONE
    # sympy oracle for the Podleś parameter at q^{1/2} = 3, λ = 4
    q, lam = sp.Integer(9), sp.Integer(4)
    want = lam / (q**2 - 1 - lam)
    assert want == sp.Rational(1, 19)
    assert s2_alt.specialize({"h": 3, "lam": 4}).to_fraction() == Fraction(1, 19)


def test_slice_u_squared():
    p = spheres.time_slice()
    u = spheres.slice_u(p)
    u2 = spheres.mat_mul2(p, u, u)
    for i in range(2):
        for j in range(2):
            want = p.scalar(-Q.inverse() ** 2 if i == j else ZERO) + ((T + T.inverse()) / Q) * u[i][j]
            assert u2[i][j] == want


def test_slice_lambda_pole():
    assert spheres.slice_lambda(2) == Scalar.coerce(4) * (1 - Q * Q) / (-3)
    with pytest.raises((PoleError, ZeroDivisionError)):
        spheres.slice_lambda(1)


def test_slice_lambda_sympy():
    q, t = sp.symbols("q t")
    expr = t**2 * (1 - q**2) / (1 - t**2)
    for qv, tv in [(4, 2), (9, 3), (Fraction(9, 4), Fraction(1, 2))]:
        want = expr.subs({q: sp.Rational(qv), t: sp.Rational(tv)})
        got = spheres.slice_lambda(tv).specialize({"q": qv})
        assert got.to_fraction() == Fraction(str(want))


def test_casimir_central():
    U = spheres.casimir_quotient(T + T.inverse())
    c = spheres.casimir(U)
    assert c == U.scalar(T + T.inverse())
