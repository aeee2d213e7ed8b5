from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfuzzy import rmatrix as rm
from qfuzzy.freealg import Presentation, hom_check
from qfuzzy.loader import load_algebra, load_rmatrix
from qfuzzy.scalars import I, ONE, Q, ZERO, Scalar


def numeric(R, h):
    """R as a plain Fraction matrix at q^{1/2} = h (rows (i,k), columns (j,l))."""
    return [[x.specialize({"h": h}).to_fraction() for x in row] for row in R.matrix()]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def kron(a, b):
    n, m = len(a), len(b)
    return [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


EYE2 = [[Fraction(1), 0], [0, Fraction(1)]]
SWAP = [[Fraction(int(i == (j % 2) * 2 + j // 2)) for j in range(4)] for i in range(4)]


def ybe_oracle(m):
    """Dense 8×8 check R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂ with R₁₃ = P₂₃R₁₂P₂₃."""
    r12 = kron(m, EYE2)
    r23 = kron(EYE2, m)
    p23 = kron(EYE2, SWAP)
    r13 = matmul(matmul(p23, r12), p23)
    return matmul(matmul(r12, r13), r23) == matmul(matmul(r23, r13), r12)


@pytest.mark.parametrize("h", [2, 3])
def test_standard_ybe_against_dense_oracle(h):
    R = rm.standard_r()
    assert rm.ybe_check(R).ok
    assert ybe_oracle(numeric(R, h))


def test_identity_ybe():
    assert rm.ybe_check(rm.identity_r()).ok


def test_broken_entry_fails():
    R = rm.standard_r().with_entry((0, 1, 1, 0), Q)
    res = rm.ybe_check(R)
    assert not res.ok and res.residual
    assert not ybe_oracle(numeric(R, 2))


def test_shipped_files_match_constructors():
    for name, R in rm.shipped_rmatrices().items():
        assert load_rmatrix(name) == R
    assert not rm.ybe_check(load_rmatrix("perturbed")).ok


def test_second_inverse_identity():
    assert rm.second_inverse(rm.identity_r()) == rm.identity_r()


def test_second_inverse_diagonal():
    p = Q + 2
    e = {(i, i, k, k): (p if i == k else ONE) for i in range(2) for k in range(2)}
    R = rm.RMatrix(2, e, None, "diag")
    want = {(i, i, k, k): (p.inverse() if i == k else ONE) for i in range(2) for k in range(2)}
    assert rm.second_inverse(R) == rm.RMatrix(2, want, None, "diag")


@pytest.mark.parametrize("norm", ["hecke", "quantum-group"])
def test_second_inverse_standard(norm):
    # oracle: transpose in the second factor, invert, transpose back, with sympy
    import sympy as sp

    R = rm.standard_r(norm)
    t2 = sp.Matrix(4, 4, lambda r, c: sp.Rational(str(R(r // 2, c // 2, c % 2, r % 2).specialize({"h": 2}).to_fraction())))
    inv = t2.inv()
    Rt = rm.second_inverse(R)
    for i, j, k, l in R.indices():
        # R̃ = ((R^{t₂})⁻¹)^{t₂}
        want = inv[2 * i + l, 2 * j + k]
        assert Rt(i, j, k, l).specialize({"h": 2}).to_fraction() == Fraction(str(want))
    assert all(r.is_zero() for r in rm.second_inverse_residuals(R, Rt))


def test_u_matrix():
    assert rm.u_matrix(rm.identity_r()) == [[ONE, ZERO], [ZERO, ONE]]
    u = rm.u_matrix(rm.standard_r())
    assert u[0][1] == 0 and u[1][0] == 0
    assert u[1][1] / u[0][0] == Q * Q


def test_u_hermitian_at_rational_q():
    for R in (rm.standard_r(), rm.twisted_r()):
        u = rm.u_matrix(R)
        assert rm.is_hermitian([[x.specialize({"h": 3}) for x in row] for row in u])


def test_real_type():
    assert rm.real_type_check(rm.standard_r())
    assert rm.real_type_check(rm.twisted_r())
    assert not rm.real_type_check(rm.standard_r().with_entry((0, 0, 1, 1), I))
    diag = rm.RMatrix(2, {(i, i, k, k): Scalar.coerce(1 + i + k) for i in range(2) for k in range(2)}, None, "d")
    assert rm.real_type_check(diag)


def test_frt_standard():
    A = rm.frt_relations(rm.standard_r())
    a, b, c, d = (A.gen(x) for x in "abcd")
    assert b * a == Q * a * b
    assert c * b == b * c


def test_frt_identity_commutative():
    A = rm.frt_relations(rm.identity_r())
    g = list(A.gens().values())
    assert all((x * y - y * x).is_zero() for x in g for y in g)


def test_counit_is_algebra_map():
    A = rm.frt_relations(rm.standard_r())
    C = Presentation("C", [])
    images = {"a": C.one(), "b": C.zero(), "c": C.zero(), "d": C.one()}
    assert all(r.is_zero() for r in hom_check(A, C, images, check_star=False))


def test_reflection_standard_matches_bqm2():
    Rf = rm.reflection_relations(rm.standard_r())
    al, be = Rf.gen("α"), Rf.gen("β")
    assert be * al == Q * Q * al * be
    B = load_algebra("bqm2")
    assert all(B.normalize(r).is_zero() for r in Rf.rule_elements())
    assert all(Rf.normalize(r).is_zero() for r in B.rule_elements())


def test_reflection_identity_commutative():
    Rf = rm.reflection_relations(rm.identity_r())
    g = list(Rf.gens().values())
    assert all((x * y - y * x).is_zero() for x in g for y in g)


def _equivalent(p, q):
    return all(q.normalize(r).is_zero() for r in p.rule_elements()) and all(
        p.normalize(r).is_zero() for r in q.rule_elements()
    )


def test_braided_sphere_standard_is_qfuzzy():
    _, p = rm.braided_sphere_relations(rm.standard_r())
    assert _equivalent(p, load_algebra("qfuzzy"))


def test_braided_sphere_identity_classical():
    _, p = rm.braided_sphere_relations(rm.identity_r(), lam=0)
    a, b, bs = (p.gen(x) for x in ("a", "b", "b†"))
    assert b * a == a * b
    assert b * bs == a * (1 - a)
    assert bs * b == a * (1 - a)


def test_braided_sphere_identity_fuzzy():
    _, p = rm.braided_sphere_relations(rm.identity_r())
    assert _equivalent(p, load_algebra("fuzzy"))


def test_eq9_identity_commutes():
    for _, r in rm.eq9_relations(rm.identity_r()):
        (w1, c1), (w2, c2) = sorted(r.terms.items())
        assert c1 == -c2 and sorted(w1) == sorted(w2)


def test_frt_calculus_identity_commutes():
    rules = rm.frt_calculus_rules(rm.identity_r())
    for (e, t), rhs in rules.items():
        assert rhs == {(t, e): ONE}


@given(st.integers(min_value=2, max_value=6))
def test_standard_ybe_at_random_q(h):
    assert ybe_oracle(numeric(rm.standard_r(), h))
