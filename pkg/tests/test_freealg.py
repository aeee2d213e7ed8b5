import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfuzzy.freealg import (
    AlphabetError,
    InconsistentPresentation,
    Presentation,
    centrality_check,
    format_element,
    hom_check,
)
from qfuzzy.loader import load_algebra
from qfuzzy.scalars import LAM, Q, Scalar, lam_prime, mu, podles_s2
from qfuzzy.spheres import podles


@pytest.fixture(scope="module")
def qf():
    return load_algebra("qfuzzy")


def test_qfuzzy_normal_form(qf):
    b, a = qf.gen("b"), qf.gen("a")
    assert format_element(b * a) == "q^2*a*b - λ*b"
    assert b * a == Q * Q * a * b - LAM * b


def test_inverse_pair():
    U = load_algebra("uqsu2")
    assert U.gen("K") * U.gen("K⁻¹") == U.one()
    assert U.gen("K⁻¹") * U.gen("K") == U.one()


def test_bqm2_delta_beta():
    B = load_algebra("bqm2")
    al, be, de = B.gen("α"), B.gen("β"), B.gen("δ")
    assert de * be == be * de + mu() * al * be


def test_star_of_generator(qf):
    assert qf.gen("b").star() == qf.gen("b†")
    assert qf.gen("a").star() == qf.gen("a")


def test_star_reverses_products():
    P = podles(podles_s2())
    z, x, zs = P.gen("z"), P.gen("x"), P.gen("z†")
    assert (z * x).star() == x * zs
    # zx = q²xz, so (zx)* = q² z*x as well
    assert (z * x).star() == Q * Q * zs * x


def test_uq_commutator():
    U = load_algebra("uqsu2")
    K, Ki, xp, xm = (U.gen(g) for g in ("K", "K⁻¹", "x₊", "x₋"))
    assert xp * xm - xm * xp == (K * K - Ki * Ki) / (Q - Q.inverse())


def test_confluence_of_qfuzzy(qf):
    assert qf.check_local_confluence(4) == []


def test_confluence_of_bqsu2():
    assert load_algebra("bqsu2").check_local_confluence(5) == []


def test_constructed_counterexample():
    free = Presentation("free", ["a", "b", "c"])
    a, b, c = free.gens().values()
    good = [b * a - a * b - 1, c * a - a * c, c * b - b * c - 1]
    assert Presentation("weyl", ["a", "b", "c"], good).check_local_confluence(4) == []
    bad = Presentation("bad", ["a", "b", "c"], good + [b * a - a * b], autoreduce=False)
    assert bad.check_local_confluence(4)
    with pytest.raises(InconsistentPresentation):
        Presentation("bad", ["a", "b", "c"], good + [b * a - a * b])


def test_podles_to_qfuzzy(qf):
    lp = lam_prime()
    P = podles(podles_s2())
    images = {"z": qf.gen("b") / (1 - lp), "z†": qf.gen("b†") / (1 - lp), "x": (qf.gen("a") - lp) / (1 - lp)}
    assert all(r.is_zero() for r in hom_check(P, qf, images))


def test_identity_hom(qf):
    assert all(r.is_zero() for r in hom_check(qf, qf, qf.gens()))


def test_lambda_reflection(qf):
    target = load_algebra("qfuzzy", lam=Q * Q - 1 - LAM)
    images = {"a": 1 - target.gen("a"), "b": target.gen("b"), "b†": target.gen("b†")}
    assert all(r.is_zero() for r in hom_check(qf, target, images))


def test_wrong_hom_is_detected(qf):
    images = {"a": qf.gen("a"), "b": qf.gen("b†"), "b†": qf.gen("b")}
    assert any(not r.is_zero() for r in hom_check(qf, qf, images))


def test_casimir_central():
    U = load_algebra("uqsu2")
    K, Ki, xp, xm = (U.gen(g) for g in ("K", "K⁻¹", "x₊", "x₋"))
    cq = Q.inverse() * K * K + Q * Ki * Ki + (Q - Q.inverse()) ** 2 * xp * xm
    assert all(r.is_zero() for r in centrality_check(U, cq))
    assert all(r.is_zero() for r in centrality_check(U, U.one()))
    assert not all(r.is_zero() for r in centrality_check(U, K))


def test_quantum_trace_central():
    B = load_algebra("bqm2")
    tr = Q.inverse() * B.gen("α") + Q * B.gen("δ")
    assert all(r.is_zero() for r in centrality_check(B, tr))


def test_unknown_generator(qf):
    with pytest.raises(AlphabetError):
        qf.gen("z")


WORDS = st.lists(st.sampled_from(["a", "b", "b†"]), min_size=0, max_size=4)
COEFFS = st.sampled_from([Scalar.coerce(1), Scalar.coerce(-2), Q, LAM, Q.inverse() + LAM])


@st.composite
def elements(draw, p):
    out = p.zero()
    for _ in range(draw(st.integers(1, 3))):
        out = out + draw(COEFFS) * p.word(*draw(WORDS))
    return out


QF = load_algebra("qfuzzy")


@given(elements(QF), elements(QF), elements(QF))
def test_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(elements(QF))
def test_normalize_idempotent(x):
    assert QF.normalize(x.terms) == x


@given(elements(QF), elements(QF))
def test_star_antihomomorphism(x, y):
    assert (x * y).star() == y.star() * x.star()
    assert x.star().star() == x
