import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from qfuzzy import bicross as bc
from qfuzzy.bicross import ExpSum, NOFunction
from qfuzzy.scalars import ELL, I, K1, K2, OMEGA, Scalar

x, y, z, ell, k1, k2, om = sp.symbols("x y z ell k1 k2 omega")
IL = I * ELL


def to_sympy(c: Scalar):
    text = str(c).replace("ℓ", "ell").replace("ω", "omega").replace("^", "**")
    return sp.sympify(text, locals={"i": sp.I, "ell": ell, "omega": om, "k1": k1, "k2": k2})


def expsum_to_sympy(e: ExpSum):
    return sum((to_sympy(c) * sp.exp(to_sympy(b)) for b, c in e.terms.items()), sp.Integer(0))


def nof_to_sympy(f: NOFunction):
    out = sp.Integer(0)
    for key, c in f.terms.items():
        assert not (key.ax or key.ay or key.az)
        out += expsum_to_sympy(c) * x**key.m * y**key.n * z**key.k
    return sp.expand(out)


def test_partials_of_x_squared():
    p = bc.partials(NOFunction.x() ** 2)
    assert p["x"] == NOFunction.x().scale(2)
    assert p["y"].is_zero() and p["z"].is_zero()
    assert p["0"].scale(IL.inverse()) == NOFunction.const(1)


def test_partials_of_z():
    p = bc.partials(NOFunction.z())
    assert p["z"] == NOFunction.const(1)
    assert p["0"].is_zero()


def test_partials_of_z_squared():
    p = bc.partials(NOFunction.z() ** 2)
    assert p["z"] == NOFunction.z().scale(2) - NOFunction.const(IL)
    assert p["0"].scale(IL.inverse()) == NOFunction.const(1)


def test_eigenvalue_closed_form():
    got = expsum_to_sympy(bc.laplacian_eigenvalue())
    ksq = k1**2 + k2**2
    want = -ksq * sp.exp(-om * ell) - (sp.sinh(om * ell / 2) / (ell / 2)) ** 2
    assert sp.simplify(sp.expand((got - want).rewrite(sp.exp))) == 0
    assert bc.laplacian_eigenvalue() == bc.expected_eigenvalue()


def test_eigenvalue_special_cases():
    assert bc.laplacian_eigenvalue(omega=0) == ExpSum.coerce(-(K1 * K1 + K2 * K2))
    got = expsum_to_sympy(bc.laplacian_eigenvalue(0, 0))
    want = -(sp.sinh(om * ell / 2) / (ell / 2)) ** 2
    assert sp.simplify(sp.expand((got - want).rewrite(sp.exp))) == 0


def test_eigenvalue_limit():
    lim = bc.series_limit(bc.laplacian_eigenvalue())
    assert lim == -(K1 * K1 + K2 * K2 + OMEGA * OMEGA)
    assert sp.limit(expsum_to_sympy(bc.laplacian_eigenvalue()), ell, 0) == -(k1**2 + k2**2 + om**2)


def test_z_past_exponential_unsupported():
    with pytest.raises(NotImplementedError):
        NOFunction.z() * NOFunction.exp(ax=I)


def test_calculus_and_limit_suites():
    assert bc.dga_suite(max_degree=4).ok
    assert bc.partials_suite(max_degree=3).ok
    assert bc.laplacian_suite().ok
    assert bc.limit_from_cqsu2().ok


def test_differential_reassembly():
    gp = bc.omega_bicross()
    for f in (NOFunction.x() ** 3, NOFunction.x() * NOFunction.y() * NOFunction.z(), NOFunction.z() ** 3):
        assert gp.d(bc.to_element(f, gp)) == bc.d_from_partials(f, gp)


coeffs = st.integers(min_value=-3, max_value=3)
monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
polys = st.dictionaries(monos, coeffs, min_size=1, max_size=4)


def build(poly):
    f = NOFunction()
    for (m, n, k), c in poly.items():
        f = f + NOFunction.monomial(m, n, k, coeff=Scalar.coerce(c))
    return f


@given(polys)
@settings(max_examples=30)
def test_laplacian_matches_sympy(poly):
    # Δ(f(x,y)g(z)) = ∇²f·g(z+iℓ) + f·(g(z+iℓ) + g(z-iℓ) - 2g(z))/(iℓ)²
    il = sp.I * ell
    want = sp.Integer(0)
    for (m, n, k), c in poly.items():
        f = c * x**m * y**n
        g = z**k
        sh = lambda d: g.subs(z, z + d)
        want += (sp.diff(f, x, 2) + sp.diff(f, y, 2)) * sh(il) + f * (sh(il) + sh(-il) - 2 * g) / il**2
    assert nof_to_sympy(bc.laplacian(build(poly))) == sp.expand(want)


@given(polys)
@settings(max_examples=30)
def test_xy_partials_are_derivatives(poly):
    f = build(poly)
    p = bc.partials(f)
    s = nof_to_sympy(f)
    assert nof_to_sympy(p["x"]) == sp.expand(sp.diff(s, x))
    assert nof_to_sympy(p["y"]) == sp.expand(sp.diff(s, y))
