from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given

from qfuzzy.scalars import ELL, I, LAM, ONE, Q, QH, PoleError, Scalar, mu, podles_s2

from strategies import nonzero_scalars, scalar_pairs, scalars


def test_difference_of_squares():
    assert (Q - Q.inverse()) * (Q + Q.inverse()) == Q**2 - Q**-2
    assert str((Q - Q.inverse()) * (Q + Q.inverse())) == "q^2 - q^-2"


def test_mu_identity():
    assert mu() == (Q * Q - 1) / (Q * Q)


def test_podles_parameter_at_q2_2():
    # q² = 2, λ = 1/2 gives s² = (1/2)/(2 - 1 - 1/2) = 1
    assert podles_s2(Scalar(1, 0, 2), 2) == 1


def test_podles_parameter_specialized():
    # q^(1/2) = 3, λ = 4: 4/(81 - 1 - 4) = 1/19
    v = podles_s2().specialize({"h": 3, "lam": 4})
    assert v == Scalar.coerce(Fraction(1, 19))
    assert v.to_fraction() == Fraction(4, 81 - 1 - 4)


def test_classical_limit_of_mu():
    assert mu().specialize({"h": 1}) == 0


def test_pole_at_q_one():
    with pytest.raises(PoleError):
        mu().inverse().specialize({"h": 1})


def test_q_specialization_needs_square():
    assert Q.specialize({"q": Fraction(9, 4)}) == Scalar.coerce(Fraction(9, 4))
    assert QH.specialize({"q": Fraction(9, 4)}) == Scalar.coerce(Fraction(3, 2))
    with pytest.raises(ValueError):
        Q.specialize({"q": 2})


def test_conjugate():
    assert (I * ELL).conjugate() == -I * ELL
    assert (Q + LAM).conjugate() == Q + LAM


def test_constructor_forms():
    assert Scalar(4) == 4
    assert Scalar(3, 4) == Scalar.gaussian(3, 4)
    assert Scalar(1, 0, 2) == Scalar.coerce(Fraction(1, 2))


@given(scalars())
def test_conjugate_involution(x):
    assert x.conjugate().conjugate() == x


@given(scalars(), scalars(), scalars())
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(nonzero_scalars(), scalars())
def test_division_inverts_multiplication(x, y):
    assert (y * x) / x == y
    assert x * x.inverse() == ONE


@given(scalar_pairs(), scalar_pairs())
def test_against_sympy(a, b):
    # independent oracle: the same polynomials built in sympy, compared at a rational point
    (x, sx), (y, sy) = a, b
    h, lam, t = sp.symbols("h lam t")
    point = {"h": Fraction(3, 2), "lam": Fraction(-2, 5), "t": 7}
    got = (x * y - y + x * x).specialize(point).to_fraction()
    want = (sx * sy - sy + sx * sx).subs({h: sp.Rational(3, 2), lam: sp.Rational(-2, 5), t: 7})
    assert got == Fraction(int(sp.numer(want)), int(sp.denom(want)))


@given(scalars(), scalars())
def test_specialize_is_a_homomorphism(x, y):
    at = {"h": 2, "lam": Fraction(1, 3), "t": 5, "ell": 7}
    assert (x * y + y).specialize(at) == x.specialize(at) * y.specialize(at) + y.specialize(at)
