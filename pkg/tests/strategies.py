"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from qfuzzy.scalars import ELL, LAM, QH, T, Scalar

SMALL = st.integers(min_value=-3, max_value=3)


@st.composite
def scalars(draw, gaussian: bool = True):
    """Laurent polynomials in q^(1/2) times polynomials in λ, t, ℓ with small coefficients."""
    out = Scalar.coerce(0)
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        c = Scalar.gaussian(draw(SMALL), draw(SMALL) if gaussian else 0)
        term = c * QH ** draw(st.integers(min_value=-3, max_value=3))
        term = term * LAM ** draw(st.integers(0, 2)) * T ** draw(st.integers(0, 1)) * ELL ** draw(st.integers(0, 1))
        out = out + term
    return out


@st.composite
def nonzero_scalars(draw, gaussian: bool = True):
    x = draw(scalars(gaussian))
    return x if x else Scalar.coerce(draw(st.integers(1, 5)))


@st.composite
def scalar_pairs(draw):
    """A real Scalar together with the same expression built in sympy."""
    import sympy as sp

    h, lam, t = sp.symbols("h lam t")
    x, y = Scalar.coerce(0), sp.Integer(0)
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        c, a, b, e = draw(SMALL), draw(st.integers(-3, 3)), draw(st.integers(0, 2)), draw(st.integers(0, 1))
        x = x + Scalar.coerce(c) * QH**a * LAM**b * T**e
        y = y + c * h**a * lam**b * t**e
    return x, y
