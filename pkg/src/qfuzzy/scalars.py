"""Exact coefficient field.

Elements are rational functions in ``q^(1/2)`` and the central parameters
``λ, t, s, ℓ, ω, k1, k2`` with Gaussian-rational coefficients.  A value is
stored as ``(re + i*im) / den`` where ``re``, ``im`` and ``den`` are
polynomials over the rationals, ``den`` is monic and the triple has no common
polynomial factor.  This representation is unique, so equality of values is
equality of the stored polynomials.

All indeterminates are real: conjugation only flips the sign of ``im``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Mapping, Union

import flint

__all__ = [
    "Scalar",
    "PoleError",
    "INDETERMINATES",
    "ONE",
    "ZERO",
    "I",
    "QH",
    "Q",
    "LAM",
    "T",
    "S",
    "ELL",
    "OMEGA",
    "K1",
    "K2",
    "mu",
    "lam_prime",
    "podles_s2",
    "q_number",
]

# internal name -> printed name; "h" is q^(1/2)
INDETERMINATES = ("h", "lam", "t", "s", "ell", "omega", "k1", "k2")
_PRINT = {"lam": "λ", "t": "t", "s": "s", "ell": "ℓ", "omega": "ω", "k1": "k1", "k2": "k2"}

_CTX = flint.fmpq_mpoly_ctx.get(INDETERMINATES, "degrevlex")
_NVARS = len(INDETERMINATES)
_P0 = _CTX.from_dict({})
_P1 = _CTX.constant(1)


class PoleError(ZeroDivisionError):
    """Raised when a denominator vanishes (division by zero or a pole under specialization)."""


Number = Union[int, Fraction, Rational]


def _poly_const(c) -> flint.fmpq_mpoly:
    if isinstance(c, Fraction):
        c = flint.fmpq(c.numerator, c.denominator)
    return _CTX.constant(c)


class Scalar:
    """Immutable element of the coefficient field."""

    __slots__ = ("re", "im", "den", "_hash")

    def __init__(self, re=None, im=None, den=None, _reduced: bool = False):
        re = _P0 if re is None else re if isinstance(re, flint.fmpq_mpoly) else _poly_const(re)
        im = _P0 if im is None else im if isinstance(im, flint.fmpq_mpoly) else _poly_const(im)
        den = _P1 if den is None else den if isinstance(den, flint.fmpq_mpoly) else _poly_const(den)
        if not _reduced:
            if den.is_zero():
                raise PoleError("zero denominator")
            if not den.is_one():
                g = den.gcd(re) if not re.is_zero() else den
                if not im.is_zero():
                    g = g.gcd(im)
                if not g.is_one():
                    den = den / g
                    re = re / g
                    im = im / g
                lc = den.leading_coefficient()
                if lc != 1:
                    den = den / lc
                    re = re / lc
                    im = im / lc
        self.re = re
        self.im = im
        self.den = den
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(_poly_const(x), _reduced=True)
        if isinstance(x, complex):
            raise TypeError("floating-point values are not exact scalars")
        if isinstance(x, Rational):
            return cls(_poly_const(Fraction(x.numerator, x.denominator)), _reduced=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def gaussian(cls, re: Number, im: Number = 0) -> "Scalar":
        return cls(_poly_const(Fraction(re)), _poly_const(Fraction(im)), _reduced=True)

    @classmethod
    def gen(cls, name: str) -> "Scalar":
        idx = INDETERMINATES.index(name)
        exps = [0] * _NVARS
        exps[idx] = 1
        return cls(_CTX.from_dict({tuple(exps): 1}), _reduced=True)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_one(self) -> bool:
        return self.re.is_one() and self.im.is_zero() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.re.is_constant() and self.im.is_constant() and self.den.is_constant()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def free_symbols(self) -> set[str]:
        names = set()
        for p in (self.re, self.im, self.den):
            for exps in p.to_dict():
                names.update(INDETERMINATES[k] for k, e in enumerate(exps) if e)
        return names

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return Scalar(self.re + o.re, self.im + o.im, _reduced=True)
        if self.den == o.den:
            return Scalar(self.re + o.re, self.im + o.im, self.den)
        return Scalar(
            self.re * o.den + o.re * self.den,
            self.im * o.den + o.im * self.den,
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im, self.den, _reduced=True)

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.im.is_zero() and o.im.is_zero():
            re, im = self.re * o.re, _P0
        else:
            re = self.re * o.re - self.im * o.im
            im = self.re * o.im + self.im * o.re
        if self.den.is_one() and o.den.is_one():
            return Scalar(re, im, _reduced=True)
        return Scalar(re, im, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise PoleError("division by zero scalar")
        if self.im.is_zero():
            return Scalar(self.den, _P0, self.re)
        norm = self.re * self.re + self.im * self.im
        return Scalar(self.den * self.re, -self.den * self.im, norm)

    def __truediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers of scalars are supported")
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                tuple(tuple(sorted((k, str(v)) for k, v in p.to_dict().items())) for p in (self.re, self.im, self.den))
            )
        return self._hash

    # field automorphisms and evaluation ---------------------------------
    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im, self.den, _reduced=True)

    def specialize(self, assignment: Mapping[str, object]) -> "Scalar":
        """Substitute exact (Gaussian) rational values for some indeterminates.

        Keys are internal names (``h`` for ``q^(1/2)``) or ``q``; a value for
        ``q`` must be the square of a rational and fixes ``h`` to its positive
        root.  Raises :class:`PoleError` if the denominator vanishes.
        """
        values = {}
        for key, val in assignment.items():
            key = _ALIASES.get(key, key)
            if key == "q":
                val = Scalar.coerce(val)
                root = _rational_sqrt(val)
                if root is None:
                    raise ValueError("q must be specialized to the square of a rational")
                key, val = "h", root
            if key not in INDETERMINATES:
                raise KeyError(f"unknown indeterminate {key!r}")
            val = Scalar.coerce(val)
            if not val.is_constant():
                raise ValueError("specialization values must be constants")
            values[INDETERMINATES.index(key)] = _const_value(val)
        num = _eval_gauss(self.re, values) + _eval_gauss(self.im, values) * I
        den = _eval_gauss(self.den, values)
        if den.is_zero():
            raise PoleError(f"pole at {dict(assignment)}")
        return num / den

    def to_complex(self) -> complex:
        if not self.is_constant():
            raise ValueError("scalar still contains indeterminates")
        c = _const_value(self)
        return complex(float(c[0]), float(c[1]))

    def to_fraction(self) -> Fraction:
        if not (self.is_constant() and self.is_real()):
            raise ValueError("scalar is not a real constant")
        return _const_value(self)[0]

    # printing -----------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return format_scalar(self)

    def needs_parens(self) -> bool:
        s = str(self)
        return len(_split_top_level_terms(s)) > 1 or "/" in s


def _rational_sqrt(x: Scalar):
    f = x.to_fraction()
    if f < 0:
        return None
    import math

    n, d = math.isqrt(f.numerator), math.isqrt(f.denominator)
    if n * n == f.numerator and d * d == f.denominator:
        return Scalar.coerce(Fraction(n, d))
    return None


def _const_value(x: Scalar) -> tuple[Fraction, Fraction]:
    def cst(p):
        d = p.to_dict()
        c = d.get((0,) * _NVARS, 0)
        return Fraction(int(c.p), int(c.q)) if hasattr(c, "p") else Fraction(c)

    den = cst(x.den)
    return cst(x.re) / den, cst(x.im) / den


def _eval_gauss(p, values: dict[int, tuple[Fraction, Fraction]]) -> Scalar:
    if not values:
        return Scalar(p, _reduced=True)
    re_terms: dict[tuple, Fraction] = {}
    im_terms: dict[tuple, Fraction] = {}
    for exps, coeff in p.to_dict().items():
        c = (Fraction(int(coeff.p), int(coeff.q)), Fraction(0))
        rest = list(exps)
        for k, (vr, vi) in values.items():
            e = exps[k]
            rest[k] = 0
            for _ in range(e):
                c = (c[0] * vr - c[1] * vi, c[0] * vi + c[1] * vr)
        key = tuple(rest)
        if c[0]:
            re_terms[key] = re_terms.get(key, 0) + c[0]
        if c[1]:
            im_terms[key] = im_terms.get(key, 0) + c[1]

    def build(terms):
        return _CTX.from_dict({k: flint.fmpq(v.numerator, v.denominator) for k, v in terms.items() if v})

    return Scalar(build(re_terms), build(im_terms), _reduced=True)


# printing helpers ----------------------------------------------------------


def _fmt_monomial(exps) -> list[str]:
    parts = []
    for name, e in zip(INDETERMINATES, exps):
        if not e:
            continue
        if name == "h":
            if e % 2 == 0:
                k = e // 2
                parts.append("q" if k == 1 else f"q^{k}" if k > 0 else f"q^{k}")
            else:
                parts.append(f"q^({e}/2)")
        else:
            parts.append(_PRINT[name] if e == 1 else f"{_PRINT[name]}^{e}")
    return parts


def _term_key(exps):
    return (-sum(exps), tuple(-e for e in exps))


def _fmt_poly_terms(terms: list[tuple[tuple, Fraction, bool]]) -> str:
    """terms: (exps, coefficient, imaginary?)"""
    if not terms:
        return "0"
    terms = sorted(terms, key=lambda t: (_term_key(t[0]), t[2]))
    out = []
    for idx, (exps, c, imag) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = _fmt_monomial(exps)
        if imag:
            factors.insert(0, "i")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        body = "*".join(factors)
        if idx == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _poly_terms(p, imag: bool, shift=None):
    res = []
    for exps, coeff in p.to_dict().items():
        c = Fraction(int(coeff.p), int(coeff.q))
        if shift is not None:
            exps = tuple(e - s for e, s in zip(exps, shift))
        res.append((exps, c, imag))
    return res


def format_scalar(x: Scalar) -> str:
    dd = x.den.to_dict()
    if len(dd) == 1:
        (shift, dc), = dd.items()
        dc = Fraction(int(dc.p), int(dc.q))
        terms = [(e, c / dc, im) for e, c, im in _poly_terms(x.re, False, shift) + _poly_terms(x.im, True, shift)]
        return _fmt_poly_terms(terms)
    num = _fmt_poly_terms(_poly_terms(x.re, False) + _poly_terms(x.im, True))
    den = _fmt_poly_terms(_poly_terms(x.den, False))
    if " " not in num.lstrip("-"):
        return f"{num}/({den})"
    return f"({num})/({den})"


def _split_top_level_terms(s: str) -> list[str]:
    depth = 0
    parts, cur = [], ""
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and k > 0 and s[k - 1] == " ":
            parts.append(cur)
            cur = ""
        cur += ch
    parts.append(cur)
    return [p for p in parts if p.strip()]


_ALIASES = {"λ": "lam", "ℓ": "ell", "ω": "omega", "q^(1/2)": "h", "qh": "h"}

ZERO = Scalar(_reduced=True)
ONE = Scalar.coerce(1)
I = Scalar.gaussian(0, 1)
QH = Scalar.gen("h")
Q = QH * QH
LAM = Scalar.gen("lam")
T = Scalar.gen("t")
S = Scalar.gen("s")
ELL = Scalar.gen("ell")
OMEGA = Scalar.gen("omega")
K1 = Scalar.gen("k1")
K2 = Scalar.gen("k2")


def mu() -> Scalar:
    """The recurring shorthand 1 - q^-2."""
    return 1 - Q ** -2


def lam_prime(lam: Scalar = LAM) -> Scalar:
    return lam / (Q * Q - 1)


def podles_s2(lam: Scalar = LAM, q2: Scalar | None = None) -> Scalar:
    """Podleś parameter s^2 matching the q-fuzzy sphere at (q, λ)."""
    q2 = Q * Q if q2 is None else Scalar.coerce(q2)
    return lam / (q2 - 1 - lam)


def q_number(n: int) -> Scalar:
    return (Q ** n - Q ** -n) / (Q - Q ** -1)
