"""Expression grammar for scalars, algebra elements, d(...) and q-brackets.

Grammar (loosest first)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | starred
    starred := power '†'*
    power   := atom ('^' exponent)?
    atom    := number | name | '(' expr ')' | 'd(' expr ')' | 'adj(' expr ')'
             | '[' expr ',' expr ']' ('_' param)?
    exponent:= integer | '-' integer | '(' ['-'] integer ['/' integer] ')'

A name directly followed by ``(`` is a function call (``d``, ``adj``); a
generator called ``d`` is written without a following parenthesis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .freealg import NcElement
from .scalars import ELL, I, K1, K2, LAM, OMEGA, ONE, QH, S, T, Q, Scalar, mu

__all__ = [
    "ParseError",
    "Num",
    "Sym",
    "Add",
    "Mul",
    "Div",
    "Neg",
    "Pow",
    "Star",
    "Diff",
    "Bracket",
    "parse",
    "to_text",
    "evaluate",
    "parse_element",
    "ALIASES",
    "SCALAR_SYMBOLS",
]

ALIASES = {
    "alpha": "α",
    "beta": "β",
    "gamma": "γ",
    "delta": "δ",
    "theta": "θ",
    "ea": "e_a",
    "eb": "e_b",
    "ec": "e_c",
    "ed": "e_d",
    "lambda": "λ",
    "lam": "λ",
    "ell": "ℓ",
    "omega": "ω",
    "mu": "μ",
    "Kinv": "K⁻¹",
    "xm": "x₋",
    "xp": "x₊",
    "bdag": "b†",
    "zdag": "z†",
    "ainv": "a⁻¹",
    "alphainv": "α⁻¹",
    "xinv": "x⁻¹",
}

SCALAR_SYMBOLS = {
    "q": Q,
    "qh": QH,
    "i": I,
    "λ": LAM,
    "t": T,
    "s": S,
    "ℓ": ELL,
    "ω": OMEGA,
    "k1": K1,
    "k2": K2,
}

# Greek matrix entries fall back to Latin generator names when the algebra uses those
_LATIN = {"α": "a", "β": "b", "γ": "c", "δ": "d"}

_NAME_EXTRA = set("_⁻¹₋₊′'")


class ParseError(ValueError):
    def __init__(self, message: str, src: str, pos: int, expected=()):
        line = src.count("\n", 0, pos) + 1
        col = pos - (src.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col, self.expected = line, col, tuple(expected)
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at line {line}, column {col}{exp}")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Add:
    terms: tuple  # tuple of (sign, Expr)


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Div:
    num: object
    den: object


@dataclass(frozen=True)
class Neg:
    x: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: Fraction


@dataclass(frozen=True)
class Star:
    x: object


@dataclass(frozen=True)
class Diff:
    x: object


@dataclass(frozen=True)
class Bracket:
    x: object
    y: object
    p: object | None


# ---------------------------------------------------------------------------
# tokenizer and parser


def _int_num(x) -> bool:
    return isinstance(x, Num) and x.value.denominator == 1


def _tokens(src: str):
    out = []
    k = 0
    while k < len(src):
        ch = src[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            j = k
            while j < len(src) and src[j].isdigit():
                j += 1
            out.append(("int", src[k:j], k))
            k = j
            continue
        if ch.isalpha():
            j = k
            while j < len(src) and (src[j].isalnum() or src[j] in _NAME_EXTRA):
                j += 1
            out.append(("name", src[k:j], k))
            k = j
            continue
        if ch in "+-*/^()[]{},_†":
            out.append((ch, ch, k))
            k += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", src, k)
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokens(src)
        self.k = 0

    def peek(self, off=0):
        return self.toks[min(self.k + off, len(self.toks) - 1)]

    def take(self, kind=None, expected=()):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", self.src, tok[2], expected or (kind,))
        self.k += 1
        return tok

    def expr(self):
        terms = [(1, self.term())]
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            sign = 1 if self.take()[0] == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Add(tuple(terms))

    def term(self):
        x = self.unary()
        factors = [x]
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            y = self.unary()
            if op == "*":
                factors.append(y)
            elif len(factors) == 1 and _int_num(factors[0]) and _int_num(y) and y.value:
                factors = [Num(factors[0].value / y.value)]
            else:
                base = factors[0] if len(factors) == 1 else Mul(tuple(factors))
                factors = [Div(base, y)]
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        return self.starred()

    def starred(self):
        x = self.power()
        while self.peek()[0] == "†":
            self.take()
            x = Star(x)
        return x

    def power(self):
        x = self.atom()
        if self.peek()[0] == "^":
            self.take()
            x = Pow(x, self.exponent())
        return x

    def exponent(self) -> Fraction:
        tok = self.peek()
        if tok[0] == "int":
            return Fraction(int(self.take()[1]))
        if tok[0] == "-":
            self.take()
            return -Fraction(int(self.take("int", ("integer",))[1]))
        if tok[0] == "(":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            num = int(self.take("int", ("integer",))[1])
            den = 1
            if self.peek()[0] == "/":
                self.take()
                den = int(self.take("int", ("integer",))[1])
            self.take(")", (")",))
            return sign * Fraction(num, den)
        raise ParseError("bad exponent", self.src, tok[2], ("integer", "-", "("))

    def atom(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            return Num(Fraction(int(tok[1])))
        if kind == "(":
            self.take()
            x = self.expr()
            self.take(")", (")",))
            return x
        if kind == "[":
            self.take()
            x = self.expr()
            self.take(",", (",",))
            y = self.expr()
            self.take("]", ("]",))
            p = None
            if self.peek()[0] == "_":
                self.take()
                p = self.bracket_param()
            return Bracket(x, y, p)
        if kind == "name":
            self.take()
            name = tok[1]
            if name in ("d", "adj") and self.peek()[0] == "(":
                self.take()
                x = self.expr()
                self.take(")", (")",))
                return Diff(x) if name == "d" else Star(x)
            return Sym(name)
        raise ParseError(
            f"unexpected {tok[1] or 'end of input'!r}", self.src, tok[2], ("number", "name", "(", "[", "-")
        )

    def bracket_param(self):
        tok = self.peek()
        if tok[0] in "({":
            close = ")" if self.take()[0] == "(" else "}"
            x = self.expr()
            self.take(close, (close,))
            return x
        return self.starred()


def parse(src: str):
    """Parse text into an expression tree; raises :class:`ParseError` with position."""
    p = _Parser(src)
    x = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", src, tok[2], ("+", "-", "*", "/", "end of input"))
    return x


# ---------------------------------------------------------------------------
# printing


def _exp_text(e: Fraction) -> str:
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


def _prec(x) -> int:
    if isinstance(x, Add):
        return 1
    if isinstance(x, (Mul, Div)):
        return 2
    if isinstance(x, Neg):
        return 3
    if isinstance(x, Star):
        return 4
    if isinstance(x, Pow):
        return 5
    if isinstance(x, Num) and x.value.denominator != 1:
        return 2
    return 6


def _wrap(x, level: int) -> str:
    s = to_text(x)
    return f"({s})" if _prec(x) < level else s


def to_text(x) -> str:
    """Canonical text of an expression tree; ``parse(to_text(x)) == x``."""
    if isinstance(x, Num):
        v = x.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(x, Sym):
        return x.name
    if isinstance(x, Add):
        parts = []
        for k, (sign, t) in enumerate(x.terms):
            body = _wrap(t, 2)
            if k == 0:
                parts.append(body if sign > 0 else "-" + _wrap(t, 4))
            else:
                parts.append((" + " if sign > 0 else " - ") + body)
        return "".join(parts)
    if isinstance(x, Mul):
        return "*".join(_wrap(f, 3) for f in x.factors)
    if isinstance(x, Div):
        return f"{_wrap(x.num, 2)}/{_wrap(x.den, 3)}"
    if isinstance(x, Neg):
        return "-" + _wrap(x.x, 4)
    if isinstance(x, Pow):
        return f"{_wrap(x.base, 6)}^{_exp_text(x.exp)}"
    if isinstance(x, Star):
        return _wrap(x.x, 5) + "†"
    if isinstance(x, Diff):
        return f"d({to_text(x.x)})"
    if isinstance(x, Bracket):
        s = f"[{to_text(x.x)}, {to_text(x.y)}]"
        if x.p is not None:
            s += f"_({to_text(x.p)})"
        return s
    raise TypeError(f"not an expression: {x!r}")


# ---------------------------------------------------------------------------
# evaluation


class _Ctx:
    def __init__(self, algebra, params):
        from .dga import GradedPresentation

        self.gp = algebra if isinstance(algebra, GradedPresentation) else None
        self.p = algebra.p if self.gp is not None else algebra
        self.params = {ALIASES.get(k, k): _param_value(v) for k, v in (params or {}).items()}

    def lookup(self, name: str):
        if name in self.params:
            return self.params[name]
        gens = self.p.generators if self.p is not None else ()
        alias = ALIASES.get(name, name)
        for cand in (name, alias, _LATIN.get(alias)):
            if cand is None:
                continue
            if cand in gens:
                return self.p.gen(cand)
            if cand in self.params:
                return self.params[cand]
        canon = ALIASES.get(name, name)
        if canon == "θ" and self.gp is not None:
            return self.gp.theta
        if canon == "μ":
            q = self.params.get("q")
            return mu() if q is None else 1 - Scalar.coerce(q) ** -2
        if canon in SCALAR_SYMBOLS:
            return SCALAR_SYMBOLS[canon]
        raise KeyError(name)


def _param_value(v):
    if isinstance(v, (Scalar, NcElement)):
        return v
    if isinstance(v, str):
        return evaluate(v)
    return Scalar.coerce(v)


def _is_scalar(x) -> bool:
    return isinstance(x, Scalar)


def _star(ctx, x):
    if _is_scalar(x):
        return x.conjugate()
    return ctx.p.star(x)


def _eval(x, ctx: _Ctx, src: str):
    if isinstance(x, Num):
        return Scalar.coerce(x.value)
    if isinstance(x, Sym):
        try:
            return ctx.lookup(x.name)
        except KeyError:
            raise ParseError(f"unknown name {x.name!r}", src, max(src.find(x.name), 0)) from None
    if isinstance(x, Add):
        acc = None
        for sign, t in x.terms:
            v = _eval(t, ctx, src)
            v = v if sign > 0 else -v
            acc = v if acc is None else acc + v
        return acc
    if isinstance(x, Mul):
        acc = _eval(x.factors[0], ctx, src)
        for f in x.factors[1:]:
            acc = acc * _eval(f, ctx, src)
        return acc
    if isinstance(x, Div):
        num, den = _eval(x.num, ctx, src), _eval(x.den, ctx, src)
        if not _is_scalar(den):
            raise ParseError("division by a non-scalar", src, 0)
        return num * den.inverse()
    if isinstance(x, Neg):
        return -_eval(x.x, ctx, src)
    if isinstance(x, Pow):
        e = x.exp
        if e.denominator != 1:
            if isinstance(x.base, Sym) and x.base.name == "q" and "q" not in ctx.params and e.denominator == 2:
                return QH ** e.numerator
            raise ParseError("fractional powers are only allowed on q", src, 0)
        base = _eval(x.base, ctx, src)
        n = e.numerator
        if n < 0:
            if not _is_scalar(base):
                raise ParseError("negative powers of algebra elements are not supported", src, 0)
            return base.inverse() ** (-n)
        acc = ONE if _is_scalar(base) else ctx.p.one()
        for _ in range(n):
            acc = acc * base
        return acc
    if isinstance(x, Star):
        if isinstance(x.x, Sym) and ctx.p is not None:
            name = ALIASES.get(x.x.name, x.x.name) + "†"
            if name in ctx.p.generators and x.x.name not in ctx.params:
                return ctx.p.gen(name)
        return _star(ctx, _eval(x.x, ctx, src))
    if isinstance(x, Diff):
        if ctx.gp is None:
            raise ParseError("d(...) needs a graded presentation", src, 0)
        v = _eval(x.x, ctx, src)
        if _is_scalar(v):
            return ctx.p.zero()
        return ctx.gp.d(v)
    if isinstance(x, Bracket):
        a, b = _eval(x.x, ctx, src), _eval(x.y, ctx, src)
        p = ONE if x.p is None else _eval(x.p, ctx, src)
        if not _is_scalar(p):
            raise ParseError("bracket parameter must be a scalar", src, 0)
        return a * b - p * (b * a)
    raise TypeError(f"not an expression: {x!r}")


def evaluate(x, algebra=None, params: Mapping | None = None):
    """Evaluate a tree (or text) to a Scalar or an element of ``algebra``."""
    src = x if isinstance(x, str) else to_text(x)
    tree = parse(x) if isinstance(x, str) else x
    return _eval(tree, _Ctx(algebra, params), src)


def parse_element(src: str, algebra, params: Mapping | None = None) -> NcElement:
    """Parse text into a normalized element of ``algebra`` (scalars become multiples of 1)."""
    v = evaluate(src, algebra, params)
    p = algebra.p if hasattr(algebra, "theta") else algebra
    if isinstance(v, Scalar):
        return p.scalar(v)
    return v
