"""Calculus on the three-dimensional bicrossproduct spacetime.

Functions are normal ordered sums ``c·x^m y^n E(a_x x + a_y y) · z^k E(a_z z)``
with all z-dependence to the right, where ``E`` is a formal exponential.
Shifting ``z`` by a constant turns ``E(a_z z)`` into ``e^{a_z δ} E(a_z z)``; such
constant exponentials are kept exactly in :class:`ExpSum` coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Mapping

from .dga import GradedPresentation, omega_cqsu2
from .freealg import NcElement
from .loader import load_algebra
from .report import CheckReport, ReportBuilder
from .scalars import ELL, I, K1, K2, OMEGA, ONE, QH, Q, ZERO, PoleError, Scalar, mu

__all__ = [
    "ExpSum",
    "NOFunction",
    "omega_bicross",
    "partials",
    "d_from_partials",
    "to_element",
    "laplacian",
    "laplacian_eigenvalue",
    "expected_eigenvalue",
    "series_limit",
    "leading_order",
    "limit_from_cqsu2",
    "dga_suite",
    "partials_suite",
    "laplacian_suite",
    "eigenvalue_table",
]

IL = I * ELL  # the recurring iℓ


# ---------------------------------------------------------------------------
# exponential sums


class ExpSum:
    """Finite sum Σ cⱼ·exp(βⱼ) with Scalar coefficients and Scalar exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms: dict[Scalar, Scalar] = {}
        for b, c in (terms or {}).items():
            self._add(Scalar.coerce(b), Scalar.coerce(c))

    def _add(self, b, c):
        s = self.terms.get(b, ZERO) + c
        if s:
            self.terms[b] = s
        else:
            self.terms.pop(b, None)

    @classmethod
    def coerce(cls, x) -> "ExpSum":
        if isinstance(x, ExpSum):
            return x
        return cls({ZERO: Scalar.coerce(x)})

    @classmethod
    def exp(cls, beta, coeff=ONE) -> "ExpSum":
        return cls({Scalar.coerce(beta): Scalar.coerce(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    __bool__ = lambda self: not self.is_zero()  # noqa: E731

    def is_scalar(self) -> bool:
        return all(b.is_zero() for b in self.terms)

    def scalar(self) -> Scalar:
        if not self.is_scalar():
            raise ValueError("sum contains exponentials")
        return self.terms.get(ZERO, ZERO)

    def __add__(self, other):
        other = ExpSum.coerce(other)
        out = ExpSum(self.terms)
        for b, c in other.terms.items():
            out._add(b, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return ExpSum({b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ExpSum.coerce(other))

    def __rsub__(self, other):
        return ExpSum.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExpSum):
            other = ExpSum.coerce(other)
        out = ExpSum()
        for b1, c1 in self.terms.items():
            for b2, c2 in other.terms.items():
                out._add(b1 + b2, c1 * c2)
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __pow__(self, n: int):
        out = ExpSum.coerce(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            return (self - ExpSum.coerce(other)).is_zero()
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def specialize(self, assignment) -> "ExpSum":
        return ExpSum({b.specialize(assignment): c.specialize(assignment) for b, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for b, c in sorted(self.terms.items(), key=lambda kv: str(kv[0])):
            if b.is_zero():
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*e^({b})")
        return " + ".join(parts)

    def __repr__(self):
        return f"ExpSum({self})"


def _pole_order(c: Scalar, var: str) -> int:
    """Smallest p ≥ 0 with c·var^p finite at var = 0."""
    v = Scalar.gen(var)
    p = 0
    while True:
        try:
            c.specialize({var: 0})
            return p
        except PoleError:
            c = c * v
            p += 1


def series_limit(x: ExpSum, var: str = "ell") -> Scalar:
    """Exact limit var → 0 of a sum whose exponents are linear in ``var``.

    Each exponential is replaced by its Taylor polynomial to an order that
    covers the pole of its coefficient; the truncated sum is then evaluated
    at ``var = 0``.
    """
    v = Scalar.gen(var)
    poles = [_pole_order(c, var) for c in x.terms.values()]
    order = max(poles, default=0) + 1
    total = ZERO
    for b, c in x.terms.items():
        g = b / v
        if var in g.free_symbols():
            raise ValueError(f"exponent {b} is not linear in {var}")
        acc = ZERO
        for n in range(order + 1):
            acc = acc + (g * v) ** n / factorial(n)
        total = total + c * acc
    return total.specialize({var: 0})


# ---------------------------------------------------------------------------
# normal ordered functions


@dataclass(frozen=True)
class _Key:
    m: int
    n: int
    k: int
    ax: Scalar
    ay: Scalar
    az: Scalar


class NOFunction:
    """Normal ordered function Σ c·x^m y^n E(a_x x + a_y y)·z^k E(a_z z)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms: dict[_Key, ExpSum] = {}
        for key, c in (terms or {}).items():
            self._add(key, ExpSum.coerce(c))

    def _add(self, key, c: ExpSum):
        s = self.terms.get(key, ExpSum()) + c
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    # constructors -------------------------------------------------------
    @classmethod
    def monomial(cls, m=0, n=0, k=0, coeff=ONE, ax=ZERO, ay=ZERO, az=ZERO) -> "NOFunction":
        key = _Key(m, n, k, Scalar.coerce(ax), Scalar.coerce(ay), Scalar.coerce(az))
        return cls({key: coeff})

    @classmethod
    def const(cls, c) -> "NOFunction":
        return cls.monomial(coeff=c)

    @classmethod
    def x(cls):
        return cls.monomial(1, 0, 0)

    @classmethod
    def y(cls):
        return cls.monomial(0, 1, 0)

    @classmethod
    def z(cls):
        return cls.monomial(0, 0, 1)

    @classmethod
    def exp(cls, ax=ZERO, ay=ZERO, az=ZERO) -> "NOFunction":
        return cls.monomial(ax=ax, ay=ay, az=az)

    @classmethod
    def plane_wave(cls, k1=K1, k2=K2, omega=OMEGA) -> "NOFunction":
        """e^{i(k₁x + k₂y)} e^{iωz}."""
        return cls.exp(I * k1, I * k2, I * omega)

    # arithmetic ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = NOFunction(self.terms)
        for key, c in _nof(other).terms.items():
            out._add(key, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return NOFunction({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_nof(other))

    def __rsub__(self, other):
        return _nof(other) - self

    def scale(self, c) -> "NOFunction":
        c = ExpSum.coerce(c)
        return NOFunction({key: v * c for key, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar, ExpSum)):
            return self.scale(other)
        other = _nof(other)
        out = NOFunction()
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out = out + _mul_terms(k1, c1, k2, c2)
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = NOFunction.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            return (self - _nof(other)).is_zero()
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def has_exponentials(self) -> bool:
        return any(k.ax or k.ay or k.az or not c.is_scalar() for k, c in self.terms.items())

    def xy_degree(self) -> int:
        return max((k.m + k.n for k in self.terms), default=0)

    # calculus on the x, y part ---------------------------------------------
    def d_dx(self) -> "NOFunction":
        out = NOFunction()
        for k, c in self.terms.items():
            if k.m:
                out._add(_Key(k.m - 1, k.n, k.k, k.ax, k.ay, k.az), c * k.m)
            if k.ax:
                out._add(k, c * k.ax)
        return out

    def d_dy(self) -> "NOFunction":
        out = NOFunction()
        for k, c in self.terms.items():
            if k.n:
                out._add(_Key(k.m, k.n - 1, k.k, k.ax, k.ay, k.az), c * k.n)
            if k.ay:
                out._add(k, c * k.ay)
        return out

    def shift_z(self, delta) -> "NOFunction":
        """Replace z by z + δ in every term."""
        delta = Scalar.coerce(delta)
        out = NOFunction()
        for k, c in self.terms.items():
            e = c if not k.az else c * ExpSum.exp(k.az * delta)
            for j in range(k.k + 1):
                out._add(_Key(k.m, k.n, j, k.ax, k.ay, k.az), e * (comb(k.k, j) * delta ** (k.k - j)))
        return out

    def specialize(self, assignment) -> "NOFunction":
        out = NOFunction()
        for k, c in self.terms.items():
            key = _Key(k.m, k.n, k.k, k.ax.specialize(assignment), k.ay.specialize(assignment), k.az.specialize(assignment))
            out._add(key, c.specialize(assignment))
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items(), key=lambda kv: (kv[0].m, kv[0].n, kv[0].k, str(kv[0].ax), str(kv[0].ay), str(kv[0].az))):
            f = [f"x^{k.m}" if k.m > 1 else "x"] if k.m else []
            f += [f"y^{k.n}" if k.n > 1 else "y"] if k.n else []
            if k.ax or k.ay:
                f.append(f"E({k.ax}*x + {k.ay}*y)")
            f += [f"z^{k.k}" if k.k > 1 else "z"] if k.k else []
            if k.az:
                f.append(f"E({k.az}*z)")
            parts.append(f"[{c}]" + ("*" + "*".join(f) if f else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"NOFunction({self})"


def _nof(x) -> NOFunction:
    if isinstance(x, NOFunction):
        return x
    if isinstance(x, (int, Scalar, ExpSum)):
        return NOFunction.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a function")


def _mul_terms(k1: _Key, c1: ExpSum, k2: _Key, c2: ExpSum) -> NOFunction:
    """(f₁g₁(z))·(f₂g₂(z)) = f₁f₂ · g₁(z - (m₂ + n₂)iℓ) g₂(z), using zx = x(z - iℓ)."""
    if (k1.k or k1.az) and (k2.ax or k2.ay):
        raise NotImplementedError("moving z past an exponential in x, y is not a finite sum")
    left_z = NOFunction({_Key(0, 0, k1.k, ZERO, ZERO, k1.az): ONE})
    if k1.k or k1.az:
        left_z = left_z.shift_z(-(k2.m + k2.n) * IL)
    out = NOFunction()
    for kz, cz in left_z.terms.items():
        key = _Key(k1.m + k2.m, k1.n + k2.n, kz.k + k2.k, k1.ax + k2.ax, k1.ay + k2.ay, kz.az + k2.az)
        out._add(key, c1 * c2 * cz)
    return out


# ---------------------------------------------------------------------------
# the calculus


def omega_bicross() -> GradedPresentation:
    """Functions x, y, z with [x, z] = iℓx, [y, z] = iℓy; forms θ, dx, dy, dz; d = (iℓ)⁻¹[θ, ·]."""
    return load_algebra("bicross")


def partials(f: NOFunction) -> dict[str, NOFunction]:
    """The coefficients of dx, dy, dz and θ' = θ + dz in df."""
    f = _nof(f)
    dx, dy = NOFunction(), NOFunction()
    dz, d0 = NOFunction(), NOFunction()
    for k, c in f.terms.items():
        fxy = NOFunction({_Key(k.m, k.n, 0, k.ax, k.ay, ZERO): c})
        g = NOFunction({_Key(0, 0, k.k, ZERO, ZERO, k.az): ONE})
        gp, gm = g.shift_z(IL), g.shift_z(-IL)
        dx = dx + fxy.d_dx() * g
        dy = dy + fxy.d_dy() * g
        dz = dz + (fxy * (g - gm)).scale(IL.inverse())
        lap = fxy.d_dx().d_dx() + fxy.d_dy().d_dy()
        d0 = d0 + ((lap * gp).scale(Scalar(1, 0, 2)) + (fxy * (gp + gm - 2 * g)).scale(IL ** -2 / 2)).scale(IL)
    return {"x": dx, "y": dy, "z": dz, "0": d0}


def laplacian(f: NOFunction) -> NOFunction:
    """2(iℓ)⁻¹∂⁰."""
    return partials(f)["0"].scale(2 * IL.inverse())


def laplacian_eigenvalue(k1=K1, k2=K2, omega=OMEGA) -> ExpSum:
    """Eigenvalue of 2(iℓ)⁻¹∂⁰ on the plane wave e^{i(k₁x + k₂y)}e^{iωz}."""
    psi = NOFunction.plane_wave(k1, k2, omega)
    out = laplacian(psi)
    (key,) = psi.terms
    if set(out.terms) - {key}:
        raise ValueError("plane wave is not an eigenfunction")
    return out.terms.get(key, ExpSum())


def expected_eigenvalue(k1=K1, k2=K2, omega=OMEGA) -> ExpSum:
    """-k²e^{-ωℓ} - (sinh(ωℓ/2)/(ℓ/2))² with sinh written through exponentials."""
    k1, k2, omega = (Scalar.coerce(v) for v in (k1, k2, omega))
    half = omega * ELL / 2
    sinh = (ExpSum.exp(half) - ExpSum.exp(-half)) / 2
    return ExpSum.exp(-omega * ELL, -(k1 * k1 + k2 * k2)) - (sinh * (2 / ELL)) ** 2


def to_element(f: NOFunction, gp: GradedPresentation) -> NcElement:
    """A polynomial normal ordered function as an element of the calculus."""
    out = gp.p.zero()
    for k, c in f.terms.items():
        if k.ax or k.ay or k.az or not c.is_scalar():
            raise ValueError("only polynomial functions live in the presented algebra")
        out = out + c.scalar() * gp.p.word(*(["x"] * k.m + ["y"] * k.n + ["z"] * k.k))
    return out


def d_from_partials(f: NOFunction, gp: GradedPresentation) -> NcElement:
    """Σ(∂ⁱf)dxᵢ + (∂ᶻf)dz + (∂⁰f)θ' in the calculus."""
    parts = partials(f)
    g = gp.gens()
    theta_p = g["θ"] + g["dz"]
    return (
        to_element(parts["x"], gp) * g["dx"]
        + to_element(parts["y"], gp) * g["dy"]
        + to_element(parts["z"], gp) * g["dz"]
        + to_element(parts["0"], gp) * theta_p
    )


def _monomials(deg: int, with_z: bool):
    for m in range(deg + 1):
        for n in range(deg + 1 - m):
            if not with_z:
                yield NOFunction.monomial(m, n, 0)
                continue
            for k in range(deg + 1 - m - n):
                yield NOFunction.monomial(m, n, k)


# ---------------------------------------------------------------------------
# suites


def dga_suite(at: Mapping | None = None, max_degree: int = 5, seed: int = 0) -> CheckReport:
    rb = ReportBuilder("bicross:dga", at)
    gp = omega_bicross()
    g = gp.gens()
    x, y, z = g["x"], g["y"], g["z"]
    th, dx, dy, dz = g["θ"], g["dx"], g["dy"], g["dz"]
    thp = th + dz
    rb.check("confluence", f"locally confluent to degree {max_degree}", [f.difference for f in gp.check_local_confluence(max_degree)])
    rb.check("function-relations", "[x, y] = 0, [x, z] = iℓx, [y, z] = iℓy", [x * y - y * x, x * z - z * x - IL * x, y * z - z * y - IL * y])
    rb.check("leibniz-xy", "d(xy) = (dx)y + x(dy)", [gp.d(x * y) - gp.d(x) * y - x * gp.d(y)])
    rb.check("dz-z", "[dz, z] = iℓθ", [dz * z - z * dz - IL * th])
    rb.check("d-generators", "d x = dx, d y = dy, d z = dz", [gp.d(x) - dx, gp.d(y) - dy, gp.d(z) - dz])
    rb.check(
        "theta-prime",
        "θ' = θ + dz commutes with x, y and graded-commutes with dx, dy",
        [thp * x - x * thp, thp * y - y * thp, thp * dx + dx * thp, thp * dy + dy * thp],
    )
    rb.check("theta-prime-z", "θ'z = (z + iℓ)θ'", [thp * z - (z + IL) * thp])
    rb.check("d-squared", "d² = 0 on generators", [gp.d(gp.d(g[n])) for n in gp.generators])
    rb.check("leibniz", "graded Leibniz rule on random monomials", [r[-1] for r in gp.leibniz_check(samples=50, seed=seed)])
    return rb.finish()


def partials_suite(at: Mapping | None = None, max_degree: int = 4) -> CheckReport:
    rb = ReportBuilder("bicross:partials", at)
    gp = omega_bicross()
    g = gp.gens()
    thp = g["θ"] + g["dz"]
    res12 = []
    for f in _monomials(max_degree, with_z=False):
        fx, fy = f.d_dx(), f.d_dy()
        lap = fx.d_dx() + fy.d_dy()
        rhs = to_element(fx, gp) * g["dx"] + to_element(fy, gp) * g["dy"] + (to_element(lap, gp) * thp) * (IL / 2)
        res12.append(gp.d(to_element(f, gp)) - rhs)
    rb.check("extended-classical", f"df = Σ∂ᵢf dxᵢ + ½Σ∂ᵢ²f (iℓθ') for polynomials f(x, y) of degree ≤ {max_degree}", res12, detail="θ' enters with its iℓ from [dxᵢ, xᵢ] = iℓθ'")
    res = [gp.d(to_element(f, gp)) - d_from_partials(f, gp) for f in _monomials(max_degree, with_z=True)]
    rb.check("partials-consistent", f"reassembled partials reproduce d on normal ordered monomials of degree ≤ {max_degree}", res)
    zf = partials(NOFunction.z())
    rb.expect("z-partials", "∂ᶻz = 1 and ∂⁰z = 0", zf["z"] == NOFunction.const(1) and zf["0"].is_zero())
    z2 = partials(NOFunction.z() ** 2)
    rb.expect(
        "z2-partials",
        "∂ᶻz² = 2z - iℓ and (iℓ)⁻¹∂⁰z² = 1",
        z2["z"] == NOFunction.z() * 2 - NOFunction.const(IL) and z2["0"].scale(IL.inverse()) == NOFunction.const(1),
    )
    coframe = [g["dx"], g["dy"], g["dz"], thp]
    words = sorted({w for c in coframe for w in c.terms}, key=str)
    from .linalg import rank

    rows = [[c.coefficient(w) for w in words] for c in coframe]
    ranks = [rank([[v.specialize({"ell": s}) for v in row] for row in rows]) for s in (1, 3, Scalar(2, 0, 7))]
    rb.expect("coframe", "dx, dy, dz, θ' are independent at rational ℓ", all(r == 4 for r in ranks), detail=f"ranks {ranks}")
    return rb.finish()


def laplacian_suite(at: Mapping | None = None) -> CheckReport:
    rb = ReportBuilder("bicross:laplacian", at)
    got = laplacian_eigenvalue()
    want = expected_eigenvalue()
    rb.expect("eigenvalue", "2(iℓ)⁻¹∂⁰ on plane waves is -k²e^{-ωℓ} - (sinh(ωℓ/2)/(ℓ/2))²", got == want, got - want)
    rb.expect("k-zero", "k = 0 leaves -(sinh(ωℓ/2)/(ℓ/2))²", laplacian_eigenvalue(0, 0) == expected_eigenvalue(0, 0))
    rb.expect("omega-zero", "ω = 0 gives -k²", laplacian_eigenvalue(omega=0) == ExpSum.coerce(-(K1 * K1 + K2 * K2)))
    lim = series_limit(got)
    rb.expect("limit", "ℓ → 0 gives -k² - ω²", lim == -(K1 * K1 + K2 * K2 + OMEGA * OMEGA), lim, detail=f"limit {lim}")
    rb.note("eigenvalue", str(got))
    rb.artifacts["table"] = eigenvalue_table()
    return rb.finish()


def eigenvalue_table(samples=((1, 0, 1), (1, 1, 1), (2, 1, Scalar(1, 0, 2)), (0, 1, 2))) -> list[dict]:
    """Eigenvalues at rational (k₁, k₂, ω) with ℓ = 1/2, as exact text and a float."""
    import math

    rows = []
    for k1, k2, om in samples:
        ev = laplacian_eigenvalue(k1, k2, om).specialize({"ell": Scalar(1, 0, 2)})
        val = sum(float(c.to_fraction()) * math.exp(float(b.to_fraction())) for b, c in ev.terms.items())
        rows.append({"k1": str(k1), "k2": str(k2), "omega": str(om), "ell": "1/2", "exact": str(ev), "value": val})
    return rows


# ---------------------------------------------------------------------------
# limit from the quantum group calculus


def leading_order(c: Scalar) -> tuple[int, Scalar]:
    """Order and leading coefficient of ``c`` in ε = q^(1/2) - 1."""
    if c.is_zero():
        return (10**9, ZERO)
    eps = QH - 1
    order = 0
    x = c
    while True:
        try:
            v = x.specialize({"h": 1})
        except PoleError:
            x = x * eps
            order -= 1
            continue
        if v.is_zero():
            x = x / eps
            order += 1
            continue
        return order, v


def _kappas():
    m = mu()
    return {"b": m * QH / IL, "c": m * QH**3 / IL}


@dataclass
class _Limit:
    terms: dict
    divergent: list

    def is_zero(self) -> bool:
        return not self.terms and not self.divergent


def _limit(x: NcElement, forms=("e_a", "e_b", "e_c", "e_d"), shift: int = 0) -> _Limit:
    """Order-``shift`` part of ``x`` with b = κ_b x₋, c = κ_c x₊ and a, d → 1."""
    kap = _kappas()
    terms: dict = {}
    bad = []
    for w, c in x.terms.items():
        fac = c
        funcs = []
        for letter in w:
            if letter in kap:
                fac = fac * kap[letter]
                funcs.append("x₋" if letter == "b" else "x₊")
        order, val = leading_order(fac)
        fw = tuple(sorted(funcs)) + tuple(l for l in w if l in forms)
        if order < shift:
            bad.append((w, c))
        elif order == shift:
            s = terms.get(fw, ZERO) + val
            if s:
                terms[fw] = s
            else:
                terms.pop(fw, None)
    return _Limit(terms, bad)


def _limit_value(d: Mapping) -> _Limit:
    return _Limit({k: Scalar.coerce(v) for k, v in d.items() if v}, [])


def _diff(a: _Limit, b: _Limit) -> _Limit:
    out = dict(a.terms)
    for k, v in b.terms.items():
        s = out.get(k, ZERO) - v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return _Limit(out, a.divergent + b.divergent)


def _show(lim: _Limit) -> str:
    if lim.divergent:
        return f"divergent terms {lim.divergent}"
    return " + ".join(f"({v})*{'*'.join(k)}" for k, v in lim.terms.items())


def limit_from_cqsu2(at: Mapping | None = None) -> CheckReport:
    """Leading-order check that Ω(C_q[SU₂]) tends to the bicrossproduct calculus.

    With b = (qμ/iℓ)q^{-1/2}x₋, c = (qμ/iℓ)q^{1/2}x₊ and a = q^{z/(iℓ)} → 1,
    every commutator is expanded in ε = q^{1/2} - 1 and its order-zero part
    compared with the limit relation.
    """
    rb = ReportBuilder("bicross:limit", at)
    gp = omega_cqsu2()
    g = gp.gens()
    kap = _kappas()
    xm = g["b"] * kap["b"].inverse()
    xp = g["c"] * kap["c"].inverse()
    e = {k: g[k] for k in ("e_a", "e_b", "e_c", "e_d")}
    il = IL

    def d_lim(f):
        # (iℓ)⁻¹[θ', f] with θ' = i(e_a + e_d)
        th = I * (e["e_a"] + e["e_d"])
        return (th * f - f * th) * il.inverse()

    def comm(E, X):
        return E * X - X * E

    def lim_eq(cid, anchor, lhs, want: Mapping):
        diff = _diff(_limit(lhs), _limit_value(want))
        rb.expect(cid, anchor, diff.is_zero(), _show(diff))

    lim_eq("dx-", "dx₋ = ie_c", d_lim(xm), {("e_c",): I})
    lim_eq("dx+", "dx₊ = ie_b", d_lim(xp), {("e_b",): I})
    # da = (ln q/(iℓ)) a dz at leading order; ln q ≈ μ/2
    dz = d_lim(g["a"]) * (2 * il / mu())
    lim_eq("dz", "dz = i(e_a - e_d) from a = q^{z/(iℓ)}", dz, {("e_a",): I, ("e_d",): -I})

    expected = {
        ("e_a", "x₋"): {},
        ("e_a", "x₊"): {},
        ("e_b", "x₋"): {("e_a",): il},
        ("e_b", "x₊"): {},
        ("e_c", "x₋"): {},
        ("e_c", "x₊"): {("e_a",): il},
        ("e_d", "x₋"): {("e_c",): il},
        ("e_d", "x₊"): {("e_b",): il},
    }
    xs = {"x₋": xm, "x₊": xp}
    for (en, xn), want in expected.items():
        rhs = " + ".join(f"{v}*{k[0]}" for k, v in want.items()) or "0"
        lim_eq(f"[{en},{xn}]", f"[{en}, {xn}] = {rhs}", comm(e[en], xs[xn]), want)

    # exponentiated z relations: e·a = q^c a·e + O(μ) means [e, z] = c·iℓ·e
    z_weight = {"e_a": 1, "e_b": 0, "e_c": 0, "e_d": -1}
    a = g["a"]
    for en, c in z_weight.items():
        r = e[en] * a - Q**c * a * e[en]
        lim = _limit(r)
        rb.expect(f"exp-{en}", f"a⁻¹{en}a = q^{c}{en} + O(μ)", lim.is_zero(), _show(lim))
    rb.expect(
        "functions",
        "x₋a = qax₋, x₊a = qax₊, [x₊, x₋] = 0",
        all(t.is_zero() for t in (xm * a - Q * a * xm, xp * a - Q * a * xp, xp * xm - xm * xp)),
    )

    # The limit relations in x = x₊ + x₋, y = (x₊ - x₋)/i, via the limit bimodule map
    def lim_comm(form: dict, fn: dict) -> dict:
        out: dict = {}
        for en, ce in form.items():
            for xn, cx in fn.items():
                if xn == "z":
                    val = {(en,): z_weight[en] * il}
                else:
                    val = expected[(en, xn)]
                for k, v in val.items():
                    out[k] = out.get(k, ZERO) + ce * cx * v
        return {k: v for k, v in out.items() if v}

    dx_f = {"e_b": I, "e_c": I}
    dy_f = {"e_b": ONE, "e_c": -ONE}
    dz_f = {"e_a": I, "e_d": -I}
    theta = {"e_a": I, "e_d": I}
    x_f = {"x₊": ONE, "x₋": ONE}
    y_f = {"x₊": -I, "x₋": I}
    z_f = {"z": ONE}

    def comb_(*pairs):
        out: dict = {}
        for c, form in pairs:
            for k, v in form.items():
                out[(k,)] = out.get((k,), ZERO) + c * v
        return {k: v for k, v in out.items() if v}

    thp = comb_((ONE, theta), (ONE, dz_f))
    rels = {
        "[dx,x]": (lim_comm(dx_f, x_f), {k: il * v for k, v in thp.items()}),
        "[dx,y]": (lim_comm(dx_f, y_f), {}),
        "[dy,x]": (lim_comm(dy_f, x_f), {}),
        "[dy,y]": (lim_comm(dy_f, y_f), {k: il * v for k, v in thp.items()}),
        "[dx,z]": (lim_comm(dx_f, z_f), {}),
        "[dy,z]": (lim_comm(dy_f, z_f), {}),
        "[dz,x]": (lim_comm(dz_f, x_f), comb_((-il, dx_f))),
        "[dz,y]": (lim_comm(dz_f, y_f), comb_((-il, dy_f))),
        "[dz,z]": (lim_comm(dz_f, z_f), comb_((il, theta))),
    }
    for cid, (got, want) in rels.items():
        diff = _diff(_limit_value(got), _limit_value(want))
        rb.expect(f"limit{cid}", f"{cid} limit relation", diff.is_zero(), _show(diff))
    return rb.finish()
