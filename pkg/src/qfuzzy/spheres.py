"""Quantum spheres as projector algebras, and their identifications.

Every sphere here is the algebra generated by the entries of a 2×2 matrix
``e`` with ``e² = e``, ``e† = e`` and a fixed (q-)trace.  The suites verify the
relations between the q-fuzzy sphere, the fuzzy sphere, the standard
q-sphere, the Podleś spheres, a quotient of U_q(su₂) and the time slices of
B_q[SU₂].
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .dga import localization_c, localization_images
from .freealg import NcElement, Presentation, centrality_check, hom_check, substitute
from .loader import build, load_algebra, read_spec
from .report import CheckReport, ReportBuilder
from .scalars import I, LAM, ONE, Q, QH, T, ZERO, PoleError, Scalar, lam_prime, podles_s2

__all__ = [
    "ProjectorMatrix",
    "build_projector",
    "projector_suite",
    "pauli_form_check",
    "pauli_matrices",
    "cartesian_fuzzy",
    "prop1_suite",
    "prop3_suite",
    "prop4_suite",
    "localization_suite",
    "podles",
    "podles_patch",
    "casimir",
    "casimir_quotient",
    "time_slice",
    "slice_u",
    "slice_projector",
    "slice_lambda",
    "bqsu2_localizable",
    "mat_mul2",
    "PROJECTOR_KINDS",
]

PROJECTOR_KINDS = ("classical", "fuzzy", "qsphere", "qfuzzy")


# ---------------------------------------------------------------------------
# 2×2 matrices over an algebra


def _el(p: Presentation, x) -> NcElement:
    if isinstance(x, NcElement):
        return x
    return p.scalar(Scalar.coerce(x))


def mat_mul2(p: Presentation, a, b):
    return [[_el(p, a[i][0]) * _el(p, b[0][j]) + _el(p, a[i][1]) * _el(p, b[1][j]) for j in range(2)] for i in range(2)]


def _mat_sub(p, a, b):
    return [[_el(p, a[i][j]) - _el(p, b[i][j]) for j in range(2)] for i in range(2)]


def _dagger(p: Presentation, a):
    return [[p.star(_el(p, a[j][i])) for j in range(2)] for i in range(2)]


def _map_matrix(m, images, target):
    return [[substitute(x, images, target) for x in row] for row in m]


def _scalar_matrix(p, c):
    return [[p.scalar(c) if i == j else p.zero() for j in range(2)] for i in range(2)]


# ---------------------------------------------------------------------------
# projectors


@dataclass
class ProjectorMatrix:
    """A 2×2 matrix over a sphere presentation with its trace target ``1 + λ``."""

    kind: str
    p: Presentation
    e: list
    lam: Scalar
    q_trace: bool
    q: Scalar = Q

    def square_residual(self):
        return _mat_sub(self.p, mat_mul2(self.p, self.e, self.e), self.e)

    def dagger_residual(self):
        return _mat_sub(self.p, _dagger(self.p, self.e), self.e)

    def trace(self) -> NcElement:
        w = self.q * self.q if self.q_trace else ONE
        return self.e[0][0] + w * self.e[1][1]

    def trace_residual(self) -> NcElement:
        return self.trace() - self.p.scalar(1 + self.lam)

    def residuals(self) -> dict:
        return {"square": self.square_residual(), "dagger": self.dagger_residual(), "trace": self.trace_residual()}

    def is_projector(self) -> bool:
        sq, dg = self.square_residual(), self.dagger_residual()
        entries = [x for m in (sq, dg) for row in m for x in row] + [self.trace_residual()]
        return all(x.is_zero() for x in entries)


def build_projector(kind: str, **params) -> ProjectorMatrix:
    """Projector over the matching shipped presentation.

    ``params`` may set ``lam`` (fuzzy, q-fuzzy) and ``q`` (q-sphere, q-fuzzy).
    """
    if kind not in PROJECTOR_KINDS:
        raise ValueError(f"unknown projector kind {kind!r}; expected one of {PROJECTOR_KINDS}")
    q = Scalar.coerce(params.get("q", Q))
    lam = Scalar.coerce(params.get("lam", LAM))
    qp = {"q": q} if "q" in params else {}
    if kind == "classical":
        lam = ZERO
        p = load_algebra("fuzzy", lam=0)
    elif kind == "fuzzy":
        p = load_algebra("fuzzy", lam=lam)
    elif kind == "qsphere":
        lam = ZERO
        p = load_algebra("qsphere", **qp)
    else:
        p = load_algebra("qfuzzy", lam=lam, **qp)
    a, b, bs = p.gen("a"), p.gen("b"), p.gen("b†")
    q_trace = kind in ("qsphere", "qfuzzy")
    w = q * q if q_trace else ONE
    e = [[p.scalar(1 + lam) - w * a, b], [bs, a]]
    return ProjectorMatrix(kind, p, e, lam, q_trace, q)


def projector_suite(kind: str, at: Mapping | None = None, **params) -> CheckReport:
    rb = ReportBuilder(f"spheres:{kind}", at)
    P = build_projector(kind, **params)
    rb.check("square", "e² = e", P.square_residual())
    rb.check("hermitian", "e† = e", P.dagger_residual())
    target = "trace_q(e)" if P.q_trace else "trace(e)"
    rb.check("trace", f"{target} = 1 + λ" if P.lam else f"{target} = 1", P.trace_residual())
    rb.check("confluence", "presentation is locally confluent to degree 4", [f.difference for f in P.p.check_local_confluence(4)])
    if kind == "fuzzy":
        C = build_projector("classical")
        F0 = build_projector("fuzzy", lam=0)
        rb.check(
            "degenerate",
            "fuzzy projector at λ = 0 is the classical projector",
            [F0.p.element(x.terms) - F0.p.element(y.terms) for rx, ry in zip(F0.e, C.e) for x, y in zip(rx, ry)],
        )
    return rb.finish()


# ---------------------------------------------------------------------------
# Pauli form of the fuzzy projector

_EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


def pauli_matrices():
    return [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ]


def _smul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


def cartesian_fuzzy(lam=LAM, sphere: bool = True) -> Presentation:
    """Fuzzy ℝ³ in self-adjoint x₁, x₂, x₃; with ``sphere`` also Σxᵢ² = (1 - λ²)/4."""
    lam = Scalar.coerce(lam)
    free = Presentation("free", ["x1", "x2", "x3"])
    x = [free.gen(f"x{k + 1}") for k in range(3)]
    rels = []
    for (i, j, k), sgn in _EPS.items():
        if i < j:
            rels.append(x[i] * x[j] - x[j] * x[i] + sgn * I * lam * x[k])
    if sphere:
        rels.append(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - (1 - lam * lam) / 4)
    star = {f"x{k}": f"x{k}" for k in (1, 2, 3)}
    return Presentation("fuzzy_cartesian" if sphere else "fuzzy_r3", free.generators, rels, star=star)


def _pauli_projector(p: Presentation, lam):
    sig = pauli_matrices()
    x = [p.gen(f"x{k + 1}") for k in range(3)]
    c = (1 + lam) / 2
    return [
        [p.scalar(c if i == j else ZERO) - sum((sig[k][i][j] * x[k] for k in range(3)), p.zero()) for j in range(2)]
        for i in range(2)
    ]


def pauli_form_check(at: Mapping | None = None, lam=LAM) -> CheckReport:
    """e = (1 + λ)/2 - σ·x agrees with the fuzzy projector; its square defect is the sphere relation."""
    lam = Scalar.coerce(lam)
    rb = ReportBuilder("spheres:pauli", at)
    sig = pauli_matrices()
    res = []
    for i in range(3):
        for j in range(3):
            lhs = _smul(sig[i], sig[j])
            for r in range(2):
                for c in range(2):
                    rhs = (ONE if (i == j and r == c) else ZERO) + sum(
                        (I * _EPS.get((i, j, k), 0) * sig[k][r][c] for k in range(3)), ZERO
                    )
                    res.append(lhs[r][c] - rhs)
    rb.check("pauli-algebra", "σᵢσⱼ = δᵢⱼ + iεᵢⱼₖσₖ", res)

    R3 = cartesian_fuzzy(lam, sphere=False)
    e = _pauli_projector(R3, lam)
    x = [R3.gen(f"x{k + 1}") for k in range(3)]
    defect = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - R3.scalar((1 - lam * lam) / 4)
    rb.check(
        "square-defect",
        "e² - e = (Σxᵢ² - (1 - λ²)/4)·1 in fuzzy ℝ³",
        _mat_sub(R3, _mat_sub(R3, mat_mul2(R3, e, e), e), [[defect, R3.zero()], [R3.zero(), defect]]),
    )
    if not lam.is_zero():
        at0 = {"lam": 0}
        rb.check(
            "radius",
            "at λ = 0 the defect is Σxᵢ² - 1/4",
            [defect.specialize(at0) - (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - R3.scalar(Scalar.coerce(1) / 4))],
        )

    S = cartesian_fuzzy(lam, sphere=True)
    F = load_algebra("fuzzy", lam=lam)
    xs = [S.gen(f"x{k + 1}") for k in range(3)]
    img = {"a": xs[2] + (1 + lam) / 2, "b": -xs[0] + I * xs[1], "b†": -xs[0] - I * xs[1]}
    rb.check("hom", "a = x₃ + (1 + λ)/2, b = -x₁ + ix₂ maps the fuzzy sphere into Cartesian form", hom_check(F, S, img))
    Pf = build_projector("fuzzy", lam=lam)
    rb.check(
        "same-projector",
        "the projector in Cartesian form is (1 + λ)/2 - σ·x",
        _mat_sub(S, _map_matrix(Pf.e, img, S), _pauli_projector(S, lam)),
    )
    back = {
        "x1": -(F.gen("b") + F.gen("b†")) / 2,
        "x2": (F.gen("b") - F.gen("b†")) * (-I / 2),
        "x3": F.gen("a") - (1 + lam) / 2,
    }
    rb.check("hom-back", "the inverse substitution maps Cartesian relations into the fuzzy sphere", hom_check(S, F, back))
    rb.check(
        "composite",
        "both composites are the identity on generators",
        [substitute(img[g], back, F) - F.gen(g) for g in F.generators]
        + [substitute(back[g], img, S) - S.gen(g) for g in S.generators],
    )
    return rb.finish()


# ---------------------------------------------------------------------------
# q-fuzzy sphere versus fuzzy, standard q- and Podleś spheres


def podles(s2) -> Presentation:
    return load_algebra("podles", s2=Scalar.coerce(s2))


def _identity_images(src: Presentation, tgt: Presentation) -> dict:
    return {g: tgt.gen(g) for g in src.generators}


def _iso(rb: ReportBuilder, cid: str, anchor: str, A: Presentation, B: Presentation, fwd: dict, back: dict):
    rb.check(f"{cid}:forward", anchor + " (forward map)", hom_check(A, B, fwd))
    rb.check(f"{cid}:backward", anchor + " (inverse map)", hom_check(B, A, back))
    rb.check(
        f"{cid}:composite",
        anchor + " (composites are the identity on generators)",
        [substitute(fwd[g], back, A) - A.gen(g) for g in A.generators]
        + [substitute(back[g], fwd, B) - B.gen(g) for g in B.generators],
    )


def prop1_suite(at: Mapping | None = None) -> CheckReport:
    """Isomorphisms of the q-fuzzy sphere with the fuzzy, standard q- and Podleś spheres."""
    rb = ReportBuilder("spheres:prop1", at)

    # (1) q² = 1
    Q1 = load_algebra("qfuzzy", q=1)
    F = load_algebra("fuzzy")
    _iso(rb, "part1", "q-fuzzy at q = 1 is the fuzzy sphere", Q1, F, _identity_images(Q1, F), _identity_images(F, Q1))

    # (2) λ = 0 and λ = q² - 1
    Q0 = load_algebra("qfuzzy", lam=0)
    S = load_algebra("qsphere")
    _iso(rb, "part2", "q-fuzzy at λ = 0 is the standard q-sphere", Q0, S, _identity_images(Q0, S), _identity_images(S, Q0))
    Qm = load_algebra("qfuzzy", lam=Q * Q - 1)
    flip_fwd = {"a": 1 - S.gen("a"), "b": S.gen("b"), "b†": S.gen("b†")}
    flip_back = {"a": 1 - Qm.gen("a"), "b": Qm.gen("b"), "b†": Qm.gen("b†")}
    _iso(rb, "part2-flip", "q-fuzzy at λ = q² - 1 is the standard q-sphere in a' = 1 - a", Qm, S, flip_fwd, flip_back)

    # (3) Podleś, both branches
    Qf = load_algebra("qfuzzy")
    lp = lam_prime()
    s2 = podles_s2()
    rb.equal("s2", "s² = λ/(q² - 1 - λ) equals λ'/(1 - λ')", s2, lp / (1 - lp), detail=f"s² = {rb.scalar(s2)}")
    P = podles(s2)
    fwd = {"a": P.gen("x") * (1 - lp) + lp, "b": (1 - lp) * P.gen("z"), "b†": (1 - lp) * P.gen("z†")}
    back = {
        "x": (Qf.gen("a") - lp) / (1 - lp),
        "z": Qf.gen("b") / (1 - lp),
        "z†": Qf.gen("b†") / (1 - lp),
    }
    _iso(rb, "part3", "q-fuzzy sphere ≅ Podleś sphere via b = (1 - λ')z, a = x(1 - λ') + λ'", Qf, P, fwd, back)
    s2_alt = (1 - lp) / lp
    Pa = podles(s2_alt)
    fwd2 = {"a": lp * (1 - Pa.gen("x")), "b": lp * Pa.gen("z"), "b†": lp * Pa.gen("z†")}
    back2 = {"x": 1 - Qf.gen("a") / lp, "z": Qf.gen("b") / lp, "z†": Qf.gen("b†") / lp}
    _iso(rb, "part3-alt", "alternate branch b = λ'z, a = λ'(1 - x) with s² = (1 - λ')/λ'", Qf, Pa, fwd2, back2)
    rb.equal("inverse-s", "the two branches have inverse s: s²·s'² = 1", s2 * s2_alt, ONE)

    # (4) λ ↦ q² - 1 - λ
    Qr = load_algebra("qfuzzy", lam=Q * Q - 1 - LAM)
    inv_fwd = {"a": 1 - Qr.gen("a"), "b": Qr.gen("b"), "b†": Qr.gen("b†")}
    inv_back = {"a": 1 - Qf.gen("a"), "b": Qf.gen("b"), "b†": Qf.gen("b†")}
    _iso(rb, "part4", "invariance under λ ↦ q² - 1 - λ via a ↦ 1 - a, b ↦ b", Qf, Qr, inv_fwd, inv_back)
    rb.note("conditions", "parts (2)-(3) use λ ∈ {0, q² - 1} and q² ≠ 1, λ ∉ {0, q² - 1}")
    return rb.finish()


# ---------------------------------------------------------------------------
# Podleś patch as a quotient of U_q(su₂)


def casimir(U: Presentation) -> NcElement:
    """c_q = q⁻¹K² + qK⁻² + (q - q⁻¹)²x₊x₋."""
    K, Ki = U.gen("K"), U.gen("K⁻¹")
    return Q.inverse() * K * K + Q * Ki * Ki + (Q - Q.inverse()) ** 2 * U.gen("x₊") * U.gen("x₋")


def casimir_quotient(value) -> Presentation:
    U = load_algebra("uqsu2")
    return U.with_relations("uqsu2/c_q", [casimir(U) - Scalar.coerce(value)])


def podles_patch(s2) -> Presentation:
    """Podleś sphere with x⁻¹ adjoined."""
    spec = read_spec("podles")
    spec.name = "podles[x⁻¹]"
    spec.generators = ["x⁻¹"] + spec.generators
    spec.inverses = [["x", "x⁻¹"]]
    spec.star = dict(spec.star, **{"x⁻¹": "x⁻¹"})
    return build(spec, s2=Scalar.coerce(s2))


def prop3_suite(t=T, at: Mapping | None = None, all_signs: bool = True) -> CheckReport:
    """Podleś patch (s = it) into U_q(su₂)/(c_q = ±(t + t⁻¹)) for each sign choice of μ, ν."""
    t = Scalar.coerce(t)
    rb = ReportBuilder("spheres:prop3", at)
    U = load_algebra("uqsu2")
    rb.check("casimir-central", "c_q is central in U_q(su₂)", centrality_check(U, casimir(U)))
    s2 = -t * t
    rb.note("s2", s2)
    Px = podles_patch(s2)
    signs = list(product((1, -1), repeat=2)) if all_signs else [(1, 1)]
    quotients: dict = {}
    for s_mu, s_nu in signs:
        m = s_mu * Q.inverse() * t
        n = s_nu * QH * t * (Q - Q.inverse())
        c_val = (1 + t * t) / (m * Q)
        if s_mu not in quotients:
            quotients[s_mu] = casimir_quotient(c_val)
        Uc = quotients[s_mu]
        tag = f"μ{'+' if s_mu > 0 else '-'}ν{'+' if s_nu > 0 else '-'}"
        rb.check(
            f"{tag}:equations",
            "μ²q² = t², ν² = qt²(q - q⁻¹)², 1 + t² = c_q μq",
            [m * m * Q * Q - t * t, n * n - Q * t * t * (Q - Q.inverse()) ** 2, c_val * m * Q - (1 + t * t)],
            detail=f"c_q = {rb.scalar(c_val)}",
        )
        K, Ki = Uc.gen("K"), Uc.gen("K⁻¹")
        img = {
            "x": m * K * K,
            "x⁻¹": m.inverse() * Ki * Ki,
            "z": n * K * Uc.gen("x₋"),
            "z†": n * Uc.gen("x₊") * K,
        }
        rb.check(f"{tag}:hom", "x = μK², z = νKx₋ maps the Podleś patch with s² = -t² into U_q(su₂)/(c_q)", hom_check(Px, Uc, img))
    rb.note("sign-rule", "μ → -μ requires the quotient c_q = -(t + t⁻¹), i.e. t → -t")
    return rb.finish()


# ---------------------------------------------------------------------------
# time slice of B_q[SU₂]


def time_slice(t=T) -> Presentation:
    B = load_algebra("bqsu2")
    t = Scalar.coerce(t)
    return B.with_relations("bqsu2/Tr", [Q.inverse() * B.gen("α") + Q * B.gen("δ") - (t + t.inverse())])


def slice_u(p: Presentation):
    return [[p.gen("α"), p.gen("β")], [p.gen("γ"), p.gen("δ")]]


def slice_lambda(t=T) -> Scalar:
    t = Scalar.coerce(t)
    return t * t * (1 - Q * Q) / (1 - t * t)


def slice_projector(p: Presentation, t=T):
    t = Scalar.coerce(t)
    u = slice_u(p)
    f = (1 - t * t).inverse()
    return [[f * (p.scalar(1 if i == j else 0) - Q * t * u[i][j]) for j in range(2)] for i in range(2)]


def prop4_suite(t=T, at: Mapping | None = None) -> CheckReport:
    """The Podleś sphere with s = it as the slice Tr_q(u) = t + t⁻¹, and its projector."""
    t = Scalar.coerce(t)
    rb = ReportBuilder("spheres:prop4", at)
    B = load_algebra("bqsu2")
    P = podles(-t * t)
    S = time_slice(t)
    qt = Q * t
    x, z, zs = P.gen("x"), P.gen("z"), P.gen("z†")
    to_p = {"α": Q * Q * x / qt, "β": z / qt, "γ": zs / qt, "δ": (t * t + 1 - x) / qt}
    rb.check("global", "u = (1/qt)(q²x, z; z†, t² + 1 - x) maps B_q[SU₂] into the Podleś sphere", hom_check(B, P, to_p))
    tr = substitute(Q.inverse() * B.gen("α") + Q * B.gen("δ"), to_p, P)
    rb.check("trace-image", "Tr_q(u) maps to t + t⁻¹", [tr - P.scalar(t + t.inverse())])
    to_s = {"x": t * S.gen("α") / Q, "z": qt * S.gen("β"), "z†": qt * S.gen("γ")}
    rb.check("slice-to-podles", "the slice maps onto the Podleś sphere", hom_check(S, P, to_p))
    rb.check("podles-to-slice", "x = tα/q, z = qtβ maps the Podleś sphere into the slice", hom_check(P, S, to_s))
    rb.check(
        "composite",
        "both composites are the identity on generators",
        [substitute(to_p[g], to_s, S) - S.gen(g) for g in S.generators]
        + [substitute(to_s[g], to_p, P) - P.gen(g) for g in P.generators],
    )
    u = slice_u(S)
    uu = mat_mul2(S, u, u)
    rhs = [[(-(Q**-2) if i == j else ZERO) + (t + t.inverse()) / Q * u[i][j] for j in range(2)] for i in range(2)]
    rb.check("u-squared", "u² = -q⁻² + ((t + t⁻¹)/q)u on the slice", _mat_sub(S, uu, rhs))
    e = slice_projector(S, t)
    lam = slice_lambda(t)
    rb.note("lambda", lam)
    rb.check("e-square", "e = (1 - qtu)/(1 - t²) satisfies e² = e", _mat_sub(S, mat_mul2(S, e, e), e))
    rb.check("e-hermitian", "e† = e", _mat_sub(S, _dagger(S, e), e))
    rb.check("e-trace", "trace_q(e) = 1 + t²(1 - q²)/(1 - t²)", [e[0][0] + Q * Q * e[1][1] - S.scalar(1 + lam)])
    if "t" in Scalar.coerce(t).free_symbols() and not rb.at.get("t"):
        try:
            lam.specialize({"t": 1})
            rb.expect("pole", "λ(t) has a pole at t² = 1", False, "no pole")
        except PoleError:
            rb.expect("pole", "λ(t) has a pole at t² = 1", True)
    return rb.finish()


# ---------------------------------------------------------------------------
# localization of B_q[SU₂] onto U_q(su₂)


def bqsu2_localizable() -> Presentation:
    """B_q[SU₂] with α⁻¹ adjoined."""
    spec = read_spec("bqsu2")
    spec.name = "bqsu2[α⁻¹]"
    spec.generators = ["α⁻¹"] + spec.generators
    spec.inverses = [["α", "α⁻¹"]]
    spec.star = dict(spec.star, **{"α⁻¹": "α⁻¹"})
    return build(spec)


def localization_suite(at: Mapping | None = None) -> CheckReport:
    """u = (K², fKx₋; fx₊K, K⁻² + c·x₊x₋) with c fixed by the braided determinant."""
    rb = ReportBuilder("spheres:localization", at)
    c = localization_c()
    derived = Q.inverse() * (Q - Q.inverse()) ** 2
    printed = Q.inverse() * (Q - Q**-2) ** 2
    rb.note("c", c)
    rb.equal("c-value", "c determined by αδ - q²γβ = 1 equals q⁻¹(q - q⁻¹)²", c, derived, detail=f"c = {rb.scalar(c)}")
    rb.expect(
        "c-printed",
        "the value q⁻¹(q - q⁻²)² is inconsistent with the determinant",
        (c - printed) != 0,
        detail=f"difference {rb.scalar(c - printed)}",
    )
    U = load_algebra("uqsu2")
    Bl = bqsu2_localizable()
    img = localization_images(U, c)
    img = {g: img[g] for g in ("α", "β", "γ", "δ")}
    img["α⁻¹"] = U.gen("K⁻¹") * U.gen("K⁻¹")
    rb.check("hom", "the matrix maps every B_q[SU₂] relation (with α⁻¹) to zero", hom_check(Bl, U, img))
    B = load_algebra("bqsu2")
    det = substitute(B.gen("α") * B.gen("δ") - Q * Q * B.gen("γ") * B.gen("β"), img, U)
    rb.check("determinant", "αδ - q²γβ maps to 1", [det - U.one()])
    tr = substitute(Q.inverse() * B.gen("α") + Q * B.gen("δ"), img, U)
    rb.check("trace-casimir", "Tr_q(u) maps to the Casimir c_q", [tr - casimir(U)])
    ba = substitute(B.gen("β") * B.gen("α") - Q * Q * B.gen("α") * B.gen("β"), img, U)
    rb.check("beta-alpha", "βα - q²αβ maps to 0", [ba])
    return rb.finish()
