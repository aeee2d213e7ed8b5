"""Graded presentations with an inner differential, and the shipped calculi.

Every calculus here is inner: ``d(x) = σ(θx - (-1)^{|x|} xθ)`` for a
distinguished 1-form θ and scale σ.  The algebra product is the plain product
of the presented algebra; Koszul signs enter only through the graded
commutator used by ``d`` and by the checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .freealg import NcElement, Presentation, _add_into, substitute
from .linalg import rank
from .rmatrix import (
    eq9_bimodule_rules,
    frt_calculus_rules,
    frt_names,
    frt_relations,
    graded_alphabet,
    standard_r,
)
from .scalars import ONE, Q, QH, T, ZERO, Scalar, mu

__all__ = [
    "GradedPresentation",
    "bracket",
    "form_relations",
    "hand_bimodule_relations",
    "localized_relations",
    "localized_audit",
    "derive_localized_rules",
    "bqsu2_relations",
    "omega_bqsu2",
    "omega_bqsu2_from_eq9",
    "omega_cqsu2",
    "omega_uqsu2",
    "omega_qfuzzy",
    "eq9_crosscheck",
    "localization_images",
    "localization_c",
    "lambda_hat",
    "trace_constraint",
    "d_trace",
    "maurer_cartan_check",
    "mc_forms",
    "mc_rank",
    "dt_formula",
    "ideal_crosscheck",
    "trace_form_element",
    "trace_constraint_check",
    "TraceConstraintReport",
    "qfuzzy_completion",
    "surviving_forms",
    "FORMS",
    "FUNCS_B",
    "FUNCS_C",
    "FUNCS_U",
]

FUNCS_B = ["α", "β", "γ", "δ"]
FUNCS_C = ["a", "b", "c", "d"]
FUNCS_U = ["K⁻¹", "K", "x₋", "x₊"]
FORMS = ["e_a", "e_b", "e_c", "e_d"]


@dataclass
class GradedPresentation:
    """A presented graded algebra with inner differential ``σ[θ, ·]``."""

    p: Presentation
    theta: NcElement
    sigma: Scalar
    name: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def generators(self):
        return self.p.generators

    def gen(self, name):
        return self.p.gen(name)

    def gens(self):
        return self.p.gens()

    def element(self, terms):
        return self.p.element(terms)

    def normalize(self, x):
        return self.p.normalize(x)

    def functions(self):
        return [g for g in self.p.generators if self.p.degrees[g] == 0]

    def forms(self):
        return [g for g in self.p.generators if self.p.degrees[g] > 0]

    def d(self, x) -> NcElement:
        if not isinstance(x, NcElement):
            x = self.p.scalar(x)
        out = self.p.zero()
        for k, part in x.degree_parts().items():
            out = out + self.theta * part - ((-1) ** k) * (part * self.theta)
        return self.sigma * out

    def graded_commutator(self, x, y):
        return self.p.graded_commutator(x, y)

    def check_local_confluence(self, max_degree=5):
        return self.p.check_local_confluence(max_degree)

    def leibniz_check(self, samples: int = 50, seed: int = 0, max_len: int = 3) -> list[tuple]:
        """Failures of ``d(xy) = d(x)y + (-1)^{|x|} x d(y)`` on random monomial pairs.

        The monomials are drawn so that their product has at most ``max_len``
        letters.
        """
        rng = random.Random(seed)
        gens = list(self.p.generators)
        bad = []
        for _ in range(samples):
            total = rng.randint(2, max(2, max_len))
            k = rng.randint(1, total - 1)
            wx = tuple(rng.choice(gens) for _ in range(k))
            wy = tuple(rng.choice(gens) for _ in range(total - k))
            x, y = self.p.element({wx: ONE}), self.p.element({wy: ONE})
            if x.is_zero() or y.is_zero():
                continue
            dx = self.p.word_degree(wx)
            res = self.d(x * y) - self.d(x) * y - ((-1) ** dx) * (x * self.d(y))
            if not res.is_zero():
                bad.append((wx, wy, res))
        return bad

    def d_squared_check(self) -> list[tuple[str, NcElement]]:
        out = []
        for g in self.p.generators:
            r = self.d(self.d(self.p.gen(g)))
            if not r.is_zero():
                out.append((g, r))
        return out

    def __repr__(self):
        return f"GradedPresentation({self.name!r}, {len(self.p.rules)} rules)"


def bracket(x, y, p, convention: str = "xy-pyx"):
    """Subscripted q-commutator; ``convention`` selects ``xy - p yx`` or ``xy - p^-1 yx``."""
    p = Scalar.coerce(p)
    if convention == "xy-pyx":
        return x * y - p * (y * x)
    if convention == "xy-p^-1yx":
        return x * y - p.inverse() * (y * x)
    raise ValueError(f"unknown bracket convention {convention!r}")


def form_relations(g) -> list:
    """Quadratic relations of the left-invariant 1-forms on the 4D calculus."""
    m = mu()
    ea, eb, ec, ed = g["e_a"], g["e_b"], g["e_c"], g["e_d"]
    return [
        ea * ea,
        eb * eb,
        ec * ec,
        ea * eb + eb * ea,
        ea * ec + ec * ea,
        eb * ec + ec * eb,
        ea * ed + ed * ea + m * ec * eb,
        ed * ec + Q * Q * ec * ed + m * ea * ec,
        eb * ed + Q * Q * ed * eb + m * eb * ea,
        ed * ed - m * ec * eb,
    ]


def bqsu2_relations(g) -> list:
    """Braided-matrix relations and the braided determinant in α, β, γ, δ.

    Star images (γ = β*) are listed explicitly since graded presentations
    carry no star map.
    """
    m = mu()
    al, be, ga, de = g["α"], g["β"], g["γ"], g["δ"]
    return [
        be * al - Q * Q * al * be,
        al * ga - Q * Q * ga * al,
        de * al - al * de,
        ga * de - de * ga - m * ga * al,
        be * ga - ga * be - m * al * (de - al),
        de * be - be * de - m * al * be,
        al * de - Q * Q * ga * be - 1,
    ]


def hand_bimodule_relations(g, convention: str = "xy-pyx") -> list:
    """The sixteen bimodule relations between e_α^β and α, β, γ, δ."""
    m = mu()
    qi = Q.inverse()
    al, be, ga, de = g["α"], g["β"], g["γ"], g["δ"]
    ea, eb, ec, ed = g["e_a"], g["e_b"], g["e_c"], g["e_d"]

    def br(x, y, p):
        return bracket(x, y, p, convention)

    return [
        br(ea, al, Q),
        br(ea, be, qi),
        br(ec, be, Q),
        br(eb, al, qi),
        br(eb, ga, Q),
        br(ea, ga, Q) - m * al * eb,
        br(ea, de, qi) - m * be * eb - Q * m * m * al * ea,
        br(ec, al, Q) - Q * Q * m * be * ea,
        br(eb, be, qi) - m * al * ea,
        br(eb, de, Q) - Q * Q * m * ga * ea,
        br(ed, al, qi) - m * be * eb,
        br(ed, be, Q) - m * al * ec - Q * m * m * be * ea,
        br(ed, ga, qi) - m * (de - al) * eb,
        br(ed, de, Q) + m * be * eb - Q * m * m * (de - al) * ea - m * ga * ec,
        br(ec, ga, qi) - m * (de - al) * ea - m * al * ed - Q * m * m * be * eb,
        br(ec, de, qi) - m * (Q * Q - 2) * be * ea - Q * Q * m * be * ed - Q * m * m * al * ec,
    ]


def _inner(p: Presentation, sigma, name, notes=None) -> GradedPresentation:
    theta = p.gen("e_a") + p.gen("e_d")
    return GradedPresentation(p, theta, Scalar.coerce(sigma), name, notes or {})


def omega_bqsu2(convention: str = "xy-pyx") -> GradedPresentation:
    """Ω(B_q[SU₂]): B_q[SU₂] relations, the sixteen bimodule relations, 1-form relations."""
    free = graded_alphabet(FUNCS_B, FORMS)
    g = free.gens()
    rels = bqsu2_relations(g) + hand_bimodule_relations(g, convention) + form_relations(g)
    p = Presentation("omega_bqsu2", free.generators, rels, degrees=free.degrees)
    return _inner(p, mu().inverse(), "omega_bqsu2", {"convention": convention})


def _rules_as_relations(free: Presentation, rules: dict) -> list:
    out = []
    for head, rhs in rules.items():
        r = {w: -c for w, c in rhs.items()}
        _add_into(r, head, ONE)
        out.append(r)
    return out


def omega_bqsu2_from_eq9(normalization: str = "quantum-group") -> GradedPresentation:
    """The same calculus with bimodule relations generated from the R-matrix formula."""
    free = graded_alphabet(FUNCS_B, FORMS)
    g = free.gens()
    R = standard_r(normalization)
    rels = bqsu2_relations(g) + _rules_as_relations(free, eq9_bimodule_rules(R)) + form_relations(g)
    p = Presentation(f"omega_bqsu2_eq9[{normalization}]", free.generators, rels, degrees=free.degrees)
    return _inner(p, mu().inverse(), p.name)


def ideal_crosscheck(p1: Presentation, rels1, p2: Presentation, rels2) -> list[tuple[str, int, NcElement]]:
    """Two-way membership: each relation of one set normalizes to zero in the other presentation."""
    fails = []
    for k, r in enumerate(rels1):
        x = p2.normalize(r if isinstance(r, dict) else r.terms)
        if not x.is_zero():
            fails.append(("first-in-second", k, x))
    for k, r in enumerate(rels2):
        x = p1.normalize(r if isinstance(r, dict) else r.terms)
        if not x.is_zero():
            fails.append(("second-in-first", k, x))
    return fails


def eq9_crosscheck(normalization: str = "quantum-group", convention: str = "xy-pyx") -> list[tuple]:
    """Compare the R-matrix bimodule relations with the hand-written sixteen.

    Only the degree-(0,1) bimodule relations are compared; both sides share
    the function and form relations.  An empty list means the two ideals agree.
    """
    free = graded_alphabet(FUNCS_B, FORMS)
    g = free.gens()
    hand = hand_bimodule_relations(g, convention)
    gen = _rules_as_relations(free, eq9_bimodule_rules(standard_r(normalization)))
    p_hand = Presentation("hand", free.generators, hand, degrees=free.degrees)
    p_gen = Presentation("eq9", free.generators, gen, degrees=free.degrees)
    return ideal_crosscheck(p_hand, [x.terms for x in hand], p_gen, gen)


# ---------------------------------------------------------------------------
# C_q[SU_2]


def omega_cqsu2() -> GradedPresentation:
    """Ω(C_q[SU₂]): FRT relations with q-determinant, e t = t e R R bimodule rules, 1-form relations."""
    R = standard_r("quantum-group")
    base = frt_relations(standard_r(), with_determinant=True)
    free = graded_alphabet(FUNCS_C, FORMS)
    g = free.gens()
    rels = base.rule_elements() + _rules_as_relations(free, frt_calculus_rules(R)) + form_relations(g)
    p = Presentation("omega_cqsu2", free.generators, rels, degrees=free.degrees, meta=base.meta)
    return _inner(p, mu().inverse(), "omega_cqsu2")


def dt_formula(gp: GradedPresentation, contraction: str = "row") -> dict:
    """σ(t^a_c (R21 R)^c_b^m_n e - t^a_b θ) for each generator t^a_b.

    ``contraction="row"`` pairs the free indices (m, n) of R21R with ``e_m^n``
    (row m, column n); ``"column"`` pairs them with ``e_n^m``.
    """
    R = standard_r("quantum-group")
    R21 = R.r21()
    n = 2
    t = frt_names(n)
    e = [["e_a", "e_b"], ["e_c", "e_d"]]

    def rr(c, b, m, nn):
        return sum((R21(c, x, m, y) * R(x, b, y, nn) for x in range(n) for y in range(n)), ZERO)

    out = {}
    for a, b in product(range(n), repeat=2):
        acc = gp.p.zero()
        for c, m, nn in product(range(n), repeat=3):
            v = rr(c, b, m, nn)
            if v:
                form = e[m][nn] if contraction == "row" else e[nn][m]
                acc = acc + v * gp.p.word(t[a][c], form)
        acc = acc - gp.p.gen(t[a][b]) * gp.theta
        out[t[a][b]] = gp.sigma * acc
    return out


def _antipode_matrix(gp: GradedPresentation):
    from .hopf import antipode, cqsu2_hopf

    h = cqsu2_hopf()
    t = frt_names(2)
    return [[gp.p.element(antipode(h, t[i][j]).terms) for j in range(2)] for i in range(2)]


def mc_forms(gp: GradedPresentation) -> dict:
    """ω(t^i_j) = Σ_k S(t^i_k) d t^k_j."""
    t = frt_names(2)
    S = _antipode_matrix(gp)
    dt = {t[i][j]: gp.d(gp.gen(t[i][j])) for i in range(2) for j in range(2)}
    return {t[i][j]: sum((S[i][k] * dt[t[k][j]] for k in range(2)), gp.p.zero()) for i in range(2) for j in range(2)}


def maurer_cartan_check(gp: GradedPresentation) -> list[tuple[str, NcElement]]:
    """dω(t^i_j) + Σ_k ω(t^i_k) ω(t^k_j) on the four generators (nonzero residuals)."""
    t = frt_names(2)
    w = mc_forms(gp)
    bad = []
    for i, j in product(range(2), repeat=2):
        r = gp.d(w[t[i][j]]) + sum((w[t[i][k]] * w[t[k][j]] for k in range(2)), gp.p.zero())
        if not r.is_zero():
            bad.append((t[i][j], r))
    return bad


def mc_rank(gp: GradedPresentation, q_values=(Scalar.coerce(4), Scalar.coerce(9), Scalar.coerce(25) / 49)) -> list[int]:
    """Rank of the scalar coefficient matrix of ω(t^i_j) in the basis e_α^β at specialized q.

    The q values must be rational squares since the field contains q^(1/2).

    The Maurer-Cartan forms have constant coefficients, and dt = t ω(t), so
    this rank is the rank of span{da, db, dc, dd} over the algebra.
    """
    w = mc_forms(gp)
    out = []
    for qv in q_values:
        rows = []
        for name in sorted(w):
            row = []
            for f in FORMS:
                c = w[name].coefficient((f,))
                for word in w[name].terms:
                    if len(word) != 1:
                        raise ValueError(f"ω({name}) has non-constant coefficients")
                row.append(c.specialize({"q": qv}))
            rows.append(row)
        out.append(rank(rows))
    return out


# ---------------------------------------------------------------------------
# U_q(su_2) localization


def uqsu2_relations(g) -> list:
    K, Ki, xm, xp = g["K"], g["K⁻¹"], g["x₋"], g["x₊"]
    return [
        K * xp - Q * xp * K,
        K * xm - Q.inverse() * xm * K,
        xp * xm - xm * xp - (K * K - Ki * Ki) / (Q - Q.inverse()),
    ]


def localized_relations(g, variant: str = "q^1/2", convention: str = "xy-pyx", corrected: bool = True) -> list:
    """The twelve degree-(0,1) relations of the localized calculus.

    ``variant`` picks one of the two printed ``[e_a, x₊]`` relations
    (``"q^1/2"`` or ``"q^-1/2"``).  With ``corrected=False`` the list is taken
    verbatim as printed; ``corrected=True`` replaces three coefficients by
    the values forced by the e·K relations and the B_q[SU₂] calculus (see
    :func:`derive_localized_rules`): ``[e_b, x₋]`` has right side ``K e_a``,
    the ``x₋e_a`` coefficient in ``[e_d, x₋]`` is ``q^{1/2}(1 - q⁻¹)μ`` and the
    ``K e_d`` coefficient in ``[e_c, x₊]`` is 1.
    """
    m = mu()
    qh, qhi = QH, QH.inverse()
    K, Ki, xm, xp = g["K"], g["K⁻¹"], g["x₋"], g["x₊"]
    ea, eb, ec, ed = g["e_a"], g["e_b"], g["e_c"], g["e_d"]

    def br(x, y, p):
        return bracket(x, y, p, convention)

    ea_xp = {"q^-1/2": qhi, "q^1/2": qh}[variant]
    eb_xm = ONE if corrected else m
    ed_xm = qh * (1 - Q.inverse()) * m if corrected else qh**3 * m * m
    ec_xp = ONE if corrected else m
    return [
        ea * K - qh * K * ea,
        eb * K - qhi * K * eb,
        ea * xm - qhi**3 * xm * ea,
        br(ea, xp, ea_xp) - K * eb,
        br(ec, K, qh) - m * (Q - 1) * xm * ea,
        br(ed, K, qhi) - m * (1 - Q.inverse()) * xm * eb,
        br(eb, xm, qhi) - eb_xm * K * ea,
        br(ec, xm, qh) - m * Q**-2 * (1 - Q) * Ki * xm * xm * ea,
        br(ed, xm, qh**3) - ed_xm * xm * ea - K * ec - m * (Q.inverse() - 1) * Ki * xm * xm * eb,
        eb * xp - qh**3 * xp * eb,
        br(ed, xp, qhi) - m * Ki * (Q * xm * xp - xp * xm) * eb,
        br(ec, xp, qhi**3) - ec_xp * K * ed - m * qh * (1 - Q.inverse()) * xm * eb - m * Ki * (xm * xp - Q.inverse() * xp * xm) * ea,
    ]


K_RELATION_INDICES = (0, 1, 4, 5)


def omega_uqsu2(variant: str = "q^1/2", convention: str = "xy-pyx", corrected: bool = True) -> GradedPresentation:
    """Ω(U_q(su₂)) with d = [θ, ·], θ = e_a + e_d."""
    free = graded_alphabet(FUNCS_U, FORMS)
    g = free.gens()
    rels = uqsu2_relations(g) + localized_relations(g, variant, convention, corrected) + form_relations(g)
    p = Presentation("omega_uqsu2", free.generators, rels, degrees=free.degrees, inverses=[("K", "K⁻¹")])
    return _inner(p, ONE, "omega_uqsu2", {"variant": variant, "corrected": corrected})


def derive_localized_rules() -> tuple[GradedPresentation, dict]:
    """Derive the e·x₊ and e·x₋ relations from the e·K relations and Ω(B_q[SU₂]).

    Under the localization x₋ = f⁻¹K⁻¹β and x₊ = f⁻¹γK⁻¹ with
    f = q^{-1/2}(q - q⁻¹), so e·x± is fixed once e·K (and hence e·K⁻¹) is
    known.  Returns the resulting calculus and the derived rules.
    """
    B = omega_bqsu2()
    free = graded_alphabet(FUNCS_U, FORMS)
    g = free.gens()
    printed = localized_relations(g, corrected=False)
    krels = [printed[k] for k in K_RELATION_INDICES]
    base = uqsu2_relations(g) + krels + form_relations(g)
    W0 = Presentation("omega_uqsu2_k", free.generators, base, degrees=free.degrees, inverses=[("K", "K⁻¹")])
    img = localization_images(W0)
    f = QH.inverse() * (Q - Q.inverse())
    Ki = W0.gen("K⁻¹")
    rules = {}
    for e in FORMS:
        acc = W0.zero()
        for w, c0 in W0.normalize({(e, "K⁻¹"): ONE}).terms.items():
            acc = acc + c0 * W0.element({w[:-1]: ONE}) * substitute(B.p.normalize({(w[-1], "β"): ONE}), img, W0)
        rules[(e, "x₋")] = acc / f
        rules[(e, "x₊")] = substitute(B.p.normalize({(e, "γ"): ONE}), img, W0) * Ki / f
    rels = base + _rules_as_relations(free, {k: v.terms for k, v in rules.items()})
    p = Presentation("omega_uqsu2_derived", free.generators, rels, degrees=free.degrees, inverses=[("K", "K⁻¹")])
    return _inner(p, ONE, p.name), rules


def localized_audit() -> dict:
    """Residual of every printed relation (both variants) in the derived calculus."""
    W, _ = derive_localized_rules()
    g = W.gens()
    out = {}
    for variant in ("q^-1/2", "q^1/2"):
        rels = localized_relations(g, variant, corrected=False)
        out[variant] = {k: r for k, r in enumerate(rels) if not r.is_zero()}
    out["corrected"] = {k: r for k, r in enumerate(localized_relations(g)) if not r.is_zero()}
    return out


def localization_c() -> Scalar:
    """Coefficient of x₊x₋ in the image of δ forced by the braided determinant.

    The images of α, β, γ are fixed; δ ↦ K⁻² + c x₊x₋.  The determinant image
    is affine in c, so c solves ``det(c=0) - 1 + c·(coefficient part) = 0``.
    """
    U = _uq_plain()
    base = _localization_images_plain(U, ZERO)
    lin = _localization_images_plain(U, ONE)
    det0 = base["α"] * base["δ"] - Q * Q * base["γ"] * base["β"] - 1
    det1 = lin["α"] * lin["δ"] - Q * Q * lin["γ"] * lin["β"] - 1
    slope = det1 - det0
    # find c with det0 + c*slope = 0 using any word present in slope
    if slope.is_zero():
        raise ValueError("determinant image does not depend on c")
    word, s = next(iter(slope.terms.items()))
    c = -det0.coefficient(word) / s
    if not (det0 + c * slope).is_zero():
        raise ValueError("no consistent coefficient c exists")
    return c


_UQ_CACHE: dict = {}


def _uq_plain() -> Presentation:
    if "uq" not in _UQ_CACHE:
        free = Presentation("free", FUNCS_U)
        g = free.gens()
        _UQ_CACHE["uq"] = Presentation(
            "uqsu2",
            FUNCS_U,
            uqsu2_relations(g),
            star={"K": "K", "x₊": "x₋", "K⁻¹": "K⁻¹"},
            inverses=[("K", "K⁻¹")],
        )
    return _UQ_CACHE["uq"]


def _localization_images_plain(U: Presentation, c) -> dict:
    g = U.gens()
    K, Ki, xm, xp = g["K"], g["K⁻¹"], g["x₋"], g["x₊"]
    f = QH.inverse() * (Q - Q.inverse())
    return {"α": K * K, "β": f * K * xm, "γ": f * xp * K, "δ": Ki * Ki + Scalar.coerce(c) * xp * xm}


def localization_images(target: Presentation, c=None) -> dict:
    """Images of α, β, γ, δ (and e_α^β identically) in a presentation containing U_q(su₂)."""
    if c is None:
        c = localization_c()
    g = target.gens()
    K, Ki, xm, xp = g["K"], g["K⁻¹"], g["x₋"], g["x₊"]
    f = QH.inverse() * (Q - Q.inverse())
    img = {"α": K * K, "β": f * K * xm, "γ": f * xp * K, "δ": Ki * Ki + Scalar.coerce(c) * xp * xm}
    for e in FORMS:
        if e in target.rank:
            img[e] = g[e]
    return img


def lambda_hat() -> Scalar:
    return QH * (1 - QH.inverse()) ** 2


# ---------------------------------------------------------------------------
# q-fuzzy calculus


def trace_constraint(g, t=T) -> NcElement:
    """(t + t⁻¹)θ - q⁻¹(1 + q⁻¹)(αe_d + δe_a - q⁻¹βe_b - qγe_c)."""
    t = Scalar.coerce(t)
    qi = Q.inverse()
    theta = g["e_a"] + g["e_d"]
    rhs = qi * (1 + qi) * (g["α"] * g["e_d"] + g["δ"] * g["e_a"] - qi * g["β"] * g["e_b"] - Q * g["γ"] * g["e_c"])
    return (t + t.inverse()) * theta - rhs


def d_trace(gp: GradedPresentation) -> NcElement:
    """d(q⁻¹α + qδ) in the given calculus."""
    return gp.d(Q.inverse() * gp.gen("α") + Q * gp.gen("δ"))


def omega_qfuzzy(t=T) -> GradedPresentation:
    """The 3D calculus on the time slice q⁻¹α + qδ = t + t⁻¹."""
    t = Scalar.coerce(t)
    free = graded_alphabet(FUNCS_B, FORMS)
    g = free.gens()
    slice_rel = Q.inverse() * g["α"] + Q * g["δ"] - (t + t.inverse())
    rels = bqsu2_relations(g) + hand_bimodule_relations(g) + form_relations(g) + [slice_rel, trace_constraint(g, t)]
    p = Presentation("omega_qfuzzy", free.generators, rels, degrees=free.degrees)
    return _inner(p, mu().inverse(), "omega_qfuzzy", {"t": t})


def trace_form_element(g) -> NcElement:
    """Tr_q(u)θ - q⁻¹(1 + q⁻¹)(αe_d + δe_a - q⁻¹βe_b - qγe_c), before any slicing."""
    qi = Q.inverse()
    tr = qi * g["α"] + Q * g["δ"]
    theta = g["e_a"] + g["e_d"]
    rhs = qi * (1 + qi) * (g["α"] * g["e_d"] + g["δ"] * g["e_a"] - qi * g["β"] * g["e_b"] - Q * g["γ"] * g["e_c"])
    return tr * theta - rhs


@dataclass
class TraceConstraintReport:
    d_trace: NcElement
    constraint: NcElement
    ratio: Scalar | None
    ok: bool

    @property
    def constraint_nonzero(self) -> bool:
        return not self.constraint.is_zero()


def trace_constraint_check(gp: GradedPresentation | None = None) -> TraceConstraintReport:
    """Check that d(Tr_q(u)) is a nonzero scalar multiple of :func:`trace_form_element`."""
    gp = gp or omega_bqsu2()
    dt = d_trace(gp)
    cons = gp.normalize(trace_form_element(gp.gens()))
    ratio = None
    if not cons.is_zero():
        word, c = next(iter(cons.terms.items()))
        ratio = dt.coefficient(word) / c
    ok = ratio is not None and bool(ratio) and (dt - ratio * cons).is_zero()
    return TraceConstraintReport(dt, cons, ratio, ok)


def qfuzzy_completion(t=T, max_degree: int = 4, rounds: int = 5) -> tuple[GradedPresentation, list]:
    """Complete :func:`omega_qfuzzy` by adding critical-pair residuals until confluent.

    Returns the completed calculus and the list of added relations.  The
    quotient is two-sided, so besides the θ constraint it also forces every
    ``[e, Tr_q(u)]`` to vanish; for generic t this kills all 1-forms.
    """
    gp = omega_qfuzzy(t)
    p = gp.p
    added: list = []
    for _ in range(rounds):
        fails = p.check_local_confluence(max_degree)
        if not fails:
            break
        added += [f.difference for f in fails]
        p = p.with_relations(p.name, added)
    return GradedPresentation(p, p.normalize(gp.theta), gp.sigma, gp.name + "_completed", dict(gp.notes)), added


def surviving_forms(gp: GradedPresentation) -> list[str]:
    """Form generators that do not normalize to zero."""
    return [e for e in FORMS if not gp.normalize(gp.gen(e)).is_zero()]
