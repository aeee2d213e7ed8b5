"""Hopf structure on FRT algebras.

Coproduct, counit and antipode of the matrix coalgebra, the coquasitriangular
functional ℛ on monomials, the transmuted (braided) product, the cocycle
cotwist products on the exterior algebra and the comparison map Θ between the
transmuted and cotwisted calculi.

Elements of the FRT algebra enter as :class:`NcElement` or as plain term
dicts ``{word: Scalar}``.  Functionals (ε, ℛ, 𝔳⁻¹, u) are evaluated on free
words; that this descends to the quotient is checked, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from .freealg import NcElement, Presentation, _add_into
from .linalg import SingularMatrixError, mat_inv, rank, solve_words
from .rmatrix import RMatrix, _OpMatrix, frt_names, frt_relations, reflection_names, reflection_relations, standard_r
from .scalars import ONE, Q, ZERO, Scalar

__all__ = [
    "HopfData",
    "TensorElement",
    "cqsu2_hopf",
    "coproduct",
    "counit",
    "antipode",
    "antipode_inverse",
    "antipode_axiom_check",
    "cqt_eval",
    "cqt_welldefined_check",
    "v_inv",
    "u_functional",
    "square_antipode_check",
    "transmute_product",
    "reflection_equation_check",
    "transmuted_reflection_check",
    "cocycle_check",
    "CalculusTwist",
]


def _terms(x) -> dict:
    if isinstance(x, NcElement):
        return x.terms
    if isinstance(x, tuple):
        return {x: ONE}
    if isinstance(x, str):
        return {(x,): ONE}
    return dict(x)


class HopfData:
    """An FRT Hopf algebra with its R-matrix (quantum-group normalized) and antipode table."""

    def __init__(self, p: Presentation, R: RMatrix, antipode_table: dict, det_coefficient: Scalar | None = None):
        self.p = p
        self.R = R
        self.n = R.n
        self.names = frt_names(R.n)
        self.index = {self.names[i][j]: (i, j) for i in range(self.n) for j in range(self.n)}
        self.antipode_table = antipode_table
        self.det_coefficient = det_coefficient
        self.antipode_inverse_table = _invert_linear_table(self, antipode_table)
        self._cqt: dict = {}

    def name(self, i, j) -> str:
        return self.names[i][j]

    def element(self, terms) -> NcElement:
        return self.p.element(_terms(terms))

    def sweedler(self, word: tuple, legs: int = 2):
        """Yield the ``legs``-fold coproduct of a word as tuples of words (each with coefficient 1)."""
        if legs == 1:
            yield (word,)
            return
        per_letter = []
        for x in word:
            i, j = self.index[x]
            opts = []
            for mid in product(range(self.n), repeat=legs - 1):
                chain = (i,) + mid + (j,)
                opts.append(tuple(self.names[chain[k]][chain[k + 1]] for k in range(legs)))
            per_letter.append(opts)
        for choice in product(*per_letter):
            yield tuple(tuple(c[k] for c in choice) for k in range(legs))

    # -- linear maps on free words -------------------------------------------

    def counit_word(self, word) -> Scalar:
        for x in word:
            i, j = self.index[x]
            if i != j:
                return ZERO
        return ONE

    def _apply_table_reversed(self, word, table) -> dict:
        out = {(): ONE}
        for x in reversed(word):
            nxt: dict = {}
            for w, c in out.items():
                for w2, c2 in table[x].items():
                    _add_into(nxt, w + w2, c * c2)
            out = nxt
        return out

    def antipode_word(self, word) -> dict:
        return self._apply_table_reversed(word, self.antipode_table)

    def antipode_inverse_word(self, word) -> dict:
        return self._apply_table_reversed(word, self.antipode_inverse_table)

    def cqt_words(self, x: tuple, y: tuple) -> Scalar:
        """ℛ(x, y) on free words via ℛ(ab, c) = ℛ(a, c₍₁₎)ℛ(b, c₍₂₎) and ℛ(a, bc) = ℛ(a₍₁₎, c)ℛ(a₍₂₎, b)."""
        key = (x, y)
        v = self._cqt.get(key)
        if v is not None:
            return v
        if not x:
            v = self.counit_word(y)
        elif not y:
            v = self.counit_word(x)
        elif len(x) == 1 and len(y) == 1:
            v = self.R(*self.index[x[0]], *self.index[y[0]])
        elif len(x) > 1:
            v = ZERO
            for y1, y2 in self.sweedler(y):
                a = self.cqt_words(x[:1], y1)
                if a:
                    v = v + a * self.cqt_words(x[1:], y2)
        else:
            v = ZERO
            for x1, x2 in self.sweedler(x):
                a = self.cqt_words(x1, y[-1:])
                if a:
                    v = v + a * self.cqt_words(x2, y[:-1])
        self._cqt[key] = v
        return v


def _invert_linear_table(h: HopfData, table: dict) -> dict:
    """Inverse of an antipode table that maps generators linearly to generators."""
    gens = [x for row in h.names for x in row]
    pos = {g: k for k, g in enumerate(gens)}
    m = [[ZERO] * len(gens) for _ in gens]
    for g, img in table.items():
        for w, c in img.items():
            if len(w) != 1:
                return {}
            m[pos[w[0]]][pos[g]] = c
    try:
        inv = mat_inv(m)
    except SingularMatrixError:
        return {}
    return {g: {(gens[r],): inv[r][pos[g]] for r in range(len(gens)) if inv[r][pos[g]]} for g in gens}


def derive_antipode(p: Presentation, n: int = 2) -> dict:
    """Solve S(t)·t = t·S(t) = 1 for S linear on the generators."""
    names = frt_names(n)
    gens = [x for row in names for x in row]
    unknowns = [(i, k, g) for i in range(n) for k in range(n) for g in gens]
    eqs = []
    for i, j in product(range(n), repeat=2):
        left: dict = {}
        right: dict = {}
        for k in range(n):
            for g in gens:
                for w, c in p.normalize({(g, names[k][j]): ONE}).terms.items():
                    left.setdefault(w, {})[(i, k, g)] = c
        for k in range(n):
            for g in gens:
                for w, c in p.normalize({(names[i][k], g): ONE}).terms.items():
                    right.setdefault(w, {})[(k, j, g)] = c
        for side in (left, right):
            words = set(side) | {()}
            for w in words:
                rhs = {0: ONE} if (w == () and i == j) else {}
                eqs.append((side.get(w, {}), rhs))
    sol = solve_words(eqs, unknowns)
    table = {names[i][k]: {} for i in range(n) for k in range(n)}
    for (i, k, g), v in sol.items():
        c = v.get(0, ZERO)
        if c:
            table[names[i][k]][(g,)] = c
    return table


def cqsu2_hopf(det_coefficient=None) -> HopfData:
    """C_q[SU₂]: FRT algebra of the standard R with the q-determinant set to 1.

    The antipode is solved from the antipode axiom; if the determinant
    convention does not admit one, the other convention is tried.
    """
    candidates = [det_coefficient] if det_coefficient is not None else [None, Q.inverse(), Q]
    last = None
    for c0 in candidates:
        p = frt_relations(standard_r(), with_determinant=True, det_coefficient=c0, name="cqsu2")
        try:
            table = derive_antipode(p)
        except (SingularMatrixError, ValueError) as exc:
            last = exc
            continue
        return HopfData(p, standard_r("quantum-group"), table, p.meta["det_coefficient"])
    raise ValueError(f"no antipode exists for either determinant convention: {last}")


# ---------------------------------------------------------------------------
# tensor elements


@dataclass
class TensorElement:
    """Σ c·(w₁ ⊗ … ⊗ w_k) with each leg a normalized word."""

    legs: int
    terms: dict

    def is_zero(self) -> bool:
        return not self.terms

    def __sub__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, -c)
        return TensorElement(self.legs, out)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and (self - other).is_zero()

    def __str__(self):
        from .freealg import format_word

        if not self.terms:
            return "0"
        return " + ".join(f"({c})*" + "⊗".join(format_word(w) for w in k) for k, c in self.terms.items())


def _tensor_normalize(p: Presentation, raw: Mapping) -> TensorElement:
    legs = len(next(iter(raw))) if raw else 0
    out: dict = {}
    cache: dict = {}
    for key, c in raw.items():
        parts = []
        for w in key:
            if w not in cache:
                cache[w] = p.normalize({w: ONE}).terms
            parts.append(cache[w])
        for combo in product(*(list(x.items()) for x in parts)):
            coef = c
            for _, cc in combo:
                coef = coef * cc
            _add_into(out, tuple(w for w, _ in combo), coef)
    return TensorElement(legs, out)


def coproduct(h: HopfData, x, legs: int = 2) -> TensorElement:
    """Iterated coproduct Δ^{legs-1}(x) with normalized legs."""
    raw: dict = {}
    for w, c in _terms(x).items():
        for split in h.sweedler(w, legs):
            _add_into(raw, split, c)
    return _tensor_normalize(h.p, raw)


def coassociativity_check(h: HopfData, x) -> bool:
    """(Δ⊗id)Δx = (id⊗Δ)Δx, expanded leg by leg on free words."""
    left: dict = {}
    right: dict = {}
    for w, c in _terms(x).items():
        for a, b in h.sweedler(w):
            for a1, a2 in h.sweedler(a):
                _add_into(left, (a1, a2, b), c)
            for b1, b2 in h.sweedler(b):
                _add_into(right, (a, b1, b2), c)
    return _tensor_normalize(h.p, left) == _tensor_normalize(h.p, right)


def counit(h: HopfData, x) -> Scalar:
    return sum((c * h.counit_word(w) for w, c in _terms(x).items()), ZERO)


def antipode(h: HopfData, x) -> NcElement:
    out: dict = {}
    for w, c in _terms(x).items():
        for w2, c2 in h.antipode_word(w).items():
            _add_into(out, w2, c * c2)
    return h.p.element(out)


def antipode_inverse(h: HopfData, x) -> NcElement:
    out: dict = {}
    for w, c in _terms(x).items():
        for w2, c2 in h.antipode_inverse_word(w).items():
            _add_into(out, w2, c * c2)
    return h.p.element(out)


def antipode_axiom_check(h: HopfData, max_degree: int = 2) -> list[tuple]:
    """Words w (degree ≤ max_degree) where S(w₍₁₎)w₍₂₎ or w₍₁₎S(w₍₂₎) differs from ε(w)."""
    gens = [x for row in h.names for x in row]
    bad = []
    for deg in range(1, max_degree + 1):
        for w in product(gens, repeat=deg):
            left: dict = {}
            right: dict = {}
            for a, b in h.sweedler(w):
                for sa, c in h.antipode_word(a).items():
                    _add_into(left, sa + b, c)
                for sb, c in h.antipode_word(b).items():
                    _add_into(right, a + sb, c)
            eps = h.counit_word(w)
            for side, terms in (("S*id", left), ("id*S", right)):
                r = h.p.normalize(terms) - eps
                if not r.is_zero():
                    bad.append((w, side, r))
    return bad


# ---------------------------------------------------------------------------
# coquasitriangular functional and its relatives


def cqt_eval(h: HopfData, x, y) -> Scalar:
    """ℛ(x, y), bilinear in the two arguments."""
    acc = ZERO
    for w1, c1 in _terms(x).items():
        for w2, c2 in _terms(y).items():
            v = h.cqt_words(w1, w2)
            if v:
                acc = acc + c1 * c2 * v
    return acc


def _monomials(h: HopfData, max_degree: int):
    gens = [x for row in h.names for x in row]
    for deg in range(max_degree + 1):
        yield from product(gens, repeat=deg)


def cqt_welldefined_check(h: HopfData, max_degree: int = 2) -> list[tuple]:
    """Nonzero values of ℛ(relation, monomial) or ℛ(monomial, relation)."""
    bad = []
    for k, rel in enumerate(h.p.input_relations):
        for m in _monomials(h, max_degree):
            for side, v in (("left", cqt_eval(h, rel, m)), ("right", cqt_eval(h, m, rel))):
                if v:
                    bad.append((k, m, side, v))
    return bad


def v_inv(h: HopfData, a) -> Scalar:
    """𝔳⁻¹(a) = ℛ(S²a₍₁₎, a₍₂₎)."""
    acc = ZERO
    for w, c in _terms(a).items():
        for a1, a2 in h.sweedler(w):
            s1 = {}
            for x, cx in h.antipode_word(a1).items():
                for y, cy in h.antipode_word(x).items():
                    _add_into(s1, y, cx * cy)
            acc = acc + c * cqt_eval(h, s1, {a2: ONE})
    return acc


def u_functional(h: HopfData, a) -> Scalar:
    """u(a) = ℛ(a₍₂₎, Sa₍₁₎)."""
    acc = ZERO
    for w, c in _terms(a).items():
        for a1, a2 in h.sweedler(w):
            acc = acc + c * cqt_eval(h, {a2: ONE}, h.antipode_word(a1))
    return acc


def square_antipode_check(h: HopfData, functional, max_degree: int = 2) -> list[tuple]:
    """Words where S²(a₍₁₎)φ(a₍₂₎) ≠ φ(a₍₁₎)a₍₂₎, i.e. φ fails to implement S² by convolution."""
    bad = []
    for w in _monomials(h, max_degree):
        if not w:
            continue
        lhs: dict = {}
        rhs: dict = {}
        for a1, a2 in h.sweedler(w):
            f2 = functional(h, {a2: ONE})
            if f2:
                for x, cx in h.antipode_word(a1).items():
                    for y, cy in h.antipode_word(x).items():
                        _add_into(lhs, y, f2 * cx * cy)
            f1 = functional(h, {a1: ONE})
            if f1:
                _add_into(rhs, a2, f1)
        r = h.p.normalize(lhs) - h.p.element(rhs)
        if not r.is_zero():
            bad.append((w, r))
    return bad


# ---------------------------------------------------------------------------
# transmutation


def transmute_product(h: HopfData, a, b) -> NcElement:
    """a • b = a₍₂₎b₍₂₎ℛ((Sa₍₁₎)a₍₃₎, Sb₍₁₎)."""
    out: dict = {}
    for wa, ca in _terms(a).items():
        for a1, a2, a3 in h.sweedler(wa, 3):
            left = {w + a3: c for w, c in h.antipode_word(a1).items()}
            for wb, cb in _terms(b).items():
                for b1, b2 in h.sweedler(wb):
                    v = cqt_eval(h, left, h.antipode_word(b1))
                    if v:
                        _add_into(out, a2 + b2, ca * cb * v)
    return h.p.element(out)


def _bullet_eval(h: HopfData, terms: Mapping, rename: Mapping) -> NcElement:
    """Evaluate a term dict in the transmuted product, words nested to the left."""
    acc = h.p.zero()
    for w, c in terms.items():
        if not w:
            acc = acc + c
            continue
        x = h.p.element({(rename[w[0]],): ONE})
        for letter in w[1:]:
            x = transmute_product(h, x, {(rename[letter],): ONE})
        acc = acc + c * x
    return acc


def reflection_equation_check(h: HopfData) -> list[NcElement]:
    """Entries of u₂R₂₁u₁R - R₂₁u₁Ru₂ with products taken in the transmuted algebra."""
    n = h.n
    u = h.names
    Rm, R21 = _OpMatrix.scalar(h.R), _OpMatrix.scalar(h.R.r21())
    u1, u2 = _OpMatrix.leg1(u, n), _OpMatrix.leg2(u, n)
    diff = (u2 @ R21 @ u1 @ Rm) - (R21 @ u1 @ Rm @ u2)
    ident = {x: x for row in u for x in row}
    out = []
    for terms in diff.nonzero():
        r = _bullet_eval(h, terms, ident)
        if not r.is_zero():
            out.append(r)
    return out


def transmuted_reflection_check(h: HopfData) -> list[tuple[int, NcElement]]:
    """Each braided-matrix relation, with u^a_b ↦ t^a_b and products •, normalizes to zero."""
    refl = reflection_relations(h.R)
    ren = {reflection_names(h.n)[i][j]: h.names[i][j] for i in range(h.n) for j in range(h.n)}
    out = []
    for k, rel in enumerate(refl.input_relations):
        r = _bullet_eval(h, rel, ren)
        if not r.is_zero():
            out.append((k, r))
    return out


def transmuted_counit_check(h: HopfData, words: Iterable[tuple[tuple, tuple]]) -> list[tuple]:
    """Pairs (a, b) where ε(a • b) ≠ ε(a)ε(b)."""
    bad = []
    for a, b in words:
        v = counit(h, transmute_product(h, {a: ONE}, {b: ONE}))
        if v != h.counit_word(a) * h.counit_word(b):
            bad.append((a, b, v))
    return bad


# ---------------------------------------------------------------------------
# the cocycle on A ⊗ A^op


def _f_inv(h: HopfData, x: tuple, y: tuple) -> Scalar:
    """F⁻¹(a⊗b, c⊗d) = ε(a)ℛ(b, cd) on pairs of words."""
    (a, b), (c, d) = x, y
    e = h.counit_word(a)
    return e * h.cqt_words(b, c + d) if e else ZERO


def _f(h: HopfData, x: tuple, y: tuple) -> Scalar:
    """F(a⊗b, c⊗d) = ε(a)ℛ(Sb, cd)."""
    (a, b), (c, d) = x, y
    e = h.counit_word(a)
    if not e:
        return ZERO
    return e * cqt_eval(h, h.antipode_word(b), {c + d: ONE})


def _tilde_sweedler(h: HopfData, x: tuple):
    a, b = x
    for a1, a2 in h.sweedler(a):
        for b1, b2 in h.sweedler(b):
            yield (a1, b1), (a2, b2)


def _tilde_mul(x: tuple, y: tuple) -> tuple:
    """(a⊗b)(c⊗d) = ac ⊗ db in A ⊗ A^op."""
    return (x[0] + y[0], y[1] + x[1])


def cocycle_check(h: HopfData, elements: Iterable[tuple], inverse: bool = False) -> list[tuple]:
    """Triples violating the dual 2-cocycle identity.

    For F: F(x₍₁₎, y₍₁₎)F(x₍₂₎y₍₂₎, z) = F(y₍₁₎, z₍₁₎)F(x, y₍₂₎z₍₂₎).
    For F⁻¹ (``inverse=True``): F⁻¹(x₍₁₎y₍₁₎, z)F⁻¹(x₍₂₎, y₍₂₎) = F⁻¹(x, y₍₁₎z₍₁₎)F⁻¹(y₍₂₎, z₍₂₎).
    ``elements`` are pairs of words (a, b) standing for a⊗b in A ⊗ A^op.
    """
    elements = list(elements)
    bad = []
    for x, y, z in product(elements, repeat=3):
        lhs = rhs = ZERO
        for x1, x2 in _tilde_sweedler(h, x):
            for y1, y2 in _tilde_sweedler(h, y):
                if inverse:
                    f = _f_inv(h, x2, y2)
                    if f:
                        lhs = lhs + _f_inv(h, _tilde_mul(x1, y1), z) * f
                else:
                    f = _f(h, x1, y1)
                    if f:
                        lhs = lhs + f * _f(h, _tilde_mul(x2, y2), z)
        for y1, y2 in _tilde_sweedler(h, y):
            for z1, z2 in _tilde_sweedler(h, z):
                if inverse:
                    f = _f_inv(h, y2, z2)
                    if f:
                        rhs = rhs + _f_inv(h, x, _tilde_mul(y1, z1)) * f
                else:
                    f = _f(h, y1, z1)
                    if f:
                        rhs = rhs + f * _f(h, x, _tilde_mul(y2, z2))
        if lhs != rhs:
            bad.append((x, y, z, lhs - rhs))
    return bad


# ---------------------------------------------------------------------------
# calculus: transmuted and cotwisted products, Θ


class CalculusTwist:
    """Products on Ω(C_q[SU₂]) deformed by transmutation and by the cotwist.

    Degree-1 elements are handled in the left basis ``Σ f·e``.  The right
    coaction and the right action on the invariant forms e_α^β are
    ``Δ_R e_α^β = e_m^n ⊗ t^m_α S t^β_n`` and
    ``e_α^β ◁ t^a_b = e_m^n R^m_α^a_c R^c_b^β_n``.
    """

    def __init__(self, h: HopfData | None = None, gp=None):
        from .dga import FORMS, omega_cqsu2

        self.h = h or cqsu2_hopf()
        self.gp = gp or omega_cqsu2()
        self.forms = FORMS
        n = self.h.n
        self.e = [[FORMS[n * i + j] for j in range(n)] for i in range(n)]
        self.eindex = {self.e[i][j]: (i, j) for i in range(n) for j in range(n)}
        self._omega: dict = {}

    # -- crossed module structure on Λ¹ --------------------------------------

    def coaction(self, form: str) -> list[tuple[str, dict]]:
        """Δ_R e_α^β as a list of (e_m^n, element of A as free terms)."""
        h = self.h
        al, be = self.eindex[form]
        out = []
        for m, nn in product(range(h.n), repeat=2):
            terms: dict = {}
            for w, c in h.antipode_word((h.name(be, nn),)).items():
                _add_into(terms, (h.name(m, al),) + w, c)
            out.append((self.e[m][nn], terms))
        return out

    def act(self, form: str, word: tuple) -> dict:
        """e ◁ w for a word of generators, as coordinates over the forms."""
        h, R = self.h, self.h.R
        vec = {form: ONE}
        for x in word:
            a, b = h.index[x]
            nxt: dict = {}
            for f, c in vec.items():
                al, be = self.eindex[f]
                for m, nn, cc in product(range(h.n), repeat=3):
                    v = R(m, al, a, cc) * R(cc, b, be, nn)
                    if v:
                        _add_into(nxt, self.e[m][nn], c * v)
            vec = nxt
        return vec

    # -- helpers --------------------------------------------------------------

    def one_form(self, pairs) -> NcElement:
        """Σ c·(word)·e from an iterable of (word, form, coefficient)."""
        out: dict = {}
        for w, f, c in pairs:
            _add_into(out, tuple(w) + (f,), c)
        return self.gp.p.element(out)

    def left_basis(self, x: NcElement) -> list[tuple[tuple, str, Scalar]]:
        out = []
        for w, c in x.terms.items():
            if not w or w[-1] not in self.eindex or any(y in self.eindex for y in w[:-1]):
                raise ValueError(f"not a 1-form in the left basis: {w}")
            out.append((w[:-1], w[-1], c))
        return out

    # -- cotwisted products on Ω(A^op)_F -------------------------------------

    def f_product(self, a, b) -> NcElement:
        """a • b = b₍₂₎a₍₁₎ℛ(a₍₂₎, (Sb₍₁₎)b₍₃₎) on functions."""
        h = self.h
        out: dict = {}
        for wa, ca in _terms(a).items():
            for a1, a2 in h.sweedler(wa):
                for wb, cb in _terms(b).items():
                    for b1, b2, b3 in h.sweedler(wb, 3):
                        right = {w + b3: c for w, c in h.antipode_word(b1).items()}
                        v = cqt_eval(h, {a2: ONE}, right)
                        if v:
                            _add_into(out, b2 + a1, ca * cb * v)
        return self.gp.p.element(out)

    def f_function_form(self, a, form: str) -> NcElement:
        """a • v = v^{(1)}a₍₁₎ℛ(a₍₂₎, v^{(2)})."""
        h = self.h
        acc = self.gp.p.zero()
        for wa, ca in _terms(a).items():
            for a1, a2 in h.sweedler(wa):
                for f, t in self.coaction(form):
                    v = cqt_eval(h, {a2: ONE}, t)
                    if v:
                        acc = acc + ca * v * self.gp.p.element({(f,) + a1: ONE})
        return acc

    def f_form_function(self, form: str, a) -> NcElement:
        """v • a = a₍₂₎v^{(1)}ℛ(v^{(2)}, (Sa₍₁₎)a₍₃₎)."""
        h = self.h
        out: dict = {}
        for wa, ca in _terms(a).items():
            for a1, a2, a3 in h.sweedler(wa, 3):
                right = {w + a3: c for w, c in h.antipode_word(a1).items()}
                for f, t in self.coaction(form):
                    v = cqt_eval(h, t, right)
                    if v:
                        _add_into(out, a2 + (f,), ca * v)
        return self.gp.p.element(out)

    def f_form_form(self, v: str, w: str) -> NcElement:
        """v • w = w^{(1)}v^{(1)}ℛ(v^{(2)}, w^{(2)})."""
        acc = self.gp.p.zero()
        for fv, tv in self.coaction(v):
            for fw, tw in self.coaction(w):
                c = cqt_eval(self.h, tv, tw)
                if c:
                    acc = acc + c * self.gp.p.element({(fw, fv): ONE})
        return acc

    def cotwist_products(self, x, y) -> NcElement:
        """Dispatch to a•v, v•a or v•w according to which arguments are forms."""
        xf, yf = isinstance(x, str) and x in self.eindex, isinstance(y, str) and y in self.eindex
        if xf and yf:
            return self.f_form_form(x, y)
        if xf:
            return self.f_form_function(x, y)
        if yf:
            return self.f_function_form(x, y)
        return self.f_product(x, y)

    # -- transmuted bimodule structure ----------------------------------------

    def t_form_function(self, form: str, a) -> NcElement:
        """v • a = a₍₂₎(v^{(1)} ◁ a₍₃₎)ℛ(v^{(2)}, Sa₍₁₎) in the transmuted calculus."""
        h = self.h
        out: dict = {}
        for wa, ca in _terms(a).items():
            for a1, a2, a3 in h.sweedler(wa, 3):
                sa1 = h.antipode_word(a1)
                for f, t in self.coaction(form):
                    v = cqt_eval(h, t, sa1)
                    if not v:
                        continue
                    for g, cg in self.act(f, a3).items():
                        _add_into(out, a2 + (g,), ca * v * cg)
        return self.gp.p.element(out)

    # -- Maurer-Cartan form and Θ ---------------------------------------------

    def omega(self, word: tuple) -> dict:
        """ω(w) = S(w₍₁₎)dw₍₂₎ as constant coordinates over the forms."""
        if word in self._omega:
            return self._omega[word]
        h, gp = self.h, self.gp
        acc = gp.p.zero()
        for a1, a2 in h.sweedler(word):
            if not a2:
                continue
            acc = acc + gp.p.element(h.antipode_word(a1)) * gp.d(gp.p.element({a2: ONE}))
        vec: dict = {}
        for w, f, c in self.left_basis(acc) if not acc.is_zero() else []:
            if w:
                raise ValueError(f"ω{word} is not left-invariant")
            _add_into(vec, f, c)
        self._omega[word] = vec
        return vec

    def omega_terms(self, terms: Mapping) -> dict:
        vec: dict = {}
        for w, c in terms.items():
            for f, v in self.omega(w).items():
                _add_into(vec, f, c * v)
        return vec

    def theta_omega(self, word: tuple) -> dict:
        """Θ(ω(a)) = -𝔳⁻¹(a₍₁₎)ℛ(a₍₂₎, Sa₍₄₎)ω(S⁻¹a₍₃₎)."""
        h = self.h
        vec: dict = {}
        for a1, a2, a3, a4 in h.sweedler(word, 4):
            c = v_inv(h, {a1: ONE})
            if not c:
                continue
            c = c * cqt_eval(h, {a2: ONE}, h.antipode_word(a4))
            if not c:
                continue
            for f, v in self.omega_terms(h.antipode_inverse_word(a3)).items():
                _add_into(vec, f, -c * v)
        return vec

    def theta_inverse_omega(self, word: tuple) -> dict:
        """Θ⁻¹(ω(a)) = -ω(Sa₍₂₎)u(a₍₃₎)ℛ(a₍₄₎, a₍₁₎)."""
        h = self.h
        vec: dict = {}
        for a1, a2, a3, a4 in h.sweedler(word, 4):
            c = u_functional(h, {a3: ONE})
            if not c:
                continue
            c = c * h.cqt_words(a4, a1)
            if not c:
                continue
            for f, v in self.omega_terms(h.antipode_word(a2)).items():
                _add_into(vec, f, -c * v)
        return vec

    def omega_preimages(self) -> dict:
        """For each form e a term dict x with ω(x) = e (from degree ≤ 2 words)."""
        h = self.h
        gens = [x for row in h.names for x in row]
        cands = [(g,) for g in gens] + [(a, b) for a in gens for b in gens]
        chosen, rows = [], []
        for w in cands:
            vec = self.omega(w)
            row = [vec.get(f, ZERO) for f in self.forms]
            if rank(rows + [row]) > len(rows):
                rows.append(row)
                chosen.append(w)
            if len(rows) == len(self.forms):
                break
        if len(rows) < len(self.forms):
            raise ValueError("ω does not span the invariant forms")
        # rows[k] holds ω(chosen[k]); e_j = Σ_k (rows⁻¹)[j][k] ω(chosen[k])
        inv = mat_inv(rows)
        out = {}
        for j, f in enumerate(self.forms):
            out[f] = {chosen[k]: inv[j][k] for k in range(len(chosen)) if inv[j][k]}
        return out

    def theta_matrix(self, inverse: bool = False) -> list[list[Scalar]]:
        """Θ (or the Θ⁻¹ formula) on Λ¹: row j holds the coordinates of the image of e_j."""
        pre = self.omega_preimages()
        fn = self.theta_inverse_omega if inverse else self.theta_omega
        rows = []
        for f in self.forms:
            vec: dict = {}
            for w, c in pre[f].items():
                for g, v in fn(w).items():
                    _add_into(vec, g, c * v)
            rows.append([vec.get(g, ZERO) for g in self.forms])
        return rows

    def theta_roundtrip_check(self, max_degree: int = 2) -> list[tuple]:
        """Words a (1 ≤ deg ≤ max_degree) where Θ⁻¹(Θ(ω(a))) ≠ ω(a), Θ⁻¹ applied by its own formula."""
        h = self.h
        pre = self.omega_preimages()
        bad = []
        for w in _monomials(h, max_degree):
            if not w:
                continue
            once = self.theta_omega(w)
            back: dict = {}
            for f, c in once.items():
                for x, cx in pre[f].items():
                    for g, v in self.theta_inverse_omega(x).items():
                        _add_into(back, g, c * cx * v)
            target = self.omega(w)
            diff = dict(back)
            for g, v in target.items():
                _add_into(diff, g, -v)
            if diff:
                bad.append((w, diff))
        return bad

    def theta_form(self, form: str) -> dict:
        """Θ(e) as coordinates over the forms."""
        row = self.theta_matrix()[self.forms.index(form)]
        return {g: c for g, c in zip(self.forms, row) if c}

    def theta_one_form(self, x: NcElement) -> NcElement:
        """Θ(Σ f·e) = Σ f • Θ(e) (Θ is a left-module map)."""
        images = {f: self.theta_form(f) for f in self.forms}
        acc = self.gp.p.zero()
        for w, f, c in self.left_basis(x):
            for g, v in images[f].items():
                acc = acc + c * v * self.f_function_form({w: ONE}, g)
        return acc

    # -- checks ---------------------------------------------------------------

    def _eq9_residuals(self, left, right) -> list[tuple]:
        h, R = self.h, self.h.R
        Ri = R.inverse()
        e, t = self.e, h.names
        bad = []
        for al, be, a, b in product(range(h.n), repeat=4):
            acc = self.gp.p.zero()
            for m, nn, d, c in product(range(h.n), repeat=4):
                x = R(m, al, a, d) * Ri(be, nn, d, c)
                if x:
                    acc = acc + x * left(e[m][nn], t[c][b])
                y = R(m, al, c, d) * R(d, b, be, nn)
                if y:
                    acc = acc - y * right(t[a][c], e[m][nn])
            if not acc.is_zero():
                bad.append(((al, be, a, b), acc))
        return bad

    def eq9_transmuted_check(self) -> list[tuple]:
        """The R-matrix bimodule relations, evaluated with the transmuted products."""
        return self._eq9_residuals(
            lambda f, g: self.t_form_function(f, {(g,): ONE}),
            lambda g, f: self.gp.p.word(g, f),
        )

    def eq9_cotwist_check(self) -> list[tuple]:
        """The same relations carried by Θ into the cotwisted calculus: Θ(e)•t versus t•Θ(e)."""
        images = {f: self.theta_form(f) for f in self.forms}

        def left(f, g):
            return sum((c * self.f_form_function(x, {(g,): ONE}) for x, c in images[f].items()), self.gp.p.zero())

        def right(g, f):
            return sum((c * self.f_function_form({(g,): ONE}, x) for x, c in images[f].items()), self.gp.p.zero())

        return self._eq9_residuals(left, right)

    def theta_right_module_check(self) -> list[tuple]:
        """Pairs (e, t) with Θ(e • t) ≠ Θ(e) • t (transmuted product on the left, cotwisted on the right)."""
        bad = []
        gens = [x for row in self.h.names for x in row]
        for f in self.forms:
            th = self.theta_form(f)
            for g in gens:
                lhs = self.theta_one_form(self.t_form_function(f, {(g,): ONE}))
                rhs = sum((c * self.f_form_function(x, {(g,): ONE}) for x, c in th.items()), self.gp.p.zero())
                if not (lhs - rhs).is_zero():
                    bad.append((f, g, lhs - rhs))
        return bad

    def product_agreement_check(self) -> list[tuple]:
        """Generator pairs where the transmuted and cotwisted function products differ."""
        gens = [x for row in self.h.names for x in row]
        bad = []
        for x, y in product(gens, repeat=2):
            tr = self.gp.p.element(transmute_product(self.h, x, y).terms)
            f = self.f_product({(x,): ONE}, {(y,): ONE})
            if not (tr - f).is_zero():
                bad.append((x, y, tr - f))
        return bad

    def differential_check(self) -> list[tuple]:
        """Generators where da ≠ a₍₁₎ • Θ(ω(a₍₂₎)) in the cotwisted calculus."""
        h = self.h
        bad = []
        for x in [y for row in h.names for y in row]:
            acc = self.gp.p.zero()
            for a1, a2 in h.sweedler((x,)):
                for f, c in self.theta_omega(a2).items():
                    acc = acc + c * self.f_function_form({a1: ONE}, f)
            r = acc - self.gp.d(self.gp.gen(x))
            if not r.is_zero():
                bad.append((x, r))
        return bad

    def inner_check(self) -> tuple[Scalar | None, list]:
        """Find c with θ•a - a•θ = c·da for all generators (θ = Σ e_α^α, cotwisted products)."""
        theta = [self.e[i][i] for i in range(self.h.n)]
        ratio = None
        bad = []
        for x in [y for row in self.h.names for y in row]:
            com = sum(
                (self.f_form_function(f, {(x,): ONE}) - self.f_function_form({(x,): ONE}, f) for f in theta),
                self.gp.p.zero(),
            )
            dx = self.gp.d(self.gp.gen(x))
            if ratio is None and not dx.is_zero():
                w, c = next(iter(dx.terms.items()))
                ratio = com.coefficient(w) / c
            if ratio is None or not (com - ratio * dx).is_zero():
                bad.append(x)
        return ratio, bad
