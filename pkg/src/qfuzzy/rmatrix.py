"""R-matrices and the relation families generated from them.

Index convention: ``R[i, j, k, l]`` is ``R^i_j^k_l``, the entry of the n²×n²
matrix at row ``(i, k)`` and column ``(j, l)``.  Indices are 0-based in the
API and 1-based in R-matrix files.  The standard SL₂ solution in Hecke
normalization has ``R^1_1^1_1 = R^2_2^2_2 = q``, ``R^1_1^2_2 = R^2_2^1_1 = 1``
and ``R^1_2^2_1 = q - q^-1``; the quantum-group normalization is q^{-1/2}
times that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from .freealg import NcElement, Presentation, _add_into
from .linalg import SingularMatrixError, mat_inv, solve_words
from .scalars import LAM, ONE, Q, QH, ZERO, Scalar

__all__ = [
    "RMatrix",
    "standard_r",
    "identity_r",
    "twisted_r",
    "gl11_r",
    "shipped_rmatrices",
    "YBEResult",
    "ybe_check",
    "second_inverse",
    "second_inverse_residuals",
    "u_matrix",
    "normalized_u",
    "real_type_check",
    "is_hermitian",
    "frt_names",
    "reflection_names",
    "form_names",
    "frt_relations",
    "reflection_relations",
    "braided_sphere_relations",
    "eq9_relations",
    "eq9_bimodule_rules",
    "frt_calculus_relations",
    "frt_calculus_rules",
    "graded_alphabet",
]

NORMALIZATIONS = ("hecke", "quantum-group", None)


class RMatrix:
    """An n²×n² matrix of Scalars with a normalization tag."""

    def __init__(self, n: int, entries: Mapping, normalization: str | None = "hecke", name: str = "R"):
        if normalization not in NORMALIZATIONS:
            raise ValueError(f"unknown normalization {normalization!r}")
        self.n = n
        self.normalization = normalization
        self.name = name
        self.entries: dict[tuple, Scalar] = {}
        for key, v in entries.items():
            if len(key) != 4 or not all(0 <= x < n for x in key):
                raise ValueError(f"bad R index {key}")
            v = Scalar.coerce(v)
            if v:
                self.entries[tuple(key)] = v

    def __call__(self, i, j, k, l) -> Scalar:
        return self.entries.get((i, j, k, l), ZERO)

    __getitem__ = lambda self, key: self(*key)  # noqa: E731

    def indices(self):
        return product(range(self.n), repeat=4)

    @classmethod
    def from_matrix(cls, rows, normalization="hecke", name="R") -> "RMatrix":
        n2 = len(rows)
        n = int(round(n2**0.5))
        if n * n != n2:
            raise ValueError("matrix size is not a square")
        ent = {}
        for i, j, k, l in product(range(n), repeat=4):
            ent[(i, j, k, l)] = Scalar.coerce(rows[i * n + k][j * n + l])
        return cls(n, ent, normalization, name)

    def matrix(self) -> list[list[Scalar]]:
        n = self.n
        m = [[ZERO] * (n * n) for _ in range(n * n)]
        for (i, j, k, l), v in self.entries.items():
            m[i * n + k][j * n + l] = v
        return m

    def scaled(self, c, normalization=None, name=None) -> "RMatrix":
        c = Scalar.coerce(c)
        return RMatrix(self.n, {k: v * c for k, v in self.entries.items()}, normalization, name or self.name)

    def quantum_group(self) -> "RMatrix":
        if self.normalization == "quantum-group":
            return self
        if self.normalization == "hecke":
            return self.scaled(QH.inverse(), "quantum-group", self.name)
        raise ValueError("normalization of this R is unknown; tag it before converting")

    def hecke(self) -> "RMatrix":
        if self.normalization == "hecke":
            return self
        if self.normalization == "quantum-group":
            return self.scaled(QH, "hecke", self.name)
        raise ValueError("normalization of this R is unknown")

    def inverse(self) -> "RMatrix":
        inv = mat_inv(self.matrix())
        return RMatrix.from_matrix(inv, None, self.name + "^-1")

    def r21(self) -> "RMatrix":
        return RMatrix(self.n, {(k, l, i, j): v for (i, j, k, l), v in self.entries.items()}, self.normalization)

    def t2(self) -> "RMatrix":
        return RMatrix(self.n, {(i, j, l, k): v for (i, j, k, l), v in self.entries.items()}, None)

    def with_entry(self, key, value) -> "RMatrix":
        ent = dict(self.entries)
        ent[tuple(key)] = Scalar.coerce(value)
        return RMatrix(self.n, ent, self.normalization, self.name + "'")

    def specialize(self, assignment) -> "RMatrix":
        return RMatrix(self.n, {k: v.specialize(assignment) for k, v in self.entries.items()}, self.normalization, self.name)

    def __eq__(self, other):
        return isinstance(other, RMatrix) and self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, frozenset(self.entries.items())))

    def __repr__(self):
        return f"RMatrix({self.name}, n={self.n}, {self.normalization})"


# ---------------------------------------------------------------------------
# shipped instances


def standard_r(normalization: str = "hecke") -> RMatrix:
    """The SL₂ solution."""
    e = {(0, 0, 0, 0): Q, (1, 1, 1, 1): Q, (0, 0, 1, 1): ONE, (1, 1, 0, 0): ONE, (0, 1, 1, 0): Q - Q.inverse()}
    r = RMatrix(2, e, "hecke", "standard")
    return r if normalization == "hecke" else r.quantum_group()


def identity_r(n: int = 2) -> RMatrix:
    return RMatrix(n, {(i, i, k, k): ONE for i in range(n) for k in range(n)}, None, "identity")


TWIST_PHASE = Scalar.gaussian(3, 4) / 5


def twisted_r(phase=TWIST_PHASE) -> RMatrix:
    """Standard R with its middle diagonal entries multiplied by a phase and its inverse.

    The phase must have unit modulus for the result to be of real type.
    """
    phase = Scalar.coerce(phase)
    e = {
        (0, 0, 0, 0): Q,
        (1, 1, 1, 1): Q,
        (0, 0, 1, 1): phase,
        (1, 1, 0, 0): phase.inverse(),
        (0, 1, 1, 0): Q - Q.inverse(),
    }
    return RMatrix(2, e, "hecke", "twisted")


def gl11_r() -> RMatrix:
    """The Hecke solution of GL(1|1) type (last diagonal entry -q^-1)."""
    e = {
        (0, 0, 0, 0): Q,
        (1, 1, 1, 1): -Q.inverse(),
        (0, 0, 1, 1): ONE,
        (1, 1, 0, 0): ONE,
        (0, 1, 1, 0): Q - Q.inverse(),
    }
    return RMatrix(2, e, "hecke", "gl11")


def shipped_rmatrices() -> dict[str, RMatrix]:
    return {"standard": standard_r(), "twisted": twisted_r(), "gl11": gl11_r()}


# ---------------------------------------------------------------------------
# checks


@dataclass
class YBEResult:
    ok: bool
    residual: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _embed(R: RMatrix, slots: tuple[int, int]) -> dict:
    """Sparse R_{ab} on V⊗V⊗V as {(row, col): Scalar} with multi-indices."""
    n = R.n
    out = {}
    a, b = slots
    third = ({0, 1, 2} - {a, b}).pop()
    for (i, j, k, l), v in R.entries.items():
        for m in range(n):
            row = [None] * 3
            col = [None] * 3
            row[a], col[a], row[b], col[b] = i, j, k, l
            row[third] = col[third] = m
            out[(tuple(row), tuple(col))] = v
    return out


def _sparse_mul(x: dict, y: dict) -> dict:
    by_row: dict = {}
    for (r, c), v in y.items():
        by_row.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r, k), v in x.items():
        for c, w in by_row.get(k, ()):
            key = (r, c)
            s = out.get(key, ZERO) + v * w
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def ybe_check(R: RMatrix) -> YBEResult:
    """R12 R13 R23 = R23 R13 R12 entrywise."""
    r12, r13, r23 = _embed(R, (0, 1)), _embed(R, (0, 2)), _embed(R, (1, 2))
    lhs = _sparse_mul(_sparse_mul(r12, r13), r23)
    rhs = _sparse_mul(_sparse_mul(r23, r13), r12)
    res = {}
    for key in set(lhs) | set(rhs):
        d = lhs.get(key, ZERO) - rhs.get(key, ZERO)
        if d:
            res[key] = d
    return YBEResult(not res, res)


def second_inverse(R: RMatrix) -> RMatrix:
    """R̃ = ((R^{t2})^{-1})^{t2}."""
    try:
        inv = mat_inv(R.t2().matrix())
    except SingularMatrixError as exc:
        raise SingularMatrixError("R^{t2} is singular; no second inverse") from exc
    return RMatrix.from_matrix(inv, None, "R~").t2()


def second_inverse_residuals(R: RMatrix, Rt: RMatrix | None = None) -> list:
    """Nonzero entries of the defining contractions of the second inverse.

    Checks ``R̃^i_a^b_l R^a_j^k_b = δ^i_j δ^k_l`` and
    ``R^i_a^b_l R̃^a_j^k_b = δ^i_j δ^k_l`` for all free indices, and that the
    second inverse of R̃ is R again.
    """
    Rt = Rt or second_inverse(R)
    n = R.n
    bad = []
    for i, j, k, l in product(range(n), repeat=4):
        want = ONE if (i == j and k == l) else ZERO
        s1 = sum((Rt(i, a, b, l) * R(a, j, k, b) for a in range(n) for b in range(n)), ZERO)
        s2 = sum((R(i, a, b, l) * Rt(a, j, k, b) for a in range(n) for b in range(n)), ZERO)
        if s1 != want:
            bad.append(("R~R", (i, j, k, l), s1 - want))
        if s2 != want:
            bad.append(("RR~", (i, j, k, l), s2 - want))
    back = second_inverse(Rt)
    for key in set(back.entries) | set(R.entries):
        if back[key] != R[key]:
            bad.append(("involution", key, back[key] - R[key]))
    return bad


def u_matrix(R: RMatrix, contraction: str = "trace") -> list[list[Scalar]]:
    """The braided-trace metric, ``trace(φ) = Σ φ^j_i u^i_j``.

    ``contraction="trace"`` evaluates ev∘(id⊗φ)∘Ψ_{V,V*}∘coev with
    Ψ_{V,V*}(e_i⊗f^j) = R̃^a_i^j_b f^b⊗e_a, giving ``u^i_j = R̃^i_a^a_j``.
    ``contraction="literal"`` uses the index placement ``R̃^a_j^i_a``; for the
    standard R it produces the q⁻² twisted trace and is kept as a control.
    """
    Rt = second_inverse(R)
    n = R.n
    if contraction == "trace":
        return [[sum((Rt(i, a, a, j) for a in range(n)), ZERO) for j in range(n)] for i in range(n)]
    if contraction == "literal":
        return [[sum((Rt(a, j, i, a) for a in range(n)), ZERO) for j in range(n)] for i in range(n)]
    raise ValueError(f"unknown contraction {contraction!r}")


def normalized_u(R: RMatrix, contraction: str = "trace") -> list[list[Scalar]]:
    """u scaled so that u^1_1 = 1 (the braided trace then starts with the 1-1 entry)."""
    u = u_matrix(R, contraction)
    c = u[0][0]
    if not c:
        raise SingularMatrixError("u^1_1 vanishes; cannot normalize the braided trace")
    inv = c.inverse()
    return [[x * inv for x in row] for row in u]


def real_type_check(R: RMatrix) -> bool:
    """conj(R^i_j^k_l) = R^l_k^j_i for all indices."""
    return all(R(i, j, k, l).conjugate() == R(l, k, j, i) for i, j, k, l in R.indices())


def is_hermitian(m) -> bool:
    n = len(m)
    return all(m[i][j].conjugate() == m[j][i] for i in range(n) for j in range(n))


# ---------------------------------------------------------------------------
# alphabets


def frt_names(n: int) -> list[list[str]]:
    if n == 2:
        return [["a", "b"], ["c", "d"]]
    return [[f"t{i + 1}{j + 1}" for j in range(n)] for i in range(n)]


def reflection_names(n: int) -> list[list[str]]:
    if n == 2:
        return [["α", "β"], ["γ", "δ"]]
    return [[f"u{i + 1}{j + 1}" for j in range(n)] for i in range(n)]


def form_names(n: int) -> list[list[str]]:
    """e_α^β with α the row; for n = 2 these are e_a, e_b, e_c, e_d."""
    if n == 2:
        return [["e_a", "e_b"], ["e_c", "e_d"]]
    return [[f"e{i + 1}{j + 1}" for j in range(n)] for i in range(n)]


def graded_alphabet(functions: Iterable[str], forms: Iterable[str], name: str = "free") -> Presentation:
    functions, forms = list(functions), list(forms)
    return Presentation(name, functions + forms, degrees={f: 1 for f in forms})


def _flat(names):
    return [x for row in names for x in row]


# ---------------------------------------------------------------------------
# relation generators


def _frt_terms(R: RMatrix, t) -> list[dict]:
    n = R.n
    rels = []
    for i, j, k, l in product(range(n), repeat=4):
        r: dict = {}
        for a, b in product(range(n), repeat=2):
            c = R(i, a, k, b)
            if c:
                _add_into(r, (t[a][j], t[b][l]), c)
            c = R(a, j, b, l)
            if c:
                _add_into(r, (t[k][b], t[i][a]), -c)
        if r:
            rels.append(r)
    return rels


def frt_relations(R: RMatrix, with_determinant: bool = False, det_coefficient=None, name=None) -> Presentation:
    """The quantum matrix algebra R t1 t2 = t2 t1 R on the generators t^a_b.

    With ``with_determinant`` (n = 2) the rule ``ad - c0*bc = 1`` is added;
    ``c0`` defaults to the value among q^{-1}, q for which ``ad - c0*bc`` is
    central in the FRT bialgebra.
    """
    n = R.n
    t = frt_names(n)
    rels = _frt_terms(R, t)
    base = Presentation(name or f"frt({R.name})", _flat(t), rels)
    if not with_determinant:
        return base
    if n != 2:
        raise ValueError("the determinant rule is implemented for n = 2")
    if det_coefficient is None:
        det_coefficient = quantum_determinant_coefficient(base)
    c0 = Scalar.coerce(det_coefficient)
    det = {("a", "d"): ONE, ("b", "c"): -c0, (): -ONE}
    p = Presentation(name or f"frt({R.name})/det", _flat(t), rels + [det], meta={"det_coefficient": c0})
    return p


def quantum_determinant_coefficient(frt: Presentation) -> Scalar:
    """The c0 in ``ad - c0*bc`` that makes it central in the 2×2 FRT bialgebra."""
    from .freealg import centrality_check

    for c0 in (Q.inverse(), Q):
        g = frt.gens()
        det = g["a"] * g["d"] - c0 * g["b"] * g["c"]
        if all(r.is_zero() for r in centrality_check(frt, det)):
            return c0
    raise ValueError("neither ad - q^-1 bc nor ad - q bc is central for this R")


class _OpMatrix:
    """n²×n² matrices whose entries are free-algebra term dicts (order kept)."""

    def __init__(self, n, entries=None):
        self.n = n
        self.e: dict = entries or {}

    @classmethod
    def scalar(cls, R: RMatrix):
        n = R.n
        return cls(n, {((i, k), (j, l)): {(): v} for (i, j, k, l), v in R.entries.items()})

    @classmethod
    def leg1(cls, u, n):
        return cls(n, {((i, k), (j, k)): {(u[i][j],): ONE} for i in range(n) for j in range(n) for k in range(n)})

    @classmethod
    def leg2(cls, u, n):
        return cls(n, {((i, k), (i, l)): {(u[k][l],): ONE} for i in range(n) for k in range(n) for l in range(n)})

    def __matmul__(self, other):
        by_row: dict = {}
        for (r, c), v in other.e.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict = {}
        for (r, k), x in self.e.items():
            for c, y in by_row.get(k, ()):
                acc = out.setdefault((r, c), {})
                for w1, a in x.items():
                    for w2, b in y.items():
                        _add_into(acc, w1 + w2, a * b)
        return _OpMatrix(self.n, out)

    def __sub__(self, other):
        out = {k: dict(v) for k, v in self.e.items()}
        for k, v in other.e.items():
            acc = out.setdefault(k, {})
            for w, c in v.items():
                _add_into(acc, w, -c)
        return _OpMatrix(self.n, out)

    def nonzero(self):
        return [v for k, v in sorted(self.e.items()) if v]


def reflection_relations(R: RMatrix, name=None) -> Presentation:
    """Braided matrices: u2 R21 u1 R = R21 u1 R u2 on the generators u^a_b."""
    n = R.n
    u = reflection_names(n)
    Rm, R21 = _OpMatrix.scalar(R), _OpMatrix.scalar(R.r21())
    u1, u2 = _OpMatrix.leg1(u, n), _OpMatrix.leg2(u, n)
    diff = (u2 @ R21 @ u1 @ Rm) - (R21 @ u1 @ Rm @ u2)
    rels = diff.nonzero()
    star = None
    if n == 2 and real_type_check(R):
        star = {"α": "α", "δ": "δ", "β": "γ"}
    return Presentation(name or f"reflection({R.name})", _flat(u), rels, star=star)


def braided_sphere_relations(R: RMatrix, lam=LAM, name=None, contraction: str = "trace"):
    """Entries of e² - e for e = (x, b; b†, a) with trace(e u) = 1 + λ solved for x.

    Returns ``(ideal generators, presentation on a < b < b†)``; u is
    normalized so that u^1_1 = 1.
    """
    if R.n != 2:
        raise ValueError("braided spheres are implemented for n = 2")
    lam = Scalar.coerce(lam)
    u = normalized_u(R, contraction)
    # trace(e u) = x u11 + b u21 + b† u12 + a u22 with u11 = 1
    x = {(): ONE + lam}
    _add_into(x, ("a",), -u[1][1])
    _add_into(x, ("b",), -u[1][0])
    _add_into(x, ("b†",), -u[0][1])
    e = [[x, {("b",): ONE}], [{("b†",): ONE}, {("a",): ONE}]]

    def mul(p, q_):
        out: dict = {}
        for w1, c1 in p.items():
            for w2, c2 in q_.items():
                _add_into(out, w1 + w2, c1 * c2)
        return out

    rels = []
    for i in range(2):
        for j in range(2):
            acc: dict = {}
            for k in range(2):
                for w, c in mul(e[i][k], e[k][j]).items():
                    _add_into(acc, w, c)
            for w, c in e[i][j].items():
                _add_into(acc, w, -c)
            rels.append(acc)
    p = Presentation(
        name or f"sphere({R.name})",
        ["a", "b", "b†"],
        [r for r in rels if r],
        star={"a": "a", "b": "b†"},
        meta={"u": u, "x": x},
    )
    free = Presentation("free", ["a", "b", "b†"])
    return [NcElement(free, r) for r in rels], p


def eq9_relations(R: RMatrix) -> list[tuple[tuple, NcElement]]:
    """Bimodule relations between e_α^β and u^a_b, LHS minus RHS.

    ``R^m_α^a_d (R^-1)^β_n^d_c e_m^n u^c_b = u^a_c e_m^n R^m_α^c_d R^d_b^β_n``,
    indexed by ``(α, β, a, b)``.  R is used as given, so the caller chooses
    the normalization.
    """
    n = R.n
    u, e = reflection_names(n), form_names(n)
    Ri = R.inverse()
    free = graded_alphabet(_flat(u), _flat(e))
    out = []
    for al, be, a, b in product(range(n), repeat=4):
        r: dict = {}
        for m, nn, d, c in product(range(n), repeat=4):
            x = R(m, al, a, d) * Ri(be, nn, d, c)
            if x:
                _add_into(r, (e[m][nn], u[c][b]), x)
            y = R(m, al, c, d) * R(d, b, be, nn)
            if y:
                _add_into(r, (u[a][c], e[m][nn]), -y)
        out.append(((al, be, a, b), NcElement(free, r)))
    return out


def _solve_form_function(relations: Iterable[dict], forms, functions) -> dict:
    """Express every word (form, function) through words (function, form)."""
    unknowns = [(f, g) for f in forms for g in functions]
    eqs = []
    for r in relations:
        coeffs, rhs = {}, {}
        for w, c in r.items():
            if w in coeffs or (len(w) == 2 and w[0] in forms):
                coeffs[w] = c
            else:
                rhs[w] = -c
        eqs.append((coeffs, rhs))
    return solve_words(eqs, unknowns)


def eq9_bimodule_rules(R: RMatrix) -> dict:
    """Rules ``e_m^n u^c_b -> sum u·e`` solved from :func:`eq9_relations`."""
    n = R.n
    rels = [x.terms for _, x in eq9_relations(R)]
    return _solve_form_function(rels, _flat(form_names(n)), _flat(reflection_names(n)))


def frt_calculus_relations(R: RMatrix) -> list[tuple[tuple, NcElement]]:
    """``e_α^β t^a_b - t^a_c e_m^n R^m_α^c_d R^d_b^β_n`` indexed by ``(α, β, a, b)``."""
    n = R.n
    t, e = frt_names(n), form_names(n)
    free = graded_alphabet(_flat(t), _flat(e))
    out = []
    for al, be, a, b in product(range(n), repeat=4):
        r = {(e[al][be], t[a][b]): ONE}
        for c, m, nn, d in product(range(n), repeat=4):
            y = R(m, al, c, d) * R(d, b, be, nn)
            if y:
                _add_into(r, (t[a][c], e[m][nn]), -y)
        out.append(((al, be, a, b), NcElement(free, r)))
    return out


def frt_calculus_rules(R: RMatrix) -> dict:
    n = R.n
    rels = [x.terms for _, x in frt_calculus_relations(R)]
    return _solve_form_function(rels, _flat(form_names(n)), _flat(frt_names(n)))
