"""Noncommutative polynomials and presented (graded) *-algebras.

A :class:`Presentation` is a finite rewrite system on words in an ordered
generator alphabet.  Every relation is oriented so that its greatest word (in
a fixed monomial well-order) becomes the rule head; the normal form of an
element is obtained by exhaustive leftmost rewriting.  Equality of elements is
equality of normal forms, which is only meaningful for confluent systems, so
:meth:`Presentation.check_local_confluence` is part of the public surface.

Word order.  Words are compared by a key ``(number of odd letters, skeleton,
length, ranks)``.  The skeleton lists, for every letter of positive degree
read from the right, how many degree-0 letters follow it.  Rewriting a 1-form
past a function therefore always decreases the key, even when the function
side grows in length, and the order is compatible with concatenation.  For
ungraded presentations the key reduces to degree-lexicographic order.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .scalars import ONE, ZERO, Scalar

__all__ = [
    "Word",
    "NcElement",
    "Presentation",
    "RewriteBudgetExceeded",
    "AlphabetError",
    "OrientationError",
    "InconsistentPresentation",
    "CriticalPairFailure",
    "hom_check",
    "centrality_check",
    "substitute",
]

Word = tuple  # tuple[str, ...]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_STEP_BUDGET = int(os.environ.get("QFUZZY_STEP_BUDGET", "2000000"))


class RewriteBudgetExceeded(RuntimeError):
    def __init__(self, word):
        super().__init__(f"rewrite step budget exhausted while normalizing {'*'.join(word) or '1'}")
        self.word = word


class AlphabetError(ValueError):
    pass


class OrientationError(ValueError):
    pass


class InconsistentPresentation(OrientationError):
    """The relations imply 1 = 0."""


def _add_into(acc: dict, word, coeff: Scalar) -> None:
    cur = acc.get(word)
    if cur is None:
        if coeff:
            acc[word] = coeff
    else:
        s = cur + coeff
        if s:
            acc[word] = s
        else:
            del acc[word]


class NcElement:
    """Element of a presented algebra, always held in normal form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "Presentation", terms: dict):
        self.alg = alg
        self.terms = terms

    # arithmetic -----------------------------------------------------------
    def _lift(self, other) -> "NcElement":
        if isinstance(other, NcElement):
            if other.alg is not self.alg:
                raise ValueError(f"elements of different presentations ({self.alg.name}, {other.alg.name})")
            return other
        return self.alg.scalar(Scalar.coerce(other))

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        acc = dict(self.terms)
        for w, c in o.terms.items():
            _add_into(acc, w, c)
        return NcElement(self.alg, acc)

    __radd__ = __add__

    def __neg__(self):
        return NcElement(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, NcElement):
            return self.alg.multiply(self, self._lift(other))
        try:
            s = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not s:
            return self.alg.zero()
        return NcElement(self.alg, {w: c * s for w, c in self.terms.items()})

    def __rmul__(self, other):
        try:
            s = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * s

    def __truediv__(self, other):
        s = Scalar.coerce(other)
        return self * s.inverse()

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of algebra elements are not defined; use the inverse generator")
        result = self.alg.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, word) -> Scalar:
        if isinstance(word, str):
            word = tuple(word.split("*")) if word != "1" else ()
        return self.terms.get(tuple(word), ZERO)

    def scalar_part(self) -> Scalar:
        return self.terms.get((), ZERO)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def degree_parts(self) -> dict[int, "NcElement"]:
        parts: dict[int, dict] = {}
        for w, c in self.terms.items():
            parts.setdefault(self.alg.word_degree(w), {})[w] = c
        return {d: NcElement(self.alg, t) for d, t in parts.items()}

    def degree(self) -> int:
        degs = {self.alg.word_degree(w) for w in self.terms}
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else 0

    def star(self) -> "NcElement":
        return self.alg.star(self)

    def map_coefficients(self, f: Callable[[Scalar], Scalar]) -> "NcElement":
        acc: dict = {}
        for w, c in self.terms.items():
            _add_into(acc, w, f(c))
        return NcElement(self.alg, acc)

    def specialize(self, assignment) -> "NcElement":
        return self.map_coefficients(lambda c: c.specialize(assignment))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self.alg.word_key(kv[0]), reverse=True)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{self.alg.name}: {self}>"


def format_word(word) -> str:
    return "*".join(word) if word else "1"


def format_element(x: NcElement) -> str:
    if not x.terms:
        return "0"
    out = []
    for idx, (w, c) in enumerate(x.sorted_terms()):
        cs = str(c)
        neg = False
        if cs.startswith("-") and not c.needs_parens():
            neg, cs = True, cs[1:]
        if not w:
            body = f"({cs})" if idx and c.needs_parens() else cs
        elif cs == "1":
            body = format_word(w)
        else:
            body = (f"({cs})" if c.needs_parens() else cs) + "*" + format_word(w)
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


@dataclass
class CriticalPairFailure:
    word: tuple
    rule_a: tuple
    rule_b: tuple
    difference: NcElement

    def __str__(self):
        return (
            f"ambiguity {format_word(self.word)} between heads {format_word(self.rule_a)} and "
            f"{format_word(self.rule_b)}: {self.difference}"
        )


class Presentation:
    """Generators, total order, oriented rewrite rules, star map and inverse pairs.

    Parameters
    ----------
    generators:
        Generator names in increasing order.
    relations:
        Elements (``NcElement`` of any presentation on the same alphabet, or
        raw ``{word: Scalar}`` dicts) that are set to zero.
    star:
        Map ``generator -> generator`` or ``generator -> (generator, factor)``.
        When given, the relation set is closed under the star before orienting.
    inverses:
        Pairs ``(g, g_inv)``; unit rules and the commutation rules of the
        inverse with every other generator are derived automatically.
    degrees:
        Optional ``generator -> int``; generators of positive degree are 1-forms.
    autoreduce:
        Inter-reduce the relations while orienting.  With ``False`` every
        relation becomes a rule verbatim (heads may repeat); this is used only
        to build deliberately inconsistent systems.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        relations: Iterable = (),
        *,
        star: Mapping | None = None,
        inverses: Iterable[tuple[str, str]] = (),
        degrees: Mapping[str, int] | None = None,
        autoreduce: bool = True,
        star_closure: bool = True,
        step_budget: int | None = None,
        meta: Mapping | None = None,
    ):
        self.name = name
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        self.rank = {g: k for k, g in enumerate(self.generators)}
        self.degrees = {g: 0 for g in self.generators}
        if degrees:
            for g, d in degrees.items():
                self._check_gen(g)
                self.degrees[g] = int(d)
        self.star_map: dict[str, tuple[str, Scalar]] | None = None
        if star is not None:
            sm = {}
            for g, img in star.items():
                self._check_gen(g)
                if isinstance(img, tuple):
                    tgt, fac = img[0], Scalar.coerce(img[1])
                else:
                    tgt, fac = img, ONE
                self._check_gen(tgt)
                sm[g] = (tgt, fac)
            for g, (tgt, fac) in list(sm.items()):
                if tgt not in sm:
                    sm[tgt] = (g, fac.conjugate().inverse())
            self.star_map = sm
        self.inverses = tuple(tuple(p) for p in inverses)
        for g, gi in self.inverses:
            self._check_gen(g)
            self._check_gen(gi)
        self.step_budget = step_budget or DEFAULT_STEP_BUDGET
        self.meta = dict(meta or {})
        self._memo: dict = {}
        self._rules: dict = {}
        self._rule_list: list = []
        self._head_lengths: tuple = ()
        self._steps = 0

        rels = [self._as_terms(r) for r in relations]
        rels = [r for r in rels if r]
        if star_closure and self.star_map is not None:
            closed = []
            for r in rels:
                closed.append(r)
                if all(g in self.star_map for w in r for g in w):
                    closed.append(self._star_terms_free(r))
            rels = closed
        for g, gi in self.inverses:
            rels.append({(g, gi): ONE, (): -ONE})
            rels.append({(gi, g): ONE, (): -ONE})
        self.input_relations = rels
        if autoreduce:
            self._orient_all(rels)
        else:
            for r in rels:
                head = max(r, key=self.word_key)
                if not head:
                    raise InconsistentPresentation(f"relation of {self.name} is the nonzero constant {r[head]}")
                c = r[head]
                rhs = {w: -v / c for w, v in r.items() if w != head}
                self._rule_list.append((head, rhs))
                self._rules.setdefault(head, rhs)
            self._refresh()
        if self.inverses and autoreduce:
            self._derive_inverse_rules()

    # alphabet and order ---------------------------------------------------
    def _check_gen(self, g):
        if g not in self.rank:
            raise AlphabetError(f"{g!r} is not a generator of {self.name}")

    def is_graded(self) -> bool:
        return any(self.degrees.values())

    def word_degree(self, w) -> int:
        return sum(self.degrees[g] for g in w)

    def word_key(self, w):
        deg = self.degrees
        skeleton = []
        funcs_after = 0
        odd = 0
        for g in reversed(w):
            if deg[g]:
                skeleton.append(funcs_after)
                odd += 1
            else:
                funcs_after += 1
        rank = self.rank
        return (odd, tuple(skeleton), len(w), tuple(rank[g] for g in w))

    # construction helpers ------------------------------------------------------
    def _as_terms(self, r) -> dict:
        if isinstance(r, NcElement):
            terms = r.terms
        else:
            terms = r
        out = {}
        for w, c in terms.items():
            w = tuple(w)
            for g in w:
                self._check_gen(g)
            _add_into(out, w, Scalar.coerce(c))
        return out

    def _star_terms_free(self, r: dict) -> dict:
        out: dict = {}
        for w, c in r.items():
            coeff = c.conjugate()
            new = []
            for g in reversed(w):
                tgt, fac = self.star_map[g]
                coeff = coeff * fac
                new.append(tgt)
            _add_into(out, tuple(new), coeff)
        return out

    def _refresh(self):
        self._memo = {}
        self._head_lengths = tuple(sorted({len(h) for h in self._rules}))

    def _orient_all(self, rels):
        pending = [dict(r) for r in rels]
        while pending:
            r = pending.pop(0)
            self._refresh()
            r = self._nf_terms(r)
            if not r:
                continue
            head = max(r, key=self.word_key)
            if not head:
                raise InconsistentPresentation(f"relations of {self.name} reduce to the nonzero constant {r[head]}")
            c = r[head]
            rhs = {w: -v / c for w, v in r.items() if w != head}
            for h in list(self._rules):
                if _contains(h, head):
                    old = dict(self._rules.pop(h))
                    back = {w: -v for w, v in old.items()}
                    back[h] = ONE
                    pending.append(back)
            self._rules[head] = rhs
        # inter-reduce right-hand sides until stable
        changed = True
        while changed:
            changed = False
            self._refresh()
            for h in list(self._rules):
                new = self._nf_terms(self._rules[h])
                if new != self._rules[h]:
                    self._rules[h] = new
                    changed = True
        self._rule_list = list(self._rules.items())
        self._refresh()

    def _derive_inverse_rules(self):
        """Commutation rules of each adjoined inverse with the other generators."""
        for g, gi in self.inverses:
            others = [h for h in self.generators if h not in (g, gi)]
            if self.rank[gi] > max(self.rank[h] for h in others):
                # inverse is the greatest letter: gi*h -> (gi*h*g)*gi
                for h in others:
                    if (gi, h) in self._rules:
                        continue
                    conj = self._conjugate_by_inverse_on_left(g, gi, h)
                    rule = self._nf_terms(_concat_terms(conj, {(gi,): ONE}))
                    self._add_rule((gi, h), rule)
            elif self.rank[gi] < min(self.rank[h] for h in others):
                # inverse is the least letter: h*gi -> gi*(g*h*gi)
                psi: dict[str, dict] = {g: {(g,): ONE}, gi: {(gi,): ONE}}
                phi = {h: self._nf_terms(_concat_terms({(gi,): ONE}, self._nf_terms({(h, g): ONE}))) for h in others}
                remaining = [h for h in others if h not in psi]
                while remaining:
                    progress = False
                    for h in list(remaining):
                        lead = phi[h].get((h,), ZERO)
                        if not lead:
                            raise OrientationError(f"conjugation by {g} is not triangular on {h}")
                        rest = {w: c for w, c in phi[h].items() if w != (h,)}
                        letters = {x for w in rest for x in w}
                        if not letters <= set(psi):
                            continue
                        val = {(h,): ONE}
                        for w, c in rest.items():
                            img = {(): ONE}
                            for x in w:
                                img = self._nf_terms(_concat_terms(img, psi[x]))
                            for ww, cc in img.items():
                                _add_into(val, ww, -c * cc)
                        val = {w: c / lead for w, c in val.items()}
                        psi[h] = self._nf_terms(val)
                        remaining.remove(h)
                        progress = True
                        if (h, gi) not in self._rules:
                            self._add_rule((h, gi), self._nf_terms(_concat_terms({(gi,): ONE}, psi[h])))
                    if not progress:
                        raise OrientationError(f"cannot derive commutation rules for {gi}")
            else:
                raise OrientationError("inverse generators must be least or greatest in the order")
        self._rule_list = list(self._rules.items())
        self._refresh()

    def _conjugate_by_inverse_on_left(self, g, gi, h) -> dict:
        hg = self._nf_terms({(h, g): ONE})
        out: dict = {}
        for w, c in hg.items():
            if not w or w[0] != g:
                raise OrientationError(f"{h}*{g} does not normal-order with {g} on the left")
            _add_into(out, w[1:], c)
        return out

    def _add_rule(self, head, rhs):
        self._rules[head] = rhs
        self._refresh()

    # rewriting ------------------------------------------------------------
    @property
    def rules(self) -> list[tuple[tuple, dict]]:
        return list(self._rule_list)

    def rule_elements(self) -> list[dict]:
        """The oriented rules as relation terms ``head - rhs`` in the free algebra."""
        out = []
        for h, rhs in self._rule_list:
            r = {w: -c for w, c in rhs.items()}
            _add_into(r, h, ONE)
            out.append(r)
        return out

    def _find_redex(self, w):
        rules = self._rules
        n = len(w)
        for i in range(n):
            for L in self._head_lengths:
                if i + L > n:
                    break
                sub = w[i : i + L]
                if sub in rules:
                    return i, sub
        return None

    def _nf_word(self, w) -> dict:
        memo = self._memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        red = self._find_redex(w)
        if red is None:
            res = {w: ONE}
        else:
            self._steps += 1
            if self._steps > self.step_budget:
                raise RewriteBudgetExceeded(w)
            i, head = red
            pre, post = w[:i], w[i + len(head) :]
            res = {}
            for r, c in self._rules[head].items():
                for ww, cc in self._nf_word(pre + r + post).items():
                    _add_into(res, ww, c * cc)
        memo[w] = res
        return res

    def _nf_terms(self, terms: dict) -> dict:
        out: dict = {}
        for w, c in terms.items():
            for ww, cc in self._nf_word(w).items():
                _add_into(out, ww, c * cc)
        return out

    def reset_budget(self):
        self._steps = 0

    # element construction ---------------------------------------------------
    def element(self, terms: Mapping) -> NcElement:
        self._steps = 0
        return NcElement(self, self._nf_terms(self._as_terms(terms)))

    def normalize(self, x) -> NcElement:
        if isinstance(x, NcElement):
            return self.element(x.terms)
        return self.element(x)

    def zero(self) -> NcElement:
        return NcElement(self, {})

    def one(self) -> NcElement:
        return NcElement(self, {(): ONE})

    def scalar(self, s) -> NcElement:
        s = Scalar.coerce(s)
        return NcElement(self, {(): s} if s else {})

    def gen(self, name: str) -> NcElement:
        self._check_gen(name)
        return self.element({(name,): ONE})

    def gens(self) -> dict[str, NcElement]:
        return {g: self.gen(g) for g in self.generators}

    def word(self, *letters) -> NcElement:
        return self.element({tuple(letters): ONE})

    def multiply(self, x: NcElement, y: NcElement) -> NcElement:
        self._steps = 0
        out: dict = {}
        for u, a in x.terms.items():
            for v, b in y.terms.items():
                ab = a * b
                for w, c in self._nf_word(u + v).items():
                    _add_into(out, w, ab * c)
        return NcElement(self, out)

    def star(self, x: NcElement) -> NcElement:
        if self.star_map is None:
            raise ValueError(f"{self.name} has no star structure")
        return self.element(self._star_terms_free(x.terms))

    def commutator(self, x, y, p=ONE) -> NcElement:
        """``[x, y]_p = x*y - p*y*x``."""
        return x * y - Scalar.coerce(p) * (y * x)

    def graded_commutator(self, x: NcElement, y: NcElement) -> NcElement:
        out = self.zero()
        for dx, xp in x.degree_parts().items():
            for dy, yp in y.degree_parts().items():
                out = out + xp * yp - ((-1) ** (dx * dy)) * (yp * xp)
        return out

    # diagnostics ------------------------------------------------------------
    def is_normal_word(self, w) -> bool:
        return self._find_redex(tuple(w)) is None

    def check_orientation(self):
        """Every rule head must exceed each word of its right-hand side."""
        for h, rhs in self._rule_list:
            kh = self.word_key(h)
            for w in rhs:
                if self.word_key(w) >= kh:
                    raise OrientationError(f"rule {format_word(h)} -> ... contains greater word {format_word(w)}")

    def ambiguities(self, max_degree: int):
        """Overlap and inclusion ambiguities among rule heads up to ``max_degree`` letters."""
        rl = self._rule_list
        for a, (h1, _) in enumerate(rl):
            for b, (h2, _) in enumerate(rl):
                for k in range(1, min(len(h1), len(h2))):
                    if h1[-k:] == h2[:k]:
                        w = h1 + h2[k:]
                        if len(w) <= max_degree:
                            yield w, (a, 0), (b, len(h1) - k)
                if a != b and len(h2) <= len(h1):
                    for p in range(len(h1) - len(h2) + 1):
                        if h1[p : p + len(h2)] == h2 and len(h1) <= max_degree:
                            yield h1, (a, 0), (b, p)

    def check_local_confluence(self, max_degree: int = 5) -> list[CriticalPairFailure]:
        failures = []
        seen = set()
        for w, (a, pa), (b, pb) in self.ambiguities(max_degree):
            key = (w, a, pa, b, pb)
            if key in seen:
                continue
            seen.add(key)
            ra = self._one_step(w, a, pa)
            rb = self._one_step(w, b, pb)
            self._steps = 0
            diff = self._nf_terms(ra)
            for ww, cc in self._nf_terms(rb).items():
                _add_into(diff, ww, -cc)
            if diff:
                failures.append(
                    CriticalPairFailure(w, self._rule_list[a][0], self._rule_list[b][0], NcElement(self, diff))
                )
        return failures

    def _one_step(self, w, idx, pos) -> dict:
        head, rhs = self._rule_list[idx]
        pre, post = w[:pos], w[pos + len(head) :]
        return {pre + r + post: c for r, c in rhs.items()}

    def with_relations(self, name: str, extra: Iterable, **kw) -> "Presentation":
        """A quotient by further relations (same alphabet, star, inverses and degrees)."""
        rels = [self._as_terms(r) for r in extra]
        base = [dict(r) for r in self.input_relations if not _is_unit_rule(r, self.inverses)]
        star = None if self.star_map is None else {g: v for g, v in self.star_map.items()}
        return Presentation(
            name,
            kw.pop("generators", self.generators),
            base + rels,
            star=star,
            inverses=self.inverses,
            degrees=self.degrees,
            meta=self.meta,
            **kw,
        )

    def __repr__(self):
        return f"Presentation({self.name!r}, generators={list(self.generators)}, rules={len(self._rule_list)})"


def _is_unit_rule(r, inverses) -> bool:
    for g, gi in inverses:
        if r == {(g, gi): ONE, (): -ONE} or r == {(gi, g): ONE, (): -ONE}:
            return True
    return False


def _contains(h, sub) -> bool:
    n = len(sub)
    return any(h[i : i + n] == sub for i in range(len(h) - n + 1))


def _concat_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            _add_into(out, u + v, x * y)
    return out


def substitute(x: NcElement | Mapping, images: Mapping[str, NcElement], target: Presentation) -> NcElement:
    """Image of ``x`` under the algebra map fixed by generator images."""
    terms = x.terms if isinstance(x, NcElement) else x
    cache: dict = {(): target.one()}
    out = target.zero()
    for w, c in terms.items():
        img = cache.get(w)
        if img is None:
            img = target.one()
            for k in range(len(w)):
                pre = w[: k + 1]
                nxt = cache.get(pre)
                if nxt is None:
                    g = w[k]
                    if g not in images:
                        raise AlphabetError(f"no image given for generator {g!r}")
                    nxt = img * images[g]
                    cache[pre] = nxt
                img = nxt
        out = out + c * img
    return out


def hom_check(
    source: Presentation,
    target: Presentation,
    images: Mapping[str, NcElement],
    *,
    check_star: bool = True,
) -> list[NcElement]:
    """Normal forms in ``target`` of the images of every relation of ``source``.

    All entries vanish exactly when the generator assignment extends to an
    algebra map; with ``check_star`` the list also carries
    ``image(star g) - star(image g)`` for every generator, so an all-zero result
    certifies a *-homomorphism.
    """
    for g in source.generators:
        if g not in images:
            raise AlphabetError(f"no image given for generator {g!r}")
        img = images[g]
        if not isinstance(img, NcElement) or img.alg is not target:
            images = dict(images)
            images[g] = _coerce_image(img, target)
    out = [substitute(r, images, target) for r in source.rule_elements()]
    if check_star and source.star_map is not None and target.star_map is not None:
        for g in source.generators:
            tgt, fac = source.star_map[g]
            out.append(fac * images[tgt] - target.star(images[g]))
    return out


def _coerce_image(img, target):
    if isinstance(img, NcElement):
        for w in img.terms:
            for g in w:
                if g not in target.rank:
                    raise AlphabetError(f"image word uses {g!r}, not a generator of {target.name}")
        return target.element(img.terms)
    return target.scalar(img)


def centrality_check(p: Presentation, c: NcElement) -> list[NcElement]:
    return [c * g - g * c for g in p.gens().values()]
