from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfuzzy.loader import load_algebra
from qfuzzy.parser import Add, Bracket, Diff, Mul, Num, ParseError, Pow, Star, Sym, parse, parse_element, to_text


def test_sum_of_products():
    t = parse("q^2*a*b - b*a - λ*b")
    assert isinstance(t, Add)
    assert [s for s, _ in t.terms] == [1, -1, -1]
    assert t.terms[0][1] == Mul((Pow(Sym("q"), Fraction(2)), Sym("a"), Sym("b")))


def test_differential_node():
    t = parse("d(α*δ - q^2*γ*β)")
    assert isinstance(t, Diff) and isinstance(t.x, Add)


def test_bracket_node():
    assert parse("[e_a, α]_q") == Bracket(Sym("e_a"), Sym("α"), Sym("q"))


def test_star_forms_agree():
    assert parse("b†") == parse("adj(b)") == Star(Sym("b"))


@pytest.mark.parametrize(
    "src,line,col",
    [("a * * b", 1, 5), ("(a + b", 1, 7), ("a +\n  ^b", 2, 3), ("[a, b", 1, 6)],
)
def test_positioned_errors(src, line, col):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert (info.value.line, info.value.col) == (line, col)
    assert info.value.expected


def test_aliases_match_unicode():
    A = load_algebra("bqsu2")
    assert parse_element("alpha*delta - q^2*gamma*beta", A) == parse_element("α*δ - q^2*γ*β", A)
    assert parse_element("α*δ - q^2*γ*β", A) == A.one()


def test_normalize_examples():
    F = load_algebra("qfuzzy")
    assert parse_element("b*a", F) == parse_element("q^2*a*b - λ*b", F)
    assert parse_element("1", F) == F.one()


def test_unknown_generator():
    with pytest.raises((ParseError, KeyError)):
        parse_element("zeta*a", load_algebra("qfuzzy"))


names = st.sampled_from(["a", "b", "α", "e_a", "q", "λ", "t"])
leaves = st.one_of(names.map(Sym), st.integers(1, 9).map(lambda n: Num(Fraction(n))))


def _extend(children):
    return st.one_of(
        st.lists(children, min_size=2, max_size=3).map(lambda xs: Mul(tuple(xs))),
        st.lists(st.tuples(st.sampled_from([1, -1]), children), min_size=2, max_size=3).map(
            lambda ts: Add(tuple(ts))
        ),
        children.map(Diff),
        children.map(Star),
        st.tuples(children, children, st.one_of(st.none(), names.map(Sym))).map(lambda a: Bracket(*a)),
        st.tuples(children, st.integers(2, 3)).map(lambda a: Pow(a[0], Fraction(a[1]))),
    )


exprs = st.recursive(leaves, _extend, max_leaves=8)


@given(exprs)
def test_print_parse_round_trip(e):
    text = to_text(e)
    assert to_text(parse(text)) == text
