from itertools import product

import pytest

from qfuzzy import rmatrix as rm
from qfuzzy.freealg import format_element
from qfuzzy.loader import (
    LoadError,
    emit_algebra,
    emit_rmatrix,
    load_algebra,
    load_rmatrix,
    shipped_algebras,
    shipped_rmatrix_files,
)
from qfuzzy.scalars import Q


def probe_words(p, degree=2):
    gens = list(p.generators)
    for k in range(degree + 1):
        yield from product(gens, repeat=k)


@pytest.mark.parametrize("name", shipped_algebras())
def test_algebra_round_trip(name):
    A = load_algebra(name)
    B = load_algebra(emit_algebra(A))
    assert list(A.generators) == list(B.generators)
    for w in probe_words(A):
        assert format_element(A.element({w: 1})) == format_element(B.element({w: 1}))


def test_parameter_override():
    A = load_algebra("qfuzzy", lam=0)
    a, b = A.gen("a"), A.gen("b")
    assert b * a == Q * Q * a * b


@pytest.mark.parametrize("name", shipped_rmatrix_files())
def test_rmatrix_round_trip(name):
    R = load_rmatrix(name)
    assert load_rmatrix(emit_rmatrix(R)) == R


def test_rmatrix_file_rows_one_per_line():
    text = emit_rmatrix(rm.standard_r())
    rows = [l for l in text.splitlines() if l.startswith("  - [")]
    assert len(rows) == 4


def test_load_errors(tmp_path):
    with pytest.raises(LoadError):
        load_algebra("no-such-algebra")
    bad = tmp_path / "bad.alg"
    bad.write_text("name: bad\nrelations: []\n", encoding="utf-8")
    with pytest.raises(LoadError):
        load_algebra(bad)
    rbad = tmp_path / "bad.rmat"
    rbad.write_text('n: 2\nmatrix:\n  - ["1", "0"]\n', encoding="utf-8")
    with pytest.raises(LoadError):
        load_rmatrix(rbad)


def test_relation_needs_one_equals(tmp_path):
    f = tmp_path / "x.alg"
    f.write_text("name: x\ngenerators: [a, b]\nrelations: ['a*b = b*a = 1']\n", encoding="utf-8")
    with pytest.raises(LoadError):
        load_algebra(f)
