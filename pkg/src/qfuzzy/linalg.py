"""Exact dense linear algebra over :class:`Scalar` (small systems only)."""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence

from .scalars import ONE, ZERO, Scalar

__all__ = ["identity", "mat_mul", "mat_inv", "SingularMatrixError", "solve_words", "rank", "mat_eq"]


class SingularMatrixError(ZeroDivisionError):
    pass


def identity(n: int) -> list[list[Scalar]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[ZERO] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            aik = a[i][k]
            if not aik:
                continue
            row = b[k]
            for j in range(p):
                if row[j]:
                    out[i][j] = out[i][j] + aik * row[j]
    return out


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_inv(a):
    n = len(a)
    m = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inverse()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][col]:
                f = m[k][col]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _axpy(acc: dict, f: Scalar, v: Mapping) -> dict:
    out = dict(acc)
    for k, c in v.items():
        s = out.get(k, ZERO) + f * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def solve_words(
    equations: Sequence[tuple[Mapping[Hashable, Scalar], Mapping[Hashable, Scalar]]],
    unknowns: Sequence[Hashable],
) -> dict[Hashable, dict]:
    """Solve ``sum_x A[e][x] * x = b[e]`` where each right side is a sparse vector.

    ``equations`` holds pairs ``(coefficients over unknowns, right-hand side)``.
    Returns the unique solution as ``unknown -> sparse vector``.  Raises
    :class:`SingularMatrixError` if the system does not determine every
    unknown, and ``ValueError`` if it is inconsistent.
    """
    idx = {x: k for k, x in enumerate(unknowns)}
    rows = []
    for coeffs, rhs in equations:
        row = [ZERO] * len(unknowns)
        for x, c in coeffs.items():
            row[idx[x]] = row[idx[x]] + c
        rows.append((row, dict(rhs)))
    r = 0
    pivots = []
    for col in range(len(unknowns)):
        piv = next((k for k in range(r, len(rows)) if rows[k][0][col]), None)
        if piv is None:
            raise SingularMatrixError(f"unknown {unknowns[col]!r} is not determined")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][0][col].inverse()
        rows[r] = ([x * inv for x in rows[r][0]], {k: v * inv for k, v in rows[r][1].items()})
        for k in range(len(rows)):
            if k != r and rows[k][0][col]:
                f = rows[k][0][col]
                rows[k] = (
                    [x - f * y for x, y in zip(rows[k][0], rows[r][0])],
                    _axpy(rows[k][1], -f, rows[r][1]),
                )
        pivots.append(col)
        r += 1
    for row, rhs in rows[r:]:
        if rhs:
            raise ValueError("inconsistent linear system")
    return {unknowns[c]: rows[k][1] for k, c in enumerate(pivots)}
