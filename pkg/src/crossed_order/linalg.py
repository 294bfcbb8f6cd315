"""Exact Gaussian elimination.

Prime fields go through the integer kernels in ``_kernels``; any other field
(``F_p(t)`` in practice) uses plain row operations on FieldElements.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .exactfields import Field, FieldElement


def rref(rows: list[list[FieldElement]], field: Field) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form of a matrix given as rows; zero rows dropped."""
    a = [list(r) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][c].is_zero():
                fct = a[i][c]
                a[i] = [x - fct * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: list[list[FieldElement]], field: Field, ncols: int) -> list[list[FieldElement]]:
    """Basis of ``{x : M x = 0}`` in reduced echelon form."""
    red, piv = rref(rows, field) if rows else ([], [])
    piv_set = set(piv)
    free = [c for c in range(ncols) if c not in piv_set]
    zero, one = field.zero(), field.one()
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(piv):
            v[pc] = -red[r][fc]
        basis.append(v)
    return rref(basis, field)[0] if basis else []


def solve_left(A: list[list[FieldElement]], b: list[FieldElement], field: Field) -> list[FieldElement] | None:
    """Some ``c`` with ``c A = b`` (A is m x n, b has length n), or None."""
    m = len(A)
    n = len(b)
    # transpose: A^T c^T = b^T, augmented
    aug = [[A[i][j] for i in range(m)] + [b[j]] for j in range(n)]
    red, piv = rref(aug, field)
    if m in piv:
        return None
    c = [field.zero()] * m
    for r, pc in enumerate(piv):
        c[pc] = red[r][m]
    return c


def nullspace_mod_p(mat, p: int) -> np.ndarray:
    return _kernels.nullspace_mod_p(np.asarray(mat, dtype=np.int64), p)


def rref_mod_p(mat, p: int) -> tuple[np.ndarray, np.ndarray]:
    return _kernels.rref_mod_p(np.asarray(mat, dtype=np.int64), p)
