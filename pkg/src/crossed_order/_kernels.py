"""Integer kernels behind the exhaustive checks and oracles.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version.  The numba path is used when numba imports and the environment
variable ``CROSSED_ORDER_NO_NUMBA`` is unset (or ``0``).  Both paths return
identical results; ``tests/test_kernels.py`` runs them side by side.

Cocycle data reaches these kernels in *log form*: a unit ``x`` of a finite
field ``F_q`` is stored as ``k`` with ``x = gamma**k`` for the field's fixed
primitive element, and a Frobenius power ``x -> x**(p**j)`` acts on logs as
multiplication by ``p**j mod (q - 1)``.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("CROSSED_ORDER_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by CROSSED_ORDER_NO_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda fn: fn


BACKEND = "numba" if HAS_NUMBA else "numpy"

NO_HIT = np.full(3, -1, dtype=np.int64)


# ---------------------------------------------------------------------------
# group tables
# ---------------------------------------------------------------------------

def _assoc_violation_np(table):
    n = table.shape[0]
    a = np.arange(n)
    # lhs[x, y, z] = (xy)z, rhs[x, y, z] = x(yz)
    lhs = table[table[:, :, None], a[None, None, :]]
    rhs = table[a[:, None, None], table[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.shape[0] == 0:
        return NO_HIT.copy()
    return bad[0].astype(np.int64)


@njit(cache=True)
def _assoc_violation_nb(table):
    n = table.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for x in range(n):
        for y in range(n):
            xy = table[x, y]
            for z in range(n):
                if table[xy, z] != table[x, table[y, z]]:
                    out[0] = x
                    out[1] = y
                    out[2] = z
                    return out
    return out


def assoc_violation(table: np.ndarray) -> np.ndarray:
    """First triple ``(x, y, z)`` with ``(xy)z != x(yz)``, or ``[-1, -1, -1]``."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    if HAS_NUMBA:
        return _assoc_violation_nb(table)
    return _assoc_violation_np(table)


# ---------------------------------------------------------------------------
# cocycle identity in log form
# ---------------------------------------------------------------------------

def _cocycle_violation_np(logf, table, fmul, qm1):
    n = table.shape[0]
    g = np.arange(n)[:, None, None]
    h = np.arange(n)[None, :, None]
    k = np.arange(n)[None, None, :]
    # g(f(h,k)) * f(g,hk) == f(g,h) * f(gh,k)
    lhs = (fmul[g] * logf[h, k] + logf[g, table[h, k]]) % qm1
    rhs = (logf[g, h] + logf[table[g, h], k]) % qm1
    bad = np.argwhere(lhs != rhs)
    if bad.shape[0] == 0:
        return NO_HIT.copy()
    return bad[0].astype(np.int64)


@njit(cache=True)
def _cocycle_violation_nb(logf, table, fmul, qm1):
    n = table.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for g in range(n):
        for h in range(n):
            gh = table[g, h]
            for k in range(n):
                lhs = (fmul[g] * logf[h, k] + logf[g, table[h, k]]) % qm1
                rhs = (logf[g, h] + logf[gh, k]) % qm1
                if lhs != rhs:
                    out[0] = g
                    out[1] = h
                    out[2] = k
                    return out
    return out


def cocycle_violation(logf: np.ndarray, table: np.ndarray, fmul: np.ndarray, qm1: int) -> np.ndarray:
    """First triple breaking the twisted 2-cocycle identity, or ``[-1, -1, -1]``."""
    logf = np.ascontiguousarray(logf, dtype=np.int64)
    table = np.ascontiguousarray(table, dtype=np.int64)
    fmul = np.ascontiguousarray(fmul, dtype=np.int64)
    if HAS_NUMBA:
        return _cocycle_violation_nb(logf, table, fmul, np.int64(qm1))
    return _cocycle_violation_np(logf, table, fmul, qm1)


# ---------------------------------------------------------------------------
# exhaustive cochain searches
# ---------------------------------------------------------------------------
#
# Candidates are 1-cochains c with c(1) = 1, enumerated as log vectors over
# the non-identity elements in index order, lexicographically with the first
# free position most significant.  ``mode`` 0 asks for f == dc; mode 1 asks
# that f * dc be constant on (coset, coset) blocks and trivial on A x A.

@njit(cache=True)
def _search_nb(logf, table, fmul, qm1, free, rep, in_a, mode):
    n = table.shape[0]
    m = free.shape[0]
    lc = np.zeros(n, dtype=np.int64)
    digits = np.zeros(m, dtype=np.int64)
    shifted = np.zeros((n, n), dtype=np.int64)
    while True:
        for i in range(m):
            lc[free[i]] = digits[i]
        ok = True
        if mode == 0:
            for g in range(n):
                if not ok:
                    break
                for h in range(n):
                    d = (lc[g] + fmul[g] * lc[h] - lc[table[g, h]]) % qm1
                    if d != logf[g, h] % qm1:
                        ok = False
                        break
        else:
            for g in range(n):
                for h in range(n):
                    shifted[g, h] = (logf[g, h] + lc[g] + fmul[g] * lc[h] - lc[table[g, h]]) % qm1
            for g in range(n):
                if not ok:
                    break
                for h in range(n):
                    if shifted[g, h] != shifted[rep[g], rep[h]]:
                        ok = False
                        break
                    if in_a[g] and in_a[h] and shifted[g, h] != 0:
                        ok = False
                        break
        if ok:
            return lc.copy()
        # odometer: last position least significant
        pos = m - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < qm1:
                break
            digits[pos] = 0
            pos -= 1
        if pos < 0:
            return np.full(n, -1, dtype=np.int64)


def _search_np(logf, table, fmul, qm1, free, rep, in_a, mode, chunk=8192):
    n = table.shape[0]
    m = free.shape[0]
    total = qm1 ** m
    radix = qm1 ** np.arange(m - 1, -1, -1, dtype=np.int64)
    gh = table
    lf = logf % qm1
    pair_a = np.outer(in_a, in_a).astype(bool)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // radix[None, :]) % qm1
        lc = np.zeros((idx.shape[0], n), dtype=np.int64)
        lc[:, free] = digits
        dc = (lc[:, :, None] + fmul[None, :, None] * lc[:, None, :] - lc[:, gh]) % qm1
        if mode == 0:
            ok = np.all(dc == lf[None, :, :], axis=(1, 2))
        else:
            shifted = (lf[None, :, :] + dc) % qm1
            blocks = shifted[:, rep[:, None], rep[None, :]]
            ok = np.all(shifted == blocks, axis=(1, 2))
            ok &= np.all(np.where(pair_a[None, :, :], shifted == 0, True), axis=(1, 2))
        hit = np.flatnonzero(ok)
        if hit.size:
            return lc[hit[0]]
    return np.full(n, -1, dtype=np.int64)


def search_cochain(logf, table, fmul, qm1, identity, rep=None, in_a=None) -> np.ndarray | None:
    """Exhaustive search for the lexicographically first cochain (log form).

    With ``rep``/``in_a`` unset, looks for ``c`` with ``f == dc``.  Otherwise
    looks for ``c`` making ``f * dc`` inflated from ``G/A``, where ``rep[g]``
    is the chosen coset representative of ``g`` and ``in_a`` marks ``A``.
    Returns the log vector of ``c`` or ``None``.
    """
    table = np.ascontiguousarray(table, dtype=np.int64)
    n = table.shape[0]
    logf = np.ascontiguousarray(logf, dtype=np.int64)
    fmul = np.ascontiguousarray(fmul, dtype=np.int64)
    free = np.array([g for g in range(n) if g != identity], dtype=np.int64)
    mode = 0 if rep is None else 1
    if rep is None:
        rep = np.arange(n, dtype=np.int64)
        in_a = np.zeros(n, dtype=np.int64)
    rep = np.ascontiguousarray(rep, dtype=np.int64)
    in_a = np.ascontiguousarray(in_a, dtype=np.int64)
    if qm1 == 1:
        # F_2: the only unit is 1
        free = free[:0]
    if HAS_NUMBA:
        out = _search_nb(logf, table, fmul, np.int64(qm1), free, rep, in_a, np.int64(mode))
    else:
        out = _search_np(logf, table, fmul, qm1, free, rep, in_a, mode)
    if out[0] < 0:
        return None
    return out


# ---------------------------------------------------------------------------
# linear algebra mod p
# ---------------------------------------------------------------------------

@njit(cache=True)
def _rref_nb(mat, p):
    a = mat.copy() % p
    rows, cols = a.shape
    pivots = np.full(min(rows, cols), -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        # inverse by Fermat
        inv = 1
        base = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                fct = a[i, c]
                for j in range(cols):
                    a[i, j] = (a[i, j] - fct * a[r, j]) % p
        pivots[r] = c
        r += 1
    return a, pivots[:r]


def _rref_np(mat, p):
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        fct = a[:, c].copy()
        fct[r] = 0
        a = (a - fct[:, None] * a[r][None, :]) % p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64)


def rref_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form over ``F_p`` and its pivot columns."""
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if mat.size == 0:
        return mat.copy(), np.zeros(0, dtype=np.int64)
    if HAS_NUMBA:
        a, piv = _rref_nb(mat, np.int64(p))
        return a, piv.copy()
    return _rref_np(mat, p)


def nullspace_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : mat @ x = 0}`` over ``F_p``, rows in reduced echelon form."""
    mat = np.asarray(mat, dtype=np.int64)
    cols = mat.shape[1]
    a, piv = rref_mod_p(mat, p)
    piv_set = set(int(c) for c in piv)
    free = [c for c in range(cols) if c not in piv_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(piv):
            basis[k, pc] = (-a[r, fc]) % p
    if basis.shape[0] == 0:
        return basis
    return rref_mod_p(basis, p)[0]
