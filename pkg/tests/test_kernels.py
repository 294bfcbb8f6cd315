import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossed_order import _kernels as kn
from crossed_order.cocycles import bimultiplicative_cocycle, cyclic_cocycle
from crossed_order.exactfields import prime_field
from crossed_order.groupkit import cyclic_group, direct_product, klein_four, symmetric_group, trivial_action

GROUPS = [cyclic_group(3), klein_four(), cyclic_group(4), symmetric_group(3)]


def same(a, b):
    return np.array_equal(np.asarray(a), np.asarray(b))


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.describe())
def test_assoc_parity(G):
    t = np.asarray(G.table, dtype=np.int64)
    assert same(kn._assoc_violation_nb(t), kn._assoc_violation_np(t))
    assert kn._assoc_violation_np(t)[0] == -1


@given(st.integers(2, 5).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n)))
def test_assoc_parity_random(flat):
    n = int(round(len(flat) ** 0.5))
    t = np.array(flat, dtype=np.int64).reshape(n, n)
    assert same(kn._assoc_violation_nb(t), kn._assoc_violation_np(t))


@given(st.lists(st.integers(0, 3), min_size=16, max_size=16))
def test_cocycle_violation_parity(flat):
    G = klein_four()
    t = np.asarray(G.table, dtype=np.int64)
    logf = np.array(flat, dtype=np.int64).reshape(4, 4)
    fmul = np.ones(4, dtype=np.int64)
    assert same(kn._cocycle_violation_nb(logf, t, fmul, np.int64(4)), kn._cocycle_violation_np(logf, t, fmul, 4))


def _search_case(f):
    G = f.group
    return (np.asarray(f.log_table, dtype=np.int64), np.asarray(G.table, dtype=np.int64),
            f.action.frobenius_log_multipliers(), f.field.q - 1, G.order)


@pytest.mark.parametrize("alpha", [1, 2, 3, 4])
def test_search_parity_coboundary_mode(alpha):
    K = prime_field(5)
    f = cyclic_cocycle(trivial_action(cyclic_group(4), K), K(alpha))
    logf, t, fmul, qm1, n = _search_case(f)
    free = np.arange(1, n, dtype=np.int64)
    rep = np.arange(n, dtype=np.int64)
    in_a = np.zeros(n, dtype=np.int64)
    a = kn._search_nb(logf, t, fmul, np.int64(qm1), free, rep, in_a, np.int64(0))
    b = kn._search_np(logf, t, fmul, qm1, free, rep, in_a, 0)
    assert same(a, b)
    # coboundary iff alpha is a 4th power, and the only one in F_5 is 1
    assert (a[0] >= 0) == (alpha == 1)


@pytest.mark.parametrize("E", [[[0, 1], [0, 0]], [[1, 0], [0, 1]], [[0, 0], [0, 0]]])
def test_search_parity_inflation_mode(E):
    K = prime_field(5)
    V = klein_four()
    f = bimultiplicative_cocycle(trivial_action(V, K), E, root=2)
    logf, t, fmul, qm1, n = _search_case(f)
    free = np.arange(1, n, dtype=np.int64)
    a_idx = V.index("a")
    in_a = np.zeros(n, dtype=np.int64)
    in_a[[0, a_idx]] = 1
    rep = np.array([min(g, V.mul(g, a_idx)) for g in range(n)], dtype=np.int64)
    x = kn._search_nb(logf, t, fmul, np.int64(qm1), free, rep, in_a, np.int64(1))
    y = kn._search_np(logf, t, fmul, qm1, free, rep, in_a, 1, chunk=7)
    assert same(x, y)


def test_search_large_parity():
    K = prime_field(5)
    G = direct_product(cyclic_group(2), cyclic_group(4))
    f = bimultiplicative_cocycle(trivial_action(G, K), [[0, 2], [0, 0]], root=4)
    logf, t, fmul, qm1, n = _search_case(f)
    free = np.arange(1, n, dtype=np.int64)
    rep = np.arange(n, dtype=np.int64)
    in_a = np.zeros(n, dtype=np.int64)
    a = kn._search_nb(logf, t, fmul, np.int64(qm1), free, rep, in_a, np.int64(0))
    b = kn._search_np(logf, t, fmul, qm1, free, rep, in_a, 0)
    assert same(a, b) and a[0] == -1


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**31))
def test_rref_parity(p, r, c, seed):
    mat = np.random.default_rng(seed).integers(0, p, size=(r, c)).astype(np.int64)
    a1, p1 = kn._rref_nb(mat, np.int64(p))
    a2, p2 = kn._rref_np(mat, p)
    assert same(a1, a2) and same(p1, p2)
    ns = kn.nullspace_mod_p(mat, p)
    assert ns.shape[0] == c - len(p2)
    assert not ((mat @ ns.T) % p).any()


def test_backend_flag():
    env = dict(os.environ, CROSSED_ORDER_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from crossed_order import _kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["CROSSED_ORDER_NO_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", "from crossed_order import _kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() in ("numba", "numpy")
