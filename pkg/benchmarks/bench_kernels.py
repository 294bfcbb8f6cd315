"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both paths are called directly, so one process compares them regardless of
CROSSED_ORDER_NO_NUMBA.  Results are checked equal before timing.
"""

import argparse
import time

import numpy as np

from crossed_order import _kernels as kn
from crossed_order.cocycles import bimultiplicative_cocycle
from crossed_order.exactfields import prime_field
from crossed_order.groupkit import cyclic_group, direct_product, trivial_action


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    # a non-coboundary on C2 x C4 over F_5: the search has to sweep all 4^7 cochains
    K = prime_field(5)
    G = direct_product(cyclic_group(2), cyclic_group(4))
    act = trivial_action(G, K)
    f = bimultiplicative_cocycle(act, [[0, 2], [0, 0]], root=4)
    table = np.asarray(G.table, dtype=np.int64)
    logf = np.asarray(f.log_table, dtype=np.int64)
    fmul = act.frobenius_log_multipliers()
    n = G.order
    free = np.arange(1, n, dtype=np.int64)
    rep = np.arange(n, dtype=np.int64)
    in_a = np.zeros(n, dtype=np.int64)
    yield ("search_cochain (4^7 candidates)",
           lambda: kn._search_nb(logf, table, fmul, np.int64(4), free, rep, in_a, np.int64(0)),
           lambda: kn._search_np(logf, table, fmul, 4, free, rep, in_a, 0))
    yield ("cocycle_violation (|G|=8)",
           lambda: kn._cocycle_violation_nb(logf, table, fmul, np.int64(4)),
           lambda: kn._cocycle_violation_np(logf, table, fmul, 4))
    yield ("assoc_violation (|G|=8)",
           lambda: kn._assoc_violation_nb(table),
           lambda: kn._assoc_violation_np(table))
    rng = np.random.default_rng(7)
    mat = rng.integers(0, 7, size=(60, 80)).astype(np.int64)
    yield ("rref mod 7 (60x80)",
           lambda: kn._rref_nb(mat, np.int64(7)),
           lambda: kn._rref_np(mat, 7))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kn.HAS_NUMBA:
        print("numba unavailable (or disabled); nothing to compare")
        return
    print(f"{'kernel':36s} {'numba':>10s} {'numpy':>10s} {'ratio':>7s}")
    for name, nb, np_ in cases():
        a, b = nb(), np_()
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        assert same, f"backends disagree on {name}"
        t_nb = best_of(nb, args.repeat)
        t_np = best_of(np_, args.repeat)
        print(f"{name:36s} {t_nb * 1e3:9.2f}ms {t_np * 1e3:9.2f}ms {t_np / t_nb:6.1f}x")


if __name__ == "__main__":
    main()
