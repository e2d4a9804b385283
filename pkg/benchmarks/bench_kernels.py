"""Time the numba kernels against their numpy twins on typical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 20]

Inputs are H(P) for a few posets P plus the degree up-sets of a 6-element
model.  Each kernel is called once first so that JIT compilation is not timed.
"""
import argparse
import time

import numpy as np

from muchnik_intervals import _accel, catalog
from muchnik_intervals.enumeration import enumerate_posets
from muchnik_intervals.lattice import downset_lattice
from muchnik_intervals.poset import Poset


def _time(fn, args, repeat):
    fn(*args)
    t = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t) / repeat


def cases():
    fd3 = catalog.lattice("fd3")
    big = downset_lattice(Poset.antichain(6), labelled=False)  # 64 elements
    p7 = enumerate_posets(6)[100]
    h7 = downset_lattice(p7, labelled=False)
    up6 = np.array(Poset.antichain(6).up_masks, dtype=np.int64)
    masks = _accel.closed_between(up6, 0, (1 << 6) - 1)
    adj = np.triu(np.random.default_rng(0).random((40, 40)) < 0.1, 1)
    down = np.array(Poset.chain(3).down_masks + Poset.antichain(10).down_masks, dtype=np.int64)
    return [
        ("closure 40x40", "closure", (adj,)),
        ("downset_masks 13 elements", "downset_masks", (down,)),
        ("bound_tables fd3", "bound_tables", (fd3.leq,)),
        ("bound_tables 2^6", "bound_tables", (big.leq,)),
        ("distributive 2^6", "distributive_violation", (big.join, big.meet)),
        ("distributive H(P), |P|=6", "distributive_violation", (h7.join, h7.meet)),
        ("closed_between 6 free bits", "closed_between", (up6, np.int64(0), np.int64(63))),
        ("strict_cover_pairs 64 masks", "strict_cover_pairs", (masks,)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':32s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, kernel, inputs in cases():
        np_fn = getattr(_accel, "np_" + kernel)
        nb_fn = getattr(_accel, "nb_" + kernel)
        a = np_fn(*inputs)
        b = nb_fn(*inputs)
        same = all(np.array_equal(x, y) for x, y in zip(np.atleast_1d(a), np.atleast_1d(b))) \
            if isinstance(a, tuple) else np.array_equal(a, b)
        t_np = _time(np_fn, inputs, args.repeat)
        t_nb = _time(nb_fn, inputs, args.repeat)
        flag = "" if same else "  MISMATCH"
        print(f"{name:32s} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:7.1f}x{flag}")


if __name__ == "__main__":
    main()
