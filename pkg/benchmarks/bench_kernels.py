"""Time the numba kernels against the numpy fallbacks on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Compilation happens once before timing.  The enumeration kernel has no
vectorised form, so its fallback row is the interpreted loop.
"""
import argparse
import time

import numpy as np

from hypergroups import kernels
from hypergroups.construct import chain_hypergroup, product, symmetric_group
from hypergroups.enumeration import identity_fixing_perms, search_space, standard_involutions


def _cases():
    V6 = chain_hypergroup(5)
    S4 = symmetric_group(4)
    P, _ = product([chain_hypergroup(2), chain_hypergroup(2), chain_hypergroup(1)])
    Q, _ = product([chain_hypergroup(2), chain_hypergroup(1)])
    base, starts, tri, last = search_space(4, standard_involutions(4)[0])
    ident = np.arange(S4.order, dtype=np.int64)
    return [
        ("assoc", "S4", (S4.table,)),
        ("assoc", "V3xV3xK2", (P.table,)),
        ("reversibility", "S4", (S4.table, S4.inv)),
        ("morphism", "id S4", (S4.table, S4.table, ident)),
        ("fullness", "id S4", (S4.table, S4.table, ident)),
        ("canonical", "V6", (V6.table, identity_fixing_perms(V6.order))),
        ("hom_search", "V3xK2 -> V6", (Q.table, Q.inv, V6.table, V6.inv)),
        ("enumerate", "order 4, trivial inverse", (base, starts, tri, last)),
    ]


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    a = ap.parse_args(argv)
    print(f"{'kernel':<14}{'input':<26}{'numba ms':>10}{'numpy ms':>10}{'ratio':>8}")
    for name, label, args in _cases():
        jit, ref = kernels.JIT[name], kernels.NUMPY[name]
        r_jit, r_ref = jit(*args), ref(*args)  # warm-up and agreement check
        if name == "enumerate":
            assert len(r_jit) == len(r_ref)
        elif name == "hom_search":
            assert np.array_equal(np.asarray(r_jit), np.asarray(r_ref))
        tj, tr = _time(jit, args, a.repeat), _time(ref, args, a.repeat)
        print(f"{name:<14}{label:<26}{tj * 1e3:>10.3f}{tr * 1e3:>10.3f}{tr / tj:>8.1f}")


if __name__ == "__main__":
    main()
