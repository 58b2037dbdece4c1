"""Compare the numba and pure-numpy Hamiltonian kernels.

Usage::

    python3 benchmarks/bench_matvec.py [--N 12 16 20] [--repeat 3]

Both paths are checked against each other before timing.  The numba time
excludes the first (compiling) call.
"""
import argparse
import time

import numpy as np

from xyzchain import backend
from xyzchain.ed import SpinChainConfig, apply_hamiltonian


def best_of(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, nargs="+", default=[12, 16, 20])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--eta", type=float, default=0.4)
    args = ap.parse_args(argv)

    if backend() != "numba":
        print("numba unavailable or disabled; timing the numpy path only")
    rng = np.random.default_rng(0)
    print(f"{'N':>3} {'dim':>9} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}")
    for N in args.N:
        cfg = SpinChainConfig.from_eta(N, args.eta, 0.5j, "antiperiodic")
        v = rng.standard_normal(cfg.dim)
        w_np = apply_hamiltonian(v, cfg, use_numba=False)
        t_np = best_of(lambda: apply_hamiltonian(v, cfg, use_numba=False), args.repeat)
        if backend() == "numba":
            w_nb = apply_hamiltonian(v, cfg, use_numba=True)
            err = np.max(np.abs(w_nb - w_np))
            assert err < 1e-10 * max(1.0, np.max(np.abs(w_np))), err
            t_nb = best_of(lambda: apply_hamiltonian(v, cfg, use_numba=True), args.repeat)
            print(f"{N:>3} {cfg.dim:>9} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}")
        else:
            print(f"{N:>3} {cfg.dim:>9} {t_np:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
