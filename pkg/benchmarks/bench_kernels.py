"""Compare the compiled bitmask kernels against the pure-Python twins.

Runs each kernel on identical deterministic inputs and reports wall times
plus the speedup, then (optionally) times a full cell enumeration in a
subprocess with TROPLIN_PURE_PYTHON=1 to show the end-to-end effect.

    python3 benchmarks/bench_kernels.py [--repeat N] [--skip-e2e]
"""

import argparse
import os
import random
import subprocess
import sys
import time
from itertools import combinations

from troplin import _core_py

try:
    from troplin import _core
except ImportError:
    _core = None


def uniform_masks(n, m):
    out = []
    for combo in combinations(range(n), m):
        mask = 0
        for k in combo:
            mask |= 1 << k
        out.append(mask)
    return out


def random_slot_masks(n, m, rng):
    b_mask = (1 << m) - 1
    slot_elems = list(range(m + 1, n + 1))
    slot_masks = []
    for _ in slot_elems:
        mask = 0
        for k in range(m):
            if rng.random() < 0.6:
                mask |= 1 << k
        slot_masks.append(mask)
    return b_mask, slot_elems, slot_masks


def bench(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def run_case(name, fn_name, args, repeat):
    py_t, py_res = bench(getattr(_core_py, fn_name), args, repeat)
    if _core is None:
        print(f"{name:34} python {py_t * 1e3:9.2f} ms   (no compiled backend)")
        return
    cy_t, cy_res = bench(getattr(_core, fn_name), args, repeat)
    assert py_res == cy_res, f"backend mismatch on {name}"
    print(f"{name:34} python {py_t * 1e3:9.2f} ms   "
          f"cython {cy_t * 1e3:9.2f} ms   x{py_t / cy_t:5.1f}")


def run_e2e(repeat):
    script = ("import random, time; "
              "from troplin.cells import LocalContext, enumerate_local_cells; "
              "from troplin.conical import random_height_matrix, tau; "
              "from troplin.selftest import DEFAULT_SEED; "
              "v = random_height_matrix(6, 3, rng=random.Random(DEFAULT_SEED)); "
              "t0 = time.perf_counter(); "
              "p = tau(v); "
              "cells = enumerate_local_cells(LocalContext(p, (1, 2, 3))); "
              "print(len(cells), time.perf_counter() - t0)")
    for label, env_extra in (("cython", {}), ("python", {"TROPLIN_PURE_PYTHON": "1"})):
        best = float("inf")
        count = None
        for _ in range(repeat):
            env = dict(os.environ, **env_extra)
            out = subprocess.run([sys.executable, "-c", script], env=env,
                                 capture_output=True, text=True, check=True)
            n_cells, elapsed = out.stdout.split()
            count = n_cells
            best = min(best, float(elapsed))
        print(f"{'tau(3,6) + local cells':34} {label} {best * 1e3:9.2f} ms"
              f"   ({count} cells)")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args(argv)

    if _core is None:
        print("warning: compiled backend not built; timing pure Python only",
              file=sys.stderr)

    rng = random.Random(7)
    for n, m in ((7, 3), (8, 4), (9, 4)):
        run_case(f"exchange_violation U({m},{n})", "exchange_violation",
                 (uniform_masks(n, m), n), args.repeat)
    for n, m in ((9, 4), (11, 5), (12, 6)):
        b_mask, slot_elems, slot_masks = random_slot_masks(n, m, rng)
        run_case(f"transversal_basis_masks ({m},{n})", "transversal_basis_masks",
                 (n, m, b_mask, slot_elems, slot_masks), args.repeat)
    if not args.skip_e2e:
        run_e2e(max(1, args.repeat // 2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
