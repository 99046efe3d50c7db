"""Time the rank kernels with numba and with the numpy fallback.

Each backend runs in its own interpreter because the switch is read at
import time.  Usage:

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, time
import numpy as np
from matstruct import _accel, kernels
from matstruct.constructions import projective_geometry, clique, uniform
from matstruct.gf import field

def timed(fn, repeat):
    fn()  # warm-up, includes compilation
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best

repeat = {repeat}
pg = projective_geometry(4, 2)            # 15 elements
f3 = projective_geometry(3, 3)            # 13 elements
K, _ = clique(5)                           # 15 edges
t_pg = kernels.linear_rank_table(pg.vectors, pg.field)
rng = np.random.default_rng(0)
mats = [rng.integers(0, 3, size=(6, 10)) for _ in range(2000)]
F3 = field(3)
res = {{
    "numba": _accel.HAVE_NUMBA,
    "linear_table_PG(3,2)": timed(lambda: kernels.linear_rank_table(pg.vectors, pg.field), repeat),
    "linear_table_PG(2,3)": timed(lambda: kernels.linear_rank_table(f3.vectors, f3.field), repeat),
    "graph_table_K6": timed(lambda: kernels.graph_rank_table(K._us, K._vs, len(K.vertices)), repeat),
    "axioms_PG(3,2)": timed(lambda: kernels.axiom_violation(t_pg, 15), repeat),
    "gf_rank_x2000": timed(lambda: [kernels.gf_rank(m, F3) for m in mats], repeat),
}}
print(json.dumps(res))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["MATSTRUCT_DISABLE_NUMBA"] = "1" if disable else "0"
    out = subprocess.run(
        [sys.executable, "-c", WORKER.format(repeat=repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"numba available: {fast['numba']}")
    print(f"{'kernel':<24}{'numba s':>12}{'fallback s':>12}{'speedup':>10}")
    for k in fast:
        if k == "numba":
            continue
        a, b = fast[k], slow[k]
        print(f"{k:<24}{a:>12.4f}{b:>12.4f}{b / a if a else float('nan'):>10.1f}")


if __name__ == "__main__":
    main()
