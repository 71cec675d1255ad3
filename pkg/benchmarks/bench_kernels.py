"""Compare the compiled and pure-Python ZDD kernels.

Run with ``python benchmarks/bench_kernels.py``.  Each workload runs on a
fresh engine per backend; the best of ``--repeat`` runs is reported.
"""

from __future__ import annotations

import argparse
import time

from zddmap.circuit import ring
from zddmap.generators import random_toffoli_circuit
from zddmap.mapper import map_circuit
from zddmap.zdd import Engine, available_backends


def choose_workload(backend: str) -> int:
    eng = Engine(40, backend=backend)
    f = eng.choose(eng.singletons(range(1, 41)), 4)
    return f.count()


def algebra_workload(backend: str) -> int:
    eng = Engine(24, backend=backend)
    xs = eng.singletons(range(1, 25))
    pairs = eng.choose(xs, 2)
    triples = eng.choose(xs, 3)
    j = eng.join(pairs, triples)
    g = eng.nonsupersets(j, eng.from_sets([{1, 2}, {5, 9}, {13, 21}]))
    return eng.meet(g, triples).count() + g.count()


def mapping_workload(backend: str) -> int:
    c = random_toffoli_circuit(8, 4, seed=3)
    return map_circuit(c, ring(8), backend=backend).swaps_inserted


WORKLOADS = {
    "choose(40, 4)": choose_workload,
    "join/nonsupersets/meet": algebra_workload,
    "map 4 Toffolis on ring:8": mapping_workload,
}


def best_of(fn, backend, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(backend)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = available_backends()
    print(f"{'workload':28}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, fn in WORKLOADS.items():
        results = {b: best_of(fn, b, args.repeat) for b in backends}
        values = {v for _, v in results.values()}
        assert len(values) == 1, f"{name}: backends disagree {values}"
        row = f"{name:28}" + "".join(f"{results[b][0] * 1e3:10.1f}ms" for b in backends)
        if len(backends) == 2:
            row += f"{results['python'][0] / results['compiled'][0]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
