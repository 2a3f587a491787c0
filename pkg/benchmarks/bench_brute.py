"""Benchmark the two brute-force period backends against each other.

The dense int64 stencil (numba) and the exact big-integer dict walk the
same pruned support, so they must agree bit for bit wherever the dense
path is applicable; this script times both and checks that.

Run:  python benchmarks/bench_brute.py
"""

import time

from graphpotentials.graphs import enumerate_trivalent, theta_graph, dumbbell_graph, with_colors
from graphpotentials.potential import graph_potential
from graphpotentials.periods import constant_terms_of_powers
from graphpotentials import _fastbrute


def bench(label, poly, order):
    t0 = time.perf_counter()
    pure = constant_terms_of_powers(poly, order, backend="pure")
    t_pure = time.perf_counter() - t0
    if _fastbrute.HAVE_NUMBA:
        t0 = time.perf_counter()
        fast = constant_terms_of_powers(poly, order, backend="numba")
        t_fast = time.perf_counter() - t0
        assert fast == pure, f"{label}: backends disagree"
        ratio = t_pure / t_fast if t_fast > 0 else float("inf")
        print(f"{label:28s} K={order:3d}  pure {t_pure:8.3f}s  numba {t_fast:8.3f}s  "
              f"x{ratio:.1f}  [agree]")
    else:
        print(f"{label:28s} K={order:3d}  pure {t_pure:8.3f}s  (numba unavailable)")


def main():
    if _fastbrute.HAVE_NUMBA:
        print("warming up the JIT...")
        _fastbrute.warmup()

    cases = [
        ("theta (genus 2)", theta_graph(0), 12),
        ("theta colored", theta_graph(1), 12),
        ("dumbbell (genus 2)", dumbbell_graph(0), 12),
        ("dumbbell colored", dumbbell_graph(1), 12),
    ]
    for i, g in enumerate(enumerate_trivalent(3)):
        cases.append((f"genus-3 class {i}", g, 8))
        cases.append((f"genus-3 class {i} colored", with_colors(g, {"v0": 1}), 8))

    for label, graph, order in cases:
        bench(label, graph_potential(graph).potential, order)


if __name__ == "__main__":
    main()
