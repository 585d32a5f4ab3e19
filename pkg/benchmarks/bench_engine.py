"""Compare the compiled and pure-Python membership kernels.

    python benchmarks/bench_engine.py [--sizes 1000 10000 100000] [--repeat 3]

Both kernels run the same loop, so index-op counts must match; the table
reports wall time per run and the speedup of the compiled kernel.
"""
import argparse
import random
import sys
import time

from translucent import fast
from translucent.corpus import anbncn_automaton, exp3_automaton, shuffle_copy_automaton
from translucent.fast import Runner


def workloads(sizes, seed):
    rng = random.Random(seed)
    for n in sizes:
        yield "a^n b^n c^n", anbncn_automaton(), "a" * n + "b" * n + "c" * n
    for k in range(4, 4 + len(sizes)):
        yield "(abc)^(3^k)", exp3_automaton(), "abc" * 3**k
    for n in sizes:
        # order-preserving interleaving of v with its primed copy, so accepted
        v = [rng.choice("ab") for _ in range(n // 2)]
        copy = [c.upper() for c in v]
        w, i, j = [], 0, 0
        while i < len(v) or j < len(copy):
            if j == len(copy) or (i < len(v) and rng.random() < 0.5):
                w.append(v[i])
                i += 1
            else:
                w.append(copy[j])
                j += 1
        yield "shuffle-copy (returning)", shuffle_copy_automaton(), "".join(w)


def best_time(runner, codes, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = runner.kernel.run(codes)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 10000, 100000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if fast.CKernel is None:
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
        return 1

    print(f"{'workload':<26} {'|w|':>8} {'ops':>10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, aut, word in workloads(args.sizes, args.seed):
        py, cy = Runner(aut, "python"), Runner(aut, "cython")
        codes = py.encode(word)
        tp, rp = best_time(py, codes, args.repeat)
        tc, rc = best_time(cy, codes, args.repeat)
        if rp != rc:
            print(f"kernels disagree on {name}: {rp} vs {rc}", file=sys.stderr)
            return 2
        print(f"{name:<26} {len(word):>8} {rp[3]:>10} {tp:>10.4f} {tc:>10.5f} {tp / max(tc, 1e-9):>7.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
