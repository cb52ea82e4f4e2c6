"""Compare the compiled elimination kernel against the pure-Python fallback.

Usage: python benchmarks/bench_rank.py [--sizes 20,60,120] [--repeat 3]
"""

import argparse
import time

from conifold import _pure
from conifold.exact import DEFAULT_PRIME, PrimeField
from conifold.graded import hilbert_profile, random_spec, sample_lemma_degrees
from conifold.rng import Stream

try:
    from conifold import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def random_rows(n, p, rng):
    return [[rng.below(p) for _ in range(n)] for _ in range(n)]


def profile_workload(backend, specs):
    import conifold.exact as ex

    saved = ex._backend
    ex._backend = backend
    try:
        return [hilbert_profile(s).values() for s in specs]
    finally:
        ex._backend = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="20,60,120")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--specs", type=int, default=300)
    args = ap.parse_args()

    p = DEFAULT_PRIME
    rng = Stream(0, "bench")
    backends = [("pure", _pure)] + ([("compiled", _kernels)] if _kernels else [])
    if _kernels is None:
        print("compiled kernel not built; timing the fallback only")

    print(f"{'workload':<22}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for n in (int(x) for x in args.sizes.split(",")):
        rows = random_rows(n, p, rng)
        times, ranks = [], []
        for _, mod in backends:
            t, r = best_of(lambda: mod.rank_modp([list(r) for r in rows], p), args.repeat)
            times.append(t)
            ranks.append(r)
        assert len(set(ranks)) == 1, ranks
        speed = f"{times[0] / times[-1]:.1f}x" if len(times) > 1 else "-"
        print(f"{'rank ' + str(n) + 'x' + str(n):<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + f"{speed:>10}")

    field = PrimeField(p)
    specs = []
    for t in range(args.specs):
        s = Stream(0, "bench-spec", t)
        specs.append(random_spec(*sample_lemma_degrees(s), field, s))
    times, outs = [], []
    for _, mod in backends:
        t, out = best_of(lambda: profile_workload(mod, specs), args.repeat)
        times.append(t)
        outs.append(out)
    assert all(o == outs[0] for o in outs)
    speed = f"{times[0] / times[-1]:.1f}x" if len(times) > 1 else "-"
    label = f"{args.specs} profiles"
    print(f"{label:<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + f"{speed:>10}")


if __name__ == "__main__":
    main()
