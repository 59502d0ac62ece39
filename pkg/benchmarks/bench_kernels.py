"""Compare the compiled and pure-Python backends.

    python benchmarks/bench_kernels.py            # kernels + nullity engine
    python benchmarks/bench_kernels.py --quick    # smaller sample

Kernel timings are per call, averaged over random states of the bundled
diagrams.  Engine timings run a few corpus queries through both
interleaved engines and check that their statistics coincide.
"""

import argparse
import random
import sys
import timeit

from gridtheta import corpus_path, kernels
from gridtheta.grid import load_grid
from gridtheta.invariant import seed_chain
from gridtheta.nullity import is_null

DIAGRAMS = ["pretzel433_L1", "m10_132_L1", "m12n200_L1", "eh_L1"]
QUERIES = [
    ("pretzel433_L1", "plus", "delta1"),
    ("m10_132_L2", "minus", "delta1"),
    ("pretzel633_L1", "plus", "delta1"),
    ("m12n200_L1", "plus", "delta1"),
]


def bench_kernels(samples):
    backends = kernels.available_backends()
    if len(backends) < 2:
        print("compiled backend not importable; nothing to compare", file=sys.stderr)
    print(f"{'diagram':<16}{'kernel':<20}" + "".join(f"{b.BACKEND:>14}" for b in backends) + f"{'speedup':>10}")
    rng = random.Random(0)
    for name in DIAGRAMS:
        G = load_grid(corpus_path(f"{name}.grid"))
        X, O = G.x0, G.o0
        states = []
        for _ in range(samples):
            s = list(range(G.n))
            rng.shuffle(s)
            states.append(bytes(s))
        calls = {
            "boundary": lambda m: [m.boundary(s, X, O) for s in states],
            "coboundary": lambda m: [m.coboundary(s, X, O) for s in states],
            "boundary_k(k=1)": lambda m: [m.boundary_k(s, X, O, 1) for s in states],
            "maslov": lambda m: [m.maslov(s, O) for s in states],
        }
        for label, f in calls.items():
            per = []
            for m in backends:
                f(m)  # warm
                reps = 3
                t = min(timeit.repeat(lambda: f(m), number=1, repeat=reps))
                per.append(t / len(states))
            speed = per[0] / per[-1] if len(per) > 1 else 1.0
            print(f"{name:<16}{label:<20}" + "".join(f"{p * 1e6:>12.2f}us" for p in per) + f"{speed:>9.1f}x")


def bench_engine(quick):
    if kernels.compiled_engine() is None:
        print("compiled engine not built; skipping engine comparison", file=sys.stderr)
        return
    print(f"\n{'query':<32}{'visited':>10}{'python':>10}{'compiled':>10}{'speedup':>10}")
    for name, sign, refine in QUERIES[:2] if quick else QUERIES:
        G = load_grid(corpus_path(f"{name}.grid"))
        seed = seed_chain(G, sign, refine)
        py = is_null(G, seed, engine="python")
        cc = is_null(G, seed, engine="compiled")
        assert py.result is cc.result and py.stats.states_visited == cc.stats.states_visited
        tp, tc = py.stats.wall_time, cc.stats.wall_time
        label = f"{name} {refine}{'+' if sign == 'plus' else '-'}"
        print(f"{label:<32}{cc.stats.states_visited:>10}{tp:>9.2f}s{tc:>9.2f}s{tp / tc:>9.1f}x")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--samples", type=int, default=2000)
    args = ap.parse_args(argv)
    bench_kernels(200 if args.quick else args.samples)
    bench_engine(args.quick)


if __name__ == "__main__":
    main()
