"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit

from origami_veech import _pykernels
from origami_veech.sequences import build
from origami_veech.sl2 import S, T, reduce_mod

try:
    from origami_veech import _ckernels
except ImportError:
    _ckernels = None


def _cases(seed):
    rng = random.Random(seed)
    origamis = [build("D", 6), build("L23", 8)]
    for _ in range(20):
        d = rng.randint(10, 40)
        a = list(range(d))
        rng.shuffle(a)
        b = list(range(1, d)) + [0]  # a d-cycle keeps the pair transitive
        origamis.append((tuple(a), tuple(b)))
    pairs = [(o.sigma_a, o.sigma_b) if hasattr(o, "sigma_a") else o for o in origamis]
    closures = [([reduce_mod(S, n).entries, reduce_mod(T, n).entries], n) for n in (60, 84)]
    return pairs, closures


def bench(mod, pairs, closures, repeat):
    canon = min(timeit.repeat(lambda: [mod.canonical_encoding(a, b) for a, b in pairs], number=1, repeat=repeat))
    clos = min(timeit.repeat(lambda: [mod.closure_mod(g, n, 10 ** 7) for g, n in closures], number=1, repeat=repeat))
    return canon, clos


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    pairs, closures = _cases(args.seed)
    rows = [("python", _pykernels)]
    if _ckernels is not None:
        rows.append(("cython", _ckernels))
    else:
        print("compiled kernels not built; showing the Python backend only")
    results = {name: bench(mod, pairs, closures, args.repeat) for name, mod in rows}
    print(f"{'backend':<8} {'canonical (s)':>14} {'closure (s)':>12}")
    for name, (c1, c2) in results.items():
        print(f"{name:<8} {c1:>14.4f} {c2:>12.4f}")
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print(f"speed-up  {py[0] / cy[0]:>13.1f}x {py[1] / cy[1]:>11.1f}x")


if __name__ == "__main__":
    main()
