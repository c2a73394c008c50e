"""Time the compiled alignment kernel against the pure-Python fallback.

    python benchmarks/bench_align.py --sizes 100 300 600 --repeat 3
"""
import argparse
import random
import time

from crisis_corpus import sentalign


def instance(n, rng):
    src = [rng.randint(10, 200) for _ in range(n)]
    # target roughly parallel, with some merges and splits thrown in
    tgt = []
    for length in src:
        r = rng.random()
        if r < 0.1:
            tgt.extend([length // 2, length - length // 2])
        elif r < 0.2 and tgt:
            tgt[-1] += length
        else:
            tgt.append(max(1, length + rng.randint(-15, 15)))
    return src, tgt


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 300, 600])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if "cython" not in sentalign.BACKENDS:
        print("compiled kernel not built; only the Python backend is available")
    rng = random.Random(args.seed)
    print(f"{'segments':>8} {'python s':>10} {'cython s':>10} {'speedup':>8}  same")
    for n in args.sizes:
        src, tgt = instance(n, rng)
        py_t, py_res = best_of(sentalign.BACKENDS["python"], (src, tgt, True), args.repeat)
        if "cython" in sentalign.BACKENDS:
            cy_t, cy_res = best_of(sentalign.BACKENDS["cython"], (src, tgt, True), args.repeat)
            print(f"{n:>8} {py_t:>10.4f} {cy_t:>10.4f} {py_t / cy_t:>7.1f}x  {py_res == cy_res}")
        else:
            print(f"{n:>8} {py_t:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
