"""Benchmark the compiled kernels against the pure-Python reference.

Runs each kernel on small (per-response) and large (corpus-scale) inputs,
checks the two backends agree bitwise on the benchmark data, and prints a
timing table.

    python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import math
import random
import sys
import timeit

from uescore.kernels import get_backend


def make_cases(rng: random.Random):
    def logprobs(n: int) -> list[float]:
        return [math.log(rng.uniform(1e-4, 1.0)) for _ in range(n)]

    def weights(n: int) -> list[float]:
        raw = [rng.random() + 0.01 for _ in range(n)]
        total = sum(raw)
        return [r / total for r in raw]

    def labels(n: int) -> list[int]:
        flags = [1 if rng.random() < 0.5 else 0 for _ in range(n)]
        flags[0], flags[1] = 0, 1  # both classes must be present
        return flags

    cases = []
    for n in (64, 4096):
        lp, w = logprobs(n), weights(n)
        cases.append((f"sum_values[{n}]", "sum_values", (lp,)))
        cases.append((f"mean_value[{n}]", "mean_value", (lp,)))
        cases.append((f"weighted_sum[{n}]", "weighted_sum", (lp, w)))
        cases.append((f"softmax[{n}]", "softmax", ([rng.random() for _ in range(n)], 0.01)))
        cases.append((f"logsumexp[{n}]", "logsumexp", (lp,)))
    for n in (200, 5000):
        values = [rng.randint(0, 40) / 8.0 for _ in range(n)]  # tie-heavy
        cases.append((f"auroc_midrank[{n}]", "auroc_midrank", (values, labels(n))))
    return cases


def best_seconds(fn, args, repeats: int) -> float:
    number = 1
    # grow the loop count until a single measurement is long enough to trust
    while timeit.timeit(lambda: fn(*args), number=number) < 0.01:
        number *= 4
    runs = timeit.repeat(lambda: fn(*args), number=number, repeat=repeats)
    return min(runs) / number


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats per case")
    opts = parser.parse_args(argv)

    pure = get_backend("pure")
    try:
        native = get_backend("native")
    except ImportError:
        print("compiled extension not available; build it first (pip install -e .)")
        return 1

    rng = random.Random(7)
    cases = make_cases(rng)

    for label, kernel, args in cases:
        a = getattr(pure, kernel)(*args)
        b = getattr(native, kernel)(*args)
        if a != b:
            print(f"backend mismatch on {label}: pure={a!r} native={b!r}")
            return 1
    print(f"bit-equality check passed on all {len(cases)} cases\n")

    header = f"{'kernel':<22} {'pure':>12} {'native':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, kernel, args in cases:
        t_pure = best_seconds(getattr(pure, kernel), args, opts.repeats)
        t_native = best_seconds(getattr(native, kernel), args, opts.repeats)
        print(
            f"{label:<22} {t_pure * 1e6:>10.2f}us {t_native * 1e6:>10.2f}us"
            f" {t_pure / t_native:>8.2f}x"
        )
    print("\ntimes are best-of-{} per-call averages".format(opts.repeats))
    return 0


if __name__ == "__main__":
    sys.exit(main())
