"""Time minimal_model on random UCA words of growing size."""

import argparse
import random
import time

from uca.minrep import minimal_model
from uca.randgen import random_uca_word


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 75, 100])
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    rng = random.Random(a.seed)
    minimal_model(random_uca_word(rng, 5))  # compile kernels before timing
    print(f"{'n':>5} {'mean s':>8} {'max s':>8}")
    for n in a.sizes:
        times = []
        for _ in range(a.reps):
            w = random_uca_word(rng, n)
            t0 = time.perf_counter()
            minimal_model(w)
            times.append(time.perf_counter() - t0)
        print(f"{n:>5} {sum(times) / len(times):>8.3f} {max(times):>8.3f}")


if __name__ == "__main__":
    main()
