"""Search for a small UCA model whose minimal equivalent model is (c, l) = (20, 8)
and whose minimum isomorphic model is (18, 7).

Candidates are joins of two or three aligned single-family components, taken
exhaustively from all PCA words with few arcs and visited by total size.
"""

import argparse
import sys
from itertools import product

from uca.core import classify
from uca.minrep import minimal_model, recognize_uca
from uca.structure import all_pca_words, co_components, is_aligned, join_all, minimum_model


def component_pool(n_max):
    pool = []
    for n in range(2, n_max + 1):
        for w in all_pca_words(n):
            if is_aligned(w) and classify(w).is_universal_free and co_components(w).k == 1:
                pool.append(w)
    return pool


def candidates(pool, max_n):
    for total in range(4, max_n + 1):
        for parts in (2, 3):
            for combo in product(pool, repeat=parts):
                if sum(p.n for p in combo) == total:
                    yield combo


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--hits", type=int, default=3)
    a = ap.parse_args(argv)
    pool = component_pool(a.max_n - 2)
    print(f"{len(pool)} components", flush=True)
    hits = 0
    for combo in candidates(pool, a.max_n):
        w = join_all(combo)
        if not recognize_uca(w).is_uca:
            continue
        mn = minimal_model(w)
        if (mn.circ, mn.ell) != (20, 8):
            continue
        mm = minimum_model(w)
        print(f"  minimal (20, 8): n={w.n} minimum ({mm.circ}, {mm.ell}) {w}", flush=True)
        if (mm.circ, mm.ell) == (18, 7):
            print(f"HIT n={w.n} {w}", flush=True)
            hits += 1
            if hits >= a.hits:
                return 0
    return 1


if __name__ == "__main__":
    sys.exit(main())
