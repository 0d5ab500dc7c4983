"""Search six-arc words for the self-similar gadget used by the model generator.

A candidate must be aligned, universal-free, a single co-component with two
rows, and coincide with its 1-alignment and its reverse.  Survivors are then
checked against the grid weighing: the minimal length of every generated
model must equal the heaviest grid cycle of the matching tuple sequence.
"""

import argparse
import random

from uca import hardness
from uca.core import classify
from uca.minrep import minimal_length
from uca.structure import align_word, all_pca_words, complement_components, is_aligned, reverse_word
from uca.core import greedy_rows


def symmetric_candidates(n=6):
    for w in all_pca_words(n):
        if not classify(w).is_universal_free or len(complement_components(w)) != 1:
            continue
        if not is_aligned(w) or max(greedy_rows(w)) != 1:
            continue
        if align_word(w, 1) == w and reverse_word(w) == w:
            yield w


def bridge_ok(rng, trials):
    for _ in range(trials):
        k = rng.choice([1, 1, 2])
        x = [tuple(rng.randint(1, 3) for _ in range(4)) for _ in range(k)]
        chi = tuple(rng.randint(0, 1) for _ in range(k))
        gamma = tuple(rng.randint(0, 1) for _ in range(k))
        pi = tuple(rng.sample(range(k), k))
        y = hardness.apply_ops(x, chi, gamma, pi)
        word = hardness.model_word(x, chi, gamma, pi)
        if minimal_length(word) != hardness.max_cycle_weight(y):
            return False
    return True


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cands = list(symmetric_candidates())
    print(f"{len(cands)} symmetric candidates")
    for w in cands:
        hardness.GADGET = str(w)
        ok = bridge_ok(random.Random(args.seed), args.trials)
        print(("PASS " if ok else "fail ") + str(w))


if __name__ == "__main__":
    main()
