"""Seeded random generators for PCA and UCA extreme words."""

from __future__ import annotations

import random

from .core import ExtremeSeq, extreme_sequence, make_model, sequence_problems


def random_pca_word(rng: random.Random, n: int, tries: int = 10_000) -> ExtremeSeq:
    """Random word whose end tokens follow the circular start order (rejection sampled)."""
    for _ in range(tries):
        r = rng.randrange(n)
        ends = [("t", (r + k) % n) for k in range(n)]
        starts = [("s", k) for k in range(n)]
        slots = sorted(rng.sample(range(2 * n), n))
        toks, si, ti = [], 0, 0
        for k in range(2 * n):
            if si < n and (ti >= n or k in slots):
                toks.append(starts[si])
                si += 1
            else:
                toks.append(ends[ti])
                ti += 1
        seq = ExtremeSeq(tuple(toks))
        if not sequence_problems(seq):
            return seq
    raise RuntimeError(f"no PCA word found for n={n}")


def random_uca_word(rng: random.Random, n: int) -> ExtremeSeq:
    """Word of a random unit-length model: even starts, odd length below half the circle."""
    c = 4 * n + 2 * rng.randrange(2 * n + 1)
    ell = rng.randrange(1, c // 2, 2)
    starts = rng.sample(range(0, c, 2), n)
    m = make_model(c, [(s, (s + ell) % c) for s in starts])
    return extreme_sequence(m)
