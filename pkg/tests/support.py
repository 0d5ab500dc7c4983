"""Shared constants, hypothesis strategies and profiles for the test suite."""

import os
import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from uca.core import ExtremeSeq
from uca.randgen import random_pca_word, random_uca_word

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

E2_WORD = "s0 s1 t0 t1"
C4_WORD = "s0 t3 s1 t0 s2 t1 s3 t2"
COMPLETE3_WORD = "s0 s1 s2 t0 t1 t2"
# found by search over joins of small components; minimal (20, 8), minimum (18, 7)
SHOWCASE_WORD = "s0 s1 t5 t6 s2 s3 t0 t1 s4 t2 s5 t3 s6 t4"
# found by random search; greedy nose and hollow cycles are disjoint
NON_UCA_WORDS = (
    "t4 s0 s1 t5 t6 t0 s2 s3 t1 t2 s4 s5 s6 t3",
    "s0 s1 t5 t6 s2 t7 s3 t0 t1 t2 s4 s5 t3 t4 s6 s7",
    "t5 t6 s0 s1 s2 s3 t7 t0 s4 t1 s5 t2 t3 t4 s6 s7",
    "s0 s1 t7 t0 s2 s3 s4 t1 s5 t2 s6 t3 s7 t4 t5 t6",
    "t5 s0 s1 s2 t6 t0 s3 t1 s4 t2 t3 s5 s6 t4",
)


def word(text: str) -> ExtremeSeq:
    return ExtremeSeq.parse(text)


def check_uca(m, u, seq) -> bool:
    """Direct re-validation: arc lengths, extreme gaps, start gaps and the word."""
    from uca.core import extreme_sequence

    c = m.circumference
    if c != u.c or any((a.t - a.s) % c != u.ell for a in m.arcs):
        return False
    pts = sorted([a.s for a in m.arcs] + [a.t for a in m.arcs])
    gaps = [pts[k + 1] - pts[k] for k in range(len(pts) - 1)] + [pts[0] + c - pts[-1]]
    starts = sorted(a.s for a in m.arcs)
    sgaps = [starts[k + 1] - starts[k] for k in range(len(starts) - 1)] + [starts[0] + c - starts[-1]]
    return min(gaps) >= u.d and min(sgaps) >= u.d + u.ds and extreme_sequence(m) == seq


def uca_words(n_min=1, n_max=7):
    return st.builds(
        lambda seed, n: random_uca_word(random.Random(seed), n),
        st.integers(0, 2**32),
        st.integers(n_min, n_max),
    )


def pca_words(n_min=1, n_max=7):
    return st.builds(
        lambda seed, n: random_pca_word(random.Random(seed), n),
        st.integers(0, 2**32),
        st.integers(n_min, n_max),
    )


def component_pool(n_max: int) -> list:
    """Aligned, universal-free single-family words with at most ``n_max`` arcs."""
    from uca.core import classify
    from uca.structure import all_pca_words, co_components, is_aligned

    pool = []
    for n in range(2, n_max + 1):
        for w in all_pca_words(n):
            if is_aligned(w) and classify(w).is_universal_free and co_components(w).k == 1:
                pool.append(w)
    return pool


POOL = component_pool(5)


def joined_words(parts_min=2, parts_max=3, n_max=5):
    """Joins of random pool components, the usual source of multi-family models."""
    from uca.structure import join_all

    small = [w for w in POOL if w.n <= n_max]
    return st.lists(st.sampled_from(small), min_size=parts_min, max_size=parts_max).map(join_all)
