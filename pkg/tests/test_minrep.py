import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from support import C4_WORD, COMPLETE3_WORD, E2_WORD, NON_UCA_WORDS, uca_words, word
from uca.core import PcaModel, UcaDescriptor, extreme_sequence
from uca.errors import NotUca
from uca.minrep import (
    brute_force_minimal,
    greedy_cycle,
    grid_uca_oracle,
    minimal_circumference,
    minimal_length,
    minimal_length_detail,
    minimal_length_reference,
    minimal_model,
    recognize_uca,
)
from uca.randgen import random_pca_word, random_uca_word
from uca.separation import enumerate_cycles, feasibility
from uca.structure import all_pca_words
from uca.synthetic import SyntheticGraph, build_synthetic, classify_edges, layout, unrolled_synthetic


def _cycle(text, kind):
    g = greedy_cycle(build_synthetic(word(text)), kind, 0)
    return [(e.src, e.kind, e.dst) for e in g.edges]


class TestGreedy:
    def test_e2_nose(self):
        assert _cycle(E2_WORD, "nose") == [(0, "step", 1), (1, "nose", 0)]

    def test_c4_nose_is_boundary(self):
        assert _cycle(C4_WORD, "nose") == [(0, "nose", 2), (2, "nose", 0)]

    def test_c4_hollow(self):
        assert _cycle(C4_WORD, "hollow") == [(0, "hollow", 3), (3, "hollow", 2), (2, "hollow", 1), (1, "hollow", 0)]


class TestRecognize:
    @pytest.mark.parametrize("text", [E2_WORD, C4_WORD, COMPLETE3_WORD, "s0 t0"])
    def test_yes(self, text):
        assert recognize_uca(word(text)).is_uca

    @pytest.mark.parametrize("text", NON_UCA_WORDS)
    def test_no_confirmed_by_grid_oracle(self, text):
        rec = recognize_uca(word(text))
        assert not rec.is_uca
        assert not set(rec.nose_cycle.vertices) & set(rec.hollow_cycle.vertices)
        assert not grid_uca_oracle(word(text))

    @pytest.mark.parametrize("text", NON_UCA_WORDS[:2])
    def test_minimal_refuses(self, text):
        with pytest.raises(NotUca):
            minimal_model(word(text))

    @settings(max_examples=100)
    @given(uca_words(1, 6))
    def test_unit_models_are_recognized(self, w):
        assert recognize_uca(w).is_uca

    def test_agrees_with_oracle_on_pca_words(self):
        rng = random.Random(7)
        for _ in range(150):
            w = random_pca_word(rng, rng.randint(2, 7))
            assert recognize_uca(w).is_uca == grid_uca_oracle(w), str(w)


class TestMinimalLength:
    def test_e2(self):
        assert minimal_length(word(E2_WORD)) == 2

    def test_c4(self):
        assert minimal_length(word(C4_WORD)) == 3

    @pytest.mark.parametrize("n", range(1, 8))
    def test_complete(self, n):
        w = word(" ".join([f"s{i}" for i in range(n)] + [f"t{i}" for i in range(n)]))
        assert minimal_length(w) == n

    def test_matches_reference(self):
        rng = random.Random(11)
        for _ in range(60):
            w = random_uca_word(rng, rng.randint(1, 9))
            for d, ds in ((1, 0), (Fraction(2, 3), Fraction(1, 3))):
                assert minimal_length_detail(w, d, ds).ell == minimal_length_reference(w, d, ds).ell

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_internal_cycle_enumeration(self, n):
        for w in all_pca_words(n):
            if not recognize_uca(w).is_uca:
                continue
            s = unrolled_synthetic(w, 3 * n)
            internal = SyntheticGraph(s.n, tuple(e for e in s.edges if not e.external), s.seq)
            cycles = enumerate_cycles(internal, limit=10**6)
            for d, ds in ((1, 0), (2, 1)):
                best = max(d * len(c) + ds * c.sigma for c in cycles)
                assert minimal_length(w, d, ds) == best, str(w)

    @given(uca_words(1, 8))
    def test_maximizer_shape(self, w):
        res = minimal_length_detail(w)
        s = unrolled_synthetic(w, res.kappa)
        cls = classify_edges(s, layout(s))
        assert res.cycle.is_closed and res.cycle.jump == -1
        assert sum(cls[e].direction == "backward" for e in res.cycle.edges) == 1
        assert not any(e.external for e in res.cycle.edges)

    @given(uca_words(1, 8))
    def test_size_bound(self, w):
        assert minimal_length(w) <= 3 * w.n**2


class TestMinimalCircumference:
    def test_e2(self):
        assert minimal_circumference(word(E2_WORD), 2)[0] == 4

    def test_c4(self):
        assert minimal_circumference(word(C4_WORD), 3)[0] == 8

    def test_complete3(self):
        assert minimal_circumference(word(COMPLETE3_WORD), 3)[0] == 6


class TestMinimalModel:
    def test_e2(self):
        res = minimal_model(word(E2_WORD))
        assert (res.circ, res.ell) == (4, 2) and [a.s for a in res.model.arcs] == [0, 1]

    def test_single_arc(self):
        res = minimal_model(word("s0 t0"))
        assert (res.circ, res.ell) == (2, 1)

    def test_json(self):
        doc = minimal_model(word(C4_WORD)).to_json()
        assert doc["c"] == "8" and doc["ell"] == "3" and doc["length_cycle"]

    @given(uca_words(1, 7))
    def test_result_is_feasible_and_tight(self, w):
        res = minimal_model(w)
        assert isinstance(feasibility(w, res.descriptor), PcaModel)
        assert extreme_sequence(res.model) == w
        assert res.circ.denominator == 1 and res.ell.denominator == 1
        for c, ell in ((res.circ - 1, res.ell), (res.circ, res.ell - 1)):
            if c > 0 and ell > 0:
                assert not isinstance(feasibility(w, UcaDescriptor(c, ell, 1, 0)), PcaModel)


class TestBruteForce:
    @pytest.mark.parametrize(
        "text, expected", [(E2_WORD, (2, 4)), (C4_WORD, (3, 8)), (COMPLETE3_WORD, (3, 6))]
    )
    def test_examples(self, text, expected):
        assert brute_force_minimal(word(text)) == expected

    @settings(max_examples=40)
    @given(uca_words(1, 6))
    def test_agrees_with_solver(self, w):
        res = minimal_model(w)
        assert brute_force_minimal(w) == (res.ell, res.circ)

    @settings(max_examples=25)
    @given(uca_words(1, 5))
    def test_agrees_with_solver_fractional(self, w):
        d, ds = Fraction(2, 3), Fraction(1, 3)
        res = minimal_model(w, d, ds)
        assert brute_force_minimal(w, d, ds) == (res.ell, res.circ)
        assert (res.ell * 3).denominator == 1 and (res.circ * 3).denominator == 1
