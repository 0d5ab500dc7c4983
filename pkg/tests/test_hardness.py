import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uca.core import classify, extreme_sequence
from uca.errors import MalformedInstance, SizeMismatch, TooLarge
from uca.hardness import (
    GADGET,
    McwInstance,
    apply_ops,
    build_grid,
    max_cycle_weight,
    max_cycle_weight_reference,
    model_from_mcw,
    model_word,
    parse_3partition,
    reduce_3partition,
    solve_mcw,
    three_partition_bruteforce,
    weigh,
)
from uca.minrep import minimal_length
from uca.structure import align_word, co_components, is_aligned, reverse_word

tuples = st.tuples(*[st.integers(1, 5)] * 4)


def _graph(k, x):
    g = nx.DiGraph()
    for (t, h), w in weigh(build_grid(k), x).items():
        g.add_edge(t, h, weight=w)
    return g


def _enumerated_max(x):
    g = _graph(len(x), x)
    return max(sum(g.edges[c[i], c[(i + 1) % len(c)]]["weight"] for i in range(len(c))) for c in nx.simple_cycles(g))


class TestGrid:
    def test_k1(self):
        g = build_grid(1)
        kinds = [kind for _, _, kind in g.edges()]
        assert len(g.vertices()) == 8
        assert (kinds.count("diagonal"), kinds.count("vertical"), kinds.count("horizontal")) == (3, 6, 4)

    def test_k2(self):
        g = build_grid(2)
        assert len(g.vertices()) == 32
        assert sum(kind == "diagonal" for _, _, kind in g.edges()) == 21

    def test_k0(self):
        with pytest.raises(ValueError):
            build_grid(0)

    @pytest.mark.parametrize("k", [1, 2])
    def test_one_horizontal_per_cycle(self, k):
        g = nx.DiGraph()
        kinds = {}
        for t, h, kind in build_grid(k).edges():
            g.add_edge(t, h)
            kinds[t, h] = kind
        cycles = list(nx.simple_cycles(g))
        assert cycles
        for c in cycles:
            hs = [kinds[c[i], c[(i + 1) % len(c)]] for i in range(len(c))]
            assert hs.count("horizontal") == 1


class TestWeigh:
    X = [(2, 3, 1, 1)]

    def test_diagonals(self):
        w = weigh(build_grid(1), self.X)
        assert w[(0, 1), (1, 0)] == 3 and w[(0, 2), (1, 1)] == 2

    def test_verticals(self):
        w = weigh(build_grid(1), self.X)
        assert w[(0, 0), (0, 1)] == 4 and w[(1, 1), (1, 2)] == 5

    def test_horizontals(self):
        w = weigh(build_grid(1), self.X)
        assert all(w[(1, r), (0, r)] == 1 for r in range(4))

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            weigh(build_grid(2), self.X)


class TestOps:
    def test_chi(self):
        assert apply_ops([(2, 3, 1, 1)], chi=(1,)) == ((3, 2, 1, 1),)

    def test_gamma(self):
        assert apply_ops([(2, 3, 1, 5)], gamma=(1,)) == ((2, 3, 5, 1),)

    def test_identity(self):
        x = ((1, 2, 3, 4), (5, 6, 7, 8))
        assert apply_ops(x) == x

    def test_pi(self):
        assert apply_ops([(1, 1, 1, 1), (2, 2, 2, 2)], pi=(1, 0)) == ((2, 2, 2, 2), (1, 1, 1, 1))

    def test_mismatch(self):
        with pytest.raises(SizeMismatch):
            apply_ops([(1, 1, 1, 1)], pi=(0, 1))

    @pytest.mark.parametrize("bad", [[(1, 1, 1)], [(0, 1, 1, 1)]])
    def test_malformed(self, bad):
        with pytest.raises(MalformedInstance):
            apply_ops(bad)


class TestMaxCycleWeight:
    @pytest.mark.parametrize("x, expected", [((2, 3, 1, 1), 8), ((2, 2, 1, 3), 9), ((1, 1, 1, 1), 5)])
    def test_examples(self, x, expected):
        assert max_cycle_weight([x]) == expected == _enumerated_max([x])

    def test_all_cycles_of_example_weigh_eight(self):
        g = _graph(1, [(2, 3, 1, 1)])
        weights = {sum(g.edges[c[i], c[(i + 1) % len(c)]]["weight"] for i in range(len(c))) for c in nx.simple_cycles(g)}
        assert weights == {8}

    @settings(max_examples=30)
    @given(st.lists(tuples, min_size=1, max_size=2))
    def test_matches_enumeration(self, x):
        assert max_cycle_weight(x) == _enumerated_max(x)

    @given(st.lists(tuples, min_size=1, max_size=6))
    def test_matches_reference(self, x):
        assert max_cycle_weight(x) == max_cycle_weight_reference(x)


class TestSolve:
    def test_yes(self):
        sol = solve_mcw(McwInstance(((2, 3, 1, 1),), 8))
        assert (sol.pi, sol.chi, sol.gamma, sol.weight) == ((0,), (0,), (0,), 8)

    def test_no(self):
        assert solve_mcw(McwInstance(((2, 3, 1, 1),), 7)) is None

    def test_guard(self):
        with pytest.raises(TooLarge):
            solve_mcw(McwInstance(((1, 1, 1, 1),) * 3, 100), limit=2)

    def test_threads_agree(self):
        inst = McwInstance(((2, 1, 3, 1), (1, 2, 1, 2), (3, 1, 1, 2)), 22)
        a, b = solve_mcw(inst), solve_mcw(inst, threads=2)
        assert a == b

    def test_json_round_trip(self):
        inst = reduce_3partition([1, 1, 1])
        assert McwInstance.from_json(inst.to_json()) == inst

    @pytest.mark.parametrize("doc", [{"tuples": [[1, 1, 1]], "ell": 3}, {"ell": 3}, {"k": 2, "tuples": [[1, 1, 1, 1]], "ell": 1}])
    def test_bad_json(self, doc):
        with pytest.raises((MalformedInstance, SizeMismatch)):
            McwInstance.from_json(doc)


class TestReduce:
    def test_example(self):
        inst = reduce_3partition([1, 1, 1])
        assert inst.tuples == ((6, 1, 29, 34), (3, 1, 1, 1), (3, 1, 1, 1), (3, 1, 1, 1), (1, 12, 23, 34))
        assert inst.ell == 345

    def test_yes_at_threshold(self):
        inst = reduce_3partition([1, 1, 1])
        assert solve_mcw(inst) is not None

    @pytest.mark.parametrize("s", [[1, 1], [1, 1, 2, 1, 1, 1], [7, 1, 1, 1, 1, 1], []])
    def test_malformed(self, s):
        with pytest.raises(MalformedInstance):
            reduce_3partition(s)

    def test_parse(self):
        assert parse_3partition(" 1 2\n3 ") == [1, 2, 3]
        with pytest.raises(MalformedInstance):
            parse_3partition("1 x")

    def test_bruteforce_oracle(self):
        assert three_partition_bruteforce([1, 2, 3, 2, 2, 2])
        assert not three_partition_bruteforce([1, 1, 1, 3, 3, 3])


class TestModel:
    def test_gadget_shape(self):
        w = model_word([(1, 1, 1, 1)])
        assert str(w) == GADGET and w.n == 6
        assert is_aligned(w) and classify(w).is_universal_free and co_components(w).k == 1
        assert align_word(w, 1) == w and reverse_word(w) == w

    def test_copies(self):
        # one copy of A5 for x0 = 2 and two of A2 for x1 = 3
        assert model_word([(2, 3, 1, 1)]).n == 9

    def test_reduction_size(self):
        m = model_from_mcw(reduce_3partition([1, 1, 1]).tuples)
        assert m.n == 168

    def test_realized(self):
        x = [(2, 1, 3, 1), (1, 2, 1, 2)]
        assert extreme_sequence(model_from_mcw(x)) == model_word(x)

    def test_bridge(self):
        rng = random.Random(3)
        for _ in range(25):
            k = rng.randint(1, 3)
            x = [tuple(rng.randint(1, 3) for _ in range(4)) for _ in range(k)]
            chi = tuple(rng.randint(0, 1) for _ in range(k))
            gamma = tuple(rng.randint(0, 1) for _ in range(k))
            pi = tuple(rng.sample(range(k), k))
            w = model_word(x, chi, gamma, pi)
            assert minimal_length(w) == max_cycle_weight(apply_ops(x, chi, gamma, pi)), (x, chi, gamma, pi)
