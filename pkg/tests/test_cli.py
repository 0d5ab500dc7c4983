import io
import json

import pytest

from support import C4_WORD, E2_WORD, SHOWCASE_WORD, NON_UCA_WORDS
from uca.cli import run
from uca.core import are_equivalent, parse_model

E2_COMPACT = "circle 4\n0 2\n1 3\n"


@pytest.fixture
def put(tmp_path):
    def _put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _put


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text)


class TestExamples:
    def test_minimal_e2(self, put):
        code, text = call("minimal", "--d", "1", "--ds", "0", put("e2.txt", E2_COMPACT))
        assert code == 0 and text.splitlines()[0] == "c=4 ℓ=2"
        assert parse_model("\n".join(text.splitlines()[1:])).circumference == 4

    def test_recognize_no(self, put):
        code, text = call("recognize", put("bad.seq", NON_UCA_WORDS[0]))
        assert code == 1 and "nose cycle" in text and "hollow cycle" in text

    def test_feasible_witness(self, put):
        code, text = call("feasible", "--c", "4", "--l", "3/2", put("e2.txt", E2_COMPACT))
        assert code == 1 and "sep = 1/2" in text

    def test_feasible_yes(self, put):
        code, doc = call_json("feasible", "--c", "4", "--l", "2", put("e2.txt", E2_COMPACT))
        assert code == 0 and doc["feasible"]


class TestFormats:
    def test_seq_round_trip(self, put):
        src = put("c4.txt", "circle 8\n0 3\n2 5\n4 7\n6 1\n")
        code, text = call("seq", src)
        assert code == 0 and text.strip() == C4_WORD
        code, doc = call_json("validate", "--from-seq", put("c4.seq", text))
        assert code == 0
        assert are_equivalent(parse_model(json.dumps(doc["model"])), parse_model(open(src).read()))

    def test_bare_word_is_detected(self, put):
        code, doc = call_json("seq", put("w.seq", E2_WORD))
        assert code == 0 and doc == {"n": 2, "word": E2_WORD}

    def test_stdin(self, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(E2_WORD))
        assert call("recognize", "-") == (0, "UCA\n")

    @pytest.mark.parametrize(
        "argv",
        [
            ["validate"],
            ["seq"],
            ["syn"],
            ["draw"],
            ["unroll", "--kappa", "3"],
            ["recognize"],
            ["feasible", "--c", "8", "--l", "3"],
            ["minimal", "--d", "2/3", "--ds", "1/3"],
            ["minimum"],
            ["cocomp"],
        ],
    )
    def test_json_everywhere(self, put, argv):
        path = put("c4.seq", C4_WORD)
        code, doc = call_json(*argv[:1], *argv[1:], path)
        assert code == 0 and isinstance(doc, dict)

    def test_draw_dot(self, put):
        code, text = call("draw", put("e2.seq", E2_WORD))
        assert code == 0 and text.startswith("digraph") and 'pos="1,0!"' in text

    def test_deterministic(self, put):
        path = put("f.seq", SHOWCASE_WORD)
        assert call("minimum", "--json", path) == call("minimum", "--json", "--threads", "2", path)


class TestExitCodes:
    def test_unknown_flag(self, put):
        assert call("seq", "--bogus", put("e2.seq", E2_WORD))[0] == 2

    def test_unknown_command(self):
        assert call("frobnicate")[0] == 2

    @pytest.mark.parametrize("bad", ["x", "1/0", "1.5e"])
    def test_bad_rational(self, put, bad):
        assert call("feasible", "--c", bad, "--l", "1", put("e2.seq", E2_WORD))[0] == 2

    def test_decimal_is_exact(self, put):
        code, text = call("feasible", "--c", "4", "--l", "1.5", put("e2.seq", E2_WORD))
        assert code == 1 and "sep = 1/2" in text

    def test_invalid_model(self, put):
        assert call("validate", put("bad.txt", "circle 6\n0 5\n1 3\n"))[0] == 2

    def test_invalid_word(self, put):
        assert call("seq", put("bad.seq", "s1 s0 t0 t1"))[0] == 2

    def test_missing_file(self, tmp_path):
        assert call("seq", str(tmp_path / "none"))[0] == 2

    def test_minimal_not_uca(self, put):
        assert call("minimal", put("bad.seq", NON_UCA_WORDS[1]))[0] == 1

    def test_universal_arc(self, put):
        assert call("cocomp", put("p3.txt", "circle 10\n0 3\n2 5\n4 7\n"))[0] == 3

    def test_bad_format(self, put):
        assert call("draw", "--format", "svg", put("e2.seq", E2_WORD))[0] == 2

    def test_descriptor_rejected(self, put):
        assert call("feasible", "--c", "4", "--l", "2", "--d", "0", put("e2.seq", E2_WORD))[0] == 2


class TestHardness:
    def test_reduce_and_solve(self, put):
        code, text = call("reduce-3p", put("s.txt", "1 1 1"))
        doc = json.loads(text)
        assert code == 0 and doc["ell"] == 345 and doc["k"] == 5
        inst = put("inst.json", text)
        code, doc = call_json("mcw-solve", inst)
        assert code == 0 and doc["yes"]

    def test_eval(self, put):
        inst = put("i.json", json.dumps({"k": 1, "tuples": [[2, 3, 1, 1]], "ell": 7}))
        assert call("mcw-eval", inst) == (1, "weight=8 ell=7 no\n")
        assert call("mcw-eval", "--chi", "1", inst)[0] == 1

    def test_eval_size_mismatch(self, put):
        inst = put("i.json", json.dumps({"k": 1, "tuples": [[2, 3, 1, 1]], "ell": 8}))
        assert call("mcw-eval", "--pi", "0 1", inst)[0] == 2

    def test_solve_no(self, put):
        inst = put("i.json", json.dumps({"k": 1, "tuples": [[2, 3, 1, 1]], "ell": 7}))
        assert call("mcw-solve", inst) == (1, "no\n")

    def test_malformed_instance(self, put):
        assert call("mcw-solve", put("i.json", "{not json"))[0] == 2
        assert call("reduce-3p", put("s.txt", "1 1"))[0] == 2

    def test_too_large(self, put, monkeypatch):
        monkeypatch.setenv("UCA_MAX_BRUTE", "2")
        inst = put("i.json", json.dumps({"tuples": [[1, 1, 1, 1]] * 3, "ell": 1}))
        assert call("mcw-solve", inst)[0] == 3

    def test_gen_model_from_instance(self, put):
        inst = put("i.json", json.dumps({"tuples": [[2, 3, 1, 1]], "ell": 8}))
        code, doc = call_json("gen-model", "--mcw", inst)
        assert code == 0 and len(doc["arcs"]) == 9


class TestGenModel:
    def test_seeded(self):
        a = call("gen-model", "--n", "7", "--seed", "5")
        assert a == call("gen-model", "--n", "7", "--seed", "5") and a[0] == 0

    def test_generated_uca_is_recognized(self, put):
        _, text = call("gen-model", "--n", "6", "--seed", "1")
        assert call("recognize", put("m.txt", text))[0] == 0

    def test_pca(self):
        code, doc = call_json("gen-model", "--kind", "pca", "--n", "5", "--seed", "2")
        assert code == 0 and len(doc["arcs"]) == 5
