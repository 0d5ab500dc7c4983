"""Command-line front end: ``uca <subcommand> [options] FILE``.

Exit codes: 0 success or "yes", 1 domain "no", 2 invalid input, 3 unsupported.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import errors as E
from .core import (
    ExtremeSeq,
    PcaModel,
    UcaDescriptor,
    as_rational,
    check_sequence,
    classify,
    extreme_sequence,
    fmt,
    parse_model,
    realize,
)
from .hardness import (
    McwInstance,
    apply_ops,
    max_cycle_weight,
    model_from_mcw,
    parse_3partition,
    reduce_3partition,
    solve_mcw,
)
from .minrep import minimal_model, recognize_uca
from .randgen import random_pca_word, random_uca_word
from .separation import feasibility
from .structure import co_components, minimum_model
from .synthetic import build_synthetic, export_graph, layout, unroll

EXIT_OK, EXIT_NO, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2, 3

_INVALID = (
    E.MalformedInput,
    E.InvalidModel,
    E.InvalidSequence,
    E.UnknownFormat,
    E.MalformedInstance,
    E.SizeMismatch,
    E.RowMissing,
    E.NotAligned,
    E.InconsistentSyntheticGraph,
)
_UNSUPPORTED = (E.UnsupportedStructure, E.HasUniversalArc, E.TooLarge, E.GadgetUnavailable)


class Output:
    """Collects the JSON document or the human-readable lines of one run."""

    def __init__(self, as_json: bool, stream):
        self.as_json = as_json
        self.stream = stream

    def emit(self, doc: dict, text: str) -> None:
        if self.as_json:
            self.stream.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            self.stream.write(text.rstrip("\n") + "\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise E.MalformedInput(f"cannot read {path}: {exc}") from exc


def _looks_like_model(text: str) -> bool:
    head = text.lstrip()
    return head.startswith("{") or head.startswith("circle")


def load_word(path: str) -> ExtremeSeq:
    """Extreme word from a model file (JSON or compact) or from a bare word file."""
    text = _read(path)
    if _looks_like_model(text):
        return extreme_sequence(parse_model(text))
    return check_sequence(ExtremeSeq.parse(text))


def load_model(path: str, from_seq: bool = False) -> PcaModel:
    text = _read(path)
    if from_seq or not _looks_like_model(text):
        return realize(check_sequence(ExtremeSeq.parse(text)))
    return parse_model(text)


def _rational(text: str):
    try:
        return as_rational(text)
    except E.UcaError as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _model_text(m: PcaModel) -> str:
    return m.to_text()


def _bits(text: str | None, k: int, name: str) -> tuple | None:
    if text is None:
        return None
    vals = tuple(int(v) for v in text.replace(",", " ").split())
    if len(vals) != k:
        raise E.SizeMismatch(f"--{name} needs {k} entries")
    return vals


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(a, out: Output) -> int:
    m = load_model(a.file, a.from_seq)
    cls = classify(m)
    doc = {
        "valid": True,
        "n": m.n,
        "word": str(extreme_sequence(m)),
        "universal_arcs": sorted(cls.universal_arcs),
        "complete": cls.is_complete,
        "model": m.to_json(),
    }
    out.emit(doc, f"valid PCA model, n={m.n}\n{_model_text(m)}")
    return EXIT_OK


def cmd_seq(a, out: Output) -> int:
    w = load_word(a.file)
    out.emit({"n": w.n, "word": str(w)}, str(w))
    return EXIT_OK


def cmd_syn(a, out: Output) -> int:
    s = build_synthetic(load_word(a.file))
    doc = {"n": s.n, "edges": [e.to_json() for e in s.edges]}
    lines = [f"{e.src} -> {e.dst} {e.kind}{' external' if e.external else ''}" for e in s.edges]
    out.emit(doc, "\n".join(lines))
    return EXIT_OK


def cmd_draw(a, out: Output) -> int:
    s = build_synthetic(load_word(a.file))
    text = export_graph(s, layout(s), "json" if a.json else a.format)
    out.stream.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def cmd_unroll(a, out: Output) -> int:
    u = unroll(load_model(a.file), a.kappa)
    doc = {"kappa": u.kappa, "model": u.model.to_json(), "copies": [list(p) for p in u.copy_map]}
    out.emit(doc, _model_text(u.model))
    return EXIT_OK


def cmd_recognize(a, out: Output) -> int:
    rec = recognize_uca(load_word(a.file))
    if rec.is_uca:
        out.emit(rec.to_json(), "UCA")
        return EXIT_OK
    text = "not UCA\nnose cycle: {}\nhollow cycle: {}".format(
        " ".join(map(str, rec.nose_cycle.vertices)), " ".join(map(str, rec.hollow_cycle.vertices))
    )
    out.emit(rec.to_json(), text)
    return EXIT_NO


def cmd_feasible(a, out: Output) -> int:
    u = UcaDescriptor(a.c, a.l, a.d, a.ds)
    res = feasibility(load_word(a.file), u)
    if isinstance(res, PcaModel):
        out.emit({"feasible": True, "model": res.to_json()}, f"feasible\n{_model_text(res)}")
        return EXIT_OK
    edges = " ".join(f"{e.src}-{e.kind}->{e.dst}" for e in res.cycle.edges)
    out.emit({"feasible": False, "witness": res.to_json()}, f"infeasible: positive cycle {edges}, sep = {fmt(res.sep)}")
    return EXIT_NO


def cmd_minimal(a, out: Output) -> int:
    res = minimal_model(load_word(a.file), a.d, a.ds)
    out.emit(res.to_json(), f"c={fmt(res.circ)} ℓ={fmt(res.ell)}\n{_model_text(res.model)}")
    return EXIT_OK


def cmd_minimum(a, out: Output) -> int:
    res = minimum_model(load_word(a.file), a.d, a.ds, force=a.force, threads=a.threads)
    out.emit(res.to_json(), f"c={fmt(res.circ)} ℓ={fmt(res.ell)}\n{_model_text(res.model)}")
    return EXIT_OK


def cmd_cocomp(a, out: Output) -> int:
    dec = co_components(load_word(a.file))
    lines = [f"k={dec.k}", f"aligned: {dec.word}"]
    lines += [f"family {i}: {' '.join(map(str, f))}  [{w}]" for i, (f, w) in enumerate(zip(dec.families, dec.submodels))]
    out.emit(dec.to_json(), "\n".join(lines))
    return EXIT_OK


def _instance(path: str) -> McwInstance:
    try:
        doc = json.loads(_read(path))
    except ValueError as exc:
        raise E.MalformedInstance(f"bad MCW JSON: {exc}") from exc
    return McwInstance.from_json(doc)


def cmd_mcw_eval(a, out: Output) -> int:
    inst = _instance(a.file)
    k = inst.k
    y = apply_ops(inst.tuples, _bits(a.chi, k, "chi"), _bits(a.gamma, k, "gamma"), _bits(a.pi, k, "pi"))
    w = max_cycle_weight(y)
    ok = w <= inst.ell
    out.emit({"weight": w, "ell": inst.ell, "yes": ok}, f"weight={w} ell={inst.ell} {'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_NO


def cmd_mcw_solve(a, out: Output) -> int:
    sol = solve_mcw(_instance(a.file), threads=a.threads)
    if sol is None:
        out.emit({"yes": False}, "no")
        return EXIT_NO
    doc = {"yes": True, **sol.to_json()}
    out.emit(doc, f"yes weight={sol.weight} pi={list(sol.pi)} chi={list(sol.chi)} gamma={list(sol.gamma)}")
    return EXIT_OK


def cmd_reduce(a, out: Output) -> int:
    inst = reduce_3partition(parse_3partition(_read(a.file)))
    out.stream.write(json.dumps(inst.to_json()) + "\n")
    return EXIT_OK


def cmd_gen_model(a, out: Output) -> int:
    if a.mcw:
        m = model_from_mcw(_instance(a.mcw).tuples)
    else:
        rng = random.Random(a.seed)
        gen = random_uca_word if a.kind == "uca" else random_pca_word
        m = realize(gen(rng, a.n))
    out.emit(m.to_json(), _model_text(m))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uca", description="Unit circular-arc model toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, file=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if file:
            sp.add_argument("file", help="input file, or - for stdin")
        sp.set_defaults(fn=fn)
        return sp

    def lengths(sp):
        sp.add_argument("--d", type=_rational, default=as_rational(1), help="minimum extreme gap")
        sp.add_argument("--ds", type=_rational, default=as_rational(0), help="extra start gap")

    sp = add("validate", cmd_validate, "check a model file")
    sp.add_argument("--from-seq", action="store_true", help="input is an extreme word")
    add("seq", cmd_seq, "print the extreme word")
    add("syn", cmd_syn, "print the synthetic graph")
    sp = add("draw", cmd_draw, "export the synthetic graph drawing")
    sp.add_argument("--format", default="dot", help="dot or json")
    sp = add("unroll", cmd_unroll, "kappa-fold unrolling")
    sp.add_argument("--kappa", type=int, default=2)
    add("recognize", cmd_recognize, "decide whether an equivalent UCA model exists")
    sp = add("feasible", cmd_feasible, "test a (c, l, d, ds) descriptor")
    sp.add_argument("--c", type=_rational, required=True)
    sp.add_argument("--l", type=_rational, required=True)
    lengths(sp)
    lengths(add("minimal", cmd_minimal, "minimal equivalent UCA model"))
    sp = add("minimum", cmd_minimum, "minimum isomorphic UCA model")
    lengths(sp)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--force", action="store_true", help="ignore the co-component limit")
    add("cocomp", cmd_cocomp, "co-component decomposition")
    sp = add("mcw-eval", cmd_mcw_eval, "weigh one MCW candidate")
    sp.add_argument("--pi", help="permutation, e.g. '1 0 2'")
    sp.add_argument("--chi", help="x-swap bits")
    sp.add_argument("--gamma", help="y-swap bits")
    sp = add("mcw-solve", cmd_mcw_solve, "brute-force an MCW instance")
    sp.add_argument("--threads", type=int, default=1)
    add("reduce-3p", cmd_reduce, "3-partition to MCW instance")
    sp = add("gen-model", cmd_gen_model, "generate a model", file=False)
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--kind", choices=("uca", "pca"), default="uca")
    sp.add_argument("--mcw", help="build the model of an MCW instance file instead")
    return p


def run(argv=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    out = Output(args.json, stdout or sys.stdout)
    try:
        return args.fn(args, out)
    except E.NotUca as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO
    except _INVALID as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except _UNSUPPORTED as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
