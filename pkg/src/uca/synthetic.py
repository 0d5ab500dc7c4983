"""Synthetic 3-digraphs of PCA models, their row/column layout, and unrollings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import (
    ExtremeSeq,
    PcaModel,
    extreme_sequence,
    greedy_rows,
    overlaps_on_line,
    make_model,
)
from .errors import InconsistentSyntheticGraph, UnknownFormat

STEP, NOSE, HOLLOW = "step", "nose", "hollow"
KINDS = (STEP, NOSE, HOLLOW)


@dataclass(frozen=True)
class SynEdge:
    src: int
    dst: int
    kind: str
    external: bool

    def to_json(self) -> dict:
        return {"from": self.src, "to": self.dst, "kind": self.kind, "external": self.external}


@dataclass(frozen=True)
class SyntheticGraph:
    n: int
    edges: tuple
    seq: ExtremeSeq

    def out(self, i: int, kind: str):
        """The unique outgoing edge of ``kind`` at ``i``, or None."""
        return self._index()[0].get((i, kind))

    def into(self, j: int, kind: str):
        return self._index()[1].get((j, kind))

    def _index(self):
        cache = self.__dict__.get("_idx")
        if cache is None:
            fwd = {(e.src, e.kind): e for e in self.edges}
            bwd = {(e.dst, e.kind): e for e in self.edges}
            cache = (fwd, bwd)
            object.__setattr__(self, "_idx", cache)
        return cache

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def same_edges(self, other: "SyntheticGraph") -> bool:
        return self.n == other.n and self.edge_set() == other.edge_set()


def _external(kind: str, i: int, j: int) -> bool:
    # A self-hollow spans nothing; a self-step or self-nose spans a full turn.
    if kind == HOLLOW:
        return i < j
    return j <= i


def build_synthetic(seq: ExtremeSeq) -> SyntheticGraph:
    n = seq.n
    edges = [SynEdge(i, (i + 1) % n, STEP, _external(STEP, i, (i + 1) % n)) for i in range(n)]
    toks = seq.tokens
    m = len(toks)
    for k in range(m):
        (ka, a), (kb, b) = toks[k], toks[(k + 1) % m]
        if ka == "t" and kb == "s":
            edges.append(SynEdge(a, b, NOSE, _external(NOSE, a, b)))
        elif ka == "s" and kb == "t":
            edges.append(SynEdge(a, b, HOLLOW, _external(HOLLOW, a, b)))
    return SyntheticGraph(n, tuple(edges), seq)


def model_from_synthetic(s: SyntheticGraph) -> ExtremeSeq:
    """Rebuild the extreme word of a synthetic graph, anchored so that it opens with ``s0``.

    The graph does not record how many end tokens precede ``s0``, so the
    rebuilt word is the rotation of the source word that starts at ``s0``.
    """
    n = s.n
    toks = []
    for i in range(n):
        toks.append(("s", i))
        h, nz = s.out(i, HOLLOW), s.into((i + 1) % n, NOSE)
        if (h is None) != (nz is None):
            raise InconsistentSyntheticGraph(
                f"start {i}: hollow and nose into {(i + 1) % n} must appear together"
            )
        if h is None:
            continue
        j = h.dst
        while True:
            toks.append(("t", j))
            if j == nz.src or len(toks) > 2 * n:
                break
            j = (j + 1) % n
    if len(toks) != 2 * n or len({t for t in toks}) != 2 * n:
        raise InconsistentSyntheticGraph("end-token blocks do not cover every arc once")
    seq = ExtremeSeq(tuple(toks))
    from .core import sequence_problems

    if sequence_problems(seq):
        raise InconsistentSyntheticGraph("rebuilt word is not a PCA word")
    if not build_synthetic(seq).same_edges(s):
        raise InconsistentSyntheticGraph("graph is not the synthetic graph of any PCA word")
    return seq


# ---------------------------------------------------------------------------
# layout
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MitasLayout:
    row: tuple
    col: tuple
    epsilon: Fraction
    rows_count: int


@dataclass(frozen=True)
class EdgeClass:
    delta: int
    direction: str  # forward | backward | external | other


def rows_bruteforce(seq: ExtremeSeq) -> list:
    """Row of each arc from the maximum independent prefix sets (exponential)."""
    pos = seq.positions()
    out = []
    best = 0
    for i in range(seq.n):
        prefix = range(i + 1)
        for size in range(best + 1, i + 2):
            if any(
                all(not overlaps_on_line(seq, a, b, pos) for a, b in combinations(sub, 2))
                for sub in combinations(prefix, size)
            ):
                best = size
            else:
                break
        out.append(best - 1)
    return out


def edge_class(e: SynEdge, row) -> EdgeClass:
    delta = row[e.dst] - row[e.src]
    if e.external:
        return EdgeClass(delta, "external")
    if (e.kind, delta) in ((STEP, 0), (NOSE, 1), (HOLLOW, -1)):
        return EdgeClass(delta, "forward")
    if (e.kind, delta) in ((STEP, 1), (HOLLOW, 0)):
        return EdgeClass(delta, "backward")
    return EdgeClass(delta, "other")


def layout(s: SyntheticGraph) -> MitasLayout:
    row = greedy_rows(s.seq)
    eps = Fraction(1, 2 * s.n)
    bump = {STEP: Fraction(1), HOLLOW: Fraction(1), NOSE: eps}
    fwd = [e for e in s.edges if edge_class(e, row).direction == "forward"]
    col = _dag_longest(s.n, fwd, lambda e: bump[e.kind])
    return MitasLayout(tuple(row), tuple(col), eps, (max(row) + 1) if row else 0)


def _dag_longest(n: int, edges, weight, sources=None):
    """Longest-path labels over an acyclic edge list; unreachable vertices start at 0."""
    succ = [[] for _ in range(n)]
    indeg = [0] * n
    for e in edges:
        succ[e.src].append(e)
        indeg[e.dst] += 1
    lab = [0] * n
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for e in succ[v]:
            cand = lab[v] + weight(e)
            if cand > lab[e.dst]:
                lab[e.dst] = cand
            indeg[e.dst] -= 1
            if indeg[e.dst] == 0:
                stack.append(e.dst)
    if seen != n:
        raise ValueError("forward subgraph has a cycle")
    return lab


def classify_edges(s: SyntheticGraph, lay: MitasLayout) -> dict:
    return {e: edge_class(e, lay.row) for e in s.edges}


# ---------------------------------------------------------------------------
# unrolling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnrolledModel:
    base: ExtremeSeq
    kappa: int
    model: PcaModel
    copy_map: tuple  # unrolled id -> (base id, copy index)

    def index(self, base_id: int, copy: int) -> int:
        return copy * self.base.n + base_id


def unroll(m: PcaModel, kappa: int) -> UnrolledModel:
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    c, n = m.circumference, m.n
    big = kappa * c
    pairs = []
    for j in range(kappa):
        for a in m.arcs:
            q = 1 if a.t < a.s else 0
            pairs.append((a.s + j * c, (a.t + c * (j + q)) % big))
    model = make_model(big, pairs)
    cmap = tuple((i, j) for j in range(kappa) for i in range(n))
    return UnrolledModel(extreme_sequence(m), kappa, model, cmap)


def unroll_word(seq: ExtremeSeq, kappa: int) -> ExtremeSeq:
    """Extreme word of the ``kappa``-unrolling, using integer positions only."""
    n, m = seq.n, len(seq)
    ps, pt = seq.positions()
    big = m * kappa
    slots = [None] * big
    for j in range(kappa):
        for i in range(n):
            q = 1 if pt[i] < ps[i] else 0
            slots[ps[i] + m * j] = ("s", j * n + i)
            slots[(pt[i] + m * (j + q)) % big] = ("t", j * n + i)
    return ExtremeSeq(tuple(slots))


def unrolled_synthetic(seq: ExtremeSeq, kappa: int) -> SyntheticGraph:
    return build_synthetic(unroll_word(seq, kappa))


def expand_copies(s: SyntheticGraph, kappa: int) -> frozenset:
    """Edge set predicted for the ``kappa``-unrolling from the base graph alone."""
    n = s.n
    out = set()
    for e in s.edges:
        for j in range(kappa):
            if not e.external:
                a, b = e.src + j * n, e.dst + j * n
            elif e.kind == HOLLOW:
                a, b = e.src + ((j + 1) % kappa) * n, e.dst + j * n
            else:
                a, b = e.src + j * n, e.dst + ((j + 1) % kappa) * n
            out.add((a, b, e.kind))
    return frozenset(out)


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def export_graph(s: SyntheticGraph, lay: MitasLayout, fmt: str = "dot") -> str:
    cls = classify_edges(s, lay)
    if fmt == "json":
        doc = {
            "n": s.n,
            "epsilon": str(lay.epsilon),
            "nodes": [
                {"id": i, "row": lay.row[i], "col": str(lay.col[i])} for i in range(s.n)
            ],
            "edges": [
                dict(e.to_json(), backward=cls[e].direction == "backward") for e in s.edges
            ],
        }
        return json.dumps(doc, indent=2)
    if fmt == "dot":
        style = {STEP: "solid", NOSE: "dashed", HOLLOW: "dotted"}
        lines = ["digraph S {", "  node [shape=circle];"]
        for i in range(s.n):
            x = float(lay.col[i])
            lines.append(f'  A{i} [pos="{x:g},{lay.row[i]}!"];')
        for e in s.edges:
            back = cls[e].direction == "backward"
            color = "red" if e.external else ("blue" if back else "black")
            lines.append(
                f"  A{e.src} -> A{e.dst} [kind={e.kind}, external={str(e.external).lower()}, "
                f"backward={str(back).lower()}, style={style[e.kind]}, color={color}];"
            )
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise UnknownFormat(f"unknown export format {fmt!r}")
